// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "einlab/einlab.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Failure {
    int code;
};

int exit_for(einlab_status st) {
    switch (st) {
        case EINLAB_OK: return kExitPass;
        case EINLAB_E_PRECONDITION:
        case EINLAB_E_INVALID_ARGUMENT:
        case EINLAB_E_OUT_OF_MODEL:
        case EINLAB_E_NOT_CCE:
        case EINLAB_E_UNSUPPORTED:
        case EINLAB_E_SCHEMA:
        case EINLAB_E_IO: return kExitUsage;
        default: return kExitFail;
    }
}

void check(einlab_status st) {
    if (st == EINLAB_OK) return;
    std::cerr << "einlab: " << einlab_status_name(st) << ": " << einlab_last_error() << '\n';
    throw Failure{exit_for(st)};
}

// Owns a string returned by the library.
struct LibString {
    char* p = nullptr;
    ~LibString() { einlab_string_free(p); }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Family {
    einlab_family* p = nullptr;
    ~Family() { einlab_family_free(p); }
};

struct Config {
    einlab_config* p = nullptr;
    ~Config() { einlab_config_free(p); }
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "einlab: cannot write " << path << '\n';
        throw Failure{kExitUsage};
    }
}

std::vector<std::string> split_pair(const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
        std::cerr << "einlab: " << flag << " expects two integers separated by a comma\n";
        throw Failure{kExitUsage};
    }
    return {text.substr(0, comma), text.substr(comma + 1)};
}

void save_or_print(const Family& fam, const std::string& out) {
    LibString json;
    check(einlab_family_export(fam.p, &json.p));
    emit(json.str(), out);
    if (!out.empty()) std::cerr << "einlab: family written to " << out << '\n';
}

// Dotted-path rows for a report; arrays index as path.0, path.1, ...
void flatten(const nlohmann::json& j, const std::string& path, std::string& out) {
    if (j.is_object() || j.is_array()) {
        if (j.empty()) out += path + ",\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            const std::string key = j.is_object() ? it.key() : std::to_string(i);
            flatten(*it, path.empty() ? key : path + "." + key, out);
        }
        return;
    }
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        v = q + "\"";
    }
    out += path + "," + v + "\n";
}

void print_report(const LibString& rep, const Config& cfg) {
    LibString fmt;
    check(einlab_config_get(cfg.p, "output_format", &fmt.p));
    if (fmt.str() != "csv") {
        std::cout << rep.str();
        return;
    }
    std::string out = "key,value\n";
    flatten(nlohmann::json::parse(rep.str()), "", out);
    std::cout << out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Einstein metrics on torus-bundle constructions: build, verify, diagnose, classify"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "Config file (flat key = value); defaults to $EINLAB_CONFIG");
    app.add_option("--set", overrides, "Override one config entry, key=value (repeatable)");

    // build-negative / build-ricci-flat
    int n = 1, p = 2, psi_sign = 1;
    long long q1 = 0, q2 = 1;
    double s1 = 1.0, lambda = 0.5, vol_base = 0.0;
    double eps = 0.0;
    std::string out_path;
    auto add_base = [&](CLI::App* sc) {
        sc->add_option("--n", n, "Complex dimension of the base")->check(CLI::PositiveNumber);
        sc->add_option("--p", p, "Einstein constant of the base")->check(CLI::PositiveNumber);
        sc->add_option("--q1", q1, "First characteristic-class multiplier")->required();
        sc->add_option("--q2", q2, "Second characteristic-class multiplier")->required();
        sc->add_option("--vol-base", vol_base, "Volume of the base (defaults to config vol_base)");
        sc->add_option("--out", out_path, "Write the family JSON here instead of stdout");
    };
    auto* neg = app.add_subcommand("build-negative", "Build a non-positive family (eps < 0 by default -(2n+2))");
    add_base(neg);
    neg->add_option("--s1", s1, "Left collapse radius")->required();
    neg->add_option("--lambda", lambda, "Family parameter in (0, 1]")->required();
    auto* eps_opt = neg->add_option("--eps", eps, "Einstein constant (<= 0)");
    neg->add_option("--psi-sign", psi_sign, "Sign of psi (+1 or -1)");

    auto* flat = app.add_subcommand("build-ricci-flat", "Build a Ricci-flat family");
    add_base(flat);
    flat->add_option("--s1", s1, "Left collapse radius")->required();
    flat->add_option("--lambda", lambda, "Family parameter in (0, 1]")->required();
    flat->add_option("--psi-sign", psi_sign, "Sign of psi (+1 or -1)");

    auto* pos = app.add_subcommand("build-positive", "Build a positive family (eps = 2n+2) on the 3-sphere bundle");
    add_base(pos);

    std::string family_path;
    auto* ver = app.add_subcommand("verify", "Verify the Einstein system and boundary conditions for a family file");
    ver->add_option("family", family_path, "Family JSON")->required();

    bool want_q = false, want_vol = false, want_decay = false;
    auto* diag = app.add_subcommand("diagnose", "Geometric diagnostics for a family file");
    diag->add_option("family", family_path, "Family JSON")->required();
    diag->add_flag("--q-curvature", want_q, "Q-curvature of the conformal infinity (n = 1)");
    diag->add_flag("--volume", want_vol, "Renormalized volume log-term or Ricci-flat growth");
    diag->add_flag("--decay", want_decay, "Ricci-flat curvature-decay proxies and cone limit");

    std::string q_text, qhat_text, mode = "congruences";
    auto* cls = app.add_subcommand("classify", "Decide homeomorphism / diffeomorphism of two 7-manifolds W_q");
    cls->add_option("--q", q_text, "q1,q2")->required();
    cls->add_option("--qhat", qhat_text, "q1,q2 of the second manifold")->required();
    cls->add_option("--mode", mode, "invariants or congruences")->check(CLI::IsMember({"invariants", "congruences"}));

    std::string kind;
    long long s_min = 0, s_max = 0;
    auto* pairs = app.add_subcommand("enumerate-pairs", "Classify the standard homeomorphic pair families");
    pairs->add_option("--kind", kind, "spin or nonspin")->required()->check(CLI::IsMember({"spin", "nonspin"}));
    pairs->add_option("--s-min", s_min, "First parameter value")->check(CLI::NonNegativeNumber);
    pairs->add_option("--s-max", s_max, "Last parameter value")->required()->check(CLI::NonNegativeNumber);

    std::size_t grid = 0;
    double s_upper = 0.0;
    auto* dump = app.add_subcommand("dump-profile", "CSV of the profile functions on a grid");
    dump->add_option("family", family_path, "Family JSON")->required();
    dump->add_option("--grid", grid, "Number of grid points (default: config profile_points)");
    dump->add_option("--s-max", s_upper, "Upper end for complete families (default 1e3 s1)");
    dump->add_option("--out", out_path, "Write CSV here instead of stdout");

    auto* show = app.add_subcommand("show-config", "Print the effective configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        Config cfg;
        if (config_path.empty())
            if (const char* env = std::getenv("EINLAB_CONFIG"); env && *env) config_path = env;
        if (config_path.empty()) check(einlab_config_default(&cfg.p));
        else check(einlab_config_load(config_path.c_str(), &cfg.p));
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                std::cerr << "einlab: --set expects key=value\n";
                return kExitUsage;
            }
            check(einlab_config_set(cfg.p, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
        }

        if (*neg || *flat) {
            einlab_negative_spec spec{};
            spec.n = n;
            spec.p = p;
            spec.q1 = q1;
            spec.q2 = q2;
            spec.s1 = s1;
            spec.lambda = lambda;
            spec.eps = *flat ? 0.0 : (eps_opt->count() ? eps : -(2.0 * n + 2.0));
            spec.psi_sign = psi_sign;
            spec.vol_base = vol_base;
            Family fam;
            check(einlab_build_negative(&spec, cfg.p, &fam.p));
            save_or_print(fam, out_path);
            return kExitPass;
        }
        if (*pos) {
            einlab_positive_spec spec{n, p, q1, q2, vol_base};
            Family fam;
            check(einlab_build_positive(&spec, cfg.p, &fam.p));
            save_or_print(fam, out_path);
            return kExitPass;
        }
        if (*ver) {
            Family fam;
            check(einlab_family_load(family_path.c_str(), &fam.p));
            LibString rep;
            int ok = 0;
            check(einlab_verify(fam.p, cfg.p, &rep.p, &ok));
            print_report(rep, cfg);
            return ok ? kExitPass : kExitFail;
        }
        if (*diag) {
            Family fam;
            check(einlab_family_load(family_path.c_str(), &fam.p));
            unsigned flags = 0;
            if (want_q) flags |= EINLAB_DIAG_Q_CURVATURE;
            if (want_vol) flags |= EINLAB_DIAG_VOLUME;
            if (want_decay) flags |= EINLAB_DIAG_DECAY;
            LibString rep;
            int ok = 0;
            check(einlab_diagnose(fam.p, cfg.p, flags, &rep.p, &ok));
            print_report(rep, cfg);
            return ok ? kExitPass : kExitFail;
        }
        if (*cls) {
            const auto a = split_pair(q_text, "--q");
            const auto b = split_pair(qhat_text, "--qhat");
            LibString rep;
            int homeo = 0, diffeo = 0;
            const einlab_status st =
                einlab_classify(a[0].c_str(), a[1].c_str(), b[0].c_str(), b[1].c_str(),
                                mode == "invariants" ? EINLAB_MODE_INVARIANTS : EINLAB_MODE_CONGRUENCES, &rep.p,
                                &homeo, &diffeo);
            if (rep.p) print_report(rep, cfg);
            check(st);
            return kExitPass;
        }
        if (*pairs) {
            if (s_max < s_min) {
                std::cerr << "einlab: --s-max must not be below --s-min\n";
                return kExitUsage;
            }
            LibString rep;
            int all = 0;
            check(einlab_enumerate_pairs(kind == "spin" ? EINLAB_PAIRS_SPIN : EINLAB_PAIRS_NONSPIN, s_min, s_max, &rep.p,
                                         &all));
            print_report(rep, cfg);
            return all ? kExitPass : kExitFail;
        }
        if (*dump) {
            Family fam;
            check(einlab_family_load(family_path.c_str(), &fam.p));
            LibString csv;
            check(einlab_dump_profile(fam.p, cfg.p, grid, s_upper, &csv.p));
            emit(csv.str(), out_path);
            return kExitPass;
        }
        if (*show) {
            LibString text;
            check(einlab_config_dump(cfg.p, &text.p));
            std::cout << text.str();
            return kExitPass;
        }
    } catch (const Failure& f) {
        return f.code;
    }
    return kExitUsage;
}
