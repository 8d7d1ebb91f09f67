#include "einlab/einlab.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "builders.hpp"
#include "config.hpp"
#include "error.hpp"
#include "reports.hpp"
#include "serialize.hpp"
#include "topology.hpp"
#include "verifier.hpp"

struct einlab_family {
    einlab::Family value;
};

struct einlab_config {
    einlab::RunConfig value;
};

namespace {

thread_local std::string g_last_error;

struct ArgError {
    std::string what;
};

einlab_status map_code(einlab::ErrorCode c) {
    using einlab::ErrorCode;
    switch (c) {
        case ErrorCode::Domain: return EINLAB_E_DOMAIN;
        case ErrorCode::InconsistentCoefficients: return EINLAB_E_INCONSISTENT;
        case ErrorCode::DegenerateFiber: return EINLAB_E_DEGENERATE_FIBER;
        case ErrorCode::Precondition: return EINLAB_E_PRECONDITION;
        case ErrorCode::Solver: return EINLAB_E_SOLVER;
        case ErrorCode::NotCce: return EINLAB_E_NOT_CCE;
        case ErrorCode::Unsupported: return EINLAB_E_UNSUPPORTED;
        case ErrorCode::OutOfModel: return EINLAB_E_OUT_OF_MODEL;
        case ErrorCode::Schema: return EINLAB_E_SCHEMA;
        case ErrorCode::Io: return EINLAB_E_IO;
    }
    return EINLAB_E_INTERNAL;
}

template <class F>
einlab_status guarded(F&& body) {
    g_last_error.clear();
    try {
        body();
        return EINLAB_OK;
    } catch (const ArgError& e) {
        g_last_error = e.what;
        return EINLAB_E_INVALID_ARGUMENT;
    } catch (const einlab::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return EINLAB_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return EINLAB_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return EINLAB_E_INTERNAL;
    }
}

void require(const void* p, const char* name) {
    if (p == nullptr) throw ArgError{std::string(name) + " must not be NULL"};
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const einlab::RunConfig& config_or_default(const einlab_config* cfg) {
    static const einlab::RunConfig defaults;
    return cfg ? cfg->value : defaults;
}

einlab::BigInt parse_big(const char* text, const char* name) {
    require(text, name);
    std::string s(text);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw ArgError{std::string(name) + " is not an integer"};
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw ArgError{std::string(name) + " is not an integer"};
    if (s[0] == '+') s.erase(0, 1);
    return einlab::BigInt(s);
}

}  // namespace

extern "C" {

const char* einlab_last_error(void) { return g_last_error.c_str(); }

const char* einlab_status_name(einlab_status status) {
    switch (status) {
        case EINLAB_OK: return "ok";
        case EINLAB_E_DOMAIN: return "domain";
        case EINLAB_E_INCONSISTENT: return "inconsistent-coefficients";
        case EINLAB_E_DEGENERATE_FIBER: return "degenerate-fiber";
        case EINLAB_E_PRECONDITION: return "precondition";
        case EINLAB_E_SOLVER: return "solver";
        case EINLAB_E_NOT_CCE: return "not-cce";
        case EINLAB_E_UNSUPPORTED: return "unsupported";
        case EINLAB_E_OUT_OF_MODEL: return "out-of-model";
        case EINLAB_E_SCHEMA: return "schema";
        case EINLAB_E_IO: return "io";
        case EINLAB_E_INVALID_ARGUMENT: return "invalid-argument";
        case EINLAB_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* einlab_version(void) { return "1.0.0"; }

void einlab_string_free(char* s) { std::free(s); }

einlab_status einlab_config_default(einlab_config** out) {
    return guarded([&] {
        require(out, "out");
        *out = new einlab_config{};
    });
}

einlab_status einlab_config_load(const char* path, einlab_config** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new einlab_config{einlab::load_config(path)};
    });
}

einlab_status einlab_config_set(einlab_config* cfg, const char* key, const char* value) {
    return guarded([&] {
        require(cfg, "cfg");
        require(key, "key");
        require(value, "value");
        einlab::apply_setting(cfg->value, key, value);
    });
}

einlab_status einlab_config_get(const einlab_config* cfg, const char* key, char** value) {
    return guarded([&] {
        require(key, "key");
        require(value, "value");
        *value = dup_string(einlab::get_setting(config_or_default(cfg), key));
    });
}

einlab_status einlab_config_dump(const einlab_config* cfg, char** text) {
    return guarded([&] {
        require(text, "text");
        *text = dup_string(einlab::to_text(config_or_default(cfg)));
    });
}

void einlab_config_free(einlab_config* cfg) { delete cfg; }

einlab_status einlab_build_negative(const einlab_negative_spec* spec, const einlab_config* cfg, einlab_family** out) {
    return guarded([&] {
        require(spec, "spec");
        require(out, "out");
        const einlab::RunConfig& c = config_or_default(cfg);
        einlab::NegativeSpec ns;
        ns.s1 = spec->s1;
        ns.lambda = spec->lambda;
        ns.eps = spec->eps;
        ns.q1 = spec->q1;
        ns.q2 = spec->q2;
        ns.psi_sign = spec->psi_sign;
        ns.lambda_floor = c.lambda_floor;
        const einlab::BaseManifold base{spec->n, spec->p, spec->vol_base > 0.0 ? spec->vol_base : c.vol_base};
        *out = new einlab_family{einlab::build_nonpositive(ns, base)};
    });
}

einlab_status einlab_build_positive(const einlab_positive_spec* spec, const einlab_config* cfg, einlab_family** out) {
    return guarded([&] {
        require(spec, "spec");
        require(out, "out");
        const einlab::RunConfig& c = config_or_default(cfg);
        einlab::PositiveSpec ps{spec->n, spec->p, spec->q1, spec->q2, spec->vol_base > 0.0 ? spec->vol_base : c.vol_base};
        *out = new einlab_family{einlab::build_positive(ps)};
    });
}

void einlab_family_free(einlab_family* family) { delete family; }

einlab_status einlab_family_export(const einlab_family* family, char** json) {
    return guarded([&] {
        require(family, "family");
        require(json, "json");
        *json = dup_string(einlab::export_family(family->value));
    });
}

einlab_status einlab_family_import(const char* json, einlab_family** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = new einlab_family{einlab::import_family(json)};
    });
}

einlab_status einlab_family_save(const einlab_family* family, const char* path) {
    return guarded([&] {
        require(family, "family");
        require(path, "path");
        einlab::save_family(family->value, path);
    });
}

einlab_status einlab_family_load(const char* path, einlab_family** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new einlab_family{einlab::load_family(path)};
    });
}

einlab_status einlab_family_domain(const einlab_family* family, double* s1, double* s2, int* compact) {
    return guarded([&] {
        require(family, "family");
        const auto& d = family->value.domain;
        if (s1) *s1 = d.s1;
        if (s2) *s2 = d.s2.value_or(0.0);
        if (compact) *compact = d.s2 ? 1 : 0;
    });
}

einlab_status einlab_family_eval(const einlab_family* family, double s, einlab_profile_point* out) {
    return guarded([&] {
        require(family, "family");
        require(out, "out");
        const einlab::ProfileSample ps = einlab::eval_profile(family->value.params, family->value.coeffs, s, 2);
        const auto put = [](double* dst, const einlab::Jet& j) {
            dst[0] = j.v;
            dst[1] = j.d1;
            dst[2] = j.d2;
        };
        out->s = s;
        put(out->alpha, ps.alpha);
        put(out->beta, ps.beta);
        put(out->delta, ps.delta);
        put(out->u1, ps.u1);
        put(out->u2, ps.u2);
        put(out->b11, ps.b11);
        put(out->b12, ps.b12);
        put(out->b22, ps.b22);
        out->b_defined = ps.b_defined ? 1 : 0;
    });
}

einlab_status einlab_verify(const einlab_family* family, const einlab_config* cfg, char** report, int* all_pass) {
    return guarded([&] {
        require(family, "family");
        const einlab::VerificationReport rep =
            einlab::verify_family(family->value, config_or_default(cfg).verify_options());
        if (report) *report = dup_string(einlab::verification_json(family->value, rep).dump(2) + "\n");
        if (all_pass) *all_pass = rep.all_pass ? 1 : 0;
    });
}

einlab_status einlab_diagnose(const einlab_family* family, const einlab_config* cfg, unsigned flags, char** report,
                              int* all_pass) {
    return guarded([&] {
        require(family, "family");
        const einlab::DiagnosticsOutcome d = einlab::run_diagnostics(family->value, config_or_default(cfg), flags);
        if (report) *report = dup_string(d.report.dump(2) + "\n");
        if (all_pass) *all_pass = d.all_pass ? 1 : 0;
    });
}

einlab_status einlab_dump_profile(const einlab_family* family, const einlab_config* cfg, size_t npoints, double s_max,
                                  char** csv) {
    return guarded([&] {
        require(family, "family");
        require(csv, "csv");
        const einlab::RunConfig& c = config_or_default(cfg);
        *csv = dup_string(einlab::profile_csv(family->value, c, npoints ? npoints : c.profile_points, s_max));
    });
}

einlab_status einlab_classify(const char* q1, const char* q2, const char* qhat1, const char* qhat2,
                              einlab_classify_mode mode, char** verdict, int* homeomorphic, int* diffeomorphic) {
    bool comparable = true;
    const einlab_status st = guarded([&] {
        if (mode != EINLAB_MODE_INVARIANTS && mode != EINLAB_MODE_CONGRUENCES) throw ArgError{"unknown classify mode"};
        const einlab::BundleCharge q{parse_big(q1, "q1"), parse_big(q2, "q2")};
        const einlab::BundleCharge qh{parse_big(qhat1, "qhat1"), parse_big(qhat2, "qhat2")};
        const auto m = mode == EINLAB_MODE_INVARIANTS ? einlab::ClassifyMode::Invariants : einlab::ClassifyMode::Congruences;
        const einlab::Verdict v = einlab::classify(q, qh, m);
        if (verdict) *verdict = dup_string(einlab::verdict_json(q, qh, m, v).dump(2) + "\n");
        if (homeomorphic) *homeomorphic = v.homeomorphic ? 1 : 0;
        if (diffeomorphic) *diffeomorphic = v.diffeomorphic ? 1 : 0;
        comparable = v.comparable;
        if (!comparable) g_last_error = v.reason;
    });
    if (st == EINLAB_OK && !comparable) return EINLAB_E_OUT_OF_MODEL;
    return st;
}

einlab_status einlab_enumerate_pairs(einlab_pair_kind kind, long long s_min, long long s_max, char** report,
                                     int* all_match) {
    return guarded([&] {
        if (kind != EINLAB_PAIRS_SPIN && kind != EINLAB_PAIRS_NONSPIN) throw ArgError{"unknown pair kind"};
        if (s_min < 0 || s_max < s_min) throw ArgError{"need 0 <= s_min <= s_max"};
        const auto k = kind == EINLAB_PAIRS_SPIN ? einlab::PairKind::Spin : einlab::PairKind::NonSpin;
        const auto pairs = einlab::example_pairs(k, s_min, s_max);
        bool all = true;
        for (const auto& e : pairs) all = all && e.matches;
        if (report) *report = dup_string(einlab::pairs_json(k, pairs).dump(2) + "\n");
        if (all_match) *all_match = all ? 1 : 0;
    });
}

}  // extern "C"
