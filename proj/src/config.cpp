#include "config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "error.hpp"
#include "serialize.hpp"

namespace einlab {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    T out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw Error(ErrorCode::Precondition, "config: bad value for " + key + ": '" + v + "'");
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

template <class T>
Setter number(T RunConfig::*field) {
    return [field](RunConfig& c, const std::string& k, const std::string& v) { c.*field = parse_number<T>(k, v); };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"residual_tol", number(&RunConfig::residual_tol)},
        {"identity_tol", number(&RunConfig::identity_tol)},
        {"derivative_tol", number(&RunConfig::derivative_tol)},
        {"collapse_tol", number(&RunConfig::collapse_tol)},
        {"qcurv_tol", number(&RunConfig::qcurv_tol)},
        {"log_term_tol", number(&RunConfig::log_term_tol)},
        {"exponent_rel_tol", number(&RunConfig::exponent_rel_tol)},
        {"grid_points", number(&RunConfig::grid_points)},
        {"scan_points", number(&RunConfig::scan_points)},
        {"profile_points", number(&RunConfig::profile_points)},
        {"endpoint_clip", number(&RunConfig::endpoint_clip)},
        {"quad_rel_tol", number(&RunConfig::quad_rel_tol)},
        {"quad_max_depth", number(&RunConfig::quad_max_depth)},
        {"vol_base", number(&RunConfig::vol_base)},
        {"lambda_floor", number(&RunConfig::lambda_floor)},
        {"log_fit_cutoffs", number(&RunConfig::log_fit_cutoffs)},
        {"log_fit_terms", number(&RunConfig::log_fit_terms)},
        {"log_fit_delta_max", number(&RunConfig::log_fit_delta_max)},
        {"output_format",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v == "json") c.output_format = OutputFormat::Json;
             else if (v == "csv") c.output_format = OutputFormat::Csv;
             else throw Error(ErrorCode::Precondition, "config: " + k + " must be json or csv");
         }},
    };
    return table;
}

}  // namespace

VerifyOptions RunConfig::verify_options() const {
    VerifyOptions o;
    o.grid_points = grid_points;
    o.clip = endpoint_clip;
    o.residual_rel_tol = residual_tol;
    o.collapse_tol = collapse_tol;
    o.identity_tol = identity_tol;
    o.scan_points = scan_points;
    return o;
}

VolumeOptions RunConfig::volume_options() const {
    VolumeOptions o;
    o.ncutoffs = log_fit_cutoffs;
    o.terms = log_fit_terms;
    o.delta_max_rel = log_fit_delta_max;
    return o;
}

void validate(const RunConfig& c) {
    const double tols[] = {c.residual_tol,     c.identity_tol, c.derivative_tol, c.collapse_tol,
                           c.qcurv_tol,        c.log_term_tol, c.exponent_rel_tol, c.endpoint_clip,
                           c.quad_rel_tol,     c.vol_base,     c.lambda_floor,   c.log_fit_delta_max};
    for (double t : tols)
        if (!(t > 0.0)) throw Error(ErrorCode::Precondition, "config: tolerances and scales must be positive");
    if (c.grid_points < 10 || c.scan_points < 10 || c.profile_points < 10 || c.log_fit_cutoffs < 10)
        throw Error(ErrorCode::Precondition, "config: grid sizes must be at least 10");
    if (c.log_fit_terms < 1 || static_cast<std::size_t>(c.log_fit_terms) + 2 > c.log_fit_cutoffs)
        throw Error(ErrorCode::Precondition, "config: log_fit_terms must be positive and below log_fit_cutoffs - 1");
    if (c.quad_max_depth == 0) throw Error(ErrorCode::Precondition, "config: quad_max_depth must be positive");
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw Error(ErrorCode::Precondition, "config: unknown key '" + key + "'");
    RunConfig next = cfg;
    it->second(next, key, value);
    validate(next);
    cfg = next;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::Precondition, "config line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_text(const RunConfig& c) {
    std::ostringstream out;
    out << "residual_tol = " << format_double(c.residual_tol) << '\n'
        << "identity_tol = " << format_double(c.identity_tol) << '\n'
        << "derivative_tol = " << format_double(c.derivative_tol) << '\n'
        << "collapse_tol = " << format_double(c.collapse_tol) << '\n'
        << "qcurv_tol = " << format_double(c.qcurv_tol) << '\n'
        << "log_term_tol = " << format_double(c.log_term_tol) << '\n'
        << "exponent_rel_tol = " << format_double(c.exponent_rel_tol) << '\n'
        << "grid_points = " << c.grid_points << '\n'
        << "scan_points = " << c.scan_points << '\n'
        << "profile_points = " << c.profile_points << '\n'
        << "endpoint_clip = " << format_double(c.endpoint_clip) << '\n'
        << "quad_rel_tol = " << format_double(c.quad_rel_tol) << '\n'
        << "quad_max_depth = " << c.quad_max_depth << '\n'
        << "vol_base = " << format_double(c.vol_base) << '\n'
        << "lambda_floor = " << format_double(c.lambda_floor) << '\n'
        << "log_fit_cutoffs = " << c.log_fit_cutoffs << '\n'
        << "log_fit_terms = " << c.log_fit_terms << '\n'
        << "log_fit_delta_max = " << format_double(c.log_fit_delta_max) << '\n'
        << "output_format = " << (c.output_format == OutputFormat::Json ? "json" : "csv") << '\n';
    return out.str();
}

std::string get_setting(const RunConfig& cfg, const std::string& key) {
    std::istringstream in(to_text(cfg));
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (trim(line.substr(0, eq)) == key) return trim(line.substr(eq + 1));
    }
    throw Error(ErrorCode::Precondition, "config: unknown key '" + key + "'");
}

}  // namespace einlab
