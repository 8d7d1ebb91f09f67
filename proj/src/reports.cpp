#include "reports.hpp"

#include <cmath>
#include <sstream>

#include "diagnostics.hpp"
#include "error.hpp"
#include "radial.hpp"
#include "serialize.hpp"

namespace einlab {
namespace {

using nlohmann::json;

// NaN and infinities are not representable in JSON numbers.
json num(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

json matrix_json(const FiberMatrix& b) { return json::array({json::array({num(b.b11), num(b.b12)}), json::array({num(b.b12), num(b.b22)})}); }

json collapse_json(const CollapseReport& c) {
    return {{"end", c.end == End::Left ? "left" : "right"},
            {"s", num(c.s_end)},
            {"alpha_rel", num(c.alpha_at_end)},
            {"u_rel", num(c.u_at_end)},
            {"slope", num(c.slope)},
            {"pass", c.pass}};
}

bool within_rel(double value, double expected, double rel) { return std::abs(value - expected) <= rel * std::abs(expected); }

}  // namespace

json report_envelope(const std::string& kind, json body) {
    json j = {{"schema", kReportSchema}, {"version", kReportSchemaVersion}, {"kind", kind}};
    j["body"] = std::move(body);
    return j;
}

json verification_json(const Family& family, const VerificationReport& rep) {
    json collapse = json::array();
    for (const auto& c : rep.collapse) collapse.push_back(collapse_json(c));
    double max_hh = 0.0, max_ba = 0.0, max_se = 0.0;
    for (std::size_t i = 0; i < rep.residual.grid.size(); ++i) {
        if (std::isnan(rep.residual.res_hh[i])) continue;
        max_hh = std::max(max_hh, std::abs(rep.residual.res_hh[i]));
        max_ba = std::max(max_ba, std::abs(rep.residual.res_ba[i]));
        max_se = std::max(max_se, rep.residual.res_se[i]);
    }
    json body = {
        {"family", {{"class", to_string(family.metadata.family_class)},
                    {"n", family.params.n},
                    {"p", family.params.p},
                    {"q1", std::to_string(family.params.q1)},
                    {"q2", std::to_string(family.params.q2)},
                    {"eps", num(family.params.eps)}}},
        {"residual", {{"grid_points", rep.residual.grid.size()},
                      {"max_abs", num(rep.residual.max_abs)},
                      {"max_hh", num(max_hh)},
                      {"max_ba", num(max_ba)},
                      {"max_se", num(max_se)},
                      {"tolerance", num(rep.residual_tol)},
                      {"structural_failures", rep.residual.structural_failures.size()},
                      {"pass", rep.residual_pass}}},
        {"collapse", collapse},
        {"domain_scan", {{"points", rep.scan.npoints},
                         {"alpha_failures", rep.scan.alpha_failures},
                         {"delta_failures", rep.scan.delta_failures},
                         {"spd_failures", rep.scan.spd_failures},
                         {"auxiliary_failures", rep.scan.fz_failures},
                         {"pass", rep.scan.pass}}},
        {"all_pass", rep.all_pass}};
    if (family.coeffs.kind == FamilyKind::GenericPsi)
        body["psi_consistency"] = {{"relative", num(rep.psi_residual_rel)}, {"pass", rep.psi_pass}};
    return report_envelope("verify", std::move(body));
}

DiagnosticsOutcome run_diagnostics(const Family& family, const RunConfig& cfg, unsigned flags) {
    const ModelParams& pr = family.params;
    const bool cce = pr.eps < 0.0 && !family.compact();
    const bool flat = pr.eps == 0.0 && !family.compact();
    const bool all = flags == 0;
    DiagnosticsOutcome out;
    json body = json::object();

    if (cce && (all || (flags & kDiagQCurvature) || (flags & kDiagVolume))) {
        const BoundaryMetric bm = boundary_metric(family);
        body["boundary"] = {{"b_bar", matrix_json(bm.b_bar)},
                            {"c_bar_sq", num(bm.c_bar_sq)},
                            {"delta_bar", num(bm.delta_bar)},
                            {"u_bar", {num(bm.u_bar[0]), num(bm.u_bar[1])}},
                            {"alpha_lead", num(bm.alpha_lead)}};
    }
    if (flags & kDiagQCurvature) {
        if (!cce) throw Error(ErrorCode::NotCce, "Q-curvature needs a conformally compact (eps < 0) family");
        if (pr.n != 1) throw Error(ErrorCode::Unsupported, "Q-curvature is implemented for n = 1 only");
    }
    if (cce && pr.n == 1 && (all || (flags & kDiagQCurvature))) {
        const double q = q_curvature4(boundary_metric(family), pr);
        const bool pass = std::abs(q) <= cfg.qcurv_tol;
        body["q_curvature"] = {{"q", num(q)}, {"tolerance", num(cfg.qcurv_tol)}, {"pass", pass}};
        out.all_pass = out.all_pass && pass;
    }

    if (all || (flags & kDiagVolume)) {
        const VolumeReport vr = volume_report(family, cfg.volume_options());
        json v;
        if (vr.cce) {
            const bool pass = vr.fit.relative_log <= cfg.log_term_tol;
            json cut = json::array(), scaled = json::array(), coeffs = json::array();
            for (double d : vr.cutoffs) cut.push_back(num(d));
            for (double s : vr.scaled_volumes) scaled.push_back(num(s));
            for (double a : vr.fit.power_coeffs) coeffs.push_back(num(a));
            v = {{"mode", "cce"},
                 {"cutoffs", cut},
                 {"scaled_volumes", scaled},
                 {"power_coefficients", coeffs},
                 {"log_coefficient", num(vr.fit.log_coeff)},
                 {"relative_log", num(vr.fit.relative_log)},
                 {"fit_rms", num(vr.fit.rms_residual)},
                 {"tolerance", num(cfg.log_term_tol)},
                 {"pass", pass}};
            out.all_pass = out.all_pass && pass;
        } else if (flat) {
            const bool pass = within_rel(vr.growth_exponent, vr.expected_exponent, cfg.exponent_rel_tol);
            v = {{"mode", "ricci-flat"},
                 {"growth_exponent", num(vr.growth_exponent)},
                 {"expected_exponent", num(vr.expected_exponent)},
                 {"pass", pass}};
            out.all_pass = out.all_pass && pass;
        } else if (family.compact()) {
            v = {{"mode", "compact"}, {"total_volume", num(vr.volumes.front())}, {"pass", true}};
        } else {
            v = {{"mode", "complete"}, {"pass", true}};
        }
        body["volume"] = v;
    }

    if ((flags & kDiagDecay) && !flat)
        throw Error(ErrorCode::Unsupported, "decay diagnostics need a Ricci-flat family");
    if (flat && (all || (flags & kDiagDecay))) {
        const DecayReport dr = decay_report(family);
        const double tol = cfg.exponent_rel_tol;
        const bool shape_ok = within_rel(dr.shape_exponent, -2.0, tol);
        // The mixed proxy only has to decay at least quadratically.
        const bool mixed_ok = dr.mixed_exponent <= -2.0 * (1.0 - tol);
        const double scale = std::max({std::abs(dr.cone.b11), std::abs(dr.cone.b12), std::abs(dr.cone.b22)});
        const double cone_gap = std::max({std::abs(dr.cone_numeric.b11 - dr.cone.b11),
                                          std::abs(dr.cone_numeric.b12 - dr.cone.b12),
                                          std::abs(dr.cone_numeric.b22 - dr.cone.b22)}) / scale;
        const bool cone_ok = cone_gap <= 1e-2 && std::abs(dr.cone_det) <= 1e-12 * scale * scale;
        json dets = json::array();
        for (double d : dr.cone_det_numeric) dets.push_back(num(d));
        body["decay"] = {{"t_range", {num(dr.radii.front()), num(dr.radii.back())}},
                         {"shape_exponent", num(dr.shape_exponent)},
                         {"mixed_exponent", num(dr.mixed_exponent)},
                         {"expected_mixed_exponent", num(-(2.0 * pr.n + 2.0))},
                         {"cone_limit", matrix_json(dr.cone)},
                         {"cone_at_largest_t", matrix_json(dr.cone_numeric)},
                         {"cone_relative_gap", num(cone_gap)},
                         {"cone_det", num(dr.cone_det)},
                         {"numeric_det_along_t", dets},
                         {"pass", shape_ok && mixed_ok && cone_ok}};
        out.all_pass = out.all_pass && shape_ok && mixed_ok && cone_ok;
    }
    body["all_pass"] = out.all_pass;
    out.report = report_envelope("diagnose", std::move(body));
    return out;
}

std::string profile_csv(const Family& family, const RunConfig& cfg, std::size_t npoints, double s_max) {
    if (npoints < 2) throw Error(ErrorCode::Precondition, "profile dump needs at least two points");
    const double s1 = family.domain.s1;
    std::vector<double> grid;
    if (family.compact()) {
        const double s2 = *family.domain.s2;
        for (std::size_t i = 0; i < npoints; ++i)
            grid.push_back(s1 + (s2 - s1) * static_cast<double>(i) / static_cast<double>(npoints - 1));
        grid.back() = s2;
    } else {
        const double hi = s_max > 0.0 ? s_max : 1e3 * s1;
        if (!(hi > s1)) throw Error(ErrorCode::Precondition, "s_max must exceed s1");
        for (std::size_t i = 0; i < npoints; ++i)
            grid.push_back(s1 * std::pow(hi / s1, static_cast<double>(i) / static_cast<double>(npoints - 1)));
        grid.back() = hi;
    }
    grid.front() = s1;
    const std::vector<double> t = t_on_grid(family, grid, cfg.quadrature());
    const ProfileFunctions f = profile_functions(family.params, family.coeffs);

    std::ostringstream out;
    out << "s,t,alpha,beta,Delta,U1,U2,b11,b12,b22\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const ProfileSample ps = sample_profile(family.params, f, grid[i], 0);
        out << format_double(grid[i]) << ',' << format_double(t[i]) << ',' << format_double(ps.alpha.v) << ','
            << format_double(ps.beta.v) << ',' << format_double(ps.delta.v) << ',' << format_double(ps.u1.v) << ','
            << format_double(ps.u2.v);
        if (ps.b_defined)
            out << ',' << format_double(ps.b11.v) << ',' << format_double(ps.b12.v) << ',' << format_double(ps.b22.v);
        else
            out << ",nan,nan,nan";
        out << '\n';
    }
    return out.str();
}

json verdict_json(const BundleCharge& q, const BundleCharge& qhat, ClassifyMode mode, const Verdict& v) {
    json witness = json::object();
    for (const auto& [k, val] : v.witness) witness[k] = val;
    return report_envelope("classify",
                           {{"q", {to_string(q.q1), to_string(q.q2)}},
                            {"qhat", {to_string(qhat.q1), to_string(qhat.q2)}},
                            {"mode", mode == ClassifyMode::Invariants ? "invariants" : "congruences"},
                            {"comparable", v.comparable},
                            {"homeomorphic", v.homeomorphic},
                            {"diffeomorphic", v.diffeomorphic},
                            {"reason", v.reason},
                            {"witness", witness}});
}

json pairs_json(PairKind kind, const std::vector<ExamplePair>& pairs) {
    json rows = json::array();
    bool all = true;
    for (const auto& e : pairs) {
        rows.push_back({{"s", e.s},
                        {"q", {to_string(e.q.q1), to_string(e.q.q2)}},
                        {"qhat", {to_string(e.qhat.q1), to_string(e.qhat.q2)}},
                        {"homeomorphic", e.by_congruences.homeomorphic},
                        {"diffeomorphic", e.by_congruences.diffeomorphic},
                        {"invariants_agree", e.by_invariants.homeomorphic == e.by_congruences.homeomorphic &&
                                                 e.by_invariants.diffeomorphic == e.by_congruences.diffeomorphic},
                        {"expected_diffeomorphic", e.expected_diffeomorphic},
                        {"matches", e.matches}});
        all = all && e.matches;
    }
    return report_envelope("enumerate-pairs",
                           {{"kind", kind == PairKind::Spin ? "spin" : "nonspin"}, {"pairs", rows}, {"all_match", all}});
}

}  // namespace einlab
