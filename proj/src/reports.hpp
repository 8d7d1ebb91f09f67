#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "config.hpp"
#include "family.hpp"
#include "topology.hpp"
#include "verifier.hpp"

namespace einlab {

inline constexpr const char* kReportSchema = "einlab.report";
inline constexpr int kReportSchemaVersion = 1;

nlohmann::json verification_json(const Family& family, const VerificationReport& rep);

enum DiagnosticFlag : unsigned {
    kDiagQCurvature = 1u,
    kDiagVolume = 2u,
    kDiagDecay = 4u,
};

struct DiagnosticsOutcome {
    nlohmann::json report;
    bool all_pass = true;
};

// flags == 0 runs every diagnostic that applies to the family. An explicitly
// requested diagnostic that does not apply throws Unsupported / NotCce.
DiagnosticsOutcome run_diagnostics(const Family& family, const RunConfig& cfg, unsigned flags);

// Columns s, t, alpha, beta, Delta, U1, U2, b11, b12, b22. The grid covers
// [s1, s2] for compact families and [s1, s_max] otherwise (s_max <= 0 means 1e3 s1).
std::string profile_csv(const Family& family, const RunConfig& cfg, std::size_t npoints, double s_max);

nlohmann::json verdict_json(const BundleCharge& q, const BundleCharge& qhat, ClassifyMode mode, const Verdict& v);
nlohmann::json pairs_json(PairKind kind, const std::vector<ExamplePair>& pairs);

// Wraps a payload with the report schema header.
nlohmann::json report_envelope(const std::string& kind, nlohmann::json body);

}  // namespace einlab
