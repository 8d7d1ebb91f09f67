#include "serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace einlab {
namespace {

using nlohmann::json;

std::string int_str(std::int64_t v) { return std::to_string(v); }

std::int64_t parse_int(const std::string& s) {
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::Schema, "expected a decimal integer string, got '" + s + "'");
    return out;
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorCode::Schema, std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::string str_field(const json& obj, const char* key) {
    const json& v = field(obj, key);
    if (!v.is_string()) throw Error(ErrorCode::Schema, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

double num_field(const json& obj, const char* key) { return parse_double(str_field(obj, key)); }

json optional_num(const std::optional<double>& v) { return v ? json(format_double(*v)) : json(nullptr); }

std::optional<double> optional_num_field(const json& obj, const char* key) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return num_field(obj, key);
}

FamilyClass class_from(const std::string& s) {
    if (s == "negative") return FamilyClass::Negative;
    if (s == "ricci-flat") return FamilyClass::RicciFlat;
    if (s == "positive") return FamilyClass::Positive;
    throw Error(ErrorCode::Schema, "unknown family class '" + s + "'");
}

}  // namespace

const char* to_string(FamilyClass c) noexcept {
    switch (c) {
        case FamilyClass::Negative: return "negative";
        case FamilyClass::RicciFlat: return "ricci-flat";
        case FamilyClass::Positive: return "positive";
    }
    return "unknown";
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& s) {
    if (s == "nan") return NAN;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::Schema, "expected a decimal number string, got '" + s + "'");
    return out;
}

nlohmann::json family_to_json(const Family& f) {
    json j;
    j["schema"] = kFamilySchema;
    j["version"] = kFamilySchemaVersion;
    j["params"] = {{"n", int_str(f.params.n)},
                   {"p", int_str(f.params.p)},
                   {"q1", int_str(f.params.q1)},
                   {"q2", int_str(f.params.q2)},
                   {"eps", format_double(f.params.eps)},
                   {"vol_base", format_double(f.params.vol_base)}};
    j["coefficients"] = {{"kind", f.coeffs.kind == FamilyKind::GenericPsi ? "generic" : "psi-zero"},
                         {"kappa", format_double(f.coeffs.kappa)},
                         {"c1", format_double(f.coeffs.c1)},
                         {"c2", format_double(f.coeffs.c2)},
                         {"w1", format_double(f.coeffs.w1)},
                         {"w2", format_double(f.coeffs.w2)},
                         {"psi", format_double(f.coeffs.psi)}};
    j["domain"] = {{"s1", format_double(f.domain.s1)}, {"s2", optional_num(f.domain.s2)}};
    j["metadata"] = {{"builder", f.metadata.builder},
                     {"class", to_string(f.metadata.family_class)},
                     {"lambda", optional_num(f.metadata.lambda)},
                     {"psi_sign", int_str(f.metadata.psi_sign)},
                     {"x", optional_num(f.metadata.x)},
                     {"y", optional_num(f.metadata.y)},
                     {"line_offset", optional_num(f.metadata.line_offset)}};
    return j;
}

Family family_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorCode::Schema, "family document must be a JSON object");
    if (str_field(j, "schema") != kFamilySchema) throw Error(ErrorCode::Schema, "not an einlab family document");
    const json& ver = field(j, "version");
    if (!ver.is_number_integer() || ver.get<int>() != kFamilySchemaVersion)
        throw Error(ErrorCode::Schema, "unsupported family schema version " + ver.dump() + " (expected " +
                                           std::to_string(kFamilySchemaVersion) + ")");
    Family f;
    const json& p = field(j, "params");
    f.params.n = static_cast<int>(parse_int(str_field(p, "n")));
    f.params.p = static_cast<int>(parse_int(str_field(p, "p")));
    f.params.q1 = parse_int(str_field(p, "q1"));
    f.params.q2 = parse_int(str_field(p, "q2"));
    f.params.eps = num_field(p, "eps");
    f.params.vol_base = num_field(p, "vol_base");

    const json& c = field(j, "coefficients");
    const std::string kind = str_field(c, "kind");
    if (kind == "generic") f.coeffs.kind = FamilyKind::GenericPsi;
    else if (kind == "psi-zero") f.coeffs.kind = FamilyKind::PsiZero;
    else throw Error(ErrorCode::Schema, "unknown coefficient kind '" + kind + "'");
    f.coeffs.kappa = num_field(c, "kappa");
    f.coeffs.c1 = num_field(c, "c1");
    f.coeffs.c2 = num_field(c, "c2");
    f.coeffs.w1 = num_field(c, "w1");
    f.coeffs.w2 = num_field(c, "w2");
    f.coeffs.psi = num_field(c, "psi");

    const json& d = field(j, "domain");
    f.domain.s1 = num_field(d, "s1");
    f.domain.s2 = optional_num_field(d, "s2");

    const json& m = field(j, "metadata");
    f.metadata.builder = str_field(m, "builder");
    f.metadata.family_class = class_from(str_field(m, "class"));
    f.metadata.lambda = optional_num_field(m, "lambda");
    f.metadata.psi_sign = static_cast<int>(parse_int(str_field(m, "psi_sign")));
    f.metadata.x = optional_num_field(m, "x");
    f.metadata.y = optional_num_field(m, "y");
    f.metadata.line_offset = optional_num_field(m, "line_offset");

    if (f.params.n < 1 || f.params.p < 1) throw Error(ErrorCode::Schema, "n and p must be positive");
    if (f.params.q1 == 0 && f.params.q2 == 0) throw Error(ErrorCode::Schema, "bundle charge (0, 0) is excluded");
    if (!(f.domain.s1 > 0.0)) throw Error(ErrorCode::Schema, "s1 must be positive");
    return f;
}

std::string export_family(const Family& family) { return family_to_json(family).dump(2) + "\n"; }

Family import_family(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Schema, std::string("malformed JSON: ") + e.what());
    }
    return family_from_json(j);
}

void save_family(const Family& family, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    out << export_family(family);
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

Family load_family(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return import_family(buf.str());
}

}  // namespace einlab
