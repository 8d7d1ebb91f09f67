#pragma once

#include <json.hpp>
#include <string>

#include "family.hpp"

namespace einlab {

inline constexpr const char* kFamilySchema = "einlab.family";
inline constexpr int kFamilySchemaVersion = 1;

// Shortest decimal string that reads back to the same double.
std::string format_double(double v);
// Throws Schema on anything that is not a complete decimal number.
double parse_double(const std::string& s);

nlohmann::json family_to_json(const Family& family);
// Throws Schema on a wrong schema name, version mismatch or missing field.
Family family_from_json(const nlohmann::json& j);

std::string export_family(const Family& family);
Family import_family(const std::string& text);

// Throws Io on file errors.
void save_family(const Family& family, const std::string& path);
Family load_family(const std::string& path);

}  // namespace einlab
