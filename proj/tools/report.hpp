#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arbor/treefn.hpp"

namespace arbor::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* tool_name = "arbor";
inline constexpr const char* tool_version = "0.1.0";

/// Finite values as numbers; inf and nan as the strings "inf", "-inf", "nan".
Json number(double x);
Json complex_json(Complex z);

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct Report {
    std::string command;
    std::string config_hash;
    Json config = Json::object();
    Json summary = Json::object();
    std::vector<Table> tables;
};

/// One JSON document: tool, version, command, config_hash, config, summary,
/// tables (each with columns and rows).
void write_json(const Report& report, std::ostream& out);

/// `# key=value` metadata lines (config and flattened summary), then each
/// table as `# table=NAME`, a header row and data rows, separated by a blank
/// line. Doubles use 17 significant digits.
void write_csv(const Report& report, std::ostream& out);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t x);

}  // namespace arbor::cli
