#include "report.hpp"

#include <cmath>
#include <cstdio>

#include "arbor/format.hpp"

namespace arbor::cli {

Json number(double x) {
    if (std::isfinite(x)) return x == 0.0 ? Json(0.0) : Json(x);
    return format_double(x);
}

Json complex_json(Complex z) {
    return Json{{"re", number(z.real())}, {"im", number(z.imag())}};
}

void write_json(const Report& report, std::ostream& out) {
    Json doc;
    doc["tool"] = tool_name;
    doc["version"] = tool_version;
    doc["command"] = report.command;
    doc["config_hash"] = report.config_hash;
    doc["config"] = report.config;
    doc["summary"] = report.summary;
    Json tables = Json::object();
    for (const Table& t : report.tables) {
        tables[t.name] = Json{{"columns", t.columns}, {"rows", t.rows}};
    }
    doc["tables"] = std::move(tables);
    out << doc.dump(2) << '\n';
}

namespace {

std::string csv_cell(const Json& v) {
    switch (v.type()) {
    case Json::value_t::null: return "";
    case Json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case Json::value_t::number_integer: return std::to_string(v.get<std::int64_t>());
    case Json::value_t::number_unsigned: return std::to_string(v.get<std::uint64_t>());
    case Json::value_t::number_float: return format_double(v.get<double>());
    case Json::value_t::string: {
        const auto& s = v.get_ref<const std::string&>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + '"';
    }
    default: return v.dump();
    }
}

void flatten(const std::string& prefix, const Json& v, std::ostream& out) {
    if (v.is_object()) {
        for (const auto& [k, item] : v.items()) flatten(prefix.empty() ? k : prefix + "." + k, item, out);
    } else if (v.is_array()) {
        if (v.empty()) out << "# " << prefix << "=\n";
        for (std::size_t i = 0; i < v.size(); ++i) flatten(prefix + "." + std::to_string(i), v[i], out);
    } else {
        std::string cell = csv_cell(v);
        for (char& c : cell) {
            if (c == '\n') c = ' ';
        }
        out << "# " << prefix << "=" << cell << '\n';
    }
}

}  // namespace

void write_csv(const Report& report, std::ostream& out) {
    out << "# tool=" << tool_name << '\n';
    out << "# version=" << tool_version << '\n';
    out << "# command=" << report.command << '\n';
    out << "# config_hash=" << report.config_hash << '\n';
    flatten("config", report.config, out);
    flatten("summary", report.summary, out);
    for (const Table& t : report.tables) {
        out << '\n' << "# table=" << t.name << '\n';
        for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
            out << '\n';
        }
    }
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

}  // namespace arbor::cli
