#include "arbor/spec_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "arbor/format.hpp"

namespace arbor {

SpecError::SpecError(const std::string& origin, std::size_t line, const std::string& message)
    : std::runtime_error(origin + ":" + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Field {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

class Section {
public:
    Section(std::string_view text, const std::string& name, const std::string& origin)
        : origin_(origin), name_(name) {
        std::istringstream in{std::string(text)};
        std::string raw;
        std::size_t line = 0;
        std::optional<std::string> current;
        while (std::getline(in, raw)) {
            ++line;
            std::string_view s = raw;
            if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
            s = trim(s);
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') throw SpecError(origin, line, "unterminated section header");
                current = std::string(trim(s.substr(1, s.size() - 2)));
                if (*current == name) {
                    if (found_) throw SpecError(origin, line, "duplicate [" + name + "] section");
                    found_ = true;
                    header_line_ = line;
                }
                continue;
            }
            if (!current) throw SpecError(origin, line, "entry outside of any section");
            if (*current != name) continue;
            const auto eq = s.find('=');
            if (eq == std::string_view::npos) throw SpecError(origin, line, "expected 'key = value'");
            Field f{std::string(trim(s.substr(0, eq))), std::string(trim(s.substr(eq + 1))), line};
            if (f.key.empty()) throw SpecError(origin, line, "empty key");
            if (f.value.empty()) throw SpecError(origin, line, "empty value for '" + f.key + "'");
            fields_.push_back(std::move(f));
        }
        if (!found_) throw SpecError(origin, line, "missing [" + name + "] section");
    }

    /// Single-valued key. Marks it consumed.
    std::optional<Field> get(const std::string& key) {
        std::optional<Field> out;
        for (const Field& f : fields_) {
            if (f.key != key) continue;
            if (out) throw SpecError(origin_, f.line, "duplicate key '" + key + "'");
            out = f;
        }
        if (out) used_[key] = true;
        return out;
    }

    Field require(const std::string& key) {
        auto f = get(key);
        if (!f) throw SpecError(origin_, header_line_, "[" + name_ + "] is missing '" + key + "'");
        return *f;
    }

    std::vector<Field> all(const std::string& key) {
        std::vector<Field> out;
        for (const Field& f : fields_) {
            if (f.key == key) out.push_back(f);
        }
        used_[key] = true;
        return out;
    }

    /// Rejects keys nobody asked for.
    void finish() const {
        for (const Field& f : fields_) {
            if (!used_.count(f.key)) {
                throw SpecError(origin_, f.line, "unknown key '" + f.key + "' in [" + name_ + "]");
            }
        }
    }

    [[noreturn]] void fail(const Field& f, const std::string& message) const {
        throw SpecError(origin_, f.line, message);
    }

    std::size_t header_line() const noexcept { return header_line_; }
    const std::string& origin() const noexcept { return origin_; }

private:
    std::string origin_;
    std::string name_;
    std::vector<Field> fields_;
    std::map<std::string, bool> used_;
    bool found_ = false;
    std::size_t header_line_ = 0;
};

std::optional<std::size_t> to_count(std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::size_t count_field(const Section& sec, const Field& f, std::string_view text) {
    const auto v = to_count(text);
    if (!v) sec.fail(f, "'" + f.key + "': expected a nonnegative integer, got '" + std::string(text) + "'");
    if (*v == 0) sec.fail(f, "terminal vertex forbidden: '" + f.key + "' has branching count 0");
    return *v;
}

Complex complex_field(const Section& sec, const Field& f, std::string_view text) {
    try {
        return parse_complex(text);
    } catch (const std::invalid_argument& e) {
        sec.fail(f, "'" + f.key + "': " + e.what());
    }
}

VertexPath path_field(const Section& sec, const Field& f, std::string_view text) {
    try {
        return parse_path(text);
    } catch (const std::invalid_argument& e) {
        sec.fail(f, "'" + f.key + "': " + e.what());
    }
}

}  // namespace

VertexPath parse_path(std::string_view text) {
    const auto parts = split(trim(text), '.');
    if (parts.front() != "o") {
        throw std::invalid_argument("vertex path must start with 'o', got '" + std::string(text) + "'");
    }
    VertexPath path;
    for (std::size_t k = 1; k < parts.size(); ++k) {
        const auto v = to_count(parts[k]);
        if (!v) throw std::invalid_argument("bad child index '" + std::string(parts[k]) + "' in path");
        path.push_back(*v);
    }
    return path;
}

TreeSpec parse_tree_spec(std::string_view text, const std::string& origin) {
    Section sec(text, "tree", origin);
    const Field kind = sec.require("kind");
    std::optional<TreeSpec> spec;
    try {
        if (kind.value == "homogeneous") {
            const Field b = sec.require("b");
            spec = TreeSpec::homogeneous(count_field(sec, b, b.value));
        } else if (kind.value == "per-level") {
            const Field br = sec.require("branching");
            const Field tail = sec.require("tail");
            std::vector<std::size_t> prefix;
            for (auto part : split(br.value, ',')) prefix.push_back(count_field(sec, br, part));
            spec = TreeSpec::per_level(std::move(prefix), count_field(sec, tail, tail.value));
        } else if (kind.value == "explicit") {
            const Field par = sec.require("parents");
            const Field tail = sec.require("tail");
            std::vector<std::optional<std::size_t>> parents;
            for (auto part : split(par.value, ',')) {
                if (part == "-") {
                    parents.emplace_back();
                    continue;
                }
                const auto v = to_count(part);
                if (!v) sec.fail(par, "'parents': expected an id or '-', got '" + std::string(part) + "'");
                parents.emplace_back(*v);
            }
            const std::size_t t = count_field(sec, tail, tail.value);
            try {
                spec = TreeSpec::explicit_table(std::move(parents), t);
            } catch (const std::invalid_argument& e) {
                sec.fail(par, e.what());
            }
        } else {
            sec.fail(kind, "unknown tree kind '" + kind.value + "' (homogeneous, per-level, explicit)");
        }
    } catch (const std::invalid_argument& e) {
        sec.fail(kind, e.what());
    }
    sec.finish();
    return *spec;
}

SymbolSpec parse_symbol_spec(std::string_view text, const std::string& origin) {
    Section sec(text, "symbol", origin);
    const Field family = sec.require("family");
    std::optional<SymbolSpec::Family> fam;
    if (family.value == "finite_support") {
        FiniteSupport fs;
        for (const Field& e : sec.all("entry")) {
            const auto colon = e.value.find(':');
            if (colon == std::string::npos) sec.fail(e, "'entry': expected 'path : value'");
            const std::string_view v = e.value;
            fs.entries.emplace_back(path_field(sec, e, trim(v.substr(0, colon))),
                                    complex_field(sec, e, trim(v.substr(colon + 1))));
        }
        fam = std::move(fs);
    } else if (family.value == "radial_geometric") {
        const Field c = sec.require("c");
        const Field r = sec.require("r");
        fam = RadialGeometric{complex_field(sec, c, c.value), complex_field(sec, r, r.value)};
    } else if (family.value == "sector_indicator") {
        const Field base = sec.require("base");
        const Field c = sec.require("c");
        fam = SectorIndicator{path_field(sec, base, base.value), complex_field(sec, c, c.value)};
    } else if (family.value == "radial_table") {
        const Field values = sec.require("values");
        RadialTable rt;
        for (auto part : split(values.value, ',')) rt.values.push_back(complex_field(sec, values, part));
        fam = std::move(rt);
    } else {
        sec.fail(family, "unknown symbol family '" + family.value +
                             "' (finite_support, radial_geometric, sector_indicator, radial_table)");
    }
    sec.finish();
    try {
        return SymbolSpec(std::move(*fam));
    } catch (const std::invalid_argument& e) {
        sec.fail(family, e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError(path.string(), 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace arbor
