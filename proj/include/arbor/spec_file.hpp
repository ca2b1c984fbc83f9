#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "arbor/symbol.hpp"
#include "arbor/tree.hpp"

namespace arbor {

/// Malformed tree or symbol file. what() reads "origin:line: message".
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& origin, std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parses the `[tree]` section of a spec document.
///
///     [tree]
///     kind = per-level          # homogeneous | per-level | explicit
///     branching = 3             # per-level: counts for depths 0, 1, ...
///     tail = 2                  # per-level, explicit: branching from then on
///
/// `homogeneous` takes `b`; `explicit` takes `parents`, a comma list with
/// `-` for the root, and `tail`.
TreeSpec parse_tree_spec(std::string_view text, const std::string& origin = "<tree>");

/// Parses the `[symbol]` section of a spec document.
///
///     [symbol]
///     family = finite_support
///     entry = o : 1
///     entry = o.0 : 2-1i
///
/// Other families: `radial_geometric` (c, r), `sector_indicator` (base, c),
/// `radial_table` (values, a comma list).
SymbolSpec parse_symbol_spec(std::string_view text, const std::string& origin = "<symbol>");

/// Parses "o", "o.0.1". Throws std::invalid_argument.
VertexPath parse_path(std::string_view text);

/// Whole file contents. Throws SpecError if the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace arbor
