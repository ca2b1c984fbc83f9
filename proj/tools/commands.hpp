#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace arbor::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failure = 1;
inline constexpr int exit_input_error = 2;

enum class Format { csv, json };

struct Config {
    std::string command;
    std::string tree_path;
    std::string symbol_path;
    std::string p = "2";
    std::size_t depth = 0;
    std::optional<std::size_t> depth_max;
    /// "RE,IM" or a complex literal such as "2-1i".
    std::vector<std::string> lambdas;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string out;
    Format format = Format::csv;
    /// spectrum only: matrix export, MatrixMarket for *.mtx, dense CSV otherwise.
    std::string matrix_out;
};

inline const std::vector<std::string> commands = {"tree",      "verify",    "spectrum",
                                                  "resolvent", "structure", "converge"};

/// Runs one command. The report goes to `out` unless config.out names a file;
/// diagnostics go to `err`. Returns an exit code.
int run(const Config& config, std::ostream& out, std::ostream& err);

/// Parses argv and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arbor::cli
