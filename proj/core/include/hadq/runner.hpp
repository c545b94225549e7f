#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hadq {

// One CLI invocation. Field semantics and defaults are documented in the
// README; unknown commands or out-of-range parameters are validation errors
// (exit 2), computational failures are reported structurally (exit 3).
struct RunConfig {
    std::string command;  // places|height|radius|audit|reduce|profile|
                          // find-relation|criterion|theorem14|theorem17|density
    std::string input;        // series spec path
    std::string denominator;  // series spec path of the Hadamard denominator
    std::string field;        // "Q" or "Fq:<q>" for series-free commands
    std::string place;        // place string for `reduce`
    std::string predicate;    // density predicate: all | mod:<m>,<a> | unit-divisor:<a>
    std::string mode = "algebraic";  // theorem17: algebraic | rational

    unsigned r = 1;
    unsigned L = 1;
    unsigned l = 1;  // operator power for theorem14
    std::vector<std::uint64_t> ladder;
    std::uint64_t place_bound = 200;
    std::uint64_t density_bound = 0;  // 0: use place_bound
    unsigned degree_cap = 8;
    std::size_t order = 16;
    std::size_t coeff_window = 64;
    std::size_t reduction_window = 0;  // 0: automatic
    std::size_t verify_cap = 0;        // 0: default 5M
    double threshold = 3.0;            // audit divergence threshold
    double divisor = 12.0;             // theorem17 constant
    unsigned lhs_divisor_factor = 4;   // criterion constant (times r^2)

    std::string output;  // report path; empty = stdout
    std::string csv;     // optional ladder CSV path
    bool stamp = false;  // embed a wall-clock timestamp (off: bit-stable reports)
};

// Executes the command and writes the report. Returns the process exit
// status: 0 success, 2 validation error, 3 computational error.
int run(const RunConfig& config);

extern const char* const kToolVersion;

}  // namespace hadq
