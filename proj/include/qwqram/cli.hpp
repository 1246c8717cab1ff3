#pragma once

// Subcommand implementations behind the qwqram executable. Data goes to `out`,
// diagnostics to `err`. Exit codes: 0 success, 1 parse/input error, 2 shape
// or resource error, 3 verification tolerance violated.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qwqram/state.hpp"

namespace qwqram::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitShape = 2;
inline constexpr int kExitTolerance = 3;

enum class OutputFormat { Dump, Json };

struct RunConfig {
    unsigned n = 0;
    unsigned m = 0;
    std::string memory_path;
    std::string addresses_path;
    // Emit the full trace (its last block is the final state) instead of the
    // final state alone.
    bool trace = false;
    std::optional<std::string> out_path;
    bool normalize = true;
    OutputFormat format = OutputFormat::Dump;
    unsigned threads = 1;
};

struct VerifyConfig {
    unsigned n = 2;
    unsigned m = 1;
    unsigned trials = 100;
    std::uint64_t seed = 42;
    std::size_t cap = 4096;
    double tolerance = 1e-10;
};

struct BenchConfig {
    std::vector<unsigned> ns{4, 8, 16, 20};
    unsigned m = 4;
    unsigned address_count = 16;
    unsigned repetitions = 2000;
    std::uint64_t seed = 42;
};

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err);

// One bench sample: a qRAM call on `address_count` random addresses.
struct BenchPoint {
    unsigned n = 0;
    unsigned steps = 0;
    std::size_t max_support = 0;
    std::size_t min_support = 0;
    double seconds_per_call = 0.0;
};

// Best-of-5 batch timing of `repetitions` qRAM calls each.
BenchPoint measure_qram(unsigned n, unsigned m, unsigned address_count, unsigned repetitions, std::uint64_t seed);

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    // max over samples of max(y/fit, fit/y); infinity if a fitted value is <= 0.
    double worst_ratio = 0.0;
};

// Ordinary least squares y ~ intercept + slope * x.
LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace qwqram::cli
