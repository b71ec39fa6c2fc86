#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "circot/measures.hpp"

namespace circot::cli {

using Json = nlohmann::ordered_json;

/// Reads a histogram file. JSON files look like
///   {"points": [{"x": 0.25, "m": 0.5}, ...], "denominator": 2}
/// and anything else is read as CSV with two columns x,m and an optional
/// header line. A denominator stored in the file wins over `denominator`.
CircularHistogram read_histogram(const std::string& path,
                                 std::optional<std::int64_t> denominator = {});
CircularHistogram parse_histogram(const std::string& text,
                                  std::optional<std::int64_t> denominator = {});

/// Serializes with every floating-point number printed to 17 significant
/// digits, so values survive a round trip through text.
std::string dump_json(const Json& value, int indent = 2);

struct BenchOptions {
  std::vector<std::int64_t> sizes{20, 50, 100, 200};
  std::vector<double> epsilons{1e-10};
  int repeats = 10;
  std::uint64_t seed = 0;
  double lambda = 1.0;
  bool timing = true;
};

struct BenchRow {
  std::int64_t n = 0;
  std::int64_t n0 = 0;
  std::int64_t n1 = 0;
  double epsilon = 0.0;
  int repeats = 0;
  double mean_time_ms = 0.0;
  double mean_iterations = 0.0;
  double mean_cost_evaluations = 0.0;
  double mean_cost = 0.0;
};

/// Random instance of total size n = n0 + n1 drawn like the timing
/// experiments: uniform positions, uniform masses normalized to one.
std::pair<CircularHistogram, CircularHistogram> random_instance(std::int64_t n,
                                                                std::uint64_t seed,
                                                                std::uint64_t repeat);

std::vector<BenchRow> run_bench(const BenchOptions& options);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Runs one CLI invocation (args exclude the program name) and writes its
/// JSON report to `out`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace circot::cli
