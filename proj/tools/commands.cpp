#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "circot/bracket.hpp"
#include "circot/error.hpp"
#include "circot/oracle.hpp"
#include "circot/plan.hpp"
#include "circot/profile.hpp"
#include "circot/solver.hpp"

namespace circot::cli {

namespace {

[[noreturn]] void parse_error(const std::string& detail) {
  throw Error(ErrorCode::ParseError, detail);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> to_double(const std::string& field) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (const char ch : line) {
    if (ch == ',' || ch == ';' || ch == '\t') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

CircularHistogram parse_json_histogram(const std::string& text,
                                       std::optional<std::int64_t> denominator) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    parse_error("expected an object with a \"points\" array");
  }
  std::vector<double> xs;
  std::vector<double> ms;
  for (const auto& p : doc["points"]) {
    if (!p.is_object() || !p.contains("x") || !p.contains("m") || !p["x"].is_number() ||
        !p["m"].is_number()) {
      parse_error("each point needs numeric \"x\" and \"m\"");
    }
    xs.push_back(p["x"].get<double>());
    ms.push_back(p["m"].get<double>());
  }
  if (doc.contains("denominator") && !doc["denominator"].is_null()) {
    if (!doc["denominator"].is_number_integer()) parse_error("\"denominator\" must be an integer");
    denominator = doc["denominator"].get<std::int64_t>();
  }
  return CircularHistogram::create(xs, ms, denominator);
}

CircularHistogram parse_csv_histogram(const std::string& text,
                                      std::optional<std::int64_t> denominator) {
  std::vector<double> xs;
  std::vector<double> ms;
  std::istringstream in(text);
  std::string line;
  bool first_row = true;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    const bool is_header = first_row;
    first_row = false;
    if (fields.size() != 2) {
      parse_error("line " + std::to_string(line_number) + ": expected two columns x,m");
    }
    const auto x = to_double(fields[0]);
    const auto m = to_double(fields[1]);
    if (!x || !m) {
      if (is_header) continue;
      parse_error("line " + std::to_string(line_number) + ": not a number");
    }
    xs.push_back(*x);
    ms.push_back(*m);
  }
  return CircularHistogram::create(xs, ms, denominator);
}

void append_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
  // Keep integral doubles recognizable as floats.
  if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
}

void write_json(std::string& out, const Json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent <= 0) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::number_float:
      append_number(out, v.get<double>());
      return;
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& item : v) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        write_json(out, item, indent, depth + 1);
      }
      newline(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent > 0 ? ": " : ":";
        write_json(out, item, indent, depth + 1);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    default:
      out += v.dump();
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidEpsilon:
    case ErrorCode::IterationLimit:
    case ErrorCode::UnknownBracket:
    case ErrorCode::UnknownGrowth:
      return 2;
    default:
      return 1;
  }
}

Json error_json(std::string_view code, const std::string& detail) {
  Json j;
  j["error"] = code;
  j["detail"] = detail;
  return j;
}

// Options shared by the commands that read two histogram files.
struct PairArgs {
  std::string file0;
  std::string file1;
  double lambda = 2.0;
  double epsilon = kDefaultEpsilon;
  std::optional<std::int64_t> denominator;
  bool tight_bracket = false;
  bool verbose = false;
  bool deterministic = false;
};

void add_pair_options(CLI::App* cmd, PairArgs& a, bool solver_options) {
  cmd->add_option("file0", a.file0, "Source histogram (JSON or CSV)")->required();
  cmd->add_option("file1", a.file1, "Target histogram (JSON or CSV)")->required();
  cmd->add_option("--lambda", a.lambda, "Cost exponent, c = |x - y|^lambda")
      ->capture_default_str();
  cmd->add_option("--denominator", a.denominator,
                  "Common mass denominator for files that do not declare one");
  if (solver_options) {
    cmd->add_option("--epsilon", a.epsilon, "Cost accuracy")->capture_default_str();
    cmd->add_flag("--tight-bracket", a.tight_bracket, "Search [-1, 1] for symmetric costs");
    cmd->add_flag("--verbose", a.verbose, "Include the bisection trace");
    cmd->add_flag("--deterministic", a.deterministic, "Omit wall-clock timings");
  }
}

struct Loaded {
  CircularHistogram h0;
  CircularHistogram h1;
  CostFunction cost;
};

Loaded load(const PairArgs& a) {
  return {read_histogram(a.file0, a.denominator), read_histogram(a.file1, a.denominator),
          CostFunction::power(a.lambda)};
}

Json bracket_json(const SearchBracket& b) {
  Json j;
  j["theta_lo"] = b.theta_lo;
  j["theta_hi"] = b.theta_hi;
  j["lipschitz"] = b.lipschitz;
  j["provenance"] = std::string(to_string(b.provenance));
  return j;
}

Json solve_report(const char* command, const PairArgs& a, const Loaded& in,
                  const SolveResult& r, double wall_ms, const Json& trace) {
  Json j;
  j["command"] = command;
  j["lambda"] = a.lambda;
  j["theta_star"] = r.theta_star;
  j["cost"] = r.cost;
  j["mk_distance"] = std::pow(std::max(r.cost, 0.0), 1.0 / a.lambda);
  j["exact"] = r.exact;
  j["iterations"] = r.iterations;
  j["epsilon_used"] = r.epsilon_used;
  j["cost_evaluations"] = r.cost_evaluations;
  j["left_derivative"] = r.left_derivative;
  j["right_derivative"] = r.right_derivative;
  j["termination"] = r.termination == Termination::SignTest ? "sign-test" : "width-test";
  j["bracket"] = bracket_json(r.bracket);
  if (r.denominator) j["denominator"] = *r.denominator;
  if (r.flat_interval) j["flat_interval"] = {r.flat_interval->first, r.flat_interval->second};
  j["n0"] = in.h0.size();
  j["n1"] = in.h1.size();
  if (!a.deterministic) j["wall_time_ms"] = wall_ms;
  if (a.verbose) j["trace"] = trace;
  return j;
}

SolveResult timed_solve(const PairArgs& a, const Loaded& in, double& wall_ms, Json& trace) {
  SolveOptions options;
  options.epsilon = a.epsilon;
  options.tight_bracket = a.tight_bracket;
  trace = Json::array();
  if (a.verbose) {
    options.hook = [&trace](const IterationRecord& rec) {
      Json step;
      step["iteration"] = rec.iteration;
      step["theta_lo"] = rec.theta_lo;
      step["theta_hi"] = rec.theta_hi;
      step["theta"] = rec.theta;
      step["left_derivative"] = rec.left_derivative;
      step["right_derivative"] = rec.right_derivative;
      trace.push_back(std::move(step));
    };
  }
  const auto start = std::chrono::steady_clock::now();
  auto result = minimize(in.h0, in.h1, in.cost, options);
  wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
  return result;
}

int cmd_distance(const PairArgs& a, std::ostream& out) {
  const auto in = load(a);
  double wall_ms = 0.0;
  Json trace;
  const auto r = timed_solve(a, in, wall_ms, trace);
  out << dump_json(solve_report("distance", a, in, r, wall_ms, trace)) << '\n';
  return 0;
}

int cmd_plan(const PairArgs& a, std::ostream& out) {
  const auto in = load(a);
  double wall_ms = 0.0;
  Json trace;
  const auto r = timed_solve(a, in, wall_ms, trace);
  const auto plan = extract_plan(in.h0, in.h1, in.cost, r.theta);
  auto j = solve_report("plan", a, in, r, wall_ms, trace);
  j["total_cost"] = plan.total_cost;
  Json rows = Json::array();
  for (const auto& s : plan.assignments) {
    Json row;
    row["source_atom"] = s.source_atom;
    row["target_atom"] = s.target_atom;
    row["source_position"] = s.source_position;
    row["target_position"] = s.target_position;
    row["target_position_lifted"] = s.target_position_lifted;
    row["mass"] = s.mass;
    rows.push_back(std::move(row));
  }
  j["assignments"] = std::move(rows);
  out << dump_json(j) << '\n';
  return 0;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) parse_error("--range must look like lo:hi");
  const auto lo = to_double(trim(text.substr(0, colon)));
  const auto hi = to_double(trim(text.substr(colon + 1)));
  if (!lo || !hi || !std::isfinite(*lo) || !std::isfinite(*hi) || !(*lo < *hi)) {
    throw Error(ErrorCode::InvalidArgument, "--range needs finite lo < hi");
  }
  return {*lo, *hi};
}

// Breakpoint listing is skipped past this many candidate shifts.
constexpr double kMaxListedBreakpoints = 1e6;

int cmd_curve(const PairArgs& a, int samples, const std::string& range, std::ostream& out) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "--samples must be at least 2");
  const auto in = load(a);
  BracketOptions bopts;
  bopts.tight_symmetric = a.tight_bracket;
  const auto bracket = bracket_for(in.cost, bopts);
  double lo = bracket.theta_lo;
  double hi = bracket.theta_hi;
  if (!range.empty()) std::tie(lo, hi) = parse_range(range);

  const PeriodicCdf f0(in.h0);
  const PeriodicCdf f1(in.h1);
  Json rows = Json::array();
  for (int k = 0; k < samples; ++k) {
    const double theta =
        k == samples - 1 ? hi : lo + (hi - lo) * static_cast<double>(k) / (samples - 1);
    const auto e = avg_cost_derivatives(f0, f1, in.cost, theta);
    Json row;
    row["theta"] = theta;
    row["cost"] = e.value;
    row["left_derivative"] = e.left_derivative;
    row["right_derivative"] = e.right_derivative;
    rows.push_back(std::move(row));
  }

  Json j;
  j["command"] = "curve";
  j["lambda"] = a.lambda;
  j["range"] = {lo, hi};
  j["samples"] = samples;
  j["curve"] = std::move(rows);
  const double listed = static_cast<double>(in.h0.size()) * static_cast<double>(in.h1.size()) *
                        (std::ceil(hi - lo) + 1.0);
  if (listed <= kMaxListedBreakpoints) {
    j["breakpoints"] = oracle::candidate_shifts(in.h0, in.h1, lo, hi);
  } else {
    j["breakpoints"] = nullptr;
  }
  out << dump_json(j) << '\n';
  return 0;
}

Json oracle_json(const oracle::OracleResult& r) {
  Json j;
  j["theta_star"] = r.theta_star;
  j["cost"] = r.cost;
  j["candidates_evaluated"] = r.candidates_evaluated;
  return j;
}

// Tolerance on exact agreement between costs.
constexpr double kAgreement = 1e-12;

int cmd_check(const PairArgs& a, std::ostream& out) {
  const auto in = load(a);
  SolveOptions options;
  options.epsilon = a.epsilon;
  const auto solved = minimize(in.h0, in.h1, in.cost, options);
  const auto by_breakpoints = oracle::oracle_breakpoints(in.h0, in.h1, in.cost, solved.bracket);

  std::optional<oracle::OracleResult> by_rotations;
  if (in.h0.denominator() && in.h1.denominator()) {
    by_rotations = oracle::oracle_rotations(in.h0, in.h1, in.cost);
  }

  const double gap = solved.cost - by_breakpoints.cost;
  bool agree = gap <= solved.epsilon_used + kAgreement && gap >= -kAgreement;
  if (solved.denominator) agree = agree && std::abs(gap) <= kAgreement;
  if (by_rotations) agree = agree && std::abs(by_rotations->cost - by_breakpoints.cost) <= kAgreement;

  Json j;
  j["command"] = "check";
  j["lambda"] = a.lambda;
  j["theta_star"] = solved.theta_star;
  j["cost"] = solved.cost;
  j["mk_distance"] = std::pow(std::max(solved.cost, 0.0), 1.0 / a.lambda);
  j["exact"] = solved.exact;
  j["iterations"] = solved.iterations;
  j["epsilon_used"] = solved.epsilon_used;
  j["cost_evaluations"] = solved.cost_evaluations;
  j["oracle_breakpoints"] = oracle_json(by_breakpoints);
  j["oracle_rotations"] = by_rotations ? oracle_json(*by_rotations) : Json(nullptr);
  j["agree"] = agree;
  out << dump_json(j) << '\n';
  return agree ? 0 : 3;
}

int cmd_bench(const BenchOptions& options, std::ostream& out) {
  const auto rows = run_bench(options);
  Json table = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["n"] = r.n;
    row["n0"] = r.n0;
    row["n1"] = r.n1;
    row["epsilon"] = r.epsilon;
    row["repeats"] = r.repeats;
    if (options.timing) row["mean_time_ms"] = r.mean_time_ms;
    row["mean_iterations"] = r.mean_iterations;
    row["mean_cost_evaluations"] = r.mean_cost_evaluations;
    row["mean_cost"] = r.mean_cost;
    table.push_back(std::move(row));
  }

  Json j;
  j["command"] = "bench";
  j["lambda"] = options.lambda;
  j["seed"] = options.seed;
  j["repeats"] = options.repeats;
  j["rows"] = std::move(table);

  // Linear trends: time against n for each epsilon, time against log10(1/eps)
  // for each n. Only reported with timings and at least three points.
  if (options.timing) {
    Json fits = Json::array();
    const auto add_fit = [&](const char* against, const char* key, double fixed,
                             const std::vector<double>& xs, const std::vector<double>& ys) {
      if (xs.size() < 3) return;
      const auto f = fit_line(xs, ys);
      Json fit;
      fit["against"] = against;
      fit[key] = fixed;
      fit["slope"] = f.slope;
      fit["intercept"] = f.intercept;
      fit["r_squared"] = f.r_squared;
      fits.push_back(std::move(fit));
    };
    for (const double eps : options.epsilons) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (const auto& r : rows) {
        if (r.epsilon == eps) {
          xs.push_back(static_cast<double>(r.n));
          ys.push_back(r.mean_time_ms);
        }
      }
      add_fit("n", "epsilon", eps, xs, ys);
    }
    for (const auto n : options.sizes) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (const auto& r : rows) {
        if (r.n == n) {
          xs.push_back(std::log10(1.0 / r.epsilon));
          ys.push_back(r.mean_time_ms);
        }
      }
      add_fit("log10_inverse_epsilon", "n", static_cast<double>(n), xs, ys);
    }
    j["fits"] = std::move(fits);
  }
  out << dump_json(j) << '\n';
  return 0;
}

}  // namespace

CircularHistogram parse_histogram(const std::string& text,
                                  std::optional<std::int64_t> denominator) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return parse_json_histogram(text, denominator);
  }
  return parse_csv_histogram(text, denominator);
}

CircularHistogram read_histogram(const std::string& path,
                                 std::optional<std::int64_t> denominator) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_histogram(buffer.str(), denominator);
}

std::string dump_json(const Json& value, int indent) {
  std::string out;
  write_json(out, value, indent, 0);
  return out;
}

std::pair<CircularHistogram, CircularHistogram> random_instance(std::int64_t n,
                                                                std::uint64_t seed,
                                                                std::uint64_t repeat) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "bench sizes must be at least 2");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(repeat)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto draw = [&](std::int64_t count) {
    std::vector<double> xs(static_cast<std::size_t>(count));
    std::vector<double> ms(static_cast<std::size_t>(count));
    for (auto& x : xs) x = unit(rng);
    for (auto& m : ms) m = 1.0 - unit(rng);
    std::sort(xs.begin(), xs.end());
    const double total = std::accumulate(ms.begin(), ms.end(), 0.0);
    for (auto& m : ms) m /= total;
    return CircularHistogram::create(xs, ms);
  };
  const std::int64_t n0 = n / 2;
  auto h0 = draw(n0);
  auto h1 = draw(n - n0);
  return {std::move(h0), std::move(h1)};
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  if (options.repeats < 1) throw Error(ErrorCode::InvalidArgument, "--repeats must be positive");
  const auto cost = CostFunction::power(options.lambda);
  std::vector<BenchRow> rows;
  for (const auto n : options.sizes) {
    std::vector<std::pair<CircularHistogram, CircularHistogram>> instances;
    for (int r = 0; r < options.repeats; ++r) {
      instances.push_back(random_instance(n, options.seed, static_cast<std::uint64_t>(r)));
    }
    for (const double eps : options.epsilons) {
      BenchRow row;
      row.n = n;
      row.n0 = static_cast<std::int64_t>(instances.front().first.size());
      row.n1 = static_cast<std::int64_t>(instances.front().second.size());
      row.epsilon = eps;
      row.repeats = options.repeats;
      SolveOptions so;
      so.epsilon = eps;
      for (const auto& [h0, h1] : instances) {
        const auto start = std::chrono::steady_clock::now();
        const auto result = minimize(h0, h1, cost, so);
        const auto stop = std::chrono::steady_clock::now();
        row.mean_time_ms += std::chrono::duration<double, std::milli>(stop - start).count();
        row.mean_iterations += result.iterations;
        row.mean_cost_evaluations += static_cast<double>(result.cost_evaluations);
        row.mean_cost += result.cost;
      }
      const double k = options.repeats;
      row.mean_time_ms /= k;
      row.mean_iterations /= k;
      row.mean_cost_evaluations /= k;
      row.mean_cost /= k;
      if (!options.timing) row.mean_time_ms = 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "fit needs at least two paired points");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Optimal transport between discrete measures on the circle", "circot"};
  app.require_subcommand(1);

  PairArgs pair;
  auto* distance = app.add_subcommand("distance", "Minimal average cost and MK distance");
  add_pair_options(distance, pair, true);
  auto* plan = app.add_subcommand("plan", "Optimal plan as a list of assignments");
  add_pair_options(plan, pair, true);

  auto* curve = app.add_subcommand("curve", "Sample the average cost over a range of shifts");
  add_pair_options(curve, pair, false);
  int samples = 512;
  std::string range;
  curve->add_option("--samples", samples, "Number of sampled shifts")->capture_default_str();
  curve->add_option("--range", range, "Shift range lo:hi (default: the search bracket)");
  curve->add_flag("--tight-bracket", pair.tight_bracket, "Default range [-1, 1]");

  auto* check = app.add_subcommand("check", "Compare the solver against both oracles");
  add_pair_options(check, pair, false);
  check->add_option("--epsilon", pair.epsilon, "Cost accuracy")->capture_default_str();

  BenchOptions bench_opts;
  bool deterministic = false;
  auto* bench = app.add_subcommand("bench", "Timing table on random instances");
  bench->add_option("--sizes", bench_opts.sizes, "Total atom counts n0 + n1")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--epsilons", bench_opts.epsilons, "Accuracies")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--repeats", bench_opts.repeats, "Instances per cell")->capture_default_str();
  bench->add_option("--seed", bench_opts.seed, "Generator seed")
      ->envname("CIRC_OT_SEED")
      ->capture_default_str();
  bench->add_option("--lambda", bench_opts.lambda, "Cost exponent")->capture_default_str();
  bench->add_flag("--deterministic", deterministic, "Omit wall-clock timings");

  std::vector<std::string> argv_storage{"circot"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, out);
  } catch (const CLI::ParseError& e) {
    out << dump_json(error_json("UsageError", e.what())) << '\n';
    return 1;
  }

  try {
    if (distance->parsed()) return cmd_distance(pair, out);
    if (plan->parsed()) return cmd_plan(pair, out);
    if (curve->parsed()) return cmd_curve(pair, samples, range, out);
    if (check->parsed()) return cmd_check(pair, out);
    bench_opts.timing = !deterministic;
    return cmd_bench(bench_opts, out);
  } catch (const Error& e) {
    out << dump_json(error_json(to_string(e.code()), e.what())) << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace circot::cli
