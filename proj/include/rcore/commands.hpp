#pragma once

// Implementations of the command-line subcommands, kept free of argument
// parsing so they can be driven directly from tests.

#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcore/global_prob.hpp"
#include "rcore/local_prob.hpp"
#include "rcore/montecarlo.hpp"
#include "rcore/sweep.hpp"

namespace rcore::cli {

enum ExitCode : int { kOk = 0, kInvalidArgs = 2, kIoFailure = 3 };

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

inline Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + name + "'");
}

/// Resolves the edge probability from exactly one of p and an expected edge
/// count over C(n, k) candidates.
inline double resolve_p(std::optional<double> p, std::optional<double> expected, int n, int k,
                        const char* expected_flag) {
  if (p.has_value() == expected.has_value())
    throw std::invalid_argument(std::string("give exactly one of --p and ") + expected_flag);
  if (p) {
    if (!(*p >= 0.0 && *p <= 1.0)) throw std::invalid_argument("--p must lie in [0, 1]");
    return *p;
  }
  if (*expected < 0.0) throw std::invalid_argument(std::string(expected_flag) + " must be non-negative");
  const double candidates = n >= 0 ? to_double_or_inf(choose(n, k)) : 0.0;
  if (candidates == 0.0) throw std::invalid_argument("no candidate edges: size is below k, give --p instead");
  const double q = *expected / candidates;
  if (q > 1.0) throw std::invalid_argument(std::string(expected_flag) + " exceeds the number of candidate edges");
  return q;
}

struct ResultLine {
  std::string method;
  ProbValue value;
  std::optional<McEstimate> mc;
};

inline void print_lines(std::ostream& os, Format format, const char* size_name, int size, int k, double p, int r,
                        const std::vector<ResultLine>& lines) {
  if (format == Format::json) {
    nlohmann::ordered_json j;
    j[size_name] = size;
    j["k"] = k;
    j["p"] = p;
    j["r"] = r;
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& line : lines) {
      auto item = to_json(line.value);
      item["method"] = line.method;
      if (line.mc) item["mc"] = to_json(*line.mc);
      j["results"].push_back(item);
    }
    os << j.dump(2) << '\n';
    return;
  }
  os << size_name << ",k,p,r,method,value,valid,diagnostic,stderr,trials\r\n";
  for (const auto& line : lines) {
    os << size << ',' << k << ',' << format_double(p) << ',' << r << ',' << line.method << ','
       << format_double(line.value.value) << ',' << (line.value.valid ? 1 : 0) << ','
       << to_string(line.value.diagnostic) << ',';
    if (line.mc) os << format_double(line.mc->std_error) << ',' << line.mc->trials;
    else os << ',';
    os << "\r\n";
  }
}

struct PointArgs {
  int size = 0;  // u for local, v for global
  int k = 3;
  std::optional<double> p;
  std::optional<double> expected_edges;
  int r = 1;
  std::vector<std::string> methods;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string format = "csv";
};

/// `local`: probability of a core on one specific set of u vertices.
inline int cmd_local(const PointArgs& args, std::ostream& os) {
  const double p = resolve_p(args.p, args.expected_edges, args.size, args.k, "--e-u");
  LocalQuery{args.size, args.k, p, args.r}.validate();
  const auto format = parse_format(args.format);
  MethodEvaluator eval(Scope::local, args.k, args.r, args.trials, args.workers);
  std::vector<ResultLine> lines;
  for (const auto& name : args.methods) {
    const Method m = parse_method(name);
    if (m == Method::mc) {
      const auto est = eval.monte_carlo(args.size, p, Seed{args.seed});
      lines.push_back({name, ProbValue::exact(est.mean), est});
    } else {
      lines.push_back({name, eval.formula(m, args.size, p), std::nullopt});
    }
  }
  print_lines(os, format, "u", args.size, args.k, p, args.r, lines);
  return kOk;
}

/// `global`: probability of a core anywhere in a hypergraph on v vertices.
inline int cmd_global(const PointArgs& args, std::ostream& os) {
  if (args.size < 1) throw std::invalid_argument("--v must be >= 1");
  const double p = resolve_p(args.p, args.expected_edges, args.size, args.k, "--e-v");
  LocalQuery{args.size, args.k, p, args.r}.validate();
  const auto format = parse_format(args.format);
  MethodEvaluator eval(Scope::global, args.k, args.r, args.trials, args.workers);
  std::vector<ResultLine> lines;
  for (const auto& name : args.methods) {
    const Method m = parse_method(name);
    if (m == Method::mc) {
      const auto est = eval.monte_carlo(args.size, p, Seed{args.seed});
      lines.push_back({name, ProbValue::exact(est.mean), est});
    } else {
      lines.push_back({name, eval.formula(m, args.size, p), std::nullopt});
    }
  }
  print_lines(os, format, "v", args.size, args.k, p, args.r, lines);
  return kOk;
}

struct SweepArgs {
  std::string scope = "global";
  int k = 3;
  int r = 2;
  double overhead = 1.0;
  int e_min = 3;
  int e_max = 3;
  std::vector<std::string> methods;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string out;  // empty: write to the given stream
  std::string format = "csv";
};

inline SweepSpec to_spec(const SweepArgs& args) {
  SweepSpec spec;
  spec.scope = parse_scope(args.scope);
  spec.k = args.k;
  spec.r = args.r;
  spec.overhead = args.overhead;
  spec.e_min = args.e_min;
  spec.e_max = args.e_max;
  for (const auto& m : args.methods) spec.methods.push_back(parse_method(m));
  spec.trials = args.trials;
  spec.seed = Seed{args.seed};
  spec.workers = args.workers;
  return spec;
}

inline void write_sweep(std::ostream& os, Format format, const SweepResult& res) {
  if (format == Format::json) os << to_json(res).dump(2) << '\n';
  else write_csv(os, res);
}

/// `sweep`: one row per expected edge count. With --out, the table goes to
/// the file and a per-method breakdown summary goes to `os`.
inline int cmd_sweep(const SweepArgs& args, std::ostream& os) {
  const auto spec = to_spec(args);
  const auto format = parse_format(args.format);
  spec.validate();
  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out, std::ios::binary);
    if (!file) throw io_error("cannot open output file '" + args.out + "'");
  }
  const auto res = run_sweep(spec);
  if (args.out.empty()) {
    write_sweep(os, format, res);
    return kOk;
  }
  write_sweep(file, format, res);
  file.flush();
  if (!file) throw io_error("failed writing '" + args.out + "'");
  for (const auto& [m, at] : res.breakdown_at)
    os << "breakdown_at," << to_string(m) << ',' << (at ? std::to_string(*at) : "none") << '\n';
  return kOk;
}

struct BreakdownArgs {
  int k = 3;
  int r = 1;
  double overhead = 1.0;
  std::string method = "connectivity";
  std::string scope = "local";
  int cap = 500;
  std::string format = "csv";
};

inline int cmd_breakdown(const BreakdownArgs& args, std::ostream& os) {
  const Method m = parse_method(args.method);
  const Scope scope = parse_scope(args.scope);
  const auto format = parse_format(args.format);
  if (args.cap < 0) throw std::invalid_argument("--cap must be non-negative");
  const auto at = scan_breakdown(args.k, args.r, args.overhead, m, scope, args.cap);
  if (format == Format::json) {
    nlohmann::ordered_json j{{"method", to_string(m)}, {"scope", to_string(scope)}, {"k", args.k},
                             {"r", args.r},           {"overhead", args.overhead}, {"cap", args.cap}};
    j["breakdown_at"] = at ? nlohmann::ordered_json(*at) : nlohmann::ordered_json(nullptr);
    os << j.dump(2) << '\n';
  } else if (at) {
    os << "breakdown_at=" << *at << '\n';
  } else {
    os << "none found below cap " << args.cap << '\n';
  }
  return kOk;
}

struct OracleArgs {
  int v = 3;
  int k = 3;
  double p = 0.5;
  int r = 1;
  std::string format = "csv";
};

/// `oracle`: exact probabilities by exhaustive enumeration.
inline int cmd_oracle(const OracleArgs& args, std::ostream& os) {
  HypergraphParams{args.v, args.k, args.p, args.r};
  const auto format = parse_format(args.format);
  const double any = exact_global(args.v, args.k, args.p, args.r);
  const double maximal = exact_exactly_one(args.v, args.k, args.p, args.r, CoreSemantics::maximal);
  std::optional<double> minimal;
  if (args.v <= kMaxMinimalSemanticsVertices)
    minimal = exact_exactly_one(args.v, args.k, args.p, args.r, CoreSemantics::minimal);
  if (format == Format::json) {
    nlohmann::ordered_json j{{"v", args.v}, {"k", args.k}, {"p", args.p}, {"r", args.r}, {"exact_global", any}};
    j["exactly_one_minimal"] = minimal ? nlohmann::ordered_json(*minimal) : nlohmann::ordered_json(nullptr);
    j["exactly_one_maximal"] = maximal;
    os << j.dump(2) << '\n';
    return kOk;
  }
  os << "v,k,p,r,exact_global,exactly_one_minimal,exactly_one_maximal\r\n";
  os << args.v << ',' << args.k << ',' << format_double(args.p) << ',' << args.r << ',' << format_double(any)
     << ',' << (minimal ? format_double(*minimal) : "") << ',' << format_double(maximal) << "\r\n";
  return kOk;
}

}  // namespace rcore::cli
