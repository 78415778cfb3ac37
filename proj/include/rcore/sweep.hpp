#pragma once

// Parameter sweeps over the expected edge count, CSV/JSON emission, and
// numerical-breakdown detection.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rcore/global_prob.hpp"
#include "rcore/local_prob.hpp"
#include "rcore/montecarlo.hpp"
#include "rcore/prob_value.hpp"

namespace rcore {

enum class Method { connectivity, covering, interleaved_lower, interleaved_upper, mc };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::connectivity: return "connectivity";
    case Method::covering: return "covering";
    case Method::interleaved_lower: return "interleaved_lower";
    case Method::interleaved_upper: return "interleaved_upper";
    case Method::mc: return "mc";
  }
  return "unknown";
}

inline Method parse_method(std::string_view name) {
  for (Method m : {Method::connectivity, Method::covering, Method::interleaved_lower, Method::interleaved_upper,
                   Method::mc}) {
    if (name == to_string(m)) return m;
  }
  // accept dashes as well as underscores
  if (name == "interleaved-lower") return Method::interleaved_lower;
  if (name == "interleaved-upper") return Method::interleaved_upper;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

/// local: probabilities on one specific set of u vertices.
/// global: probabilities over a whole hypergraph on v vertices.
enum class Scope { local, global };

constexpr std::string_view to_string(Scope s) { return s == Scope::local ? "local" : "global"; }

inline Scope parse_scope(std::string_view name) {
  if (name == "local") return Scope::local;
  if (name == "global") return Scope::global;
  throw std::invalid_argument("unknown scope '" + std::string(name) + "'");
}

/// Shortest round-trip decimal form.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return {buf, end};
}

/// One point of a sweep: e expected edges on `size` vertices, where
/// size = round(overhead * e) and p = e / C(size, k).
struct SweepPoint {
  int e = 0;
  int size = 0;
  double p = 0.0;
};

/// Evaluates one method at one point. Formula methods share a LocalContext
/// across calls; MC uses its own seed.
class MethodEvaluator {
 public:
  MethodEvaluator(Scope scope, int k, int r, std::int64_t trials, unsigned workers = 0)
      : scope_(scope), k_(k), r_(r), trials_(trials), workers_(workers) {}

  ProbValue formula(Method m, int size, double p) {
    if (scope_ == Scope::local) {
      switch (m) {
        case Method::connectivity:
          require_first_order(m);
          return connectivity_prob(size, k_, p, ctx_);
        case Method::covering: return covering_prob(size, k_, p, r_);
        case Method::interleaved_lower: return interleaved_local_prob(size, k_, p / r_, r_, ctx_);
        case Method::interleaved_upper: return interleaved_local_prob(size, k_, p, r_, ctx_);
        case Method::mc: break;
      }
    } else {
      switch (m) {
        case Method::connectivity: {
          require_first_order(m);
          LocalProvider provider(LocalMethod::connectivity, ctx_);
          return at_least_one_bound(size, p, k_, r_, provider);
        }
        case Method::covering: {
          LocalProvider provider(LocalMethod::covering, ctx_);
          return at_least_one_bound(size, p, k_, r_, provider);
        }
        case Method::interleaved_lower:
        case Method::interleaved_upper: {
          LocalProvider provider(LocalMethod::interleaved, ctx_);
          const double q = m == Method::interleaved_lower ? p / r_ : p;
          return at_least_one_bound(size, q, k_, r_, provider);
        }
        case Method::mc: break;
      }
    }
    throw std::invalid_argument("mc is not a formula method");
  }

  McEstimate monte_carlo(int size, double p, Seed seed) {
    if (scope_ == Scope::local) {
      const auto predicate = r_ == 1 ? LocalPredicate::connectivity : LocalPredicate::min_degree;
      return mc_local(size, k_, p, r_, predicate, trials_, seed, workers_);
    }
    return mc_global(size, k_, p, r_, trials_, seed, workers_);
  }

 private:
  void require_first_order(Method m) const {
    if (r_ != 1)
      throw std::invalid_argument(std::string(to_string(m)) +
                                  " gives 1-core probabilities only; use interleaved_lower/upper for r > 1");
  }

  Scope scope_;
  int k_;
  int r_;
  std::int64_t trials_;
  unsigned workers_;
  LocalContext ctx_;
};

/// Flags the first point at which a formula curve stops being trustworthy:
/// either the value is invalid, or, after the curve has decreased at least
/// once, it increases again (probabilities are expected to be non-increasing
/// along these sweeps).
class BreakdownDetector {
 public:
  static constexpr double kRiseTolerance = 1e-9;  // relative

  /// Returns true when this observation is the breakdown point.
  bool observe(int e, const ProbValue& value) {
    if (at_) return false;
    if (!value.valid) {
      at_ = e;
      return true;
    }
    if (prev_) {
      if (value.value < *prev_) {
        descended_ = true;
      } else if (descended_ && value.value - *prev_ > kRiseTolerance * std::abs(*prev_)) {
        at_ = e;
        return true;
      }
    }
    prev_ = value.value;
    return false;
  }

  std::optional<int> at() const { return at_; }

 private:
  std::optional<double> prev_;
  std::optional<int> at_;
  bool descended_ = false;
};

struct SweepSpec {
  Scope scope = Scope::global;
  int k = 3;
  int r = 2;
  double overhead = 1.0;
  int e_min = 1;
  int e_max = 1;
  std::vector<Method> methods;
  std::int64_t trials = 10000;
  Seed seed{};
  unsigned workers = 0;

  SweepPoint point(int e) const {
    SweepPoint pt;
    pt.e = e;
    pt.size = static_cast<int>(std::llround(overhead * e));
    const BigInt candidates = pt.size >= 0 ? choose(pt.size, k) : BigInt(0);
    pt.p = candidates == 0 ? std::numeric_limits<double>::infinity()
                           : static_cast<double>(e) / to_double_or_inf(candidates);
    return pt;
  }

  static bool feasible(const SweepPoint& pt, int k) { return pt.size >= k && pt.p >= 0.0 && pt.p <= 1.0; }

  void validate() const {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (!(overhead > 0.0)) throw std::invalid_argument("overhead must be positive");
    if (e_min < 0 || e_max < e_min) throw std::invalid_argument("empty or negative e range");
    if (methods.empty()) throw std::invalid_argument("at least one method is required");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (int e = e_min; e <= e_max; ++e) {
      const auto pt = point(e);
      if (!feasible(pt, k))
        throw std::invalid_argument("infeasible sweep point e=" + std::to_string(e) + ": size " +
                                    std::to_string(pt.size) + ", p " + format_double(pt.p) +
                                    " (need size >= k and p <= 1)");
    }
  }
};

struct SweepRow {
  SweepPoint point;
  std::map<Method, ProbValue> values;
  std::optional<McEstimate> mc;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::map<Method, std::optional<int>> breakdown_at;

  bool broken(Method m, int e) const {
    auto it = breakdown_at.find(m);
    return it != breakdown_at.end() && it->second && e >= *it->second;
  }
};

/// MC seed for the row with expected edge count e.
inline Seed row_seed(Seed master, int e) { return derive_seed(master, 0x5eed0000ULL + static_cast<std::uint64_t>(e)); }

inline SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  MethodEvaluator eval(spec.scope, spec.k, spec.r, spec.trials, spec.workers);
  std::map<Method, BreakdownDetector> detectors;
  for (int e = spec.e_min; e <= spec.e_max; ++e) {
    SweepRow row;
    row.point = spec.point(e);
    for (Method m : spec.methods) {
      if (m == Method::mc) {
        row.mc = eval.monte_carlo(row.point.size, row.point.p, row_seed(spec.seed, e));
      } else {
        const ProbValue v = eval.formula(m, row.point.size, row.point.p);
        row.values[m] = v;
        detectors[m].observe(e, v);
      }
    }
    result.rows.push_back(std::move(row));
  }
  for (Method m : spec.methods)
    if (m != Method::mc) result.breakdown_at[m] = detectors[m].at();
  return result;
}

inline void write_csv(std::ostream& os, const SweepResult& res) {
  const bool local = res.spec.scope == Scope::local;
  os << (local ? "e_u,u,p" : "e_v,v,p");
  for (Method m : res.spec.methods) {
    if (m == Method::mc) {
      os << ",mc_mean,mc_stderr,mc_trials";
    } else {
      const auto name = to_string(m);
      os << ',' << name << ',' << name << "_valid," << name << "_breakdown";
    }
  }
  os << "\r\n";
  for (const auto& row : res.rows) {
    os << row.point.e << ',' << row.point.size << ',' << format_double(row.point.p);
    for (Method m : res.spec.methods) {
      if (m == Method::mc) {
        os << ',' << format_double(row.mc->mean) << ',' << format_double(row.mc->std_error) << ','
           << row.mc->trials;
      } else {
        const ProbValue& v = row.values.at(m);
        os << ',' << format_double(v.value) << ',' << (v.valid ? 1 : 0) << ','
           << (res.broken(m, row.point.e) ? 1 : 0);
      }
    }
    os << "\r\n";
  }
}

inline nlohmann::ordered_json to_json(const ProbValue& v) {
  nlohmann::ordered_json j;
  j["value"] = std::isfinite(v.value) ? nlohmann::ordered_json(v.value) : nlohmann::ordered_json(format_double(v.value));
  j["valid"] = v.valid;
  j["diagnostic"] = to_string(v.diagnostic);
  return j;
}

inline nlohmann::ordered_json to_json(const McEstimate& est) {
  return {{"mean", est.mean}, {"stderr", est.std_error}, {"successes", est.successes}, {"trials", est.trials},
          {"seed", est.seed.value}};
}

inline nlohmann::ordered_json to_json(const SweepResult& res) {
  nlohmann::ordered_json j;
  j["scope"] = to_string(res.spec.scope);
  j["k"] = res.spec.k;
  j["r"] = res.spec.r;
  j["overhead"] = res.spec.overhead;
  j["trials"] = res.spec.trials;
  j["seed"] = res.spec.seed.value;
  nlohmann::ordered_json breakdown = nlohmann::ordered_json::object();
  for (const auto& [m, at] : res.breakdown_at)
    breakdown[std::string(to_string(m))] = at ? nlohmann::ordered_json(*at) : nlohmann::ordered_json(nullptr);
  j["breakdown_at"] = breakdown;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : res.rows) {
    nlohmann::ordered_json r;
    r["e"] = row.point.e;
    r["size"] = row.point.size;
    r["p"] = row.point.p;
    for (Method m : res.spec.methods) {
      if (m == Method::mc) {
        r["mc"] = to_json(*row.mc);
      } else {
        auto v = to_json(row.values.at(m));
        v["breakdown"] = res.broken(m, row.point.e);
        r[std::string(to_string(m))] = v;
      }
    }
    j["rows"].push_back(r);
  }
  return j;
}

/// Linear scan of e = 1 .. cap (skipping infeasible points) for the first
/// breakdown of a formula method. std::nullopt means none found below the cap.
inline std::optional<int> scan_breakdown(int k, int r, double overhead, Method method, Scope scope, int cap = 500) {
  if (method == Method::mc) throw std::invalid_argument("breakdown scan needs a formula method, not mc");
  if (k < 2 || r < 1 || !(overhead > 0.0)) throw std::invalid_argument("bad breakdown scan parameters");
  SweepSpec geometry;
  geometry.k = k;
  geometry.overhead = overhead;
  MethodEvaluator eval(scope, k, r, 1);
  BreakdownDetector detector;
  for (int e = 1; e <= cap; ++e) {
    const auto pt = geometry.point(e);
    if (!SweepSpec::feasible(pt, k)) continue;
    if (detector.observe(e, eval.formula(method, pt.size, pt.p))) return e;
  }
  return std::nullopt;
}

}  // namespace rcore
