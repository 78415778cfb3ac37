#pragma once

// Composition of local core probabilities into the probability that exactly
// one r-core forms anywhere, the geometric-series bound on forming at least
// one, and the interleaving sandwich bounds.

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <vector>

#include "rcore/local_prob.hpp"
#include "rcore/numerics.hpp"
#include "rcore/prob_value.hpp"

namespace rcore {

enum class LocalMethod { connectivity, covering, interleaved };

constexpr std::string_view to_string(LocalMethod m) {
  switch (m) {
    case LocalMethod::connectivity: return "connectivity";
    case LocalMethod::covering: return "covering";
    case LocalMethod::interleaved: return "interleaved";
  }
  return "unknown";
}

/// Source of the local probability that an r-core forms on a specific set of
/// u vertices.
///
///  - connectivity: f(u), only defined for r = 1 (a 1-core is a connected set).
///  - covering:     the binomial covering heuristic.
///  - interleaved:  f(u)^r, the interleaved-construction local probability.
///
/// Covering values are cached; connectivity values live in the LocalContext.
class LocalProvider {
 public:
  LocalProvider(LocalMethod method, LocalContext& ctx) : method_(method), ctx_(&ctx) {}

  LocalMethod method() const { return method_; }
  LocalContext& context() const { return *ctx_; }

  ProbValue operator()(int u, int k, double p, int r) {
    switch (method_) {
      case LocalMethod::connectivity:
        if (r != 1)
          throw std::invalid_argument(
              "connectivity provider gives 1-core probabilities only; use interleaved for r > 1");
        return connectivity_prob(u, k, p, *ctx_);
      case LocalMethod::interleaved:
        return interleaved_local_prob(u, k, p, r, *ctx_);
      case LocalMethod::covering: {
        const auto key = std::make_tuple(u, k, std::bit_cast<std::uint64_t>(p), r);
        auto it = covering_cache_.find(key);
        if (it == covering_cache_.end()) it = covering_cache_.emplace(key, covering_prob(u, k, p, r)).first;
        return it->second;
      }
    }
    throw std::logic_error("unknown local method");
  }

 private:
  LocalMethod method_;
  LocalContext* ctx_;
  std::map<std::tuple<int, int, std::uint64_t, int>, ProbValue> covering_cache_;
};

/// Geometric-series bound C <= C* / (1 - C*) on forming at least one core.
/// C* >= 1 gives 1 flagged saturated; a bound above 1 stays valid but is
/// marked vacuous.
inline ProbValue at_least_one_bound(const ProbValue& exactly_one) {
  const double c = exactly_one.value;
  if (!exactly_one.valid) {
    const double raw = c < 1.0 ? c / (1.0 - c) : 1.0;
    return ProbValue::propagated(raw);
  }
  if (c >= 1.0) return {1.0, false, Diagnostic::saturated};
  const double bound = c / (1.0 - c);
  if (bound > 1.0) return {bound, true, Diagnostic::vacuous};
  return ProbValue::exact(bound);
}

struct GlobalResult {
  int v = 0;
  int k = 0;
  int r = 1;
  double p = 0.0;
  /// C_u for u in [0, v]; zero below k.
  std::vector<ProbValue> per_size;
  ProbValue exactly_one;
  ProbValue at_least_one;
  /// Largest u whose value (or whose running sum from v downward) first
  /// failed validation.
  std::optional<int> breakdown_at;
};

/// Descending recursion over core sizes for fixed (k, p, r). Results are
/// memoized per vertex count, since the "no other core" factor re-enters the
/// recursion on every smaller instance.
class GlobalSolver {
 public:
  GlobalSolver(int k, double p, int r, LocalProvider& provider)
      : k_(k), p_(p), r_(r), provider_(&provider) {
    LocalQuery{1, k, p, r}.validate();
  }

  const GlobalResult& solve(int v) {
    if (v < 1) throw std::invalid_argument("vertex count must be >= 1");
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;

    GlobalResult res;
    res.v = v;
    res.k = k_;
    res.r = r_;
    res.p = p_;
    res.per_size.assign(v + 1, ProbValue::exact(0.0));

    bool all_valid = true;
    ExactSum total;
    for (int u = v; u >= k_; --u) {
      const ProbValue once = c_prime(u, v, res.per_size);
      const ProbValue alone = c_double_prime(u, v);
      const double value = once.value * alone.value;
      ProbValue cu = (once.valid && alone.valid) ? ProbValue::checked(value) : ProbValue::propagated(value);
      res.per_size[u] = cu;
      total.add(value);
      if (!res.breakdown_at && (!cu.valid || !ProbValue::checked(total.value()).valid)) res.breakdown_at = u;
      all_valid = all_valid && cu.valid;
    }
    res.exactly_one = all_valid ? ProbValue::checked(total.value()) : ProbValue::propagated(total.value());
    res.at_least_one = at_least_one_bound(res.exactly_one);
    return memo_.emplace(v, std::move(res)).first->second;
  }

  /// C'_u: probability that some u-set carries a core contained in no larger
  /// core,
  ///
  ///   C(v,u) * local(u) * prod_{x=u+1}^{v} (1 - C_x)^{C(v-u, x-u)}.
  ///
  /// `per_size[x]` must already hold C_x for every x in (u, v]. The exponent
  /// counts the C(v-u, x-u) supersets of size x of a fixed u-set. Because the
  /// local probability depends only on u, the sum over u-subsets collapses to
  /// the single factor C(v, u).
  ProbValue c_prime(int u, int v, std::span<const ProbValue> per_size) {
    if (u < k_ || u > v) throw std::invalid_argument("c_prime: need k <= u <= v");
    if (static_cast<int>(per_size.size()) <= v) throw std::invalid_argument("c_prime: per_size too short");

    const ProbValue local = (*provider_)(u, k_, p_, r_);
    bool inputs_valid = local.valid;
    if (local.value == 0.0) return local.valid ? ProbValue::exact(0.0) : ProbValue::propagated(0.0);

    double sign = local.value < 0.0 ? -1.0 : 1.0;
    double log_mag = binom_.log(v, u) + std::log(std::abs(local.value));
    for (int x = u + 1; x <= v; ++x) {
      const ProbValue& cx = per_size[x];
      inputs_valid = inputs_valid && cx.valid;
      if (cx.value == 0.0) continue;
      const double supersets = binom_.value(v - u, x - u);
      const double base = 1.0 - cx.value;
      if (base > 0.0) {
        log_mag += supersets * std::log1p(-cx.value);
      } else if (base == 0.0) {
        return inputs_valid ? ProbValue::exact(0.0) : ProbValue::propagated(0.0);
      } else {
        // Only reachable after breakdown: a negative base to an integer power.
        log_mag += supersets * std::log(-base);
        if (choose(v - u, x - u) % 2 != 0) sign = -sign;
      }
    }
    const double value = sign * std::exp(log_mag);
    return inputs_valid ? ProbValue::checked(value) : ProbValue::propagated(value);
  }

  /// C''_u: probability that no core forms on the v - u vertices outside a
  /// given u-core, i.e. 1 - sum_{x=k}^{v-u} C_x evaluated on a hypergraph
  /// with v - u vertices. Any core larger than v - u would intersect it.
  ProbValue c_double_prime(int u, int v) {
    if (u < k_ || u > v) throw std::invalid_argument("c_double_prime: need k <= u <= v");
    const int rest = v - u;
    if (rest < k_) return ProbValue::exact(1.0);
    const ProbValue others = solve(rest).exactly_one;
    const double value = 1.0 - others.value;
    return others.valid ? ProbValue::checked(value) : ProbValue::propagated(value);
  }

  int k() const { return k_; }
  double p() const { return p_; }
  int r() const { return r_; }

 private:
  int k_;
  double p_;
  int r_;
  LocalProvider* provider_;
  BinomialTable binom_;
  std::map<int, GlobalResult> memo_;
};

inline GlobalResult empty_result(int v, int k, double p, int r) {
  GlobalResult res;
  res.v = v;
  res.k = k;
  res.r = r;
  res.p = p;
  res.per_size.assign(std::max(v, 0) + 1, ProbValue::exact(0.0));
  res.exactly_one = ProbValue::exact(0.0);
  res.at_least_one = ProbValue::exact(0.0);
  return res;
}

/// Probability that exactly one r-core forms anywhere, with the per-size
/// breakdown. No core fits when v < k.
inline GlobalResult exactly_one_core(int v, double p, int k, int r, LocalProvider& provider) {
  LocalQuery{1, k, p, r}.validate();
  if (v < k) return empty_result(v, k, p, r);
  GlobalSolver solver(k, p, r, provider);
  return solver.solve(v);
}

inline ProbValue at_least_one_bound(int v, double p, int k, int r, LocalProvider& provider) {
  return exactly_one_core(v, p, k, r, provider).at_least_one;
}

struct InterleavingBounds {
  ProbValue lower;
  ProbValue upper;
};

/// Sandwich bounds from the interleaved construction: the at-least-one bound
/// evaluated with edge probability p / r (lower) and p (upper), both using
/// f(u)^r as the local probability.
inline InterleavingBounds interleaving_bounds(int v, double p, int k, int r, LocalProvider& provider) {
  if (provider.method() != LocalMethod::interleaved)
    throw std::invalid_argument("interleaving_bounds requires the interleaved provider");
  return {at_least_one_bound(v, p / r, k, r, provider), at_least_one_bound(v, p, k, r, provider)};
}

inline InterleavingBounds interleaving_bounds(int v, double p, int k, int r) {
  LocalContext ctx;
  LocalProvider provider(LocalMethod::interleaved, ctx);
  return interleaving_bounds(v, p, k, r, provider);
}

}  // namespace rcore
