#pragma once

// Probability that an r-core (or a connected component) forms on one
// specific set of u vertices: the hypergraph connectivity recursion, the
// Erdos-Renyi special case, and the binomial covering heuristic.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcore/hypergraph.hpp"
#include "rcore/numerics.hpp"
#include "rcore/prob_value.hpp"

namespace rcore {

/// u = |U| together with (k, p, r); by vertex anonymity nothing else matters.
struct LocalQuery {
  int u = 1;
  int k = 2;
  double p = 0.0;
  int r = 1;

  void validate() const {
    if (u < 1) throw std::invalid_argument("subset size u must be >= 1");
    if (k < 2) throw std::invalid_argument("edge size k must be >= 2");
    if (r < 1) throw std::invalid_argument("core order r must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
};

/// Number of k-sets over u vertices that meet both parts of an (i, u - i)
/// split: sum over j of C(i, j) * C(u - i, k - j), j = 1 .. min(i, k - 1).
inline BigInt cross_edge_count(int u, int i, int k) {
  if (i < 1 || i >= u) throw std::out_of_range("cross_edge_count: need 1 <= i < u");
  BigInt total = 0;
  for (int j = 1; j <= std::min(i, k - 1); ++j) total += choose(i, j) * choose(u - i, k - j);
  return total;
}

namespace detail {

/// log(1 - p), using log1p below one half.
inline double log_complement(double p) { return p < 0.5 ? std::log1p(-p) : std::log(1.0 - p); }

/// (1 - p)^exponent in log space; exact 0/1 handling at p == 1.
inline double log_survival_power(double p, double exponent) {
  if (exponent == 0.0) return 0.0;
  if (p >= 1.0) return -std::numeric_limits<double>::infinity();
  return exponent * log_complement(p);
}

}  // namespace detail

/// Memoized f(1..u_max) for one (k, p): the probability that a given set of
/// u vertices is connected in a random k-uniform hypergraph.
///
///   f(1) = 1,  f(u) = 0 for 1 < u < k,
///   f(u) = 1 - sum_{i=1}^{u-1} f(i) C(u-1, i-1) (1-p)^{eps(u, i)}.
///
/// The i-th term is the probability that the component of a fixed vertex has
/// exactly i vertices. Values are not clamped; once one leaves
/// [-tol, 1 + tol] it and every later entry are flagged invalid.
class ConnectivityTable {
 public:
  ConnectivityTable(int k, double p) : k_(k), p_(p) {
    LocalQuery{1, k, p, 1}.validate();
    values_.push_back(std::numeric_limits<double>::quiet_NaN());  // u = 0 unused
  }

  int k() const { return k_; }
  double p() const { return p_; }
  int computed_up_to() const { return static_cast<int>(values_.size()) - 1; }
  std::optional<int> first_invalid() const { return first_invalid_; }

  ProbValue at(int u) {
    if (u < 1) throw std::invalid_argument("connectivity: u must be >= 1");
    extend_to(u);
    const double f = values_[u];
    if (!first_invalid_ || u < *first_invalid_) return ProbValue::exact(f);
    if (u == *first_invalid_) return ProbValue::checked(f);
    return ProbValue::propagated(f);
  }

 private:
  void extend_to(int target) {
    while (computed_up_to() < target) {
      const int u = computed_up_to() + 1;
      double f = 0.0;
      if (u == 1) {
        f = 1.0;
      } else if (u >= k_) {
        ExactSum acc;
        acc.add(1.0);
        for (int i = 1; i < u; ++i) {
          const double fi = values_[i];
          if (fi == 0.0) continue;
          const double eps = to_double_or_inf(cross_edge_count(u, i, k_));
          const double log_mag = std::log(std::abs(fi)) + binom_.log(u - 1, i - 1) +
                                 detail::log_survival_power(p_, eps);
          const double term = std::exp(log_mag);
          acc.add(fi < 0.0 ? term : -term);
        }
        f = acc.value();
      }
      values_.push_back(f);
      if (!first_invalid_ && !ProbValue::checked(f).valid) first_invalid_ = u;
    }
  }

  int k_;
  double p_;
  std::vector<double> values_;
  std::optional<int> first_invalid_;
  BinomialTable binom_;
};

/// Caller-owned memo of connectivity tables keyed on (k, bit pattern of p).
/// Not synchronized; give each thread its own context.
class LocalContext {
 public:
  ConnectivityTable& table(int k, double p) {
    const auto key = std::make_pair(k, std::bit_cast<std::uint64_t>(p));
    auto it = tables_.find(key);
    if (it == tables_.end()) it = tables_.emplace(key, ConnectivityTable(k, p)).first;
    return it->second;
  }

  std::size_t size() const { return tables_.size(); }

 private:
  std::map<std::pair<int, std::uint64_t>, ConnectivityTable> tables_;
};

/// Probability that u given vertices are connected (a 1-core in the
/// connectivity sense).
inline ProbValue connectivity_prob(int u, int k, double p, LocalContext& ctx) {
  LocalQuery{u, k, p, 1}.validate();
  return ctx.table(k, p).at(u);
}

inline ProbValue connectivity_prob(int u, int k, double p) {
  LocalContext ctx;
  return connectivity_prob(u, k, p, ctx);
}

/// Gilbert's recursion for graphs (k = 2), exponent i(u - i). Kept
/// independent of ConnectivityTable so the two can check each other.
inline ProbValue gilbert_prob(int u, double p) {
  LocalQuery{u, 2, p, 1}.validate();
  std::vector<double> g(u + 1, 0.0);
  g[1] = 1.0;
  std::optional<int> broken;
  for (int n = 2; n <= u; ++n) {
    // Neumaier-compensated sum of g(i) C(n-1, i-1) (1-p)^{i(n-i)}
    double sum = 0.0;
    double comp = 0.0;
    double binom = 1.0;  // C(n-1, i-1)
    for (int i = 1; i < n; ++i) {
      if (i > 1) binom = binom * static_cast<double>(n - i + 1) / static_cast<double>(i - 1);
      const double term = g[i] * binom * std::pow(1.0 - p, static_cast<double>(i) * (n - i));
      const double t = sum + term;
      comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
    g[n] = 1.0 - (sum + comp);
    if (!broken && !ProbValue::checked(g[n]).valid) broken = n;
  }
  if (!broken || u < *broken) return ProbValue::exact(g[u]);
  return u == *broken ? ProbValue::checked(g[u]) : ProbValue::propagated(g[u]);
}

/// Outer-sum range of the covering heuristic.
struct CoveringWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

inline constexpr double kCoveringExactSupportLimit = 1e6;
inline constexpr double kCoveringSigmaWidth = 12.0;
inline constexpr double kCoveringPmfCutoff = 1e-18;

/// Covering heuristic: the edge count e of the induced hypergraph is
/// Binomial(C(u,k), p); given e edges, each vertex independently occupies at
/// least r of the e*k slots with probability 1 - B(r-1; e, k/u), and all u
/// vertices must be covered:
///
///   sum_e b(e; C(u,k), p) * (1 - B(r-1; e, k/u))^u.
///
/// The outer sum runs over the exact support when C(u,k) <= 1e6, else over
/// mean +/- 12 sd, and on each side stops once the pmf drops below 1e-18.
inline ProbValue covering_prob(int u, int k, double p, int r) {
  LocalQuery{u, k, p, r}.validate();
  if (u < k) return ProbValue::exact(0.0);
  const BigInt m_exact = choose(u, k);
  if (m_exact > BigInt(std::numeric_limits<std::int64_t>::max() / 2))
    throw scale_error("covering_prob: C(u, k) too large");
  const auto m = m_exact.convert_to<std::int64_t>();
  const BinomialDist edges(m, p);
  const double slot = static_cast<double>(k) / static_cast<double>(u);

  CoveringWindow window{0, m};
  if (static_cast<double>(m) > kCoveringExactSupportLimit) {
    const double half = kCoveringSigmaWidth * edges.stddev();
    window.lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(edges.mean() - half)));
    window.hi = std::min<std::int64_t>(m, static_cast<std::int64_t>(std::ceil(edges.mean() + half)));
  }
  const auto mode = std::clamp<std::int64_t>(
      static_cast<std::int64_t>(std::floor((static_cast<double>(m) + 1.0) * p)), window.lo, window.hi);

  auto covered = [&](std::int64_t e) {
    const double per_vertex = binom_sf(r - 1, e, slot);
    if (per_vertex <= 0.0) return 0.0;
    return std::exp(static_cast<double>(u) * std::log(per_vertex));
  };

  ExactSum acc;
  for (std::int64_t e = mode; e >= window.lo; --e) {
    const double w = binom_pmf(e, m, p);
    if (w < kCoveringPmfCutoff && e != mode) break;
    acc.add(w * covered(e));
  }
  for (std::int64_t e = mode + 1; e <= window.hi; ++e) {
    const double w = binom_pmf(e, m, p);
    if (w < kCoveringPmfCutoff) break;
    acc.add(w * covered(e));
  }
  return ProbValue::checked(acc.value());
}

/// Local r-core probability in the interleaved construction: the base
/// connectivity probability raised to r (one fresh 1-core per round).
inline ProbValue interleaved_local_prob(int u, int k, double p, int r, LocalContext& ctx) {
  LocalQuery{u, k, p, r}.validate();
  const ProbValue base = connectivity_prob(u, k, p, ctx);
  const double value = std::pow(base.value, r);
  if (!base.valid) return ProbValue::propagated(value);
  return ProbValue::checked(value);
}

inline ProbValue interleaved_local_prob(int u, int k, double p, int r) {
  LocalContext ctx;
  return interleaved_local_prob(u, k, p, r, ctx);
}

}  // namespace rcore
