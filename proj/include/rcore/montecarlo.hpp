#pragma once

// Seeded Monte Carlo estimates of local and global core formation, and the
// exhaustive-enumeration oracles used as ground truth on small instances.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

#include "rcore/hypergraph.hpp"
#include "rcore/local_prob.hpp"
#include "rcore/numerics.hpp"

namespace rcore {

/// Binomial proportion estimate with its normal-approximation standard error.
struct McEstimate {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  Seed seed{};

  static McEstimate from_counts(std::int64_t successes, std::int64_t trials, Seed seed) {
    if (trials <= 0) throw std::invalid_argument("McEstimate: trials must be positive");
    McEstimate est;
    est.successes = successes;
    est.trials = trials;
    est.mean = static_cast<double>(successes) / static_cast<double>(trials);
    est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(trials));
    est.seed = seed;
    return est;
  }

  /// Pools two disjoint runs of the same experiment.
  friend McEstimate merge(const McEstimate& a, const McEstimate& b) {
    return from_counts(a.successes + b.successes, a.trials + b.trials, a.seed);
  }

  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

enum class LocalPredicate { connectivity, min_degree };

constexpr std::string_view to_string(LocalPredicate p) {
  return p == LocalPredicate::connectivity ? "connectivity" : "min_degree";
}

/// Trials are grouped in fixed-size blocks; block b draws from an engine
/// seeded with splitmix64(master ^ splitmix64(b)), so the result does not
/// depend on how blocks are spread over threads.
inline constexpr std::int64_t kTrialsPerBlock = 1024;

inline Seed derive_seed(Seed master, std::uint64_t block) {
  return Seed{splitmix64(master.value ^ splitmix64(block))};
}

inline std::int64_t block_count(std::int64_t trials) {
  return (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
}

namespace detail {

/// Samples edge sets over a fixed candidate list, one uniform draw per
/// candidate in colex order (the same stream `generate` consumes).
class TrialSampler {
 public:
  TrialSampler(int n, int k, double p) : n_(n), k_(k), p_(p) {
    if (choose(n, k) > kMaxGeneratedCandidates) throw scale_error("sampler: C(n, k) exceeds 2^31");
    candidates_ = candidate_edges(n, k);
  }

  std::span<const Vertex> sample(std::mt19937_64& engine) {
    edges_.clear();
    const std::size_t m = candidates_.size() / k_;
    for (std::size_t i = 0; i < m; ++i)
      if (unit_draw(engine) < p_)
        edges_.insert(edges_.end(), candidates_.begin() + i * k_, candidates_.begin() + (i + 1) * k_);
    return edges_;
  }

  int n() const { return n_; }
  int k() const { return k_; }

 private:
  int n_;
  int k_;
  double p_;
  std::vector<Vertex> candidates_;
  std::vector<Vertex> edges_;
};

template <class Trial>
std::int64_t run_block(std::int64_t trials, Seed seed, int n, int k, double p, Trial&& trial) {
  TrialSampler sampler(n, k, p);
  auto engine = make_engine(seed);
  std::int64_t successes = 0;
  for (std::int64_t t = 0; t < trials; ++t)
    if (trial(sampler.sample(engine))) ++successes;
  return successes;
}

/// Runs blocks [first, last) of a `trials`-trial experiment over `workers`
/// threads and sums per-block counts.
template <class Trial>
McEstimate run_blocks(std::int64_t trials, Seed master, std::int64_t first, std::int64_t last, int n, int k,
                      double p, unsigned workers, const Trial& trial) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::int64_t blocks = block_count(trials);
  first = std::clamp<std::int64_t>(first, 0, blocks);
  last = std::clamp<std::int64_t>(last, first, blocks);
  if (first == last) throw std::invalid_argument("empty block range");

  auto trials_in = [&](std::int64_t b) { return std::min(kTrialsPerBlock, trials - b * kTrialsPerBlock); };
  std::vector<std::int64_t> successes(last - first, 0);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, last - first));

  auto work = [&](unsigned w) {
    for (std::int64_t b = first + w; b < last; b += workers)
      successes[b - first] = run_block(trials_in(b), derive_seed(master, b), n, k, p, trial);
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::int64_t total_trials = 0;
  for (std::int64_t b = first; b < last; ++b) total_trials += trials_in(b);
  std::int64_t total = 0;
  for (auto s : successes) total += s;
  return McEstimate::from_counts(total, total_trials, master);
}

inline auto local_trial(int u, int k, int r, LocalPredicate predicate) {
  if (predicate == LocalPredicate::connectivity && r != 1)
    throw std::invalid_argument("connectivity predicate tests 1-cores only; use min_degree for r > 1");
  return [u, k, r, predicate, full = std::vector<char>(u, 1)](std::span<const Vertex> edges) {
    if (predicate == LocalPredicate::connectivity) return induced_components(u, k, edges, full) == 1;
    return induced_min_degree_at_least(u, k, edges, full, r);
  };
}

inline auto global_trial(int v, int k, int r) {
  return [v, k, r](std::span<const Vertex> edges) {
    const auto alive = peel_mask(v, k, edges, r);
    return std::ranges::any_of(alive, [](char a) { return a != 0; });
  };
}

}  // namespace detail

/// Fraction of random hypergraphs on exactly u vertices for which the
/// predicate holds on the whole vertex set.
inline McEstimate mc_local(int u, int k, double p, int r, LocalPredicate predicate, std::int64_t trials, Seed seed,
                           unsigned workers = 0) {
  LocalQuery{u, k, p, r}.validate();
  return detail::run_blocks(trials, seed, 0, block_count(trials), u, k, p, workers,
                            detail::local_trial(u, k, r, predicate));
}

/// Same experiment restricted to blocks [first, last); merging a partition
/// of the block range reproduces the full run.
inline McEstimate mc_local_blocks(int u, int k, double p, int r, LocalPredicate predicate, std::int64_t trials,
                                  Seed seed, std::int64_t first, std::int64_t last, unsigned workers = 1) {
  LocalQuery{u, k, p, r}.validate();
  return detail::run_blocks(trials, seed, first, last, u, k, p, workers, detail::local_trial(u, k, r, predicate));
}

/// Fraction of random hypergraphs on v vertices whose r-core (by peeling) is
/// nonempty: an estimate of C(v, p, k, r).
inline McEstimate mc_global(int v, int k, double p, int r, std::int64_t trials, Seed seed, unsigned workers = 0) {
  LocalQuery{v, k, p, r}.validate();
  return detail::run_blocks(trials, seed, 0, block_count(trials), v, k, p, workers, detail::global_trial(v, k, r));
}

inline McEstimate mc_global_blocks(int v, int k, double p, int r, std::int64_t trials, Seed seed, std::int64_t first,
                                   std::int64_t last, unsigned workers = 1) {
  LocalQuery{v, k, p, r}.validate();
  return detail::run_blocks(trials, seed, first, last, v, k, p, workers, detail::global_trial(v, k, r));
}

namespace detail {

/// Probability of one specific edge set with `present` of `total` candidates.
inline double edge_set_weight(int present, int total, double p) {
  if (p == 0.0) return present == 0 ? 1.0 : 0.0;
  if (p == 1.0) return present == total ? 1.0 : 0.0;
  return std::exp(present * std::log(p) + (total - present) * std::log1p(-p));
}

/// Sum of weights of all hypergraphs on v vertices satisfying `indicator`.
template <class Indicator>
double enumerate_weighted(int v, int k, double p, const Indicator& indicator) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  const HypergraphEnumeration all(v, k);
  const int m = all.candidate_count();
  ExactSum acc;
  for (auto it = all.begin(); it != all.end(); ++it) {
    const std::uint64_t mask = it.mask();
    const int present = std::popcount(mask);
    const double w = edge_set_weight(present, m, p);
    if (w == 0.0) continue;
    if (indicator(*it)) acc.add(w);
  }
  return acc.value();
}

inline std::vector<std::uint32_t> edge_vertex_masks(const Hypergraph& h) {
  std::vector<std::uint32_t> masks;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    std::uint32_t m = 0;
    for (Vertex x : h.edge(i)) m |= std::uint32_t{1} << x;
    masks.push_back(m);
  }
  return masks;
}

/// True iff every vertex of `set` lies in >= r edges contained in `set`.
inline bool is_core_set(std::uint32_t set, std::span<const std::uint32_t> edges, int v, int r) {
  if (set == 0) return false;
  std::vector<int> degree(v, 0);
  for (auto e : edges)
    if ((e & set) == e)
      for (int x = 0; x < v; ++x)
        if (e >> x & 1U) ++degree[x];
  for (int x = 0; x < v; ++x)
    if ((set >> x & 1U) && degree[x] < r) return false;
  return true;
}

}  // namespace detail

/// Exact C(v, p, k, r) by enumerating all 2^C(v,k) hypergraphs and peeling
/// each one.
inline double exact_global(int v, int k, double p, int r) {
  if (r < 1) throw std::invalid_argument("core order r must be >= 1");
  return detail::enumerate_weighted(v, k, p, [&](const Hypergraph& h) {
    const auto alive = detail::peel_mask(v, k, h.flat_edges(), r);
    return std::ranges::any_of(alive, [](char a) { return a != 0; });
  });
}

/// What "exactly one r-core" counts.
///  - minimal: exactly one inclusion-minimal vertex set with induced min
///    degree >= r.
///  - maximal: the maximal core (peeling survivors) is nonempty and its
///    induced hypergraph is connected, i.e. there are no two disjoint cores.
enum class CoreSemantics { minimal, maximal };

constexpr std::string_view to_string(CoreSemantics s) {
  return s == CoreSemantics::minimal ? "minimal" : "maximal";
}

inline constexpr int kMaxMinimalSemanticsVertices = 12;

inline double exact_exactly_one(int v, int k, double p, int r, CoreSemantics semantics) {
  if (r < 1) throw std::invalid_argument("core order r must be >= 1");
  if (semantics == CoreSemantics::maximal) {
    return detail::enumerate_weighted(v, k, p, [&](const Hypergraph& h) {
      const auto alive = detail::peel_mask(v, k, h.flat_edges(), r);
      if (std::ranges::none_of(alive, [](char a) { return a != 0; })) return false;
      return detail::induced_components(v, k, h.flat_edges(), alive) == 1;
    });
  }
  if (v > kMaxMinimalSemanticsVertices)
    throw scale_error("exact_exactly_one: minimal semantics limited to 12 vertices");
  return detail::enumerate_weighted(v, k, p, [&](const Hypergraph& h) {
    const auto edges = detail::edge_vertex_masks(h);
    std::vector<std::uint32_t> cores;
    const std::uint32_t full = (std::uint32_t{1} << v) - 1;
    for (std::uint32_t s = 1; s <= full; ++s)
      if (detail::is_core_set(s, edges, v, r)) cores.push_back(s);
    int minimal = 0;
    for (auto c : cores) {
      const bool has_smaller =
          std::ranges::any_of(cores, [c](std::uint32_t d) { return d != c && (d & c) == d; });
      if (!has_smaller && ++minimal > 1) return false;
    }
    return minimal == 1;
  });
}

}  // namespace rcore
