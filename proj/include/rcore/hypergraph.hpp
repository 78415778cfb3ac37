#pragma once

// k-uniform hypergraphs: random generation, peeling, connectivity, and
// exhaustive enumeration for small instances.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcore/numerics.hpp"

namespace rcore {

using Vertex = std::uint32_t;

/// Thrown when an instance is too large for the enumerating algorithms.
class scale_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

/// (v, p, k, r): the domain of every probability function.
struct HypergraphParams {
  int v = 1;
  int k = 2;
  double p = 0.0;
  int r = 1;

  HypergraphParams() = default;
  HypergraphParams(int vertices, int edge_size, double prob, int order)
      : v(vertices), k(edge_size), p(prob), r(order) {
    validate();
  }

  void validate() const {
    if (v < 1) throw std::invalid_argument("vertex count must be >= 1");
    if (k < 2) throw std::invalid_argument("edge size k must be >= 2");
    if (r < 1) throw std::invalid_argument("core order r must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  }

  /// Expected edge count p * C(v, k).
  double expected_edges() const { return p * to_double_or_inf(choose(v, k)); }
};

namespace detail {

/// Colexicographic successor of a sorted k-subset of [0, n). Returns false
/// once the last subset has been passed.
inline bool next_colex(std::span<Vertex> c, Vertex n) {
  const std::size_t k = c.size();
  for (std::size_t j = 0; j < k; ++j) {
    const Vertex limit = (j + 1 < k) ? c[j + 1] : n;
    if (c[j] + 1 < limit) {
      ++c[j];
      for (std::size_t t = 0; t < j; ++t) c[t] = static_cast<Vertex>(t);
      return true;
    }
  }
  return false;
}

inline bool colex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace detail

/// Every k-subset of [0, v) in colexicographic order, flattened with stride k.
inline std::vector<Vertex> candidate_edges(int v, int k) {
  std::vector<Vertex> flat;
  if (k > v || k < 1) return flat;
  std::vector<Vertex> c(k);
  std::iota(c.begin(), c.end(), Vertex{0});
  do {
    flat.insert(flat.end(), c.begin(), c.end());
  } while (detail::next_colex(c, static_cast<Vertex>(v)));
  return flat;
}

/// A k-uniform hypergraph on vertices [0, v). Edges are stored flat, each
/// sorted ascending, the edge list sorted colexicographically.
class Hypergraph {
 public:
  Hypergraph(int v, int k) : v_(v), k_(k) {
    if (v < 0) throw std::invalid_argument("vertex count must be non-negative");
    if (k < 1) throw std::invalid_argument("edge size must be positive");
  }

  Hypergraph(int v, int k, const std::vector<std::vector<Vertex>>& edges) : Hypergraph(v, k) {
    std::vector<std::vector<Vertex>> sorted = edges;
    for (auto& e : sorted) {
      if (static_cast<int>(e.size()) != k)
        throw std::invalid_argument("edge has " + std::to_string(e.size()) + " vertices, expected " +
                                    std::to_string(k));
      std::ranges::sort(e);
      if (std::ranges::adjacent_find(e) != e.end())
        throw std::invalid_argument("edge repeats a vertex");
      if (e.back() >= static_cast<Vertex>(v)) throw std::invalid_argument("edge vertex out of range");
    }
    std::ranges::sort(sorted, [](const auto& a, const auto& b) { return detail::colex_less(a, b); });
    if (std::ranges::adjacent_find(sorted) != sorted.end())
      throw std::invalid_argument("duplicate edge");
    for (const auto& e : sorted) flat_.insert(flat_.end(), e.begin(), e.end());
  }

  /// Builds from a flat array already in canonical order (as produced by
  /// candidate_edges); no validation.
  static Hypergraph from_canonical(int v, int k, std::vector<Vertex> flat) {
    Hypergraph h(v, k);
    h.flat_ = std::move(flat);
    return h;
  }

  int vertex_count() const { return v_; }
  int edge_size() const { return k_; }
  std::size_t edge_count() const { return k_ == 0 ? 0 : flat_.size() / k_; }
  std::span<const Vertex> edge(std::size_t i) const {
    return std::span<const Vertex>(flat_).subspan(i * k_, k_);
  }
  std::span<const Vertex> flat_edges() const { return flat_; }

  std::vector<std::vector<Vertex>> edges() const {
    std::vector<std::vector<Vertex>> out;
    for (std::size_t i = 0; i < edge_count(); ++i) {
      auto e = edge(i);
      out.emplace_back(e.begin(), e.end());
    }
    return out;
  }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  int v_ = 0;
  int k_ = 0;
  std::vector<Vertex> flat_;
};

/// Uniform double in [0, 1) from the top 53 bits of one engine output, so the
/// same seed yields the same draws on every platform.
inline double unit_draw(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// SplitMix64 finalizer; used for seed expansion.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_engine(Seed seed) { return std::mt19937_64(splitmix64(seed.value)); }

inline constexpr std::uint64_t kMaxGeneratedCandidates = std::uint64_t{1} << 31;

/// Draws every candidate edge independently with probability p, one uniform
/// draw per candidate in colex order.
inline Hypergraph generate(const HypergraphParams& params, std::mt19937_64& engine) {
  params.validate();
  if (choose(params.v, params.k) > kMaxGeneratedCandidates)
    throw scale_error("generate: C(v, k) exceeds 2^31 candidate edges");
  Hypergraph h(params.v, params.k);
  std::vector<Vertex> flat;
  if (params.k <= params.v) {
    std::vector<Vertex> c(params.k);
    std::iota(c.begin(), c.end(), Vertex{0});
    do {
      if (unit_draw(engine) < params.p) flat.insert(flat.end(), c.begin(), c.end());
    } while (detail::next_colex(c, static_cast<Vertex>(params.v)));
  }
  return Hypergraph::from_canonical(params.v, params.k, std::move(flat));
}

inline Hypergraph generate(const HypergraphParams& params, Seed seed) {
  auto engine = make_engine(seed);
  return generate(params, engine);
}

namespace detail {

/// Batch-round peeling over a flat edge list. Returns the survivor mask.
inline std::vector<char> peel_mask(int v, int k, std::span<const Vertex> flat, int r,
                                   int* rounds_out = nullptr) {
  const std::size_t m = k == 0 ? 0 : flat.size() / k;
  std::vector<int> degree(v, 0);
  for (Vertex x : flat) ++degree[x];
  std::vector<char> alive_vertex(v, 1);
  std::vector<char> alive_edge(m, 1);

  // vertex -> incident edge ids
  std::vector<std::size_t> offset(v + 1, 0);
  for (Vertex x : flat) ++offset[x + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<std::size_t> incidence(flat.size());
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t e = 0; e < m; ++e)
      for (int j = 0; j < k; ++j) incidence[fill[flat[e * k + j]]++] = e;
  }

  int rounds = 0;
  std::vector<Vertex> doomed;
  for (;;) {
    doomed.clear();
    for (int x = 0; x < v; ++x)
      if (alive_vertex[x] && degree[x] < r) doomed.push_back(static_cast<Vertex>(x));
    ++rounds;
    if (doomed.empty()) break;
    for (Vertex x : doomed) alive_vertex[x] = 0;
    for (Vertex x : doomed) {
      for (std::size_t t = offset[x]; t < offset[x + 1]; ++t) {
        const std::size_t e = incidence[t];
        if (!alive_edge[e]) continue;
        alive_edge[e] = 0;
        for (int j = 0; j < k; ++j) --degree[flat[e * k + j]];
      }
    }
  }
  if (rounds_out) *rounds_out = rounds;
  return alive_vertex;
}

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Number of connected components among the vertices with mask[x] set,
/// using only edges lying entirely inside the mask.
inline int induced_components(int v, int k, std::span<const Vertex> flat, const std::vector<char>& mask) {
  DisjointSets sets(v);
  int components = 0;
  for (int x = 0; x < v; ++x) components += mask[x] ? 1 : 0;
  const std::size_t m = k == 0 ? 0 : flat.size() / k;
  for (std::size_t e = 0; e < m; ++e) {
    auto edge = flat.subspan(e * k, k);
    if (!std::ranges::all_of(edge, [&](Vertex x) { return mask[x] != 0; })) continue;
    for (int j = 1; j < k; ++j)
      if (sets.unite(edge[0], edge[j])) --components;
  }
  return components;
}

inline bool induced_min_degree_at_least(int v, int k, std::span<const Vertex> flat,
                                        const std::vector<char>& mask, int r) {
  std::vector<int> degree(v, 0);
  const std::size_t m = k == 0 ? 0 : flat.size() / k;
  for (std::size_t e = 0; e < m; ++e) {
    auto edge = flat.subspan(e * k, k);
    if (!std::ranges::all_of(edge, [&](Vertex x) { return mask[x] != 0; })) continue;
    for (Vertex x : edge) ++degree[x];
  }
  for (int x = 0; x < v; ++x)
    if (mask[x] && degree[x] < r) return false;
  return true;
}

inline std::vector<char> subset_mask(const Hypergraph& h, std::span<const Vertex> subset) {
  if (subset.empty()) throw std::invalid_argument("vertex subset must be nonempty");
  std::vector<char> mask(h.vertex_count(), 0);
  for (Vertex x : subset) {
    if (x >= static_cast<Vertex>(h.vertex_count()))
      throw std::invalid_argument("subset vertex out of range");
    mask[x] = 1;
  }
  return mask;
}

}  // namespace detail

/// Maximal r-core by batch-round peeling: each round removes every vertex of
/// degree < r together with its incident edges; stops after a round that
/// removes nothing. Returns the sorted survivors (possibly empty).
inline std::vector<Vertex> peel(const Hypergraph& h, int r) {
  const auto alive = detail::peel_mask(h.vertex_count(), h.edge_size(), h.flat_edges(), r);
  std::vector<Vertex> out;
  for (int x = 0; x < h.vertex_count(); ++x)
    if (alive[x]) out.push_back(static_cast<Vertex>(x));
  return out;
}

/// Number of peeling rounds, counting the final round that removes nothing.
inline int peel_rounds(const Hypergraph& h, int r) {
  int rounds = 0;
  detail::peel_mask(h.vertex_count(), h.edge_size(), h.flat_edges(), r, &rounds);
  return rounds;
}

/// True iff the sub-hypergraph induced on `subset` connects all of it.
/// Singletons are connected.
inline bool is_connected_on(const Hypergraph& h, std::span<const Vertex> subset) {
  const auto mask = detail::subset_mask(h, subset);
  return detail::induced_components(h.vertex_count(), h.edge_size(), h.flat_edges(), mask) == 1;
}

/// True iff every vertex of `subset` has induced degree >= r.
inline bool has_rcore_on(const Hypergraph& h, std::span<const Vertex> subset, int r) {
  const auto mask = detail::subset_mask(h, subset);
  return detail::induced_min_degree_at_least(h.vertex_count(), h.edge_size(), h.flat_edges(), mask, r);
}

inline constexpr int kMaxEnumeratedCandidates = 20;

/// All 2^C(v,k) hypergraphs on v vertices, in bitmask order over the colex
/// candidate list (bit i set = candidate i present).
class HypergraphEnumeration {
 public:
  HypergraphEnumeration(int v, int k) : v_(v), k_(k) {
    if (v < 0 || k < 1) throw std::invalid_argument("enumerate_all: bad dimensions");
    if (choose(v, k) > kMaxEnumeratedCandidates)
      throw scale_error("enumerate_all: C(v, k) exceeds 20 candidate edges");
    candidates_ = candidate_edges(v, k);
    m_ = static_cast<int>(candidates_.size() / k);
  }

  int candidate_count() const { return m_; }
  std::uint64_t size() const { return std::uint64_t{1} << m_; }
  std::span<const Vertex> candidates() const { return candidates_; }

  Hypergraph at(std::uint64_t mask) const {
    std::vector<Vertex> flat;
    for (int i = 0; i < m_; ++i)
      if (mask >> i & 1U)
        flat.insert(flat.end(), candidates_.begin() + i * k_, candidates_.begin() + (i + 1) * k_);
    return Hypergraph::from_canonical(v_, k_, std::move(flat));
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Hypergraph;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const HypergraphEnumeration* owner, std::uint64_t mask) : owner_(owner), mask_(mask) {}

    Hypergraph operator*() const { return owner_->at(mask_); }
    std::uint64_t mask() const { return mask_; }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++mask_;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    const HypergraphEnumeration* owner_ = nullptr;
    std::uint64_t mask_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size()}; }

 private:
  int v_;
  int k_;
  int m_ = 0;
  std::vector<Vertex> candidates_;
};

inline HypergraphEnumeration enumerate_all(int v, int k) { return {v, k}; }

/// Plain-text dump: "v k" then one sorted edge per line.
inline void write_text(std::ostream& os, const Hypergraph& h) {
  os << h.vertex_count() << ' ' << h.edge_size() << '\n';
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) os << (j ? " " : "") << e[j];
    os << '\n';
  }
}

inline Hypergraph read_text(std::istream& is) {
  int v = 0;
  int k = 0;
  if (!(is >> v >> k)) throw std::invalid_argument("hypergraph text: missing 'v k' header");
  std::vector<std::vector<Vertex>> edges;
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<Vertex> e{std::istream_iterator<Vertex>(ls), std::istream_iterator<Vertex>()};
    if (e.empty()) continue;
    edges.push_back(std::move(e));
  }
  return Hypergraph(v, k, edges);
}

}  // namespace rcore
