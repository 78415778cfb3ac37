#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "rcore/hypergraph.hpp"

using namespace rcore;

namespace {

Hypergraph four_triples() { return Hypergraph(4, 3, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

std::vector<Vertex> all_vertices(int v) {
  std::vector<Vertex> out(v);
  for (int i = 0; i < v; ++i) out[i] = static_cast<Vertex>(i);
  return out;
}

}  // namespace

TEST(Hypergraph, RejectsMalformedEdges) {
  EXPECT_THROW(Hypergraph(4, 3, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(4, 3, {{0, 1, 1}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(4, 3, {{0, 1, 4}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(4, 3, {{0, 1, 2}, {2, 1, 0}}), std::invalid_argument);
}

TEST(Hypergraph, CanonicalOrderIsColex) {
  const Hypergraph h(4, 3, {{1, 2, 3}, {0, 1, 2}, {0, 1, 3}});
  const std::vector<std::vector<Vertex>> want{{0, 1, 2}, {0, 1, 3}, {1, 2, 3}};
  EXPECT_EQ(h.edges(), want);
}

TEST(CandidateEdges, ColexOrder) {
  const auto flat = candidate_edges(5, 3);
  ASSERT_EQ(flat.size(), 30U);
  const std::vector<Vertex> first_five{0, 1, 2, 0, 1, 3, 0, 2, 3, 1, 2, 3, 0, 1, 4};
  EXPECT_TRUE(std::equal(first_five.begin(), first_five.end(), flat.begin()));
}

TEST(Generate, Extremes) {
  const auto full = generate(HypergraphParams(3, 3, 1.0, 1), Seed{42});
  ASSERT_EQ(full.edge_count(), 1U);
  EXPECT_EQ(full.edges().front(), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(generate(HypergraphParams(5, 3, 0.0, 1), Seed{42}).edge_count(), 0U);
  for (int v = 3; v <= 9; ++v)
    EXPECT_EQ(generate(HypergraphParams(v, 3, 1.0, 1), Seed{1}).edge_count(),
              choose(v, 3).convert_to<std::size_t>());
}

TEST(Generate, EdgeCountIsBinomial) {
  // Binomial(1140, 0.5): mean 570
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto h = generate(HypergraphParams(20, 3, 0.5, 1), Seed{s});
    EXPECT_GE(h.edge_count(), 456U);
    EXPECT_LE(h.edge_count(), 684U);
  }
}

TEST(Generate, DeterministicPerSeed) {
  const HypergraphParams params(12, 3, 0.2, 2);
  EXPECT_EQ(generate(params, Seed{9}), generate(params, Seed{9}));
  EXPECT_NE(generate(params, Seed{9}), generate(params, Seed{10}));
}

TEST(Generate, ScaleGuard) {
  // C(3000, 4) > 2^31
  EXPECT_THROW(generate(HypergraphParams(3000, 4, 0.0, 1), Seed{1}), scale_error);
}

TEST(Peel, Examples) {
  const Hypergraph single(3, 3, {{0, 1, 2}});
  EXPECT_EQ(peel(single, 1), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_TRUE(peel(single, 2).empty());
  EXPECT_EQ(peel(four_triples(), 2), (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(Peel, RoundsAreBatched) {
  // path of triples: ends peel first, then the middle collapses
  const Hypergraph path(7, 3, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}});
  EXPECT_TRUE(peel(path, 2).empty());
  EXPECT_EQ(peel_rounds(path, 2), 3);
  EXPECT_EQ(peel_rounds(four_triples(), 2), 1);
}

TEST(Peel, AgreesWithOneAtATimeOracleAndIsFixedPoint) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int v = 3 + static_cast<int>(rng() % 7);
    const double p = 0.05 + 0.4 * static_cast<double>(rng() % 100) / 100.0;
    const int r = 1 + static_cast<int>(rng() % 3);
    const auto h = generate(HypergraphParams(v, 3, p, r), Seed{rng()});
    const auto core = peel(h, r);

    oracle::EdgeList edges;
    for (const auto& e : h.edges()) edges.emplace_back(e.begin(), e.end());
    const auto want = oracle::core_one_at_a_time(v, edges, r);
    ASSERT_EQ(core.size(), want.size());
    ASSERT_TRUE(std::equal(core.begin(), core.end(), want.begin()));

    if (!core.empty()) {
      EXPECT_TRUE(has_rcore_on(h, core, r));
      // restricting to the survivors and peeling again changes nothing
      std::vector<std::vector<Vertex>> induced;
      const std::set<Vertex> in(core.begin(), core.end());
      for (const auto& e : h.edges())
        if (std::ranges::all_of(e, [&](Vertex x) { return in.contains(x); })) induced.push_back(e);
      EXPECT_EQ(peel(Hypergraph(v, 3, induced), r), core);
    }
  }
}

TEST(Peel, OneCoreKeepsExactlyTheNonIsolatedVertices) {
  const Hypergraph h(8, 3, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}});
  EXPECT_EQ(peel(h, 1), (std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(Connectivity, Examples) {
  const Hypergraph single(5, 3, {{0, 1, 2}});
  EXPECT_TRUE(is_connected_on(single, std::vector<Vertex>{3}));
  EXPECT_FALSE(is_connected_on(single, std::vector<Vertex>{0, 1, 2, 3}));
  const Hypergraph chain(5, 3, {{0, 1, 2}, {2, 3, 4}});
  EXPECT_TRUE(is_connected_on(chain, all_vertices(5)));
  EXPECT_THROW(is_connected_on(chain, std::vector<Vertex>{}), std::invalid_argument);
  EXPECT_THROW(is_connected_on(chain, std::vector<Vertex>{7}), std::invalid_argument);
}

TEST(Connectivity, InducedEdgesOnly) {
  const Hypergraph chain(5, 3, {{0, 1, 2}, {2, 3, 4}});
  // edge {2,3,4} leaves the subset, so vertex 3 is isolated within it
  EXPECT_FALSE(is_connected_on(chain, std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(RCore, Examples) {
  const Hypergraph single(3, 3, {{0, 1, 2}});
  EXPECT_TRUE(has_rcore_on(single, all_vertices(3), 1));
  EXPECT_FALSE(has_rcore_on(single, all_vertices(3), 2));
  EXPECT_TRUE(has_rcore_on(four_triples(), all_vertices(4), 3));
  EXPECT_THROW(has_rcore_on(single, std::vector<Vertex>{}, 1), std::invalid_argument);
}

TEST(RCore, OneCoreNeedNotBeConnected) {
  const Hypergraph two(6, 3, {{0, 1, 2}, {3, 4, 5}});
  EXPECT_TRUE(has_rcore_on(two, all_vertices(6), 1));
  EXPECT_FALSE(is_connected_on(two, all_vertices(6)));
}

TEST(RCore, ConnectedWithCoveredVerticesImpliesOneCore) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = generate(HypergraphParams(7, 3, 0.25, 1), Seed{rng()});
    const auto all = all_vertices(7);
    if (is_connected_on(h, all)) EXPECT_TRUE(has_rcore_on(h, all, 1));
  }
}

TEST(EnumerateAll, Counts) {
  EXPECT_EQ(enumerate_all(3, 3).size(), 2U);
  EXPECT_EQ(enumerate_all(4, 3).size(), 16U);
  EXPECT_EQ(enumerate_all(5, 3).size(), 1024U);
  EXPECT_THROW(enumerate_all(7, 3), scale_error);

  std::size_t n = 0;
  std::set<std::vector<std::vector<Vertex>>> seen;
  for (const Hypergraph& h : enumerate_all(4, 3)) {
    seen.insert(h.edges());
    ++n;
  }
  EXPECT_EQ(n, 16U);
  EXPECT_EQ(seen.size(), 16U);
}

TEST(EnumerateAll, BitmaskOrder) {
  const auto all = enumerate_all(4, 3);
  EXPECT_EQ(all.at(0).edge_count(), 0U);
  EXPECT_EQ(all.at(1).edges(), (std::vector<std::vector<Vertex>>{{0, 1, 2}}));
  EXPECT_EQ(all.at(0b1000).edges(), (std::vector<std::vector<Vertex>>{{1, 2, 3}}));
}

TEST(TextDump, RoundTrip) {
  const auto h = generate(HypergraphParams(9, 3, 0.3, 1), Seed{5});
  std::stringstream ss;
  write_text(ss, h);
  EXPECT_EQ(ss.str().substr(0, 4), "9 3\n");
  EXPECT_EQ(read_text(ss), h);
  std::istringstream bad("nonsense");
  EXPECT_THROW(read_text(bad), std::invalid_argument);
}
