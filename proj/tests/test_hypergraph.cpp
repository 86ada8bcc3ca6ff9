#include <gtest/gtest.h>

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/sampler.hpp"
#include "hypermatch/serialize.hpp"

using namespace hypermatch;

namespace {

// Pairing {(1,3),(2,4)} on 1-based half-edges; no self-loops.
Hypergraph crossed() { return Hypergraph(make_params(2, 2, 2), std::vector<int>{0, 1, 0, 1}); }
// Pairing {(1,2),(3,4)}; both edges self-looped.
Hypergraph looped() { return Hypergraph(make_params(2, 2, 2), std::vector<int>{0, 0, 1, 1}); }

}  // namespace

TEST(Params, SizesAndDivisibility) {
  auto p = make_params(2, 2, 2);
  EXPECT_EQ(p.half_edges(), 4);
  EXPECT_EQ(p.vertices(), 2);
  auto q = make_params(2, 3, 3);
  EXPECT_EQ(q.half_edges(), 6);
  EXPECT_EQ(q.vertices(), 2);
  EXPECT_THROW(make_params(3, 2, 3), DivisibilityError);
  EXPECT_THROW(make_params(2, 1, 2), DomainError);
  EXPECT_THROW(make_params(2, 2, 1), DomainError);
  EXPECT_THROW(make_params(0, 2, 2), DomainError);
}

TEST(Params, HyperedgeOf) {
  EXPECT_EQ(hyperedge_of(make_params(2, 2, 2), 2), 1);
  auto p = make_params(2, 3, 3);
  EXPECT_EQ(hyperedge_of(p, 0), 0);
  EXPECT_EQ(hyperedge_of(p, 5), 1);
  EXPECT_THROW(hyperedge_of(p, 6), IndexError);
  EXPECT_THROW(hyperedge_of(p, -1), IndexError);
}

TEST(Validate, DegreeCounts) {
  auto p = make_params(2, 2, 2);
  EXPECT_TRUE(validate(p, std::vector<int>{0, 0, 1, 1}));
  EXPECT_FALSE(validate(p, std::vector<int>{0, 0, 0, 1}));
  EXPECT_FALSE(validate(p, std::vector<int>{0, 0, 1}));
  EXPECT_FALSE(validate(p, std::vector<int>{0, 0, 1, 2}));
  EXPECT_THROW(Hypergraph(p, std::vector<int>{0, 0, 0, 1}), DomainError);
}

TEST(Hypergraph, CanonicalFormIgnoresVertexNames) {
  auto p = make_params(2, 2, 2);
  EXPECT_EQ(Hypergraph(p, std::vector<int>{1, 0, 1, 0}), Hypergraph(p, std::vector<int>{0, 1, 0, 1}));
  EXPECT_NE(Hypergraph(p, std::vector<int>{0, 0, 1, 1}), Hypergraph(p, std::vector<int>{0, 1, 0, 1}));
}

TEST(Matching, Examples) {
  EXPECT_TRUE(is_matching(crossed(), Matching({0})));
  EXPECT_FALSE(is_matching(crossed(), Matching({0, 1})));
  EXPECT_TRUE(is_matching(crossed(), Matching()));
  EXPECT_TRUE(is_matching(looped(), Matching()));
  // two half-edges of one edge in one vertex
  EXPECT_FALSE(is_matching(looped(), Matching({0})));
  EXPECT_THROW(is_matching(crossed(), Matching({2})), IndexError);
}

TEST(Matching, SortedUnique) {
  Matching m({3, 1, 3, 0});
  EXPECT_EQ(m.edges(), (std::vector<int>{0, 1, 3}));
}

TEST(Matching, MonotoneAndDegreeBound) {
  for (auto [m, d, l] : {std::tuple{4, 2, 2}, {6, 3, 2}, {3, 2, 4}, {4, 3, 3}}) {
    auto p = make_params(m, d, l);
    for (const auto& g : enumerate_all(p)) {
      for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> e;
        for (int i = 0; i < m; ++i)
          if (mask >> i & 1) e.push_back(i);
        if (!is_matching(g, Matching(e))) continue;
        EXPECT_LE(static_cast<int>(e.size()) * d, m);
        for (int sub = mask; sub; sub = (sub - 1) & mask) {
          std::vector<int> f;
          for (int i = 0; i < m; ++i)
            if (sub >> i & 1) f.push_back(i);
          ASSERT_TRUE(is_matching(g, Matching(f)));
        }
      }
    }
  }
}

TEST(Serialize, JsonRoundTrip) {
  auto g = sample_uniform(make_params(5, 3, 3), 11);
  auto j = to_json(g);
  EXPECT_EQ(j["m"], 5);
  EXPECT_EQ(hypergraph_from_json(j), g);
  EXPECT_EQ(hypergraph_from_json(nlohmann::json::parse(j.dump())), g);
}

TEST(Serialize, TextRoundTrip) {
  auto g = crossed();
  EXPECT_EQ(to_text(g), "2 2 2 : 0 1 0 1");
  EXPECT_EQ(hypergraph_from_text("2 2 2 : 1 0 1 0"), g);
  EXPECT_THROW(hypergraph_from_text("2 2 2 0 1 0 1"), ParseError);
  EXPECT_THROW(hypergraph_from_text("2 2 2 : 0 1 x 1"), ParseError);
  EXPECT_THROW(hypergraph_from_text("2 2 2 : 0 0 0 1"), DomainError);
}
