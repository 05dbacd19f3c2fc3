#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "lvi/chains.hpp"
#include "lvi/error.hpp"

using namespace lvi;
using lvi::testing::q;

TEST_CASE("line cover chain distances") {
  ChainGraph g = ChainGraph::from_cover(testing::line_cover());
  auto faces = chain_distance(g, 0, Face::low(0), Face::high(0));
  REQUIRE(faces);
  CHECK(faces->length == 10);
  CHECK(faces->chain == std::vector<std::size_t>{0, 1, 2});

  auto to2 = chain_distance(g, 0, Face::low(0), SetId{1});
  REQUIRE(to2);
  CHECK(to2->length == 2);
  CHECK(to2->chain == std::vector<std::size_t>{0});

  auto to3 = chain_distance(g, 0, Face::low(0), SetId{2});
  REQUIRE(to3);
  CHECK(to3->length == 7);
  CHECK(to3->chain == std::vector<std::size_t>{0, 1});

  // U1 touches F1: empty chain.
  auto to1 = chain_distance(g, 0, Face::low(0), SetId{0});
  REQUIRE(to1);
  CHECK(to1->length == 0);
  CHECK(to1->chain.empty());
}

TEST_CASE("brute force oracle on the fixtures") {
  ChainGraph line = ChainGraph::from_cover(testing::line_cover());
  CHECK(brute_force_distance(line, 0, Face::low(0), Face::high(0), 5)->length == 10);
  CHECK_FALSE(brute_force_distance(line, 0, Face::low(0), Face::high(0), 2));

  ChainGraph grid = ChainGraph::from_cover(testing::grid4_cover());
  CHECK(brute_force_distance(grid, 0, Face::low(0), Face::high(0), 4)->length == 1);

  ChainGraph single = ChainGraph::from_cover(testing::single_box_cover(2, "3/7"));
  CHECK(brute_force_distance(single, 1, Face::low(1), Face::high(1), 1)->length == q("3/7"));
}

TEST_CASE("face_distances examples") {
  CHECK(face_distances(testing::line_cover()) == std::vector<Rational>{10});
  CHECK(face_distances(testing::grid4_cover()) == std::vector<Rational>{1, 1});
  CHECK(face_distances(testing::single_box_cover(3)) == std::vector<Rational>{1, 1, 1});
}

TEST_CASE("set to set distances exclude the endpoint sets") {
  ChainGraph g = ChainGraph::from_cover(testing::line_cover());
  // U1 -> U3: first set meets U1, last meets U3; U2 alone does both.
  auto d = chain_distance(g, 0, SetId{0}, SetId{2});
  REQUIRE(d);
  CHECK(d->length == 5);
  CHECK(brute_force_distance(g, 0, SetId{0}, SetId{2}, 3)->length == 5);
}

TEST_CASE("unreachable targets") {
  // Two components; the graph is built by hand since no valid cover of the
  // cube is disconnected.
  ChainGraph g({{1}, {0}, {}}, {{q("1")}, {q("1")}, {q("1")}},
               {{true}, {false}, {false}}, {{false}, {false}, {true}});
  CHECK_FALSE(chain_distance(g, 0, Face::low(0), Face::high(0)));
  CHECK_FALSE(chain_distance(g, 0, Face::low(0), SetId{2}));
  CHECK_FALSE(brute_force_distance(g, 0, Face::low(0), SetId{2}, 3));
  CHECK_THROWS_AS(chain_distance(g, 1, Face::low(0), SetId{2}), InputError);
}

TEST_CASE("zero weights give zero distances") {
  WeightedCover c = testing::line_cover();
  c.weights = {{q("0")}, {q("0")}, {q("0")}};
  CHECK(face_distances(c) == std::vector<Rational>{0});
}


TEST_CASE("Dijkstra matches exhaustive enumeration on small covers") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = 1 + rng() % 3;
    WeightedCover c = testing::random_small_cover(rng, n, 8);
    REQUIRE(validate_cover(c).covered);
    ChainGraph g = ChainGraph::from_cover(c);
    for (std::size_t k = 0; k < n; ++k) {
      auto fast = chain_distance(g, k, Face::low(k), Face::high(k));
      auto slow = brute_force_distance(g, k, Face::low(k), Face::high(k), c.size());
      REQUIRE(fast);
      REQUIRE(slow);
      CHECK(fast->length == slow->length);
      auto per_set = distances_from_face(g, k, Face::low(k));
      for (std::size_t i = 0; i < c.size(); ++i) {
        auto one = chain_distance(g, k, Face::low(k), SetId{i});
        auto oracle = brute_force_distance(g, k, Face::low(k), SetId{i}, c.size());
        REQUIRE(one);
        REQUIRE(oracle);
        CHECK(one->length == oracle->length);
        CHECK(*per_set[i] == one->length);
      }
    }
  }
}

TEST_CASE("chain distance properties") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 2;
    WeightedCover c = testing::random_small_cover(rng, n, 9);
    ChainGraph g = ChainGraph::from_cover(c);
    std::vector<Rational> d = face_distances(g);
    for (std::size_t k = 0; k < n; ++k) {
      auto dk = distances_from_face(g, k, Face::low(k));
      for (std::size_t i = 0; i < c.size(); ++i) {
        // Adjacent sets: d_k(j) <= d_k(i) + w_k(i).
        for (std::size_t j : g.neighbors(i)) CHECK(*dk[j] <= *dk[i] + c.weight(i, k));
        if (g.meets(i, Face::high(k))) CHECK(d[k] <= *dk[i] + c.weight(i, k));
      }
    }
    // Raising one weight never lowers a distance.
    WeightedCover heavier = c;
    std::size_t i = rng() % c.size(), k = rng() % n;
    heavier.weights[i][k] += Rational(1) / 3;
    std::vector<Rational> d2 = face_distances(heavier);
    for (std::size_t a = 0; a < n; ++a) CHECK(d2[a] >= d[a]);
  }
}
