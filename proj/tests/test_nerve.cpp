#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "lvi/error.hpp"
#include "lvi/nerve.hpp"

using namespace lvi;
using lvi::testing::q;

namespace {

bool common_point(const WeightedCover& c, const std::vector<std::size_t>& s) {
  std::vector<OpenBox> boxes;
  for (std::size_t i : s) boxes.push_back(c.sets[i]);
  return boxes_have_common_point(boxes);
}

}  // namespace

TEST_CASE("nerve of the line cover") {
  NerveComplex nerve = NerveComplex::build(testing::line_cover());
  std::vector<std::size_t> s12{0, 1}, s23{1, 2}, s13{0, 2}, s123{0, 1, 2};
  CHECK(nerve.is_simplex(s12));
  CHECK(nerve.is_simplex(s23));
  CHECK_FALSE(nerve.is_simplex(s13));
  CHECK_FALSE(nerve.is_simplex(s123));
  CHECK(nerve.simplex_counts() == std::vector<std::size_t>{3, 2});
  CHECK(nerve.maximal_simplices() ==
        std::vector<std::vector<std::size_t>>{{0, 1}, {1, 2}});
}

TEST_CASE("nerve of a single box and of the grid cover") {
  NerveComplex one = NerveComplex::build(testing::single_box_cover(2));
  CHECK(one.simplex_counts() == std::vector<std::size_t>{1});

  NerveComplex grid = NerveComplex::build(testing::grid4_cover());
  std::vector<std::size_t> all{0, 1, 2, 3};
  CHECK(grid.is_simplex(all));
  CHECK(grid.maximal_simplices().size() == 1);
  CHECK(grid.simplex_counts() == std::vector<std::size_t>{4, 6, 4, 1});
}

TEST_CASE("nerve soundness against direct common-intersection tests") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 3;
    WeightedCover c = testing::random_small_cover(rng, n, 12);
    NerveComplex nerve = NerveComplex::build(c);
    const std::size_t m = c.size();
    REQUIRE(m <= 12);
    std::vector<std::size_t> counts;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (1u << i)) s.push_back(i);
      }
      bool simplex = common_point(c, s);
      CHECK(nerve.is_simplex(s) == simplex);
      if (simplex) {
        if (counts.size() < s.size()) counts.resize(s.size(), 0);
        ++counts[s.size() - 1];
      }
    }
    CHECK(nerve.simplex_counts() == counts);
    for (const auto& top : nerve.maximal_simplices()) {
      CHECK(common_point(c, top));
      for (std::size_t v = 0; v < m; ++v) {
        if (std::find(top.begin(), top.end(), v) != top.end()) continue;
        auto bigger = top;
        bigger.push_back(v);
        CHECK_FALSE(common_point(c, bigger));
      }
    }
  }
}

TEST_CASE("evaluate_phi examples") {
  WeightedCover line = testing::line_cover();
  SparseVector phi = evaluate_phi(line, {q("7/20")});
  CHECK(phi == SparseVector{{0, q("1/2")}, {1, q("1/2")}});
  CHECK(evaluate_phi(line, {q("0")}) == SparseVector{{0, q("1")}});
  CHECK(evaluate_phi(line, {q("1/2")}) == SparseVector{{1, q("1")}});
  CHECK(distance_to_complement(line.sets[0], {q("7/20")}) == q("1/20"));
  CHECK(distance_to_complement(line.sets[1], {q("7/20")}) == q("1/20"));
  CHECK(distance_to_complement(line.sets[2], {q("7/20")}) == 0);
  CHECK_THROWS_AS(evaluate_phi(line, {q("3/2")}), InputError);
}

TEST_CASE("locate_in_subdivision examples") {
  SubdivisionLocation a = locate_in_subdivision({{0, q("1/2")}, {1, q("1/2")}});
  CHECK(a.order == std::vector<std::size_t>{0, 1});
  CHECK(a.mu == std::vector<Rational>{0, 1});

  SubdivisionLocation b = locate_in_subdivision({{1, q("1")}});
  CHECK(b.order == std::vector<std::size_t>{1});
  CHECK(b.mu == std::vector<Rational>{1});

  SubdivisionLocation c = locate_in_subdivision({{0, q("2/3")}, {1, q("1/3")}});
  CHECK(c.mu == std::vector<Rational>{q("1/3"), q("2/3")});

  NerveComplex nerve = NerveComplex::build(testing::line_cover());
  CHECK_THROWS_AS(locate_in_subdivision({{0, q("1/2")}, {2, q("1/2")}}, &nerve),
                  InvariantViolation);
}

TEST_CASE("partition of unity and reconstruction identities on samples") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 3;
    WeightedCover c = testing::random_small_cover(rng, n, 10);
    NerveComplex nerve = NerveComplex::build(c);
    for (int s = 0; s < 50; ++s) {
      Point x;
      // Coarse grid so ties between coordinates of phi actually occur.
      for (std::size_t k = 0; k < n; ++k) x.push_back(Rational(rng() % 17) / 16);
      SparseVector phi = evaluate_phi(c, x);
      Rational total(0);
      for (const auto& [i, v] : phi) {
        CHECK(v > 0);
        CHECK(v <= 1);
        CHECK(box_contains(c.sets[i], x));
        total += v;
      }
      CHECK(total == 1);
      for (std::size_t i = 0; i < c.size(); ++i) {
        bool in_support = std::any_of(phi.begin(), phi.end(),
                                      [&](const auto& e) { return e.first == i; });
        CHECK(in_support == box_contains(c.sets[i], x));
      }
      SubdivisionLocation loc = locate_in_subdivision(phi, &nerve);
      Rational mu_total(0);
      for (const Rational& m : loc.mu) {
        CHECK(m >= 0);
        mu_total += m;
      }
      CHECK(mu_total == 1);
      CHECK(subdivision_point(loc.order, loc.mu) == phi);

      // Reverse every block of tied values: another admissible order, same point.
      std::vector<std::size_t> alt = loc.order;
      std::map<std::size_t, Rational> value(phi.begin(), phi.end());
      for (std::size_t a = 0; a < alt.size();) {
        std::size_t b = a;
        while (b < alt.size() && value[alt[b]] == value[alt[a]]) ++b;
        std::reverse(alt.begin() + a, alt.begin() + b);
        a = b;
      }
      auto alt_mu = subdivision_coefficients(phi, alt);
      CHECK(subdivision_point(alt, alt_mu) == phi);
    }
  }
}
