#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lvi/cover.hpp"

namespace lvi::testing {

inline Rational q(const char* text) { return parse_rational(text); }

inline OpenBox box(std::vector<std::pair<const char*, const char*>> axes) {
  OpenBox b;
  for (auto [lo, hi] : axes) {
    b.lo.push_back(q(lo));
    b.hi.push_back(q(hi));
  }
  return b;
}

// U1 = (-1/10, 2/5), U2 = (3/10, 7/10), U3 = (3/5, 11/10) with w = (2, 5, 3).
inline WeightedCover line_cover() {
  WeightedCover c;
  c.dimension = 1;
  c.sets = {box({{"-1/10", "2/5"}}), box({{"3/10", "7/10"}}),
            box({{"3/5", "11/10"}})};
  c.weights = {{q("2")}, {q("5")}, {q("3")}};
  c.ids = {1, 2, 3};
  return c;
}

// Four boxes of the 2x2 grid with overlap 1/10, all weights 1/2. Set order:
// (lower-left, lower-right, upper-left, upper-right) in (x, y).
inline WeightedCover grid4_cover() {
  const std::pair<const char*, const char*> a{"-1/10", "11/20"};
  const std::pair<const char*, const char*> b{"9/20", "11/10"};
  WeightedCover c;
  c.dimension = 2;
  c.sets = {box({a, a}), box({b, a}), box({a, b}), box({b, b})};
  c.weights.assign(4, {q("1/2"), q("1/2")});
  c.ids = {1, 2, 3, 4};
  return c;
}

inline WeightedCover single_box_cover(std::size_t n, const char* w = "1") {
  WeightedCover c;
  c.dimension = n;
  OpenBox b;
  b.lo.assign(n, q("-1/10"));
  b.hi.assign(n, q("11/10"));
  c.sets = {b};
  c.weights = {std::vector<Rational>(n, q(w))};
  c.ids = {1};
  return c;
}

// Random box cover of the unit cube on a 1/16 grid: a jittered partition
// plus a few stray boxes, weights on a 1/8 grid (zeros allowed).
inline WeightedCover random_small_cover(std::mt19937_64& rng, std::size_t n,
                                 std::size_t max_sets) {
  WeightedCover c;
  c.dimension = n;
  std::vector<std::vector<long long>> cuts(n);
  std::size_t cells = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t parts = 1 + rng() % 3;
    while (cells * parts > max_sets && parts > 1) --parts;
    cells *= parts;
    cuts[k] = {0};
    for (std::size_t p = 1; p < parts; ++p) cuts[k].push_back(static_cast<long long>(p * 16 / parts));
    cuts[k].push_back(16);
  }
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    OpenBox b;
    for (std::size_t k = 0; k < n; ++k) {
      long long lo = cuts[k][idx[k]] - 1 - static_cast<long long>(rng() % 3);
      long long hi = cuts[k][idx[k] + 1] + 1 + static_cast<long long>(rng() % 3);
      b.lo.push_back(Rational(lo) / 16);
      b.hi.push_back(Rational(hi) / 16);
    }
    c.sets.push_back(b);
    std::size_t k = 0;
    while (k < n && ++idx[k] == cuts[k].size() - 1) idx[k++] = 0;
    if (k == n) break;
  }
  while (c.sets.size() < max_sets && rng() % 2) {
    OpenBox b;
    for (std::size_t k = 0; k < n; ++k) {
      long long lo = static_cast<long long>(rng() % 18) - 2;
      long long hi = lo + 1 + static_cast<long long>(rng() % 8);
      if (lo >= 16) lo = 15;
      if (hi <= 0) hi = 1;
      b.lo.push_back(Rational(lo) / 16);
      b.hi.push_back(Rational(hi) / 16);
    }
    c.sets.push_back(b);
  }
  for (std::size_t i = 0; i < c.sets.size(); ++i) {
    std::vector<Rational> w;
    for (std::size_t k = 0; k < n; ++k) w.push_back(Rational(static_cast<long long>(rng() % 9)) / 8);
    c.weights.push_back(w);
  }
  check_cover(c);
  return c;
}


}  // namespace lvi::testing
