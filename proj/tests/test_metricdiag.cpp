#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lvi/error.hpp"
#include "lvi/metricdiag.hpp"

using namespace lvi;

namespace {

FiniteMetricSpace line(std::size_t points) { return snowflaked_line(points, 1.0); }

FiniteMetricSpace random_plane(std::mt19937_64& rng, std::size_t points) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < points; ++i) {
    pts.push_back({static_cast<double>(rng() % 1000) / 1000.0,
                   static_cast<double>(rng() % 1000) / 1000.0});
  }
  return FiniteMetricSpace::from_points(pts, Norm::kL2);
}

}  // namespace

TEST_CASE("delta graph edges are exactly the close pairs") {
  std::mt19937_64 rng(7);
  auto s = random_plane(rng, 40);
  const DeltaGraph g(s, 0.2);
  std::size_t expected = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const bool close = s(i, j) <= 0.2;
      expected += close;
      const auto& nb = g.neighbors(i);
      CHECK((std::find(nb.begin(), nb.end(), j) != nb.end()) == close);
    }
  }
  CHECK(g.edge_count() == expected);
  CHECK_THROWS_AS(DeltaGraph(s, 0.0), InputError);
}

TEST_CASE("doubling estimates") {
  auto one = FiniteMetricSpace::from_matrix({{0.0}});
  CHECK(doubling_estimate(one).value == 1);

  // d = r / 2 is outside the open half-radius ball.
  auto two = FiniteMetricSpace::from_matrix({{0, 1}, {1, 0}});
  CHECK(doubling_estimate(two, {2.0}).value == 2);
  CHECK(doubling_estimate(two, {2.5}).value == 1);

  CHECK(doubling_estimate(line(101)).value <= 3);
  CHECK(doubling_estimate(line(37), {0.1, 0.25, 0.6}).value <= 3);
}

TEST_CASE("delta path lengths on the line and the snowflaked line") {
  auto l = line(101);
  CHECK(delta_path_length(l, 0, 100, 1.0 / 100) == 100);
  CHECK(delta_path_length(l, 0, 100, 1.0 / 50) == 50);
  CHECK_FALSE(delta_path_length(l, 0, 100, 1.0 / 200));
  CHECK(delta_path_length(l, 5, 5, 0.01) == 0);

  auto snow = snowflaked_line(101, 0.5);
  CHECK(delta_path_length(snow, 0, 100, std::sqrt(1.0 / 100)) == 100);
}

TEST_CASE("delta path length is at least ceil(d / delta)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_plane(rng, 30);
    const double delta = 0.1 + 0.05 * (trial % 5);
    for (std::size_t x = 0; x < s.size(); x += 3) {
      for (std::size_t y = 0; y < s.size(); y += 4) {
        auto len = delta_path_length(s, x, y, delta);
        if (len) CHECK(static_cast<double>(*len) >= std::ceil(s(x, y) / delta - 1e-9));
      }
    }
  }
}

TEST_CASE("snowflake transform") {
  auto l = line(11);
  auto same = snowflake(l, 1.0);
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = 0; j < l.size(); ++j) CHECK(same(i, j) == l(i, j));
  }
  auto two = FiniteMetricSpace::from_matrix({{0, 4}, {4, 0}});
  CHECK(snowflake(two, 0.5)(0, 1) == doctest::Approx(2.0));
  CHECK_THROWS_AS(snowflake(two, 1.5), InputError);
  CHECK_THROWS_AS(snowflake(two, 0.0), InputError);

  auto half = snowflake(line(101), 0.5);
  CHECK_FALSE(find_metric_violation(half, false, true));
  auto again = snowflake(half, 1.0);
  for (std::size_t i = 0; i < half.size(); i += 7) {
    for (std::size_t j = 0; j < half.size(); j += 5) CHECK(again(i, j) == half(i, j));
  }
}

TEST_CASE("comparison constants") {
  auto d = line(21);
  auto exact = snowflake(d, 0.5);
  CHECK(check_comparison(d, exact, 0.5, 1.0).tightest == doctest::Approx(1.0));
  CHECK(check_comparison(d, exact, 0.5, 1.0).holds);

  auto doubled = FiniteMetricSpace(d.size(), [&](std::size_t i, std::size_t j) {
    return 2 * std::sqrt(d(i, j));
  });
  auto rep = check_comparison(d, doubled, 0.5, 1.5);
  CHECK(rep.tightest == doctest::Approx(2.0));
  CHECK_FALSE(rep.holds);

  std::mt19937_64 rng(3);
  std::vector<std::vector<double>> m(d.size(), std::vector<double>(d.size(), 0));
  double worst = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const double f = 1.0 + 0.5 * static_cast<double>(rng() % 1001) / 1000.0;
      const double factor = (rng() & 1) ? f : 1 / f;
      m[i][j] = m[j][i] = factor * std::sqrt(d(i, j));
      worst = std::max(worst, f);
    }
  }
  auto perturbed = FiniteMetricSpace::from_matrix(m);
  auto prep = check_comparison(d, perturbed, 0.5, 1.5);
  CHECK(prep.tightest >= 1.0);
  CHECK(prep.tightest <= 1.5 + 1e-12);
  CHECK(prep.tightest == doctest::Approx(worst));
  CHECK(prep.holds);
}

TEST_CASE("LLC checks on the circle") {
  auto circle = circle_space(360);
  const double delta = 2 * std::numbers::pi / 360;
  auto llc1 = check_llc(circle, Connectivity::kLLC1, 2.0, delta);
  CHECK(llc1.verdict == Verdict::kPass);
  CHECK(llc1.samples > 0);
  CHECK(check_llc(circle, Connectivity::kLLC2, 2.0, delta).verdict == Verdict::kPass);

  // Small annuli on a circle are two arcs that only reconnect around the
  // far side.
  auto alc = check_llc(circle, Connectivity::kALC, 3.0, delta);
  CHECK(alc.verdict == Verdict::kFail);
  LLCOptions big;
  big.radii = {std::numbers::pi / 5};
  CHECK(check_llc(circle, Connectivity::kALC, 3.0, delta, big).verdict == Verdict::kPass);
}

TEST_CASE("thin neck fails ALC with a witness on both sides") {
  auto neck = thin_neck(5, 24);
  const auto& xy = neck.coordinates;
  LLCOptions opts;
  opts.centers = {neck.neck_middle};
  opts.radii = {2.0};
  auto rep = check_llc(neck.space, Connectivity::kALC, 2.0, neck.spacing, opts);
  CHECK(rep.verdict == Verdict::kFail);
  REQUIRE_FALSE(rep.witnesses.empty());
  const auto& w = rep.witnesses.front();
  const double mid = xy[neck.neck_middle][0];
  CHECK((xy[w.x][0] - mid) * (xy[w.y][0] - mid) < 0);

  auto full = check_llc(neck.space, Connectivity::kALC, 2.0, neck.spacing);
  CHECK(full.verdict == Verdict::kFail);
  CHECK(check_llc(neck.space, Connectivity::kLLC1, 2.0, neck.spacing).verdict ==
        Verdict::kPass);
}

TEST_CASE("trivial and inconclusive connectivity") {
  auto one = FiniteMetricSpace::from_matrix({{0.0}});
  CHECK(check_llc(one, Connectivity::kALC, 2.0, 1.0).verdict == Verdict::kPass);

  auto gappy = FiniteMetricSpace::from_points({{0}, {1}, {2}, {10}}, Norm::kL2);
  LLCOptions opts;
  opts.centers = {0};
  opts.radii = {20.0};
  auto rep = check_llc(gappy, Connectivity::kLLC1, 1.0, 1.5, opts);
  CHECK(rep.verdict == Verdict::kInconclusive);
  CHECK(rep.failures == 0);
  CHECK(check_llc(gappy, Connectivity::kALC, 1.0, 1.5).verdict == Verdict::kFail);
}

TEST_CASE("LLC verdicts are monotone in lambda") {
  std::mt19937_64 rng(19);
  const Connectivity props[] = {Connectivity::kLLC1, Connectivity::kLLC2,
                                Connectivity::kALC};
  for (int trial = 0; trial < 6; ++trial) {
    auto s = random_plane(rng, 35);
    for (auto prop : props) {
      bool passed = false;
      for (double lambda : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0}) {
        const auto v = check_llc(s, prop, lambda, 0.3).verdict;
        if (passed) CHECK(v == Verdict::kPass);
        passed = passed || v == Verdict::kPass;
      }
    }
  }
}

TEST_CASE("ALC implies LLC2 and LLC1 at the derived constants") {
  auto grid = identity_image(2, 20, Norm::kLInf).space;
  const double delta = 1.0 / 20;
  const double lambda = 2.0, lambda_prime = 2.5;
  REQUIRE(check_llc(grid, Connectivity::kALC, lambda, delta).verdict == Verdict::kPass);
  CHECK(check_llc(grid, Connectivity::kLLC2, lambda_prime, delta).verdict == Verdict::kPass);
  CHECK(check_llc(grid, Connectivity::kLLC1, 5 * lambda_prime, delta).verdict ==
        Verdict::kPass);
}

TEST_CASE("fat squares") {
  const std::size_t res = 8;
  auto sq = identity_image(2, res, Norm::kLInf);
  const std::size_t centre = res / 2 + (res / 2) * (res + 1);
  auto rep = check_fat_square(sq.space, sq.image, centre, 1.0, 2.0);
  CHECK(rep.holds);
  CHECK(rep.face_distances[0] == doctest::Approx(1.0));
  CHECK(rep.face_distances[1] == doctest::Approx(1.0));
  CHECK(rep.max_step == doctest::Approx(1.0 / res));
  CHECK_FALSE(check_fat_square(sq.space, sq.image, centre, 0.4, 2.0).holds);

  auto flat = constant_image(2, 4);
  auto frep = check_fat_square(flat.space, flat.image, 0, 1.0, 2.0);
  CHECK_FALSE(frep.holds);
  CHECK(frep.face_distances[0] == 0.0);

  // A path along the line, constant in the second coordinate.
  auto l = line(101);
  CubeImage path{2, 10, {}};
  for (std::size_t g = 0; g < 121; ++g) path.table.push_back(10 * (g % 11));
  auto crep = check_fat_connecting_square(l, path, 0, 100, 2.0);
  CHECK_FALSE(crep.holds);
  CHECK(crep.face_ok[0]);
  CHECK_FALSE(crep.face_ok[1]);
  CHECK(crep.start_face_ok);
  CHECK(crep.end_face_ok);
  CHECK(crep.inside_ball);
}
