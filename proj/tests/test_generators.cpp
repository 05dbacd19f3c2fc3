#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "lvi/chains.hpp"
#include "lvi/cover_io.hpp"
#include "lvi/derrick.hpp"
#include "lvi/error.hpp"
#include "lvi/generators.hpp"
#include "lvi/metric_space.hpp"
#include "lvi/suite.hpp"

using namespace lvi;
using lvi::testing::q;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lvi_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("grid generator reproduces the four-box cover") {
  auto g = grid_cover(1, 2, q("1/10"));
  auto ref = lvi::testing::grid4_cover();
  REQUIRE(g.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(g.sets[i].lo == ref.sets[i].lo);
    CHECK(g.sets[i].hi == ref.sets[i].hi);
    CHECK(g.weights[i] == ref.weights[i]);
  }
  CHECK_THROWS_AS(grid_cover(1, 2, q("1/2")), InputError);
  CHECK_THROWS_AS(grid_cover(1, 2, q("0")), InputError);
}

TEST_CASE("grid covers have unit distance product and volume") {
  for (std::size_t n : {1, 2, 3}) {
    for (std::size_t j = 1; j <= 3; ++j) {
      auto g = grid_cover(j, n, make_rational(1, 1000));
      CHECK(g.size() == std::size_t{1} << (j * n));
      for (const auto& d : face_distances(g)) CHECK(d == 1);
      CHECK(cover_volume(g) == 1);
    }
  }
}

TEST_CASE("line generator matches the three-interval cover") {
  auto l = line_cover({{q("-1/10"), q("2/5")}, {q("3/10"), q("7/10")}, {q("3/5"), q("11/10")}},
                      {q("2"), q("5"), q("3")});
  auto ref = lvi::testing::line_cover();
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(l.sets[i].lo == ref.sets[i].lo);
    CHECK(l.weights[i] == ref.weights[i]);
  }
  CHECK_THROWS_AS(line_cover({{q("0"), q("1/2")}}, {q("1")}), InputError);
}

TEST_CASE("random boxes are valid, seeded, and non-spanning when split") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (std::size_t n : {2, 3}) {
      const std::size_t count = 2 + seed % 15;
      auto a = random_boxes(count, n, seed, q("1/32"));
      auto b = random_boxes(count, n, seed, q("1/32"));
      CHECK(cover_to_json(a) == cover_to_json(b));
      CHECK(a.size() == count);
      CHECK(validate_cover(a).covered);
      if (count >= (std::size_t{1} << n)) CHECK_FALSE(is_spanning(a));
    }
  }
  CHECK(cover_to_json(random_boxes(9, 2, 1, q("1/32"))) !=
        cover_to_json(random_boxes(9, 2, 2, q("1/32"))));
}

TEST_CASE("spanning demo") {
  for (std::size_t n : {1, 2, 3}) {
    auto c = spanning_demo(n);
    CHECK(is_spanning(c));
    CHECK(validate_cover(c).covered);
  }
}

TEST_CASE("generate dispatches and rejects bad specs") {
  auto doc = generate({{"kind", "grid"}, {"j", 1}, {"n", 2}, {"overlap", "1/10"}});
  CHECK(cover_from_json(doc).size() == 4);
  auto circle = metric_from_json(generate({{"kind", "circle"}, {"points", 12}}));
  CHECK(circle.size() == 12);
  auto neck = metric_from_json(
      generate({{"kind", "thin_neck"}, {"cluster_size", 3}, {"neck_len", 6}}));
  CHECK(neck.size() == 2 * 9 + 5);
  CHECK(generate({{"kind", "simplex_patch"}, {"n", 2}, {"depth", 1}})["kind"] == "simplex");
  CHECK(generate({{"kind", "snowflaked_line"}, {"points", 5}, {"alpha", "1/2"}})["kind"] ==
        "metric");
  CHECK_THROWS_AS(generate({{"kind", "nope"}}), InputError);
  CHECK_THROWS_AS(generate({{"kind", "grid"}, {"j", 1}}), InputError);
  CHECK_THROWS_AS(generate({{"kind", "snowflaked_line"}, {"points", 5}, {"alpha", 2}}),
                  InputError);
}

TEST_CASE("corpus specs are deterministic") {
  CHECK(corpus_specs(10, 2, 5) == corpus_specs(10, 2, 5));
  CHECK(corpus_specs(10, 2, 5) != corpus_specs(10, 2, 6));
}

TEST_CASE("suite isolates errors and reports every file") {
  auto empty = scratch("empty");
  auto res = run_suite(empty, {});
  CHECK(res.report["files"] == 0);
  CHECK(res.report["entries"].empty());

  auto dir = scratch("mixed");
  write_corpus(dir, "cover", 6, 2, 17);
  write(dir / "broken.json", "{ not json");
  write(dir / "zz_metric.json", generate({{"kind", "circle"}, {"points", 8}}).dump());
  write(dir / "zz_simplex.json",
        generate({{"kind", "simplex_patch"}, {"n", 2}, {"depth", 1}}).dump());
  auto mixed = run_suite(dir, {});
  CHECK(mixed.report["files"] == 9);
  CHECK(mixed.errors == 1);
  CHECK(mixed.failed == 0);
  CHECK(mixed.passed == 8);
  CHECK(mixed.report["entries"][0]["file"] == "broken.json");
  CHECK(mixed.report["entries"][0]["status"] == "error");

  SuiteOptions cert;
  cert.certify = true;
  cert.certify_options.samples_per_face = 9;
  cert.certify_options.resolution = 6;
  auto again = run_suite(dir, cert);
  CHECK(again.failed == 0);
  CHECK(again.report.dump() == run_suite(dir, cert).report.dump());
  CHECK(again.csv == run_suite(dir, cert).csv);
}
