// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lvi/chains.hpp"
#include "lvi/content.hpp"
#include "lvi/cover_io.hpp"
#include "lvi/derrick.hpp"
#include "lvi/error.hpp"
#include "lvi/generators.hpp"
#include "lvi/metricdiag.hpp"
#include "lvi/reduction.hpp"
#include "lvi/simplex.hpp"
#include "lvi/suite.hpp"

using namespace lvi;

namespace {

// Pinned parameters and tolerances.
constexpr std::uint64_t kCorpusSeed = 20240601;
constexpr std::size_t kCorpus2D = 200;
constexpr std::size_t kCorpus3D = 50;
constexpr double kCorpusSeconds = 60;
constexpr double kGridSeconds = 10;
constexpr double kOracleSeconds = 30;
constexpr std::size_t kOracleMaxSets = 8;
constexpr std::size_t kBoundarySamplesPerInstance = 1000;
constexpr std::size_t kSurjectivityInstances = 20;
constexpr std::size_t kSurjectivityResolution = 16;
constexpr double kSurjectivitySeconds = 120;
constexpr std::size_t kSimplexMaxSets = 20;
constexpr std::size_t kContentResolution = 64;
constexpr double kContentFloor = 1.0 / 64;
constexpr double kContentQ = 2;
constexpr double kContentUpperLimit = 1 + 1.0 / 16;
constexpr double kContentSeconds = 10;
constexpr double kExponentLow = 1.9, kExponentHigh = 2.1;
constexpr double kCircleLambda = 3, kNeckLambda = 2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

struct Instance {
  WeightedCover cover;
  std::vector<Rational> distances;
};

std::vector<Instance> corpus(std::size_t count, std::size_t n) {
  std::vector<Instance> out;
  for (const auto& spec : corpus_specs(count, n, kCorpusSeed + n)) {
    Instance inst{cover_from_json(generate(spec)), {}};
    inst.distances = face_distances(inst.cover);
    out.push_back(std::move(inst));
  }
  return out;
}

bool degenerate(const Instance& inst) {
  for (const auto& d : inst.distances) {
    if (d == 0) return true;
  }
  return false;
}

Outcome criterion1(const std::vector<Instance>& all) {
  const auto t0 = Clock::now();
  std::size_t holds = 0;
  for (const auto& inst : all) holds += verify_lv(inst.cover).inequality_holds;
  const double secs = seconds_since(t0);
  return {holds == all.size() && secs < kCorpusSeconds,
          fmt("%zu/%zu instances hold exactly (%zu 2D + %zu 3D), %.2f s", holds, all.size(),
              kCorpus2D, kCorpus3D, secs)};
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  std::size_t ok = 0, total = 0;
  std::string worst;
  for (std::size_t n : {2, 3}) {
    for (std::size_t j = 1; j <= 4; ++j) {
      const Rational overlap = make_rational(1, 100LL << j);  // 2^-j / 100
      const auto cover = grid_cover(j, n, overlap);
      const auto cert = verify_lv(cover);
      const Rational bound = overlap * static_cast<long long>(n) * static_cast<long long>(1u << j);
      const bool good = cert.volume == 1 && cert.distance_product == 1 && cert.slack >= 0 &&
                        cert.slack <= bound;
      ++total;
      ok += good;
      if (!good) worst += fmt(" [n=%zu j=%zu slack=%s]", n, j, to_string(cert.slack).c_str());
    }
  }
  const double secs = seconds_since(t0);
  return {ok == total && secs < kGridSeconds,
          fmt("%zu/%zu grid covers (j=1..4, n=2,3) have volume = prod d_k = 1 exactly, "
              "slack <= n*overlap*2^j%s, %.2f s",
              ok, total, worst.c_str(), secs)};
}

Outcome criterion3(const std::vector<Instance>& all) {
  const auto t0 = Clock::now();
  std::size_t covers = 0, queries = 0, mismatches = 0;
  for (const auto& inst : all) {
    const auto& c = inst.cover;
    if (c.size() > kOracleMaxSets) continue;
    ++covers;
    const auto graph = ChainGraph::from_cover(c);
    for (std::size_t k = 0; k < c.dimension; ++k) {
      std::vector<Endpoint> ends = {Face::low(k), Face::high(k)};
      for (std::size_t i = 0; i < c.size(); ++i) ends.push_back(SetId{i});
      for (const auto& a : ends) {
        for (const auto& b : ends) {
          const auto fast = chain_distance(graph, k, a, b);
          const auto slow = brute_force_distance(graph, k, a, b, c.size());
          ++queries;
          if (fast.has_value() != slow.has_value() ||
              (fast && fast->length != slow->length)) {
            ++mismatches;
          }
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && covers > 0 && secs < kOracleSeconds,
          fmt("%zu covers with <= %zu sets, %zu endpoint pairs, %zu mismatches, %.2f s",
              covers, kOracleMaxSets, queries, mismatches, secs)};
}

Outcome criterion4(const std::vector<Instance>& all) {
  std::size_t violations = 0, pairs = 0, simplices = 0;
  for (const auto& inst : all) {
    const auto graph = ChainGraph::from_cover(inst.cover);
    const auto nerve = NerveComplex::build(inst.cover);
    try {
      const auto pa = build_proxies(inst.cover, graph, nerve);
      if (find_claim_violation(pa, nerve)) ++violations;
    } catch (const InvariantViolation&) {
      ++violations;
    }
    for (std::size_t i = 0; i < inst.cover.size(); ++i) {
      for (std::size_t j = i + 1; j < inst.cover.size(); ++j) pairs += nerve.adjacent(i, j);
    }
    simplices += nerve.maximal_simplices().size();
  }
  return {violations == 0,
          fmt("%zu instances, %zu intersecting pairs and %zu maximal simplices checked, "
              "%zu violations",
              all.size(), pairs, simplices, violations)};
}

Outcome criterion5(const std::vector<Instance>& all) {
  std::size_t instances = 0, min_samples = SIZE_MAX, violations = 0;
  for (const auto& inst : all) {
    if (is_spanning(inst.cover) || degenerate(inst)) continue;
    ++instances;
    const CubeMap f(inst.cover);
    const std::size_t faces = 2 * inst.cover.dimension;
    const std::size_t per_face = (kBoundarySamplesPerInstance + faces - 1) / faces;
    const auto rep = boundary_check(f, inst.distances, per_face);
    min_samples = std::min(min_samples, rep.samples);
    violations += rep.violations;
  }
  return {instances > 0 && violations == 0 && min_samples >= kBoundarySamplesPerInstance,
          fmt("%zu non-spanning instances, >= %zu exact face samples each, %zu violations",
              instances, min_samples, violations)};
}

Outcome criterion6(const std::vector<Instance>& all) {
  const auto t0 = Clock::now();
  std::size_t used = 0, full = 0, points = 0, covered = 0;
  for (const auto& inst : all) {
    if (used == kSurjectivityInstances) break;
    if (inst.cover.dimension != 2 || is_spanning(inst.cover) || degenerate(inst)) continue;
    ++used;
    const CubeMap f(inst.cover);
    const auto rep = surjectivity_sample(f, inst.distances, kSurjectivityResolution);
    points += rep.grid_points;
    covered += rep.covered_points;
    full += rep.status == SurjectivityStatus::kPass && rep.covered_points == rep.grid_points;
  }
  const double secs = seconds_since(t0);
  return {used == kSurjectivityInstances && full == used && secs < kSurjectivitySeconds,
          fmt("%zu/%zu instances at resolution %zu have winding number 1 at every interior "
              "grid point (%zu/%zu points), %.2f s",
              full, used, kSurjectivityResolution, covered, points, secs)};
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  const Rational eps_list[] = {make_rational(1, 50), make_rational(1, 100),
                               make_rational(1, 200)};
  bool all_ok = true;
  std::ostringstream detail;
  for (std::size_t n : {1, 2, 3}) {
    const auto cover = spanning_demo(n);
    Rational prev_volume = -1;
    bool dominate = true, structure = true, bound = true, monotone = true, limit = true;
    std::string witness;
    for (const auto& eps : eps_list) {
      const auto r = reduce_spanning(cover, eps);
      structure = structure && r.covered && r.non_spanning;
      bound = bound && r.inflation_within_bound && r.patch_volume <= r.inflation_bound &&
              r.reduced_volume == r.volume + r.patch_volume;
      limit = limit && r.reduced_inequality_holds;
      if (prev_volume >= 0) monotone = monotone && r.reduced_volume < prev_volume;
      prev_volume = r.reduced_volume;
      if (!r.distances_dominate && witness.empty()) {
        std::size_t patches = 0;
        for (auto i : r.dominance_chain) patches += i >= r.inflated.size();
        const std::size_t k = *r.dominance_axis;
        witness = fmt(" eps=%s: d~_%zu=%s < d_%zu=%s via a chain of %zu sets, %zu of them "
                      "patches;",
                      to_string(eps).c_str(), k + 1, to_string(r.reduced_distances[k]).c_str(),
                      k + 1, to_string(r.distances[k]).c_str(), r.dominance_chain.size(),
                      patches);
      }
      dominate = dominate && r.distances_dominate;
    }
    Rational product = 1;
    for (const auto& d : face_distances(cover)) product *= d;
    const bool base = product <= cover_volume(cover);
    const bool ok = dominate && structure && bound && monotone && limit && base;
    all_ok = all_ok && ok;
    detail << " n=" << n << ":" << (ok ? "ok" : "FAILED")
           << (dominate ? "" : " [d~ >= d fails" + witness + "]")
           << (structure ? "" : " [not a non-spanning cover]")
           << (bound ? "" : " [inflation above C_n eps]")
           << (monotone ? "" : " [volume not decreasing]")
           << (limit && base ? "" : " [limit inequality]") << ";";
  }
  // Diagnostic only: the smallest patch weight factor restoring dominance.
  const auto demo = spanning_demo(2);
  std::string repair = "none up to 16";
  for (long long m : {2, 4, 8, 16}) {
    ReductionOptions opts;
    opts.patch_weight_factor = m;
    if (reduce_spanning(demo, make_rational(1, 100), opts).distances_dominate) {
      repair = fmt("patch weight %lld*eps restores d~ >= d for n=2 at eps=1/100", m);
      break;
    }
  }
  detail << " diagnostic: " << repair << "; " << fmt("%.2f s", seconds_since(t0));
  return {all_ok, detail.str()};
}

Outcome criterion8() {
  std::size_t instances = 0, holds = 0;
  std::string sizes;
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
    const auto cover = simplex_patch(n, m);
    if (cover.sets.size() > kSimplexMaxSets) continue;
    const auto b = verify_simplex_bounds(cover);
    ++instances;
    const bool ok = b.volume_bound_holds && b.count_bound_holds && b.coverage_gap == std::nullopt;
    holds += ok;
    sizes += fmt(" (n=%zu,m=%zu):%zu sets %s", n, m, cover.sets.size(), ok ? "ok" : "FAILED");
  }
  return {instances > 0 && holds == instances,
          fmt("%zu/%zu simplex patches satisfy both bounds exactly;%s", holds, instances,
              sizes.c_str())};
}

Outcome criterion9() {
  const auto t0 = Clock::now();
  const auto sq = identity_image(2, kContentResolution, Norm::kLInf);
  const double lower = content_lower_bound(sq.space, sq.image);
  std::vector<std::size_t> all(sq.space.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto upper = content_upper_bound(sq.space, all, kContentQ, kContentFloor);
  const double secs = seconds_since(t0);
  return {lower == 1.0 && upper.value <= kContentUpperLimit && !upper.approximate &&
              secs < kContentSeconds,
          fmt("lower bound %.17g (want 1), upper bound %.6f <= %.6f (%zu sets, %s), %.2f s",
              lower, upper.value, kContentUpperLimit, upper.sets.size(), upper.mode.c_str(),
              secs)};
}

Outcome criterion10() {
  const auto snow = snowflaked_line(101, 0.5);
  const std::size_t last = snow.size() - 1;
  bool ok = true;
  std::string detail;
  for (double base : {1.0 / 25, 1.0 / 50, 1.0 / 100}) {
    const double delta = std::sqrt(base);  // base-metric scale in the snowflake
    const auto len = delta_path_length(snow, 0, last, delta);
    if (!len) {
      ok = false;
      detail += fmt(" delta=%g: unreachable;", delta);
      continue;
    }
    const double exponent =
        std::log(static_cast<double>(*len)) / std::log(snow(0, last) / delta);
    ok = ok && exponent >= kExponentLow && exponent <= kExponentHigh;
    detail += fmt(" delta=(%g)^(1/2): length %zu, exponent %.4f;", base, *len, exponent);
  }
  return {ok, fmt("want [%.1f, %.1f]:", kExponentLow, kExponentHigh) + detail};
}

Outcome criterion11() {
  const auto t0 = Clock::now();
  const auto circle = circle_space(360);
  const double delta = 2 * std::numbers::pi / 360;
  bool ok = true;
  std::string detail = "circle(360), lambda=3:";
  for (auto prop : {Connectivity::kLLC1, Connectivity::kLLC2, Connectivity::kALC}) {
    const auto rep = check_llc(circle, prop, kCircleLambda, delta);
    ok = ok && rep.verdict == Verdict::kPass;
    detail += fmt(" %s %s (%zu/%zu samples fail", to_string(prop).c_str(),
                  to_string(rep.verdict).c_str(), rep.failures, rep.samples);
    if (!rep.witnesses.empty()) {
      const auto& w = rep.witnesses.front();
      detail += fmt("; e.g. p=%lld r=%.4f x=%lld y=%lld", circle.id(w.center), w.radius,
                    circle.id(w.x), circle.id(w.y));
    }
    detail += ")";
  }
  const auto neck = thin_neck(5, 24);
  LLCOptions opts;
  opts.centers = {neck.neck_middle};
  opts.radii = {2 * neck.spacing};
  const auto rep = check_llc(neck.space, Connectivity::kALC, kNeckLambda, neck.spacing, opts);
  bool neck_ok = rep.verdict == Verdict::kFail && !rep.witnesses.empty();
  if (neck_ok) {
    const auto& w = rep.witnesses.front();
    const double mid = neck.coordinates[neck.neck_middle][0];
    neck_ok = (neck.coordinates[w.x][0] - mid) * (neck.coordinates[w.y][0] - mid) < 0;
    detail += fmt("; thin neck ALC lambda=2 r=2: %s, witness x=%lld y=%lld on opposite sides",
                  to_string(rep.verdict).c_str(), neck.space.id(w.x), neck.space.id(w.y));
  } else {
    detail += "; thin neck ALC: no failing witness";
  }
  ok = ok && neck_ok;
  return {ok, detail + fmt(", %.2f s", seconds_since(t0))};
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  auto all = corpus(kCorpus2D, 2);
  auto three = corpus(kCorpus3D, 3);
  all.insert(all.end(), std::make_move_iterator(three.begin()),
             std::make_move_iterator(three.end()));

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"volume inequality on the random corpus", [&] { return criterion1(all); }},
      {"sharpness on dyadic grid covers", criterion2},
      {"chain distance equals the brute-force oracle", [&] { return criterion3(all); }},
      {"proxy rectangles of intersecting sets intersect", [&] { return criterion4(all); }},
      {"boundary conditions of f", [&] { return criterion5(all); }},
      {"surjectivity by winding number", [&] { return criterion6(all); }},
      {"spanning reduction", criterion7},
      {"simplex volume and count bounds", criterion8},
      {"content sharpness on the unit square", criterion9},
      {"delta-path exponent on the snowflaked line", criterion10},
      {"connectivity checkers", criterion11},
  };
  std::size_t failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("AC%-2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu/%zu criteria pass, %.1f s\n", criteria.size() - failed,
              criteria.size(), seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
