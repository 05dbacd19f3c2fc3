#include "lvi/generators.hpp"

#include <algorithm>
#include <cmath>

#include "lvi/cover_io.hpp"
#include "lvi/error.hpp"
#include "lvi/metricdiag.hpp"
#include "lvi/simplex.hpp"

namespace lvi {

namespace {

constexpr long long kGrid = 64;

std::vector<std::size_t> odometer_start(std::size_t n) { return std::vector<std::size_t>(n, 0); }

// Advances a mixed-radix counter; false once it wraps.
bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& radix) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (++idx[k] < radix[k]) return true;
    idx[k] = 0;
  }
  return false;
}

// Generated families must cover; user-supplied ones are checked as input.
void finish(WeightedCover& c, bool user_supplied = false) {
  c.ids.clear();
  for (std::size_t i = 0; i < c.sets.size(); ++i) c.ids.push_back(static_cast<long long>(i + 1));
  check_cover(c);
  if (validate_cover(c).covered) return;
  if (user_supplied) throw InputError("intervals do not cover [0, 1]");
  throw InvariantViolation("generated family is not a cover");
}

std::size_t get_size(const nlohmann::json& params, const char* key) {
  if (!params.contains(key)) throw InputError(std::string("generator needs '") + key + "'");
  const auto& v = params.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double get_real(const nlohmann::json& params, const char* key) {
  if (!params.contains(key)) throw InputError(std::string("generator needs '") + key + "'");
  return to_double(rational_from_json(params.at(key)));
}

}  // namespace

WeightedCover grid_cover(std::size_t j, std::size_t n, const Rational& overlap) {
  if (n == 0) throw InputError("grid dimension must be positive");
  if (j > 20) throw InputError("grid depth too large");
  if (overlap <= 0) throw InputError("grid overlap must be positive");
  const std::size_t side = std::size_t{1} << j;
  const Rational h = make_rational(1, static_cast<long long>(side));
  if (overlap >= h) throw InputError("grid overlap must be below the cell side");
  WeightedCover c;
  c.dimension = n;
  auto idx = odometer_start(n);
  const std::vector<std::size_t> radix(n, side);
  do {
    OpenBox b;
    for (std::size_t k = 0; k < n; ++k) {
      const Rational lo = h * static_cast<long long>(idx[k]);
      b.lo.push_back(lo - (idx[k] == 0 ? overlap : overlap / 2));
      b.hi.push_back(lo + h + (idx[k] + 1 == side ? overlap : overlap / 2));
    }
    c.sets.push_back(std::move(b));
    c.weights.emplace_back(n, h);
  } while (advance(idx, radix));
  finish(c);
  return c;
}

WeightedCover line_cover(const std::vector<std::pair<Rational, Rational>>& intervals,
                         const std::vector<Rational>& weights) {
  if (intervals.size() != weights.size()) {
    throw InputError("line cover needs one weight per interval");
  }
  WeightedCover c;
  c.dimension = 1;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    c.sets.push_back(OpenBox{{intervals[i].first}, {intervals[i].second}});
    c.weights.push_back({weights[i]});
  }
  finish(c, true);
  return c;
}

WeightedCover random_boxes(std::size_t count, std::size_t n, std::uint64_t seed,
                           const Rational& min_overlap) {
  if (n == 0) throw InputError("random_boxes dimension must be positive");
  if (count == 0) throw InputError("random_boxes count must be positive");
  if (min_overlap <= 0 || min_overlap > make_rational(1, 8)) {
    throw InputError("random_boxes min_overlap must lie in (0, 1/8]");
  }
  Rng rng(seed);
  // Cells per axis: as equal as possible with product <= count.
  std::vector<std::size_t> parts(n, 1);
  const bool split_all = count >= (std::size_t{1} << std::min<std::size_t>(n, 30));
  if (split_all) parts.assign(n, 2);
  auto product = [&] {
    std::size_t p = 1;
    for (auto v : parts) p *= v;
    return p;
  };
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    std::rotate(order.begin(), order.begin() + static_cast<long>(draw(rng, n)), order.end());
    for (std::size_t k : order) {
      if (parts[k] >= 8) continue;
      const std::size_t next = product() / parts[k] * (parts[k] + 1);
      if (next <= count && draw(rng, 4) != 0) {
        ++parts[k];
        grew = true;
      }
    }
  }

  // Cut points on the 1/64 grid with gaps of at least 4/64.
  std::vector<std::vector<long long>> cuts(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long long p = static_cast<long long>(parts[k]);
    cuts[k].push_back(0);
    for (long long i = 1; i < p; ++i) {
      const long long base = i * kGrid / p;
      const long long jitter = static_cast<long long>(draw(rng, 5)) - 2;
      cuts[k].push_back(base + jitter);
    }
    cuts[k].push_back(kGrid);
  }

  const Rational unit = make_rational(1, kGrid);
  auto extra = [&] { return unit * static_cast<long long>(draw(rng, 3)); };
  auto weight = [&] { return make_rational(1 + static_cast<long long>(draw(rng, 8)), 8); };

  WeightedCover c;
  c.dimension = n;
  auto idx = odometer_start(n);
  do {
    OpenBox b;
    for (std::size_t k = 0; k < n; ++k) {
      const bool first = idx[k] == 0;
      const bool last = idx[k] + 1 == parts[k];
      b.lo.push_back(unit * cuts[k][idx[k]] - (first ? min_overlap : min_overlap / 2) - extra());
      b.hi.push_back(unit * cuts[k][idx[k] + 1] + (last ? min_overlap : min_overlap / 2) + extra());
    }
    c.sets.push_back(std::move(b));
    std::vector<Rational> w;
    for (std::size_t k = 0; k < n; ++k) w.push_back(weight());
    c.weights.push_back(std::move(w));
  } while (advance(idx, parts));

  while (c.sets.size() < count) {
    OpenBox b;
    for (std::size_t k = 0; k < n; ++k) {
      const long long len = 4 + static_cast<long long>(draw(rng, 28));
      const long long lo = static_cast<long long>(draw(rng, kGrid + 8)) - 8;
      b.lo.push_back(unit * lo);
      b.hi.push_back(unit * std::max<long long>(lo + len, 1));
    }
    c.sets.push_back(std::move(b));
    std::vector<Rational> w;
    for (std::size_t k = 0; k < n; ++k) w.push_back(weight());
    c.weights.push_back(std::move(w));
  }
  finish(c);
  return c;
}

WeightedCover spanning_demo(std::size_t n) {
  if (n == 0) throw InputError("spanning_demo dimension must be positive");
  const Rational out_lo = make_rational(-1, 10), out_hi = make_rational(11, 10);
  WeightedCover c;
  c.dimension = n;
  if (n == 1) {
    c.sets.push_back(OpenBox{{out_lo}, {out_hi}});
    c.weights.push_back({Rational(1)});
  } else {
    const std::pair<Rational, Rational> halves[] = {
        {out_lo, make_rational(4, 5)}, {make_rational(1, 5), out_hi}};
    for (const auto& [lo2, hi2] : halves) {
      OpenBox b;
      b.lo.assign(n, out_lo);
      b.hi.assign(n, out_hi);
      b.lo[1] = lo2;
      b.hi[1] = hi2;
      c.sets.push_back(std::move(b));
      std::vector<Rational> w(n, make_rational(1, 2));
      w[0] = 1;
      c.weights.push_back(std::move(w));
    }
  }
  finish(c);
  return c;
}

nlohmann::json generate(const nlohmann::json& params) {
  if (!params.is_object() || !params.contains("kind") || !params["kind"].is_string()) {
    throw InputError("generator parameters need a string 'kind'");
  }
  const std::string kind = params["kind"];
  try {
    if (kind == "grid") {
      return cover_to_json(grid_cover(get_size(params, "j"), get_size(params, "n"),
                                      rational_from_json(params.at("overlap"))));
    }
    if (kind == "line") {
      std::vector<std::pair<Rational, Rational>> intervals;
      std::vector<Rational> weights;
      for (const auto& iv : params.at("intervals")) {
        if (!iv.is_array() || iv.size() != 2) throw InputError("interval must be [lo, hi]");
        intervals.emplace_back(rational_from_json(iv[0]), rational_from_json(iv[1]));
      }
      for (const auto& w : params.at("weights")) weights.push_back(rational_from_json(w));
      return cover_to_json(line_cover(intervals, weights));
    }
    if (kind == "random_boxes") {
      return cover_to_json(random_boxes(get_size(params, "count"), get_size(params, "n"),
                                        params.at("seed").get<std::uint64_t>(),
                                        rational_from_json(params.value("min_overlap", nlohmann::json("1/32")))));
    }
    if (kind == "spanning_demo") return cover_to_json(spanning_demo(get_size(params, "n")));
    if (kind == "simplex_patch") {
      return simplex_cover_to_json(simplex_patch(get_size(params, "n"), get_size(params, "depth")));
    }
    if (kind == "circle") return metric_to_json(circle_space(get_size(params, "points")));
    if (kind == "snowflaked_line") {
      return metric_to_json(snowflaked_line(get_size(params, "points"), get_real(params, "alpha")));
    }
    if (kind == "thin_neck") {
      auto neck = thin_neck(get_size(params, "cluster_size"), get_size(params, "neck_len"));
      return {{"kind", "metric"}, {"coordinates", neck.coordinates}, {"norm", "l2"}};
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad generator parameters: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad generator parameters: ") + e.what());
  }
  throw InputError("unknown generator kind '" + kind + "'");
}

}  // namespace lvi
