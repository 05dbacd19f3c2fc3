#include "lvi/simplex.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "lvi/cover_io.hpp"
#include "lvi/error.hpp"

namespace lvi {

namespace {

using Mask = std::uint32_t;

bool region_nonempty(const OpenBox& box, std::size_t skip) {
  Rational low = 0, high = 0;
  for (std::size_t k = 0; k < box.dimension(); ++k) {
    if (k == skip) continue;
    const Rational a = std::max(box.lo[k], Rational(0));
    if (!(a < box.hi[k])) return false;
    low += a;
    high += box.hi[k];
  }
  return low < 1 && 1 < high;
}

}  // namespace

bool simplex_region_nonempty(const OpenBox& box) {
  return region_nonempty(box, box.dimension());
}

bool simplex_sets_meet(std::span<const OpenBox> boxes) {
  if (boxes.empty()) return true;
  OpenBox meet = boxes[0];
  for (const auto& b : boxes.subspan(1)) {
    for (std::size_t k = 0; k < meet.dimension(); ++k) {
      meet.lo[k] = std::max(meet.lo[k], b.lo[k]);
      meet.hi[k] = std::min(meet.hi[k], b.hi[k]);
    }
  }
  return simplex_region_nonempty(meet);
}

bool simplex_set_meets_face(const OpenBox& box, std::size_t face) {
  return box.lo[face] < 0 && box.hi[face] > 0 && region_nonempty(box, face);
}

void check_simplex_cover(const SimplexCover& cover) {
  if (cover.dimension == 0) throw InputError("simplex dimension must be >= 1");
  if (cover.weights.size() != cover.sets.size()) {
    throw InputError("one weight per set is required");
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const OpenBox& b = cover.sets[i];
    if (b.lo.size() != cover.dimension + 1 || b.hi.size() != cover.dimension + 1) {
      throw InputError("set " + std::to_string(i + 1) + " needs " +
                       std::to_string(cover.dimension + 1) +
                       " barycentric coordinates");
    }
    if (!simplex_region_nonempty(b)) {
      throw InputError("set " + std::to_string(i + 1) + " misses the simplex");
    }
    if (cover.weights[i] < 0) throw InputError("weights must be non-negative");
  }
}

std::optional<Point> simplex_coverage_gap(const SimplexCover& cover,
                                          std::size_t resolution) {
  const std::size_t dims = cover.dimension + 1;
  const long long total = static_cast<long long>(resolution);
  std::vector<long long> c(dims, 0);
  std::optional<Point> gap;
  // Compositions of `total` into dims non-negative parts.
  std::function<void(std::size_t, long long)> walk = [&](std::size_t k,
                                                         long long left) {
    if (gap) return;
    if (k + 1 == dims) {
      c[k] = left;
      Point p;
      for (auto v : c) p.push_back(Rational(v, total));
      const bool hit = std::any_of(
          cover.sets.begin(), cover.sets.end(),
          [&](const OpenBox& b) { return box_contains(b, p); });
      if (!hit) gap = std::move(p);
      return;
    }
    for (long long v = 0; v <= left; ++v) {
      c[k] = v;
      walk(k + 1, left - v);
    }
  };
  if (resolution > 0) walk(0, total);
  return gap;
}

SimplexDiameter simplex_diameter(const SimplexCover& cover) {
  check_simplex_cover(cover);
  const std::size_t m = cover.size();
  if (m > kSimplexSearchLimit) {
    throw InputError("exact simplex search is limited to " +
                     std::to_string(kSimplexSearchLimit) + " sets");
  }
  const std::size_t faces = cover.dimension + 1;
  std::vector<Mask> adj(m, 0), face_mask(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const OpenBox pair[] = {cover.sets[i], cover.sets[j]};
      if (i != j && simplex_sets_meet(pair)) adj[i] |= Mask{1} << j;
    }
    for (std::size_t k = 0; k < faces; ++k) {
      if (simplex_set_meets_face(cover.sets[i], k)) face_mask[i] |= Mask{1} << k;
    }
  }
  // Every pair of faces must be met by a single component of the chosen sets.
  auto joins_all = [&](Mask chosen) {
    std::vector<Mask> reached;
    Mask left = chosen;
    while (left) {
      Mask comp = left & (~left + 1);
      Mask grown = comp;
      do {
        comp = grown;
        for (std::size_t i = 0; i < m; ++i) {
          if (comp >> i & 1) grown |= adj[i] & chosen;
        }
      } while (grown != comp);
      left &= ~comp;
      Mask f = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (comp >> i & 1) f |= face_mask[i];
      }
      reached.push_back(f);
    }
    for (std::size_t k = 0; k < faces; ++k) {
      for (std::size_t l = k + 1; l < faces; ++l) {
        const Mask both = (Mask{1} << k) | (Mask{1} << l);
        if (std::none_of(reached.begin(), reached.end(),
                         [&](Mask f) { return (f & both) == both; })) {
          return false;
        }
      }
    }
    return true;
  };
  const Mask all = m == 32 ? ~Mask{0} : (Mask{1} << m) - 1;
  if (!joins_all(all)) {
    throw InputError("no sub-collection joins every pair of faces");
  }
  // Cheapest sets first so good solutions appear early.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cover.weights[a] < cover.weights[b];
  });
  SimplexDiameter best{Rational(0), {}};
  Mask best_mask = all;
  for (std::size_t i = 0; i < m; ++i) best.value += cover.weights[i];
  std::function<void(std::size_t, Mask, Mask, const Rational&)> search =
      [&](std::size_t depth, Mask chosen, Mask undecided, const Rational& cost) {
        if (cost >= best.value) return;
        if (joins_all(chosen)) {
          best.value = cost;
          best_mask = chosen;
          return;
        }
        if (depth == m || !joins_all(chosen | undecided)) return;
        const std::size_t i = order[depth];
        const Mask bit = Mask{1} << i;
        search(depth + 1, chosen | bit, undecided & ~bit,
               cost + cover.weights[i]);
        search(depth + 1, chosen, undecided & ~bit, cost);
      };
  search(0, 0, all, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (best_mask >> i & 1) best.witness.push_back(i);
  }
  return best;
}

SimplexBounds verify_simplex_bounds(const SimplexCover& cover,
                                    std::size_t coverage_resolution) {
  SimplexBounds r;
  r.diameter = simplex_diameter(cover);
  const unsigned n = static_cast<unsigned>(cover.dimension);
  r.power_sum = 0;
  for (const auto& w : cover.weights) r.power_sum += pow(w, n);
  Integer factorial = 1;
  for (unsigned k = 2; k <= n; ++k) factorial *= k;
  r.volume_bound = pow(r.diameter.value, n) / Rational(factorial);
  r.volume_bound_holds = r.power_sum >= r.volume_bound;
  r.unit_weights = std::all_of(cover.weights.begin(), cover.weights.end(),
                               [](const Rational& w) { return w == 1; });
  if (r.unit_weights) {
    // d is a set count here; C(n + d - 1, n).
    const Integer d = numerator(r.diameter.value);
    Integer c = 1;
    for (unsigned k = 1; k <= n; ++k) {
      c = c * (d - 1 + k) / k;
    }
    r.count_required = c;
    r.count_bound_holds = Integer(static_cast<long>(cover.size())) >= c;
  }
  r.coverage_resolution = coverage_resolution;
  r.coverage_gap = simplex_coverage_gap(cover, coverage_resolution);
  return r;
}

SimplexCover simplex_patch(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw InputError("simplex_patch needs n, m >= 1");
  SimplexCover cover;
  cover.dimension = n;
  const Rational eta = Rational(1, 4 * static_cast<long long>(m));
  const long long top = static_cast<long long>(m);
  const long long floor_sum = std::max(0LL, top - static_cast<long long>(n));
  std::vector<long long> c(n + 1, 0);
  while (true) {
    long long sum = 0;
    for (auto v : c) sum += v;
    if (floor_sum <= sum && sum <= top) {
      OpenBox b;
      for (auto v : c) {
        b.lo.push_back(Rational(v, top) - eta);
        b.hi.push_back(Rational(v + 1, top) + eta);
      }
      if (simplex_region_nonempty(b)) {
        cover.sets.push_back(std::move(b));
        cover.weights.push_back(1);
        cover.ids.push_back(static_cast<long long>(cover.sets.size()));
      }
    }
    std::size_t k = n + 1;
    while (k > 0 && ++c[k - 1] > top) c[--k] = 0;
    if (k == 0) break;
  }
  return cover;
}

SimplexCover simplex_cover_from_json(const nlohmann::json& doc) {
  SimplexCover cover;
  try {
    if (doc.value("kind", "") != "simplex") {
      throw InputError("expected \"kind\": \"simplex\"");
    }
    cover.dimension = doc.at("dimension").get<std::size_t>();
    for (const auto& s : doc.at("sets")) {
      OpenBox b;
      for (const auto& v : s.at("lo")) b.lo.push_back(rational_from_json(v));
      for (const auto& v : s.at("hi")) b.hi.push_back(rational_from_json(v));
      cover.sets.push_back(std::move(b));
      cover.weights.push_back(s.contains("weight")
                                  ? rational_from_json(s.at("weight"))
                                  : Rational(1));
      cover.ids.push_back(s.contains("id")
                              ? s.at("id").get<long long>()
                              : static_cast<long long>(cover.sets.size()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("simplex cover: ") + e.what());
  }
  check_simplex_cover(cover);
  return cover;
}

nlohmann::json simplex_cover_to_json(const SimplexCover& cover) {
  nlohmann::json sets = nlohmann::json::array();
  for (std::size_t i = 0; i < cover.size(); ++i) {
    sets.push_back({{"id", i < cover.ids.size() ? cover.ids[i]
                                                : static_cast<long long>(i + 1)},
                    {"lo", point_to_json(cover.sets[i].lo)},
                    {"hi", point_to_json(cover.sets[i].hi)},
                    {"weight", rational_to_json(cover.weights[i])}});
  }
  return {{"kind", "simplex"},
          {"dimension", cover.dimension},
          {"sets", std::move(sets)}};
}

nlohmann::json simplex_bounds_to_json(const SimplexBounds& b,
                                      const SimplexCover& cover) {
  nlohmann::json witness = nlohmann::json::array();
  for (std::size_t i : b.diameter.witness) {
    witness.push_back(i < cover.ids.size() ? cover.ids[i]
                                           : static_cast<long long>(i + 1));
  }
  nlohmann::json out = {
      {"dimension", cover.dimension},
      {"sets", cover.size()},
      {"diameter", rational_to_json(b.diameter.value)},
      {"witness", std::move(witness)},
      {"power_sum", rational_to_json(b.power_sum)},
      {"volume_bound", rational_to_json(b.volume_bound)},
      {"volume_bound_holds", b.volume_bound_holds},
      {"unit_weights", b.unit_weights},
      {"count_bound_holds", b.count_bound_holds},
      {"coverage",
       {{"resolution", b.coverage_resolution},
        {"gap", b.coverage_gap ? point_to_json(*b.coverage_gap)
                               : nlohmann::json(nullptr)}}}};
  out["count_required"] =
      b.count_required ? nlohmann::json(b.count_required->str())
                       : nlohmann::json(nullptr);
  return out;
}

}  // namespace lvi
