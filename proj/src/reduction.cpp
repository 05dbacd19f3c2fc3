#include "lvi/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lvi/error.hpp"

namespace lvi {

namespace {

const Rational kOne(1);

// Radius of the largest relative L-infinity ball inside (lo, hi) along one
// axis, centered anywhere in [0, 1]. Sides beyond the cube impose nothing.
Rational axis_room(const Rational& lo, const Rational& hi) {
  const bool low_free = lo < 0, high_free = hi > 1;
  if (low_free && high_free) return kOne;
  if (low_free) return std::min(hi, kOne);
  if (high_free) return std::min(1 - lo, kOne);
  return std::max((hi - lo) / 2, Rational(0));
}

Rational box_room(const OpenBox& b, std::size_t skip = static_cast<std::size_t>(-1)) {
  Rational r = kOne;
  for (std::size_t k = 0; k < b.dimension(); ++k) {
    if (k != skip) r = std::min(r, axis_room(b.lo[k], b.hi[k]));
  }
  return r;
}

// Clipped distance-to-boundary along one axis for the Lebesgue bound.
Rational axis_depth(const OpenBox& b, std::size_t k, const Rational& x) {
  Rational r = kOne;
  if (b.lo[k] >= 0) r = std::min(r, x - b.lo[k]);
  if (b.hi[k] <= 1) r = std::min(r, b.hi[k] - x);
  return r;
}

bool nonempty_in_cube(const OpenBox& b) {
  for (std::size_t k = 0; k < b.dimension(); ++k) {
    if (!(b.lo[k] < b.hi[k] && b.hi[k] > 0 && b.lo[k] < 1)) return false;
  }
  return true;
}

// Relative open box meets closed box [lo, hi].
bool meets_closed(const OpenBox& b, const std::vector<Rational>& lo,
                  const std::vector<Rational>& hi) {
  for (std::size_t k = 0; k < b.dimension(); ++k) {
    const bool a_closed = b.lo[k] < 0, z_closed = b.hi[k] > 1;
    const Rational a = std::max(b.lo[k], Rational(0));
    const Rational z = std::min(b.hi[k], kOne);
    Rational lower = std::max(a, lo[k]);
    const bool lower_closed = lo[k] > a || a_closed;
    Rational upper = std::min(z, hi[k]);
    const bool upper_closed = hi[k] < z || z_closed;
    if (lower > upper) return false;
    if (lower == upper && !(lower_closed && upper_closed)) return false;
  }
  return true;
}

// Canonical form: sides beyond the cube moved to -1 and 2.
OpenBox canonical(OpenBox b) {
  for (std::size_t k = 0; k < b.dimension(); ++k) {
    if (b.lo[k] < 0) b.lo[k] = -1;
    if (b.hi[k] > 1) b.hi[k] = 2;
  }
  return b;
}

bool contained(const OpenBox& a, const OpenBox& b) {
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    if (a.lo[k] < b.lo[k] || a.hi[k] > b.hi[k]) return false;
  }
  return true;
}

void prune(std::vector<OpenBox>& pieces) {
  std::vector<OpenBox> out;
  for (auto& p : pieces) {
    if (nonempty_in_cube(p)) out.push_back(canonical(std::move(p)));
  }
  std::vector<bool> drop(out.size(), false);
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = 0; b < out.size() && !drop[a]; ++b) {
      if (a == b || drop[b] || !contained(out[a], out[b])) continue;
      // Equal boxes: keep the first.
      if (contained(out[b], out[a]) && b > a) continue;
      drop[a] = true;
    }
  }
  pieces.clear();
  for (std::size_t a = 0; a < out.size(); ++a) {
    if (!drop[a]) pieces.push_back(std::move(out[a]));
  }
}

bool pieces_intersect(const std::vector<OpenBox>& a,
                      const std::vector<OpenBox>& b) {
  for (const auto& p : a) {
    for (const auto& q : b) {
      if (boxes_intersect(p, q)) return true;
    }
  }
  return false;
}

bool pieces_meet(const std::vector<OpenBox>& a, const Face& face) {
  return std::any_of(a.begin(), a.end(),
                     [&](const OpenBox& p) { return box_meets_face(p, face); });
}

}  // namespace

Rational sqrt_upper_bound(std::size_t n) {
  long long k = 1;
  while (k * k < static_cast<long long>(n) * 1000000) ++k;
  return Rational(k, 1000);
}

Integer patch_constant(std::size_t n) {
  Integer c = static_cast<long>(n);
  for (std::size_t i = 1; i < n; ++i) c *= 3;
  return c;
}

Rational lebesgue_lower_bound(const WeightedCover& cover) {
  const std::size_t n = cover.dimension, m = cover.size();
  // depth[k][c][i]: min of the axis-k depth of set i over the endpoints of
  // half-interval c.
  std::vector<std::vector<std::vector<Rational>>> depth(n);
  std::vector<std::size_t> cells(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> v{Rational(0), kOne};
    for (const auto& b : cover.sets) {
      const Extent e = clipped_extent(b, k);
      v.push_back(e.lower);
      v.push_back(e.upper);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<Rational> g;
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
      g.push_back(v[j]);
      g.push_back((v[j] + v[j + 1]) / 2);
    }
    g.push_back(v.back());
    cells[k] = g.size() - 1;
    depth[k].resize(cells[k]);
    for (std::size_t c = 0; c < cells[k]; ++c) {
      for (std::size_t i = 0; i < m; ++i) {
        depth[k][c].push_back(std::min(axis_depth(cover.sets[i], k, g[c]),
                                       axis_depth(cover.sets[i], k, g[c + 1])));
      }
    }
  }
  Rational bound = kOne;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Rational best = 0;
    for (std::size_t i = 0; i < m; ++i) {
      Rational r = kOne;
      for (std::size_t k = 0; k < n && r > best; ++k) {
        r = std::min(r, depth[k][idx[k]][i]);
      }
      best = std::max(best, r);
    }
    bound = std::min(bound, best);
    std::size_t k = 0;
    while (k < n && ++idx[k] == cells[k]) idx[k++] = 0;
    if (k == n) break;
  }
  return bound;
}

Rational intersection_margin(const WeightedCover& cover) {
  Rational r = kOne;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (std::size_t j = i + 1; j < cover.size(); ++j) {
      if (!boxes_intersect(cover.sets[i], cover.sets[j])) continue;
      OpenBox meet = cover.sets[i];
      for (std::size_t k = 0; k < cover.dimension; ++k) {
        meet.lo[k] = std::max(meet.lo[k], cover.sets[j].lo[k]);
        meet.hi[k] = std::min(meet.hi[k], cover.sets[j].hi[k]);
      }
      r = std::min(r, box_room(meet));
    }
  }
  return r;
}

Rational face_margin(const WeightedCover& cover) {
  Rational r = kOne;
  for (const auto& b : cover.sets) {
    for (std::size_t k = 0; k < cover.dimension; ++k) {
      if (b.lo[k] < 0) {
        Rational along = b.hi[k] > 1 ? kOne : b.hi[k];
        r = std::min({r, along, box_room(b, k)});
      }
      if (b.hi[k] > 1) {
        Rational along = b.lo[k] < 0 ? kOne : 1 - b.lo[k];
        r = std::min({r, along, box_room(b, k)});
      }
    }
  }
  return r;
}

std::vector<OpenBox> subtract_closed_box(const OpenBox& box,
                                         const std::vector<Rational>& lo,
                                         const std::vector<Rational>& hi) {
  if (!meets_closed(box, lo, hi)) return {box};
  std::vector<OpenBox> out;
  for (std::size_t k = 0; k < box.dimension(); ++k) {
    OpenBox below = box;
    below.hi[k] = std::min(below.hi[k], lo[k]);
    if (nonempty_in_cube(below)) out.push_back(std::move(below));
    OpenBox above = box;
    above.lo[k] = std::max(above.lo[k], hi[k]);
    if (nonempty_in_cube(above)) out.push_back(std::move(above));
  }
  return out;
}

SpanningReduction reduce_spanning(const WeightedCover& cover,
                                  const Rational& eps,
                                  const ReductionOptions& options) {
  check_cover(cover);
  const std::size_t n = cover.dimension, m = cover.size();
  SpanningReduction r;
  r.dimension = n;
  r.eps = eps;
  r.distances = face_distances(cover);
  r.delta1 = lebesgue_lower_bound(cover);
  r.delta2 = intersection_margin(cover);
  r.delta3 = face_margin(cover);
  r.delta = std::min({r.delta1, r.delta2, r.delta3});
  r.binding = r.delta == r.delta1   ? "lebesgue"
              : r.delta == r.delta2 ? "intersection"
                                    : "face";
  r.sqrt_n = sqrt_upper_bound(n);
  r.eps_bound = r.delta / (8 * r.sqrt_n);
  if (eps <= 0 || eps >= r.eps_bound) {
    throw InputError("eps must lie in (0, " + to_string(r.eps_bound) +
                     "); delta = " + to_string(r.delta) + " (" + r.binding +
                     ")");
  }
  if (options.patch_weight_factor <= 0) {
    throw InputError("patch weight factor must be positive");
  }
  const Rational half = r.delta / 2;

  // Shrink against disjoint sets and untouched faces.
  for (std::size_t i = 0; i < m; ++i) {
    OpenBox base = cover.sets[i];
    for (std::size_t k = 0; k < n; ++k) {
      if (!(base.lo[k] < 0)) base.lo[k] = std::max(base.lo[k], half);
      if (!(base.hi[k] > 1)) base.hi[k] = std::min(base.hi[k], 1 - half);
    }
    std::vector<OpenBox> pieces;
    if (nonempty_in_cube(base)) pieces.push_back(base);
    for (std::size_t j = 0; j < m && !pieces.empty(); ++j) {
      if (j == i || boxes_intersect(cover.sets[i], cover.sets[j])) continue;
      std::vector<Rational> lo(n), hi(n);
      for (std::size_t k = 0; k < n; ++k) {
        const Extent e = clipped_extent(cover.sets[j], k);
        lo[k] = e.lower - half;
        hi[k] = e.upper + half;
      }
      std::vector<OpenBox> next;
      for (const auto& p : pieces) {
        for (auto& q : subtract_closed_box(p, lo, hi)) next.push_back(std::move(q));
      }
      prune(next);
      pieces = std::move(next);
    }
    if (pieces.empty()) ++r.empty_sets;
    r.shrunken.push_back(std::move(pieces));
  }
  std::vector<OpenBox> flat;
  for (const auto& s : r.shrunken) flat.insert(flat.end(), s.begin(), s.end());
  const bool shrunk_cover = validate_boxes(flat, n).covered;
  if (!shrunk_cover) {
    throw InvariantViolation("shrunken sets do not cover the cube; binding "
                             "margin: " + r.binding);
  }

  // Inflate by eps/2 and rescale [0, 1+eps]^n to the unit cube.
  const Rational scale = 1 + eps;
  for (const auto& s : r.shrunken) {
    std::vector<OpenBox> v;
    for (const auto& p : s) {
      OpenBox q = p;
      for (std::size_t k = 0; k < n; ++k) {
        q.lo[k] = (std::max(p.lo[k], Rational(0)) - eps / 2) / scale;
        q.hi[k] = (std::min(p.hi[k], kOne) + eps / 2) / scale;
      }
      v.push_back(std::move(q));
    }
    r.inflated.push_back(std::move(v));
  }
  r.weights = cover.weights;

  // Patch centers on the far faces, pitch eps, L-infinity radius s_n eps.
  const Integer steps = ceil(scale / eps);
  const long long last = steps.convert_to<long long>();
  const Rational radius = r.sqrt_n * eps;
  std::set<Point> centers;
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<long long> idx(n, 0);
    while (true) {
      Point c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = k == l ? scale : eps * idx[k];
      centers.insert(std::move(c));
      std::size_t k = 0;
      while (k < n && (k == l || ++idx[k] > last)) {
        if (k != l) idx[k] = 0;
        ++k;
      }
      if (k == n) break;
    }
  }
  for (const auto& c : centers) {
    OpenBox b;
    for (std::size_t k = 0; k < n; ++k) {
      b.lo.push_back((c[k] - radius) / scale);
      b.hi.push_back((c[k] + radius) / scale);
    }
    r.patches.push_back(std::move(b));
    r.patch_centers.push_back(c);
  }
  r.patch_weight = options.patch_weight_factor * eps;

  // The inflated sets cover [0, 1 + eps/2]^n; the patch intervals along each
  // face cover [0, 1 + eps] and reach below 1 across it.
  bool patches_cover = radius > eps / 2;
  Rational reach = 0;
  for (long long j = 0; j <= last; ++j) {
    if (eps * j - radius >= reach && reach <= scale) patches_cover = false;
    reach = std::max(reach, eps * j + radius);
  }
  patches_cover = patches_cover && reach > scale;
  r.covered = shrunk_cover && patches_cover;

  const ChainGraph graph = reduced_graph(r);
  r.non_spanning = true;
  for (std::size_t s = 0; s < graph.size(); ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      if (graph.meets(s, Face::low(k)) && graph.meets(s, Face::high(k))) {
        r.non_spanning = false;
      }
    }
  }
  r.reduced_distances = face_distances(graph);
  r.distances_dominate = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (r.reduced_distances[k] < r.distances[k]) {
      r.distances_dominate = false;
      if (!r.dominance_axis) {
        r.dominance_axis = k;
        r.dominance_chain =
            chain_distance(graph, k, Face::low(k), Face::high(k))->chain;
      }
    }
  }

  r.volume = 0;
  for (const auto& row : cover.weights) {
    Rational t = 1;
    for (const auto& w : row) t *= w;
    r.volume += t;
  }
  r.patch_volume = pow(r.patch_weight, static_cast<unsigned>(n)) *
                   static_cast<long long>(r.patches.size());
  r.reduced_volume = r.volume + r.patch_volume;
  r.inflation_bound = Rational(patch_constant(n)) * eps;
  const Rational count_bound =
      Rational(patch_constant(n)) * pow(1 / eps, static_cast<unsigned>(n - 1));
  r.patch_count_bound = numerator(count_bound) / denominator(count_bound);
  r.inflation_within_bound = r.patch_volume <= r.inflation_bound;
  Rational product = 1;
  for (const auto& d : r.reduced_distances) product *= d;
  r.reduced_inequality_holds = product <= r.reduced_volume;
  return r;
}

ChainGraph reduced_graph(const SpanningReduction& r) {
  const std::size_t n = r.dimension;
  const std::size_t sets = r.inflated.size(), total = sets + r.patches.size();
  std::vector<std::vector<std::size_t>> adj(total);
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (std::size_t a = 0; a < sets; ++a) {
    for (std::size_t b = a + 1; b < sets; ++b) {
      if (pieces_intersect(r.inflated[a], r.inflated[b])) link(a, b);
    }
    for (std::size_t p = 0; p < r.patches.size(); ++p) {
      for (const auto& piece : r.inflated[a]) {
        if (boxes_intersect(piece, r.patches[p])) {
          link(a, sets + p);
          break;
        }
      }
    }
  }
  // Patch pairs: bucket centers on the eps grid, then test exactly.
  if (!r.patches.empty()) {
    std::map<std::vector<long long>, std::vector<std::size_t>> buckets;
    std::vector<std::vector<long long>> keys;
    for (std::size_t p = 0; p < r.patches.size(); ++p) {
      std::vector<long long> key(n);
      for (std::size_t k = 0; k < n; ++k) {
        key[k] = Integer(numerator(r.patch_centers[p][k] / r.eps) /
                         denominator(r.patch_centers[p][k] / r.eps))
                     .convert_to<long long>();
      }
      buckets[key].push_back(p);
      keys.push_back(std::move(key));
    }
    const long long span =
        Integer(numerator(2 * r.sqrt_n) / denominator(2 * r.sqrt_n))
            .convert_to<long long>() + 1;
    for (std::size_t p = 0; p < r.patches.size(); ++p) {
      std::vector<long long> off(n, -span);
      while (true) {
        std::vector<long long> key(n);
        for (std::size_t k = 0; k < n; ++k) key[k] = keys[p][k] + off[k];
        if (auto it = buckets.find(key); it != buckets.end()) {
          for (std::size_t q : it->second) {
            if (q > p && boxes_intersect(r.patches[p], r.patches[q])) {
              link(sets + p, sets + q);
            }
          }
        }
        std::size_t k = 0;
        while (k < n && ++off[k] > span) off[k++] = -span;
        if (k == n) break;
      }
    }
  }
  std::vector<std::vector<Rational>> weights = r.weights;
  weights.resize(total, std::vector<Rational>(n, r.patch_weight));
  std::vector<std::vector<bool>> low(total, std::vector<bool>(n));
  std::vector<std::vector<bool>> high(total, std::vector<bool>(n));
  for (std::size_t s = 0; s < total; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s < sets) {
        low[s][k] = pieces_meet(r.inflated[s], Face::low(k));
        high[s][k] = pieces_meet(r.inflated[s], Face::high(k));
      } else {
        low[s][k] = box_meets_face(r.patches[s - sets], Face::low(k));
        high[s][k] = box_meets_face(r.patches[s - sets], Face::high(k));
      }
    }
  }
  return ChainGraph(std::move(adj), std::move(weights), std::move(low),
                    std::move(high));
}

}  // namespace lvi
