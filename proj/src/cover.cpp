#include "lvi/cover.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "lvi/error.hpp"

namespace lvi {

void check_box(const OpenBox& box, std::size_t dimension) {
  if (box.lo.size() != dimension || box.hi.size() != dimension) {
    throw InputError("box has dimension " + std::to_string(box.lo.size()) +
                     "/" + std::to_string(box.hi.size()) + ", expected " +
                     std::to_string(dimension));
  }
  for (std::size_t k = 0; k < dimension; ++k) {
    if (!(box.lo[k] < box.hi[k])) {
      throw InputError("box interval on axis " + std::to_string(k + 1) +
                       " is empty: (" + to_string(box.lo[k]) + ", " +
                       to_string(box.hi[k]) + ")");
    }
    if (!(box.lo[k] < 1) || !(box.hi[k] > 0)) {
      throw InputError("box misses the unit cube on axis " +
                       std::to_string(k + 1));
    }
  }
}

void check_cover(const WeightedCover& cover) {
  if (cover.dimension == 0) throw InputError("cover dimension must be >= 1");
  if (cover.sets.empty()) throw InputError("cover has no sets");
  if (cover.weights.size() != cover.sets.size()) {
    throw InputError("weight table has " +
                     std::to_string(cover.weights.size()) + " rows for " +
                     std::to_string(cover.sets.size()) + " sets");
  }
  if (!cover.ids.empty() && cover.ids.size() != cover.sets.size()) {
    throw InputError("id list does not match set count");
  }
  std::set<long long> seen;
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    check_box(cover.sets[i], cover.dimension);
    if (cover.weights[i].size() != cover.dimension) {
      throw InputError("set " + std::to_string(i + 1) +
                       " has the wrong number of axis weights");
    }
    for (const Rational& w : cover.weights[i]) {
      if (w < 0) throw InputError("negative weight on set " +
                                  std::to_string(i + 1));
    }
    if (!cover.ids.empty() && !seen.insert(cover.ids[i]).second) {
      throw InputError("duplicate set id " + std::to_string(cover.ids[i]));
    }
  }
}

Extent clipped_extent(const OpenBox& box, std::size_t axis) {
  return {std::max(box.lo[axis], Rational(0)),
          std::min(box.hi[axis], Rational(1))};
}

// Per axis the represented set is an interval with endpoints L = max(lo, 0)
// and H = min(hi, 1); L is attained only when L = 0 and H only when H = 1.
// Two such non-empty intervals could touch at a single attained point only if
// some L = 1 or some H = 0, which a valid box excludes. So the strict test on
// clipped endpoints is exact, boundary included.
bool boxes_intersect(const OpenBox& a, const OpenBox& b) {
  if (a.dimension() != b.dimension()) {
    throw InputError("boxes_intersect: dimension mismatch");
  }
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    Extent ea = clipped_extent(a, k);
    Extent eb = clipped_extent(b, k);
    if (!(std::max(ea.lower, eb.lower) < std::min(ea.upper, eb.upper))) {
      return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> intersection_adjacency(
    std::span<const OpenBox> boxes) {
  const std::size_t m = boxes.size();
  if (m == 0) return {};
  const std::size_t n = boxes.front().dimension();
  std::vector<std::vector<Extent>> ext(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (boxes[i].dimension() != n) {
      throw InputError("intersection_adjacency: dimension mismatch");
    }
    for (std::size_t k = 0; k < n; ++k) ext[i].push_back(clipped_extent(boxes[i], k));
  }
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ext[a][0].lower < ext[b][0].lower;
  });
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t a = 0; a < m; ++a) {
    const auto& ea = ext[order[a]];
    for (std::size_t b = a + 1; b < m; ++b) {
      const auto& eb = ext[order[b]];
      if (!(eb[0].lower < ea[0].upper)) break;
      bool meet = true;
      for (std::size_t k = 1; k < n && meet; ++k) {
        meet = ea[k].lower < eb[k].upper && eb[k].lower < ea[k].upper;
      }
      if (meet) {
        adj[order[a]].push_back(order[b]);
        adj[order[b]].push_back(order[a]);
      }
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

bool boxes_have_common_point(std::span<const OpenBox> boxes) {
  if (boxes.empty()) return true;
  const std::size_t n = boxes.front().dimension();
  for (std::size_t k = 0; k < n; ++k) {
    Rational lower(0), upper(1);
    for (const OpenBox& box : boxes) {
      if (box.dimension() != n) {
        throw InputError("boxes_have_common_point: dimension mismatch");
      }
      lower = std::max(lower, box.lo[k]);
      upper = std::min(upper, box.hi[k]);
    }
    if (!(lower < upper)) return false;
  }
  return true;
}

bool box_meets_face(const OpenBox& box, const Face& face) {
  if (face.axis >= box.dimension()) {
    throw InputError("face axis out of range");
  }
  // The other axes are non-empty for any valid box.
  return face.side == Side::kLow ? box.lo[face.axis] < 0
                                 : box.hi[face.axis] > 1;
}

bool box_contains(const OpenBox& box, const Point& x) {
  if (x.size() != box.dimension()) {
    throw InputError("box_contains: dimension mismatch");
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(box.lo[k] < x[k] && x[k] < box.hi[k])) return false;
  }
  return true;
}

CoverageResult validate_boxes(std::span<const OpenBox> boxes,
                              std::size_t dimension) {
  // Test coordinates per axis: every arrangement value and every midpoint
  // between consecutive values. Membership is constant on each open cell and
  // on each vertex class, so these points decide coverage exactly.
  std::vector<std::vector<Rational>> tests(dimension);
  for (std::size_t k = 0; k < dimension; ++k) {
    std::vector<Rational> values{Rational(0), Rational(1)};
    for (const OpenBox& box : boxes) {
      Extent e = clipped_extent(box, k);
      values.push_back(e.lower);
      values.push_back(e.upper);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t a = 0; a < values.size(); ++a) {
      tests[k].push_back(values[a]);
      if (a + 1 < values.size()) {
        tests[k].push_back((values[a] + values[a + 1]) / 2);
      }
    }
  }

  // Each box covers a contiguous run of test indices on each axis.
  struct Range {
    std::size_t first;
    std::size_t last;  // exclusive
  };
  std::vector<std::vector<Range>> ranges;
  ranges.reserve(boxes.size());
  for (const OpenBox& box : boxes) {
    std::vector<Range> per_axis(dimension);
    for (std::size_t k = 0; k < dimension; ++k) {
      const auto& t = tests[k];
      auto first = std::upper_bound(t.begin(), t.end(), box.lo[k]);
      auto last = std::lower_bound(t.begin(), t.end(), box.hi[k]);
      per_axis[k] = {static_cast<std::size_t>(first - t.begin()),
                     static_cast<std::size_t>(last - t.begin())};
    }
    ranges.push_back(std::move(per_axis));
  }

  // Among uncovered test points, report one in the most open cell (most
  // midpoint coordinates): 1/2 rather than 2/5 for a gap [2/5, 3/5].
  std::optional<Point> witness;
  std::size_t witness_openness = 0;
  std::vector<std::size_t> index(dimension, 0);
  while (true) {
    bool covered = false;
    for (const auto& box_ranges : ranges) {
      bool inside = true;
      for (std::size_t k = 0; k < dimension && inside; ++k) {
        inside = box_ranges[k].first <= index[k] && index[k] < box_ranges[k].last;
      }
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      std::size_t openness = 0;
      for (std::size_t k = 0; k < dimension; ++k) openness += index[k] % 2;
      if (!witness || openness > witness_openness) {
        witness = Point(dimension);
        for (std::size_t k = 0; k < dimension; ++k) {
          (*witness)[k] = tests[k][index[k]];
        }
        witness_openness = openness;
        if (openness == dimension) break;
      }
    }
    std::size_t k = 0;
    while (k < dimension && ++index[k] == tests[k].size()) {
      index[k] = 0;
      ++k;
    }
    if (k == dimension) break;
  }
  if (witness) return {false, witness};
  return {true, std::nullopt};
}

CoverageResult validate_cover(const WeightedCover& cover) {
  return validate_boxes(cover.sets, cover.dimension);
}

bool is_spanning(const WeightedCover& cover) {
  for (const OpenBox& box : cover.sets) {
    for (std::size_t k = 0; k < cover.dimension; ++k) {
      if (box_meets_face(box, Face::low(k)) &&
          box_meets_face(box, Face::high(k))) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace lvi
