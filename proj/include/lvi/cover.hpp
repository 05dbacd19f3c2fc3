#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lvi/rational.hpp"

namespace lvi {

using Point = std::vector<Rational>;

// An axis-aligned open box, read relative to the closed unit cube: it stands
// for {x in [0,1]^n : lo[k] < x[k] < hi[k]}. Letting lo[k] < 0 or hi[k] > 1
// is how a set becomes relatively open at a face of the cube.
struct OpenBox {
  std::vector<Rational> lo;
  std::vector<Rational> hi;

  std::size_t dimension() const { return lo.size(); }
};

enum class Side { kLow, kHigh };

// Face {x_k = 0} (kLow) or {x_k = 1} (kHigh) of the unit cube. Axis is 0-based.
struct Face {
  std::size_t axis = 0;
  Side side = Side::kLow;

  static Face low(std::size_t axis) { return {axis, Side::kLow}; }
  static Face high(std::size_t axis) { return {axis, Side::kHigh}; }
  bool operator==(const Face&) const = default;
};

// A finite cover of [0,1]^n by open boxes with one weight per set and axis.
// weights[i][k] is the axis-k weight of set i. ids are the external labels
// used in files and reports; internally sets are addressed by position.
struct WeightedCover {
  std::size_t dimension = 0;
  std::vector<OpenBox> sets;
  std::vector<std::vector<Rational>> weights;
  std::vector<long long> ids;

  std::size_t size() const { return sets.size(); }
  const Rational& weight(std::size_t set, std::size_t axis) const {
    return weights[set][axis];
  }
};

// Throws InputError unless lo < hi on every axis and the clipped set is
// non-empty (lo < 1 and hi > 0).
void check_box(const OpenBox& box, std::size_t dimension);

// Structural validation: box validity, weight shape, non-negative weights,
// unique ids. Coverage is checked separately by validate_cover.
void check_cover(const WeightedCover& cover);

// Clipped per-axis extent [max(lo,0), min(hi,1)] of a box.
struct Extent {
  Rational lower;
  Rational upper;
};
Extent clipped_extent(const OpenBox& box, std::size_t axis);

// True iff the two represented sets share a point. Throws InputError on a
// dimension mismatch.
bool boxes_intersect(const OpenBox& a, const OpenBox& b);

// Sorted adjacency lists of the intersection graph of the boxes (no self
// loops). Sweeps along axis 0 over precomputed clipped extents.
std::vector<std::vector<std::size_t>> intersection_adjacency(
    std::span<const OpenBox> boxes);

// True iff all the represented sets share a common point.
bool boxes_have_common_point(std::span<const OpenBox> boxes);

bool box_meets_face(const OpenBox& box, const Face& face);

// Membership of a point of the cube in the represented set.
bool box_contains(const OpenBox& box, const Point& x);

struct CoverageResult {
  bool covered = false;
  std::optional<Point> gap_witness;
};

// Exact union test over the arrangement of clipped box endpoints.
CoverageResult validate_boxes(std::span<const OpenBox> boxes,
                              std::size_t dimension);
CoverageResult validate_cover(const WeightedCover& cover);

// Some single set meets both F_k and F_k' for some axis k.
bool is_spanning(const WeightedCover& cover);

}  // namespace lvi
