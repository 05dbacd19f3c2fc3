#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvi/cover.hpp"
#include "lvi/metric_space.hpp"

namespace lvi {

// A map from the grid {0, 1/r, ..., 1}^n into the points of a finite space.
// Grid points are indexed lexicographically with axis 0 varying fastest.
struct CubeImage {
  std::size_t dimension = 0;
  std::size_t resolution = 0;
  std::vector<std::size_t> table;  // grid index -> point index

  std::size_t grid_size() const { return table.size(); }
  std::vector<std::size_t> grid_coordinates(std::size_t index) const;
};

void check_image(const CubeImage& image, const FiniteMetricSpace& space);

// Image points of grid points on a face, sorted and deduplicated.
std::vector<std::size_t> face_image(const CubeImage& image, const Face& face);

struct SampledCube {
  FiniteMetricSpace space;
  CubeImage image;
};
// Grid points of [0,1]^n as a metric space under `norm`, with g = identity.
SampledCube identity_image(std::size_t n, std::size_t resolution, Norm norm);
// Every grid point sent to a single point.
SampledCube constant_image(std::size_t n, std::size_t resolution);

// min distance between two point sets.
double set_distance(const FiniteMetricSpace& space,
                    const std::vector<std::size_t>& a,
                    const std::vector<std::size_t>& b);

// prod_k dist(g(F_k), g(F_k')) for the sampled map.
double content_lower_bound(const FiniteMetricSpace& space,
                           const CubeImage& image);

struct ContentCoverSet {
  std::size_t center = 0;
  double radius = 0;
  std::size_t points = 0;  // points assigned to this set
  double diameter = 0;     // of the assigned points
};

struct ContentUpperBound {
  double value = 0;
  std::string mode;        // "greedy" or "exhaustive"
  bool approximate = false;  // budget ran out; rest covered by singletons
  std::size_t candidates = 0;
  std::size_t evaluations = 0;
  std::vector<ContentCoverSet> sets;
};

inline constexpr std::size_t kExhaustiveCandidateLimit = 12;

// Sum over a cover of the subset of (diam + floor)^Q. Candidate sets are
// closed balls centered at subset points with radii among the distances
// from the center. Greedy picks the smallest estimated (2r + floor)^Q per
// newly covered point, ties by radius then center; exhaustive search is used
// when there are at most kExhaustiveCandidateLimit candidates. `floor` is the
// sampling pitch of a sampled continuum and 0 for a genuinely finite space.
ContentUpperBound content_upper_bound(const FiniteMetricSpace& space,
                                      const std::vector<std::size_t>& subset,
                                      double q, double floor,
                                      std::size_t budget = 1000000);

struct ImageCoverReport {
  Rational volume;
  std::vector<Rational> distances;  // d_k(g)
  Rational distance_product;
  Rational slack;
  bool inequality_holds = false;
};

// Sets of point indices covering g(grid) with per-axis weights. Chains use
// shared points; a set meets g(F_k) when it contains one of its points.
// InputError if some image point is uncovered.
ImageCoverReport weighted_cover_bound(
    const CubeImage& image, const std::vector<std::vector<std::size_t>>& sets,
    const std::vector<std::vector<Rational>>& weights);

// Image points of the grid points inside each box.
std::vector<std::vector<std::size_t>> image_sets_from_cover(
    const CubeImage& image, const WeightedCover& cover);

struct Quotient {
  FiniteMetricSpace space;
  std::vector<std::size_t> projection;       // point -> class
  std::vector<std::vector<std::size_t>> classes;
};

// Identifies points at distance 0. InputError unless the input is a
// pseudometric; InvariantViolation if class distances depend on the chosen
// representatives.
Quotient pseudometric_quotient(const FiniteMetricSpace& space);

// {"kind": "cube_image", "dimension": n, "resolution": r, "table": [...]}
// with 1-based point indices.
CubeImage image_from_json(const nlohmann::json& doc);
nlohmann::json image_to_json(const CubeImage& image);

}  // namespace lvi
