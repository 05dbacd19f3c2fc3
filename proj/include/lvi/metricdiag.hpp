#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvi/content.hpp"
#include "lvi/metric_space.hpp"

namespace lvi {

// Relative slack used when comparing a double distance against a threshold
// (d <= delta, d < r, ...). Absorbs rounding in powered or summed distances.
inline constexpr double kDistanceSlack = 1e-9;

// Points joined when d(x, y) <= delta.
class DeltaGraph {
 public:
  DeltaGraph(const FiniteMetricSpace& space, double delta);

  const FiniteMetricSpace& space() const { return *space_; }
  double delta() const { return delta_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const {
    return adjacency_[i];
  }
  std::size_t edge_count() const;

  // Component labels of the subgraph induced by `member`, -1 outside.
  std::vector<long> components(const std::vector<bool>& member) const;
  // Minimal hop count, nullopt when unreachable.
  std::optional<std::size_t> hops(std::size_t from, std::size_t to) const;

 private:
  const FiniteMetricSpace* space_;
  double delta_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

struct DoublingEstimate {
  std::size_t value = 1;
  std::size_t center = 0;  // worst ball
  double radius = 0;
  std::size_t balls_checked = 0;
};

// Max over centers and radii of a greedy cover count of the open ball
// B(p, r) by open balls of radius r/2 centred anywhere in the space. An
// upper bound for the best count on each ball. Empty `radii` means halving
// from diam down to the smallest positive distance.
DoublingEstimate doubling_estimate(const FiniteMetricSpace& space,
                                   std::vector<double> radii = {});

enum class Connectivity { kLLC1, kLLC2, kALC };
Connectivity parse_connectivity(const std::string& name);
std::string to_string(Connectivity property);

enum class Verdict { kPass, kFail, kInconclusive };
std::string to_string(Verdict verdict);

struct ConnectivityWitness {
  std::size_t center = 0;
  double radius = 0;
  std::size_t x = 0;
  std::size_t y = 0;
};

struct LLCOptions {
  std::vector<std::size_t> centers;  // empty: all points, strided by budget
  std::vector<double> radii;         // empty: diam * 2^-j down to delta
  std::size_t sample_budget = 20000;  // (center, radius) evaluations
  std::size_t witness_limit = 16;
};

struct ConnectivityReport {
  Connectivity property = Connectivity::kLLC1;
  double lambda = 1;
  double delta = 0;
  Verdict verdict = Verdict::kPass;
  bool space_connected = true;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;
  std::vector<double> radii;
  std::vector<ConnectivityWitness> witnesses;
};

// For each sampled (p, r), the source region (B(p,r), X \ B(p,r), or
// A(p,r,2r)) must lie in one component of the delta-graph restricted to the
// target region (B(p,lr), X \ B(p,r/l), or A(p,r/l,2lr)). A disconnected
// pair where some source point has no neighbour in the target counts as
// inconclusive. ALC also requires the whole delta-graph to be connected.
ConnectivityReport check_llc(const FiniteMetricSpace& space,
                             Connectivity property, double lambda,
                             double delta, const LLCOptions& options = {});

std::optional<std::size_t> delta_path_length(const FiniteMetricSpace& space,
                                             std::size_t x, std::size_t y,
                                             double delta);

// d -> d^alpha for alpha in (0, 1]; InputError otherwise.
FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double alpha);

struct ComparisonReport {
  double tightest = 1;  // smallest C with C^-1 d^e <= rho <= C d^e
  double tolerance = 1;
  bool holds = true;
  std::size_t pairs = 0;
  std::size_t worst_x = 0;
  std::size_t worst_y = 0;
};

ComparisonReport check_comparison(const FiniteMetricSpace& d,
                                  const FiniteMetricSpace& rho,
                                  double exponent, double tolerance);

struct FatSquareReport {
  bool holds = false;
  bool inside_ball = false;
  double radius = 0;      // r, or d(x, y) for the connecting variant
  double ball_radius = 0;  // r, or lambda d(x, y)
  double max_distance = 0;  // sup over the image of d(x, .)
  std::vector<double> face_distances;
  double required = 0;  // r / lambda
  std::vector<bool> face_ok;
  // Connecting variant only.
  std::optional<std::size_t> target;
  bool start_face_ok = true;
  bool end_face_ok = true;
  double max_step = 0;  // largest jump between grid neighbours
};

// Fat square: g(grid) in B(x, r) and dist(g(F_k), g(F_k')) >= r / lambda.
FatSquareReport check_fat_square(const FiniteMetricSpace& space,
                                 const CubeImage& image, std::size_t x,
                                 double r, double lambda);
// Connecting variant for the pair x, y.
FatSquareReport check_fat_connecting_square(const FiniteMetricSpace& space,
                                            const CubeImage& image,
                                            std::size_t x, std::size_t y,
                                            double lambda);

// Geodesic metric on m equally spaced points of the unit circle.
FiniteMetricSpace circle_space(std::size_t points);
// m equally spaced points of [0, 1] with d = |s - t|^alpha.
FiniteMetricSpace snowflaked_line(std::size_t points, double alpha);

// Two k x k unit-spaced grids in the plane (Euclidean) joined by a path of
// `neck_length` unit steps between their facing sides.
struct ThinNeck {
  FiniteMetricSpace space;
  std::vector<std::vector<double>> coordinates;
  std::size_t neck_middle = 0;
  double spacing = 1;
};
ThinNeck thin_neck(std::size_t cluster_size, std::size_t neck_length);

nlohmann::json to_json(const DoublingEstimate& estimate,
                       const FiniteMetricSpace& space);
nlohmann::json to_json(const ConnectivityReport& report,
                       const FiniteMetricSpace& space);
nlohmann::json to_json(const ComparisonReport& report,
                       const FiniteMetricSpace& space);
nlohmann::json to_json(const FatSquareReport& report,
                       const FiniteMetricSpace& space);

}  // namespace lvi
