#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvi/chains.hpp"
#include "lvi/cover.hpp"
#include "lvi/nerve.hpp"

namespace lvi {

// Rectangle proxies R_i = prod_k [d_k(i), d_k(i) + w_k(i)], where d_k(i) is 0
// when U_i meets F_k and dist_{w_k}(F_k, U_i) otherwise.
struct ProxyAssignment {
  std::size_t dimension = 0;
  std::vector<std::vector<Rational>> offset;  // d_k(i), indexed [i][k]
  std::vector<std::vector<Rational>> width;   // w_k(i)
  std::vector<std::vector<bool>> meets_low;   // U_i meets F_k

  std::size_t size() const { return offset.size(); }
  Extent interval(std::size_t i, std::size_t k) const {
    return {offset[i][k], offset[i][k] + width[i][k]};
  }
  bool rectangle_contains(std::size_t i, const Point& y) const;
};

// A family of sets whose boxes meet but whose proxy intervals on `axis` do
// not. Never produced by a correct implementation.
struct ClaimViolation {
  std::vector<std::size_t> sets;
  std::size_t axis = 0;
};

// Computes the proxies. Intersecting pairs and all maximal nerve simplices
// are checked to have intersecting rectangles; a failure throws
// InvariantViolation naming the offending sets.
ProxyAssignment build_proxies(const WeightedCover& cover);
ProxyAssignment build_proxies(const WeightedCover& cover,
                              const ChainGraph& graph,
                              const NerveComplex& nerve);

std::optional<ClaimViolation> find_claim_violation(const ProxyAssignment& pa,
                                                   const NerveComplex& nerve);

// z_p for p = bc(e_i : i in simplex). Per axis, with [a_k, b_k] the common
// part of the proxy intervals: a_k when every set meets F_k, otherwise b_k.
Point vertex_image(const ProxyAssignment& pa,
                   std::span<const std::size_t> simplex);

// f = psi o phi, evaluated exactly. Throws InvariantViolation if f(x) falls
// outside R_{i_0} for the leading set i_0 of the subdivision simplex.
class CubeMap {
 public:
  CubeMap(const WeightedCover& cover, ProxyAssignment proxies,
          NerveComplex nerve);
  explicit CubeMap(const WeightedCover& cover);

  Point operator()(const Point& x) const;
  const ProxyAssignment& proxies() const { return proxies_; }
  const NerveComplex& nerve() const { return nerve_; }
  const WeightedCover& cover() const { return *cover_; }

 private:
  const WeightedCover* cover_;
  ProxyAssignment proxies_;
  NerveComplex nerve_;
};

Point evaluate_f(const WeightedCover& cover, const ProxyAssignment& pa,
                 const Point& x);

struct BoundaryViolation {
  Face face;
  Point x;
  Rational value;  // pi_k(f(x))
};

struct BoundaryReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::vector<BoundaryViolation> witnesses;  // first few only
  bool passed() const { return violations == 0; }
};

// Exact check of pi_k(f(x)) = 0 on F_k and pi_k(f(x)) >= d_k on F_k' over a
// rational grid of at least samples_per_face points on every face.
BoundaryReport boundary_check(const CubeMap& f,
                              std::span<const Rational> distances,
                              std::size_t samples_per_face);

enum class SurjectivityStatus { kPass, kFail, kInconclusive, kVacuous };
std::string to_string(SurjectivityStatus status);

struct SurjectivityReport {
  SurjectivityStatus status = SurjectivityStatus::kVacuous;
  std::string method;            // "winding", "interval-scan", "grid-proximity"
  std::size_t grid_points = 0;   // R-grid points tested
  std::size_t covered_points = 0;
  std::size_t evaluations = 0;   // evaluations of f
  std::size_t loop_vertices = 0;
  std::vector<Point> uncovered;  // first few failures
  double coverage() const {
    return grid_points == 0 ? 1.0
                            : static_cast<double>(covered_points) / grid_points;
  }
};

// Numerical evidence that R = prod_k [0, d_k] lies in f([0,1]^n).
//   n = 1: every grid point of [0, d] is bracketed by consecutive samples.
//   n = 2: winding number of the image of the boundary loop around each
//          interior grid point of R (pitch max d / resolution); the loop is
//          refined until consecutive images are closer than
//          max d / (4 resolution) in L-infinity.
//   n >= 3: share of R-grid points within one pitch of f(cube grid).
SurjectivityReport surjectivity_sample(const CubeMap& f,
                                       std::span<const Rational> distances,
                                       std::size_t resolution,
                                       std::size_t evaluation_budget = 200000);

struct CertifyOptions {
  bool certify = false;
  std::size_t samples_per_face = 33;
  std::size_t resolution = 16;
  std::size_t evaluation_budget = 200000;
};

struct LVCertificate {
  std::size_t dimension = 0;
  std::size_t sets = 0;
  Rational volume;                  // sum_i prod_k w_k(i)
  std::vector<Rational> distances;  // d_k
  Rational distance_product;
  Rational slack;                   // volume - distance_product
  bool inequality_holds = false;
  bool spanning = false;
  // "certified", "not-requested", "skipped-spanning" or "degenerate".
  std::string map_status = "not-requested";
  std::size_t claim_pairs_checked = 0;
  std::size_t claim_simplices_checked = 0;
  std::optional<BoundaryReport> boundary;
  std::optional<SurjectivityReport> surjectivity;
};

// Requires a cover that passed validate_cover.
LVCertificate verify_lv(const WeightedCover& cover,
                        const CertifyOptions& options = {});

Rational cover_volume(const WeightedCover& cover);

}  // namespace lvi
