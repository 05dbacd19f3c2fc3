#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvi/cover.hpp"

namespace lvi {

// Cover of the standard simplex {lambda in R^{n+1} : lambda >= 0, sum = 1}.
// Each set is the part of the simplex inside an open box in barycentric
// coordinates; sides below 0 are read as reaching the face lambda_k = 0.
// Face T_k is {lambda_k = 0}, k = 0..n.
struct SimplexCover {
  std::size_t dimension = 0;  // n
  std::vector<OpenBox> sets;  // n + 1 coordinates each
  std::vector<Rational> weights;
  std::vector<long long> ids;

  std::size_t size() const { return sets.size(); }
};

// Throws InputError on a malformed cover (dimensions, negative weights, empty
// sets).
void check_simplex_cover(const SimplexCover& cover);

bool simplex_region_nonempty(const OpenBox& box);
// The sets have a common point in the simplex.
bool simplex_sets_meet(std::span<const OpenBox> boxes);
bool simplex_set_meets_face(const OpenBox& box, std::size_t face);

// Tests every point c / resolution of the simplex (c integer). Returns an
// uncovered sample if there is one. A sampled check, not a proof.
std::optional<Point> simplex_coverage_gap(const SimplexCover& cover,
                                          std::size_t resolution);

inline constexpr std::size_t kSimplexSearchLimit = 20;

struct SimplexDiameter {
  Rational value;
  std::vector<std::size_t> witness;  // an optimal sub-collection
};

// Minimal total weight of a sub-collection containing, for every pair of
// faces, a chain joining them. Exact branch and bound; InputError above
// kSimplexSearchLimit sets or when no sub-collection qualifies.
SimplexDiameter simplex_diameter(const SimplexCover& cover);

struct SimplexBounds {
  SimplexDiameter diameter;
  Rational power_sum;  // sum_i w(i)^n
  Rational volume_bound;  // d^n / n!
  bool volume_bound_holds = false;
  bool unit_weights = false;
  // C(n + d - 1, n) when every weight is 1.
  std::optional<Integer> count_required;
  bool count_bound_holds = true;
  std::size_t coverage_resolution = 0;
  std::optional<Point> coverage_gap;
};

SimplexBounds verify_simplex_bounds(const SimplexCover& cover,
                                    std::size_t coverage_resolution = 24);

// Sets indexed by c in Z^{n+1}, c >= 0, with m - n <= sum c <= m: the box
// prod_k (c_k/m - 1/(4m), (c_k+1)/m + 1/(4m)). Unit weights.
SimplexCover simplex_patch(std::size_t n, std::size_t m);

// {"kind": "simplex", "dimension": n,
//  "sets": [{"id": 1, "lo": [...], "hi": [...], "weight": "1"}, ...]}
SimplexCover simplex_cover_from_json(const nlohmann::json& doc);
nlohmann::json simplex_cover_to_json(const SimplexCover& cover);
nlohmann::json simplex_bounds_to_json(const SimplexBounds& bounds,
                                      const SimplexCover& cover);

}  // namespace lvi
