#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lvi/chains.hpp"
#include "lvi/cover.hpp"

namespace lvi {

// Smallest k/1000 whose square is at least n; a rational stand-in for sqrt(n).
Rational sqrt_upper_bound(std::size_t n);

// n * 3^(n-1).
Integer patch_constant(std::size_t n);

// Lebesgue number lower bound in L-infinity: every relative ball of this
// radius lies in some set. Evaluated on the half-cells of the endpoint
// arrangement; positive for every valid cover. Capped at 1.
Rational lebesgue_lower_bound(const WeightedCover& cover);

// Largest r such that every nonempty pairwise intersection contains a
// relative L-infinity ball of radius r. Capped at 1.
Rational intersection_margin(const WeightedCover& cover);

// Largest r such that every set meeting a face contains a relative ball of
// radius r centered on that face. Capped at 1.
Rational face_margin(const WeightedCover& cover);

// Open box minus closed box, both read relative to the unit cube, as a union
// of at most 2n open boxes. Returns {box} unchanged when they are disjoint.
std::vector<OpenBox> subtract_closed_box(const OpenBox& box,
                                         const std::vector<Rational>& lo,
                                         const std::vector<Rational>& hi);

struct ReductionOptions {
  // Patch weight = factor * eps. The construction as stated uses 1.
  Rational patch_weight_factor = 1;
};

struct SpanningReduction {
  std::size_t dimension = 0;
  Rational delta1, delta2, delta3, delta;
  std::string binding;  // "lebesgue", "intersection" or "face"
  Rational eps;
  Rational eps_bound;   // delta / (8 s_n); eps must be strictly below
  Rational sqrt_n;      // s_n

  // Shrunken sets in the original cube, one union of boxes per set.
  std::vector<std::vector<OpenBox>> shrunken;
  // Inflated sets and patch boxes, rescaled from [0, 1+eps]^n to [0, 1]^n.
  std::vector<std::vector<OpenBox>> inflated;
  std::vector<OpenBox> patches;
  std::vector<Point> patch_centers;  // unscaled, in [0, 1+eps]^n
  std::vector<std::vector<Rational>> weights;  // v_k on the inflated sets
  Rational patch_weight;

  std::vector<Rational> distances;          // d_k
  std::vector<Rational> reduced_distances;  // d~_k
  bool covered = false;
  bool non_spanning = false;
  bool distances_dominate = false;          // d_k <= d~_k for all k
  // Reduced chain of minimal length on the first axis where d~_k < d_k.
  std::optional<std::size_t> dominance_axis;
  std::vector<std::size_t> dominance_chain;  // indices: sets, then patches

  Rational volume;            // original
  Rational patch_volume;      // #J * patch_weight^n
  Rational reduced_volume;    // volume + patch_volume
  Rational inflation_bound;   // C_n * eps
  Integer patch_count_bound;  // floor(C_n * (1/eps)^(n-1))
  bool inflation_within_bound = false;
  bool reduced_inequality_holds = false;  // prod d~_k <= reduced_volume

  std::size_t empty_sets = 0;
  std::size_t patch_count() const { return patches.size(); }
  std::size_t set_count() const { return inflated.size() + patches.size(); }
};

// Throws InputError if eps is not in (0, eps_bound).
SpanningReduction reduce_spanning(const WeightedCover& cover,
                                  const Rational& eps,
                                  const ReductionOptions& options = {});

// Intersection graph of the reduced family (sets first, then patches).
ChainGraph reduced_graph(const SpanningReduction& r);

}  // namespace lvi
