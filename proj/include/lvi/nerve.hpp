#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lvi/cover.hpp"

namespace lvi {

// Nerve of a box cover. For boxes, a family has a common point iff it
// pairwise intersects (intervals are Helly on each axis), so simplices are
// exactly the cliques of the intersection graph.
class NerveComplex {
 public:
  static NerveComplex build(const WeightedCover& cover);

  std::size_t vertex_count() const { return adjacency_.size(); }
  bool adjacent(std::size_t i, std::size_t j) const {
    return adjacency_[i][j];
  }
  bool is_simplex(std::span<const std::size_t> vertices) const;

  // Maximal simplices, each sorted ascending, listed in lexicographic order.
  const std::vector<std::vector<std::size_t>>& maximal_simplices() const {
    return maximal_;
  }
  // counts[d] = number of d-dimensional simplices.
  std::vector<std::size_t> simplex_counts() const;

 private:
  std::vector<std::vector<bool>> adjacency_;
  std::vector<std::vector<std::size_t>> maximal_;
};

// Sparse vector over cover indices, sorted by index, zero entries omitted.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

// L-infinity distance from x to the part of the cube outside the box, i.e.
// min over sides of (x_k - lo_k) and (hi_k - x_k), skipping sides that lie
// beyond the cube. Clamped to [0, 1]; a box containing the whole cube gives 1.
Rational distance_to_complement(const OpenBox& box, const Point& x);

// phi_i(x) = f_i(x) / sum_j f_j(x) with f_i = distance_to_complement. The
// support is exactly the set of boxes containing x. Throws
// InvariantViolation if no box contains x.
SparseVector evaluate_phi(const WeightedCover& cover, const Point& x);

// Position of a nerve point inside the first barycentric subdivision: the
// vertex order sigma (descending coordinate, ties by ascending index) and
// coefficients mu_j of p_j = bc(e_order[0], ..., e_order[j]).
struct SubdivisionLocation {
  std::vector<std::size_t> order;
  std::vector<Rational> mu;
};

// When a nerve is supplied, throws InvariantViolation if the support of phi
// is not one of its simplices.
SubdivisionLocation locate_in_subdivision(const SparseVector& phi,
                                          const NerveComplex* nerve = nullptr);

// mu for an explicitly chosen order, which must list the support with
// non-increasing coordinates (any order of tied entries is admissible).
std::vector<Rational> subdivision_coefficients(
    const SparseVector& phi, std::span<const std::size_t> order);

// sum_j mu_j * bc(order[0..j]) as a sparse vector.
SparseVector subdivision_point(std::span<const std::size_t> order,
                               std::span<const Rational> mu);

}  // namespace lvi
