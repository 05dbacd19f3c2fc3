#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "lvi/cover.hpp"

namespace lvi {

// Intersection graph of a cover with node weights (one per axis) and the
// face incidences that act as chain terminals. Also built for covers whose
// sets are not single boxes (unions of boxes, point sets in a metric space),
// hence the raw constructor.
class ChainGraph {
 public:
  ChainGraph(std::vector<std::vector<std::size_t>> adjacency,
             std::vector<std::vector<Rational>> weights,
             std::vector<std::vector<bool>> meets_low,
             std::vector<std::vector<bool>> meets_high);

  static ChainGraph from_cover(const WeightedCover& cover);

  std::size_t size() const { return adjacency_.size(); }
  std::size_t axes() const { return axes_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const {
    return adjacency_[i];
  }
  bool adjacent(std::size_t i, std::size_t j) const;
  const Rational& weight(std::size_t i, std::size_t axis) const {
    return weights_[i][axis];
  }
  bool meets(std::size_t i, const Face& face) const;

 private:
  std::size_t axes_ = 0;
  std::vector<std::vector<std::size_t>> adjacency_;  // sorted, no self loops
  std::vector<std::vector<Rational>> weights_;
  std::vector<std::vector<bool>> meets_low_;
  std::vector<std::vector<bool>> meets_high_;
};

struct SetId {
  std::size_t index = 0;
};
using Endpoint = std::variant<Face, SetId>;

struct ChainPath {
  Rational length;
  std::vector<std::size_t> chain;  // set indices; empty for the 0 convention
};

// Minimal axis-weighted length of a chain whose first set meets `source` and
// last set meets `target`. A set endpoint U_a is met by every set intersecting
// U_a (U_a included); the endpoint set itself is not charged unless it is a
// chain member. Face -> set with the set touching the face is 0 (empty chain).
std::optional<ChainPath> chain_distance(const ChainGraph& graph,
                                        std::size_t axis,
                                        const Endpoint& source,
                                        const Endpoint& target);

// Oracle: explicit enumeration of chains of at most max_len sets. Only chains
// without repeated sets are enumerated; with non-negative weights a repeat
// can be cut out without breaking the chain or lengthening it.
std::optional<ChainPath> brute_force_distance(const ChainGraph& graph,
                                              std::size_t axis,
                                              const Endpoint& source,
                                              const Endpoint& target,
                                              std::size_t max_len);

// dist(F_axis, U_i) for every set i, using the face -> set convention above.
// One shortest-path pass per call.
std::vector<std::optional<Rational>> distances_from_face(
    const ChainGraph& graph, std::size_t axis, const Face& face);

// d_k = dist_{w_k}(F_k, F_k') for every axis.
std::vector<Rational> face_distances(const ChainGraph& graph);
std::vector<Rational> face_distances(const WeightedCover& cover);

}  // namespace lvi
