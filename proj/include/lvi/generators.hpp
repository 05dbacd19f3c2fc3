#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvi/cover.hpp"

namespace lvi {

// All randomness comes from std::mt19937_64 seeded with one 64-bit value.
// Bounded draws use `draw`, so output does not depend on the standard
// library's distribution implementations.
using Rng = std::mt19937_64;
inline std::uint64_t draw(Rng& rng, std::uint64_t bound) { return rng() % bound; }

// 2^(jn) boxes of side 2^-j on the dyadic grid, grown by overlap/2 at
// interior edges and by overlap at the faces of the cube; weights 2^-j.
WeightedCover grid_cover(std::size_t j, std::size_t n, const Rational& overlap);

// Cover of [0,1] by the given intervals and weights.
WeightedCover line_cover(const std::vector<std::pair<Rational, Rational>>& intervals,
                         const std::vector<Rational>& weights);

// Jittered product partition on a 1/64 grid, each cell grown by at least
// min_overlap (interior edges by half of it), plus stray boxes shorter than
// the cube, until `count` sets. Weights are drawn from {1/8, ..., 1}.
// Every axis gets at least two cells when count >= 2^n, and then the cover
// is non-spanning.
WeightedCover random_boxes(std::size_t count, std::size_t n, std::uint64_t seed,
                           const Rational& min_overlap);

// Spanning cover: for n = 1 a single interval with weight 1; otherwise two
// slabs across axis 1, split along axis 2 at (-1/10, 4/5) and (1/5, 11/10),
// with weight 1 on axis 1 and 1/2 on the others.
WeightedCover spanning_demo(std::size_t n);

// Generator dispatcher used by the CLI and the suite. `params` holds
// {"kind": ..., parameters...}; returns the file document.
nlohmann::json generate(const nlohmann::json& params);

}  // namespace lvi
