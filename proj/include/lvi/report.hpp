#pragma once

#include <nlohmann/json.hpp>

#include "lvi/chains.hpp"
#include "lvi/derrick.hpp"
#include "lvi/nerve.hpp"
#include "lvi/reduction.hpp"

namespace lvi {

// JSON forms of the certificates. Rationals are exact strings; a few fields
// carry a double twin for plotting.
nlohmann::json to_json(const BoundaryReport& report);
nlohmann::json to_json(const SurjectivityReport& report);
nlohmann::json to_json(const LVCertificate& cert);
nlohmann::json to_json(const SpanningReduction& r, const WeightedCover& cover);
nlohmann::json chain_path_to_json(const std::optional<ChainPath>& path,
                                  const WeightedCover& cover);
nlohmann::json nerve_to_json(const NerveComplex& nerve, const WeightedCover& cover);

}  // namespace lvi
