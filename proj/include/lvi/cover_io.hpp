#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "lvi/cover.hpp"

namespace lvi {

// Cover files:
//   {"dimension": n,
//    "sets": [{"id": 1, "lo": ["-1/10", ...], "hi": [...],
//              "weights": [["w_1", ..., "w_n"]]}, ...]}
// Rationals are strings ("p/q" or exact decimals) or JSON integers. A weight
// table may be a single value or a one-entry row (replicated on every axis),
// a row of n values, or n rows of one value each.
WeightedCover cover_from_json(const nlohmann::json& doc);
nlohmann::json cover_to_json(const WeightedCover& cover);

WeightedCover load_cover(const std::filesystem::path& path);
void save_cover(const WeightedCover& cover, const std::filesystem::path& path);

Rational rational_from_json(const nlohmann::json& value);
nlohmann::json rational_to_json(const Rational& value);
nlohmann::json point_to_json(const Point& point);

// External label for set i (ids when present, else i + 1).
long long set_label(const WeightedCover& cover, std::size_t i);

}  // namespace lvi
