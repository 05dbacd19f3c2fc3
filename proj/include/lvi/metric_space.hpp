#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

namespace lvi {

enum class Norm { kLInf, kL2, kL1 };
Norm parse_norm(const std::string& name);
std::string to_string(Norm norm);

// Finite (pseudo)metric space with double distances. Backed by a distance
// function so large sampled spaces need no stored matrix.
class FiniteMetricSpace {
 public:
  using Distance = std::function<double(std::size_t, std::size_t)>;

  FiniteMetricSpace(std::size_t size, Distance distance,
                    std::vector<long long> ids = {});

  static FiniteMetricSpace from_matrix(std::vector<std::vector<double>> matrix,
                                       std::vector<long long> ids = {});
  static FiniteMetricSpace from_points(std::vector<std::vector<double>> points,
                                       Norm norm);
  // Shortest-path completion of a weighted graph; InputError if disconnected.
  static FiniteMetricSpace from_edges(
      std::size_t size,
      const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges);

  std::size_t size() const { return size_; }
  double operator()(std::size_t i, std::size_t j) const {
    return i == j ? 0.0 : distance_(i, j);
  }
  long long id(std::size_t i) const {
    return ids_.empty() ? static_cast<long long>(i + 1) : ids_[i];
  }
  const std::vector<long long>& ids() const { return ids_; }

  // Materialized distance matrix.
  std::vector<std::vector<double>> matrix() const;

 private:
  std::size_t size_;
  Distance distance_;
  std::vector<long long> ids_;
};

inline constexpr std::size_t kTriangleCheckLimit = 600;
inline constexpr double kMetricTolerance = 1e-9;

struct MetricViolation {
  std::string axiom;  // "symmetry", "non-negativity", "identity", "triangle"
  std::vector<std::size_t> points;
};

// Checks the (pseudo)metric axioms with a relative tolerance. The O(m^3)
// triangle check is skipped above kTriangleCheckLimit points unless forced.
std::optional<MetricViolation> find_metric_violation(
    const FiniteMetricSpace& space, bool allow_zero_distance,
    bool force_triangle = false);

// Metric file:
//   {"kind": "metric", "ids": [...], "matrix": [[...], ...]}
//   {"kind": "metric", "size": m, "edges": [[a, b, w], ...]}   (1-based)
//   {"kind": "metric", "coordinates": [[...], ...], "norm": "linf"}
// Distances are JSON numbers or rational strings.
FiniteMetricSpace metric_from_json(const nlohmann::json& doc,
                                   bool allow_zero_distance = false);
nlohmann::json metric_to_json(const FiniteMetricSpace& space);

}  // namespace lvi
