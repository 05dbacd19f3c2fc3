#include "lvi/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "lvi/cover_io.hpp"
#include "lvi/error.hpp"

namespace lvi {

namespace {

double number_from_json(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  return to_double(rational_from_json(v));
}

bool close(double a, double b) {
  return std::abs(a - b) <= kMetricTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Norm parse_norm(const std::string& name) {
  if (name == "linf" || name == "inf") return Norm::kLInf;
  if (name == "l2" || name == "euclidean") return Norm::kL2;
  if (name == "l1") return Norm::kL1;
  throw InputError("unknown norm '" + name + "' (linf, l2, l1)");
}

std::string to_string(Norm norm) {
  switch (norm) {
    case Norm::kLInf: return "linf";
    case Norm::kL2: return "l2";
    case Norm::kL1: return "l1";
  }
  return "linf";
}

FiniteMetricSpace::FiniteMetricSpace(std::size_t size, Distance distance,
                                     std::vector<long long> ids)
    : size_(size), distance_(std::move(distance)), ids_(std::move(ids)) {
  if (!ids_.empty() && ids_.size() != size_) {
    throw InputError("metric space: one id per point is required");
  }
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(
    std::vector<std::vector<double>> matrix, std::vector<long long> ids) {
  const std::size_t m = matrix.size();
  for (const auto& row : matrix) {
    if (row.size() != m) throw InputError("distance matrix must be square");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (matrix[i][i] != 0) throw InputError("distance matrix needs a zero diagonal");
  }
  auto data = std::make_shared<const std::vector<std::vector<double>>>(std::move(matrix));
  return FiniteMetricSpace(
      m, [data](std::size_t i, std::size_t j) { return (*data)[i][j]; },
      std::move(ids));
}

FiniteMetricSpace FiniteMetricSpace::from_points(
    std::vector<std::vector<double>> points, Norm norm) {
  const std::size_t m = points.size();
  for (const auto& p : points) {
    if (p.size() != (m ? points[0].size() : 0)) {
      throw InputError("coordinates must share one dimension");
    }
  }
  auto data = std::make_shared<const std::vector<std::vector<double>>>(std::move(points));
  return FiniteMetricSpace(m, [data, norm](std::size_t i, std::size_t j) {
    const auto& a = (*data)[i];
    const auto& b = (*data)[j];
    double r = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double d = std::abs(a[k] - b[k]);
      switch (norm) {
        case Norm::kLInf: r = std::max(r, d); break;
        case Norm::kL2: r += d * d; break;
        case Norm::kL1: r += d; break;
      }
    }
    return norm == Norm::kL2 ? std::sqrt(r) : r;
  });
}

FiniteMetricSpace FiniteMetricSpace::from_edges(
    std::size_t size,
    const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(size, std::vector<double>(size, inf));
  for (std::size_t i = 0; i < size; ++i) d[i][i] = 0;
  for (auto [a, b, w] : edges) {
    if (a >= size || b >= size) throw InputError("edge endpoint out of range");
    if (!(w >= 0)) throw InputError("edge weights must be non-negative");
    d[a][b] = d[b][a] = std::min(d[a][b], w);
  }
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  for (const auto& row : d) {
    for (double v : row) {
      if (v == inf) throw InputError("edge list is not connected");
    }
  }
  return from_matrix(std::move(d));
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  std::vector<std::vector<double>> out(size_, std::vector<double>(size_));
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

std::optional<MetricViolation> find_metric_violation(
    const FiniteMetricSpace& s, bool allow_zero_distance, bool force_triangle) {
  const std::size_t m = s.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double a = s(i, j), b = s(j, i);
      if (!(a >= 0) || !(b >= 0)) return MetricViolation{"non-negativity", {i, j}};
      if (!close(a, b)) return MetricViolation{"symmetry", {i, j}};
      if (!allow_zero_distance && a == 0) return MetricViolation{"identity", {i, j}};
    }
  }
  if (m > kTriangleCheckLimit && !force_triangle) return std::nullopt;
  const auto d = s.matrix();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        const double via = d[i][k] + d[k][j];
        if (d[i][j] > via && !close(d[i][j], via)) {
          return MetricViolation{"triangle", {i, j, k}};
        }
      }
    }
  }
  return std::nullopt;
}

FiniteMetricSpace metric_from_json(const nlohmann::json& doc,
                                   bool allow_zero_distance) {
  try {
    if (doc.value("kind", "metric") != "metric") {
      throw InputError("expected \"kind\": \"metric\"");
    }
    std::optional<FiniteMetricSpace> space;
    if (doc.contains("matrix")) {
      std::vector<std::vector<double>> m;
      for (const auto& row : doc.at("matrix")) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(number_from_json(v));
        m.push_back(std::move(r));
      }
      std::vector<long long> ids;
      if (doc.contains("ids")) ids = doc.at("ids").get<std::vector<long long>>();
      space = FiniteMetricSpace::from_matrix(std::move(m), std::move(ids));
    } else if (doc.contains("edges")) {
      std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
      for (const auto& e : doc.at("edges")) {
        const auto a = e.at(0).get<std::size_t>(), b = e.at(1).get<std::size_t>();
        if (a == 0 || b == 0) throw InputError("edge endpoints are 1-based");
        edges.emplace_back(a - 1, b - 1, number_from_json(e.at(2)));
      }
      space = FiniteMetricSpace::from_edges(doc.at("size").get<std::size_t>(), edges);
    } else if (doc.contains("coordinates")) {
      std::vector<std::vector<double>> pts;
      for (const auto& p : doc.at("coordinates")) {
        std::vector<double> c;
        for (const auto& v : p) c.push_back(number_from_json(v));
        pts.push_back(std::move(c));
      }
      space = FiniteMetricSpace::from_points(std::move(pts),
                                             parse_norm(doc.value("norm", "linf")));
    } else {
      throw InputError("metric file needs \"matrix\", \"edges\" or \"coordinates\"");
    }
    if (auto v = find_metric_violation(*space, allow_zero_distance)) {
      std::string where;
      for (auto p : v->points) where += " " + std::to_string(p + 1);
      throw InputError("metric axiom violated (" + v->axiom + ") at points" + where);
    }
    return *space;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("metric file: ") + e.what());
  }
}

nlohmann::json metric_to_json(const FiniteMetricSpace& space) {
  nlohmann::json ids = nlohmann::json::array();
  for (std::size_t i = 0; i < space.size(); ++i) ids.push_back(space.id(i));
  return {{"kind", "metric"}, {"ids", ids}, {"matrix", space.matrix()}};
}

}  // namespace lvi
