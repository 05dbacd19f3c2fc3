#include "lvi/derrick.hpp"

#include <algorithm>
#include <sstream>

#include "lvi/error.hpp"

namespace lvi {

namespace {

std::string describe(const ClaimViolation& v) {
  std::ostringstream out;
  out << "proxy intervals on axis " << v.axis + 1 << " do not meet for sets {";
  for (std::size_t j = 0; j < v.sets.size(); ++j) {
    out << (j ? ", " : "") << v.sets[j] + 1;
  }
  out << "}";
  return out.str();
}

bool intervals_meet(const ProxyAssignment& pa,
                    std::span<const std::size_t> sets, std::size_t k) {
  Rational a = pa.offset[sets[0]][k];
  Rational b = pa.offset[sets[0]][k] + pa.width[sets[0]][k];
  for (std::size_t i : sets.subspan(1)) {
    a = std::max(a, pa.offset[i][k]);
    b = std::min(b, pa.offset[i][k] + pa.width[i][k]);
  }
  return a <= b;
}

}  // namespace

bool ProxyAssignment::rectangle_contains(std::size_t i, const Point& y) const {
  for (std::size_t k = 0; k < dimension; ++k) {
    if (y[k] < offset[i][k] || y[k] > offset[i][k] + width[i][k]) return false;
  }
  return true;
}

std::optional<ClaimViolation> find_claim_violation(const ProxyAssignment& pa,
                                                   const NerveComplex& nerve) {
  const std::size_t m = pa.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!nerve.adjacent(i, j)) continue;
      const std::size_t pair[] = {i, j};
      for (std::size_t k = 0; k < pa.dimension; ++k) {
        if (!intervals_meet(pa, pair, k)) return ClaimViolation{{i, j}, k};
      }
    }
  }
  for (const auto& simplex : nerve.maximal_simplices()) {
    for (std::size_t k = 0; k < pa.dimension; ++k) {
      if (!intervals_meet(pa, simplex, k)) return ClaimViolation{simplex, k};
    }
  }
  return std::nullopt;
}

ProxyAssignment build_proxies(const WeightedCover& cover,
                              const ChainGraph& graph,
                              const NerveComplex& nerve) {
  ProxyAssignment pa;
  pa.dimension = cover.dimension;
  const std::size_t m = cover.size();
  pa.offset.assign(m, std::vector<Rational>(cover.dimension));
  pa.width = cover.weights;
  pa.meets_low.assign(m, std::vector<bool>(cover.dimension));
  for (std::size_t k = 0; k < cover.dimension; ++k) {
    const auto dist = distances_from_face(graph, k, Face::low(k));
    for (std::size_t i = 0; i < m; ++i) {
      if (!dist[i]) {
        throw InvariantViolation("set " + std::to_string(i + 1) +
                                 " is not chained to the low face of axis " +
                                 std::to_string(k + 1));
      }
      pa.offset[i][k] = *dist[i];
      pa.meets_low[i][k] = graph.meets(i, Face::low(k));
    }
  }
  if (auto v = find_claim_violation(pa, nerve)) {
    throw InvariantViolation(describe(*v));
  }
  return pa;
}

ProxyAssignment build_proxies(const WeightedCover& cover) {
  return build_proxies(cover, ChainGraph::from_cover(cover),
                       NerveComplex::build(cover));
}

Point vertex_image(const ProxyAssignment& pa,
                   std::span<const std::size_t> simplex) {
  if (simplex.empty()) throw InputError("vertex_image: empty simplex");
  Point z(pa.dimension);
  for (std::size_t k = 0; k < pa.dimension; ++k) {
    Rational a = pa.offset[simplex[0]][k];
    Rational b = a + pa.width[simplex[0]][k];
    bool all_low = true;
    for (std::size_t i : simplex) {
      a = std::max(a, pa.offset[i][k]);
      b = std::min(b, pa.offset[i][k] + pa.width[i][k]);
      all_low = all_low && pa.meets_low[i][k];
    }
    if (a > b) {
      throw InvariantViolation(describe(
          {std::vector<std::size_t>(simplex.begin(), simplex.end()), k}));
    }
    z[k] = all_low ? a : b;
  }
  return z;
}

CubeMap::CubeMap(const WeightedCover& cover, ProxyAssignment proxies,
                 NerveComplex nerve)
    : cover_(&cover), proxies_(std::move(proxies)), nerve_(std::move(nerve)) {}

CubeMap::CubeMap(const WeightedCover& cover)
    : CubeMap(cover, build_proxies(cover), NerveComplex::build(cover)) {}

Point CubeMap::operator()(const Point& x) const {
  const auto phi = evaluate_phi(*cover_, x);
  const auto loc = locate_in_subdivision(phi, &nerve_);
  const std::size_t n = proxies_.dimension;
  Point y(n, Rational(0));
  // Vertex images of the nested prefixes, accumulated incrementally.
  std::vector<Rational> a(n), b(n);
  std::vector<bool> all_low(n, true);
  for (std::size_t j = 0; j < loc.order.size(); ++j) {
    const std::size_t i = loc.order[j];
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& lo = proxies_.offset[i][k];
      Rational hi = lo + proxies_.width[i][k];
      if (j == 0) {
        a[k] = lo;
        b[k] = std::move(hi);
      } else {
        a[k] = std::max(a[k], lo);
        b[k] = std::min(b[k], hi);
      }
      all_low[k] = all_low[k] && proxies_.meets_low[i][k];
    }
    if (loc.mu[j] == 0) continue;
    for (std::size_t k = 0; k < n; ++k) {
      y[k] += loc.mu[j] * (all_low[k] ? a[k] : b[k]);
    }
  }
  if (!proxies_.rectangle_contains(loc.order[0], y)) {
    throw InvariantViolation("f(x) left the proxy rectangle of set " +
                             std::to_string(loc.order[0] + 1));
  }
  return y;
}

Point evaluate_f(const WeightedCover& cover, const ProxyAssignment& pa,
                 const Point& x) {
  return CubeMap(cover, pa, NerveComplex::build(cover))(x);
}

Rational cover_volume(const WeightedCover& cover) {
  Rational total = 0;
  for (const auto& row : cover.weights) {
    Rational term = 1;
    for (const auto& w : row) term *= w;
    total += term;
  }
  return total;
}

}  // namespace lvi
