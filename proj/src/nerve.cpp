#include "lvi/nerve.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "lvi/error.hpp"

namespace lvi {

NerveComplex NerveComplex::build(const WeightedCover& cover) {
  NerveComplex nerve;
  const std::size_t m = cover.size();
  nerve.adjacency_.assign(m, std::vector<bool>(m, false));
  const auto lists = intersection_adjacency(cover.sets);
  for (std::size_t i = 0; i < m; ++i) {
    nerve.adjacency_[i][i] = true;
    for (std::size_t j : lists[i]) nerve.adjacency_[i][j] = true;
  }

  // Bron-Kerbosch with pivoting.
  std::function<void(std::vector<std::size_t>&, std::vector<std::size_t>,
                     std::vector<std::size_t>)>
      expand = [&](std::vector<std::size_t>& clique,
                   std::vector<std::size_t> candidates,
                   std::vector<std::size_t> excluded) {
        if (candidates.empty() && excluded.empty()) {
          std::vector<std::size_t> found = clique;
          std::sort(found.begin(), found.end());
          nerve.maximal_.push_back(std::move(found));
          return;
        }
        std::size_t pivot = candidates.empty() ? excluded.front()
                                               : candidates.front();
        std::size_t best = 0;
        for (const auto* pool : {&candidates, &excluded}) {
          for (std::size_t u : *pool) {
            std::size_t c = 0;
            for (std::size_t v : candidates) c += (u != v && nerve.adjacency_[u][v]);
            if (c > best) best = c, pivot = u;
          }
        }
        std::vector<std::size_t> branch;
        for (std::size_t v : candidates) {
          if (v == pivot || !nerve.adjacency_[pivot][v]) branch.push_back(v);
        }
        for (std::size_t v : branch) {
          std::vector<std::size_t> next_candidates, next_excluded;
          for (std::size_t u : candidates) {
            if (u != v && nerve.adjacency_[v][u]) next_candidates.push_back(u);
          }
          for (std::size_t u : excluded) {
            if (u != v && nerve.adjacency_[v][u]) next_excluded.push_back(u);
          }
          clique.push_back(v);
          expand(clique, std::move(next_candidates), std::move(next_excluded));
          clique.pop_back();
          candidates.erase(std::find(candidates.begin(), candidates.end(), v));
          excluded.push_back(v);
        }
      };
  std::vector<std::size_t> all(m), clique;
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  if (m > 0) expand(clique, all, {});
  std::sort(nerve.maximal_.begin(), nerve.maximal_.end());
  return nerve;
}

bool NerveComplex::is_simplex(std::span<const std::size_t> vertices) const {
  if (vertices.empty()) return false;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    if (vertices[a] >= vertex_count()) return false;
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (!adjacency_[vertices[a]][vertices[b]]) return false;
    }
  }
  return true;
}

std::vector<std::size_t> NerveComplex::simplex_counts() const {
  std::vector<std::size_t> counts;
  // Each clique is generated once, by extending with larger indices only.
  std::function<void(std::size_t, std::vector<std::size_t>&)> grow =
      [&](std::size_t depth, std::vector<std::size_t>& clique) {
        if (counts.size() <= depth) counts.resize(depth + 1, 0);
        ++counts[depth];
        for (std::size_t v = clique.back() + 1; v < vertex_count(); ++v) {
          bool ok = true;
          for (std::size_t u : clique) ok = ok && adjacency_[u][v];
          if (!ok) continue;
          clique.push_back(v);
          grow(depth + 1, clique);
          clique.pop_back();
        }
      };
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    std::vector<std::size_t> clique{v};
    grow(0, clique);
  }
  return counts;
}

Rational distance_to_complement(const OpenBox& box, const Point& x) {
  Rational best(1);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (box.lo[k] >= 0) best = std::min(best, x[k] - box.lo[k]);
    if (box.hi[k] <= 1) best = std::min(best, box.hi[k] - x[k]);
  }
  return std::max(best, Rational(0));
}

SparseVector evaluate_phi(const WeightedCover& cover, const Point& x) {
  if (x.size() != cover.dimension) {
    throw InputError("evaluate_phi: point has the wrong dimension");
  }
  for (const Rational& v : x) {
    if (v < 0 || v > 1) throw InputError("evaluate_phi: point outside the cube");
  }
  SparseVector f;
  Rational total(0);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    Rational fi = distance_to_complement(cover.sets[i], x);
    if (fi > 0) {
      total += fi;
      f.emplace_back(i, std::move(fi));
    }
  }
  if (total == 0) {
    throw InvariantViolation("evaluate_phi: no set contains the point");
  }
  for (auto& entry : f) entry.second /= total;
  return f;
}

std::vector<Rational> subdivision_coefficients(
    const SparseVector& phi, std::span<const std::size_t> order) {
  std::map<std::size_t, Rational> value(phi.begin(), phi.end());
  if (order.size() != value.size()) {
    throw InputError("order does not list the support");
  }
  std::vector<Rational> lambda;
  for (std::size_t i : order) {
    auto it = value.find(i);
    if (it == value.end()) throw InputError("order lists a non-support index");
    lambda.push_back(it->second);
  }
  std::vector<Rational> mu(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    Rational next = j + 1 < lambda.size() ? lambda[j + 1] : Rational(0);
    if (next > lambda[j]) throw InputError("order is not non-increasing");
    mu[j] = Rational(static_cast<long long>(j + 1)) * (lambda[j] - next);
  }
  return mu;
}

SubdivisionLocation locate_in_subdivision(const SparseVector& phi,
                                          const NerveComplex* nerve) {
  if (phi.empty()) throw InputError("locate_in_subdivision: empty support");
  SparseVector sorted = phi;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  SubdivisionLocation loc;
  for (const auto& entry : sorted) loc.order.push_back(entry.first);
  if (nerve && !nerve->is_simplex(loc.order)) {
    throw InvariantViolation("support of phi is not a simplex of the nerve");
  }
  loc.mu = subdivision_coefficients(phi, loc.order);
  return loc;
}

SparseVector subdivision_point(std::span<const std::size_t> order,
                               std::span<const Rational> mu) {
  std::map<std::size_t, Rational> acc;
  for (std::size_t j = 0; j < order.size(); ++j) {
    Rational share = mu[j] / Rational(static_cast<long long>(j + 1));
    for (std::size_t t = 0; t <= j; ++t) acc[order[t]] += share;
  }
  SparseVector out;
  for (auto& [i, v] : acc) {
    if (v != 0) out.emplace_back(i, v);
  }
  return out;
}

}  // namespace lvi
