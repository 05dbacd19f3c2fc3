#include "lvi/chains.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "lvi/error.hpp"

namespace lvi {

ChainGraph::ChainGraph(std::vector<std::vector<std::size_t>> adjacency,
                       std::vector<std::vector<Rational>> weights,
                       std::vector<std::vector<bool>> meets_low,
                       std::vector<std::vector<bool>> meets_high)
    : adjacency_(std::move(adjacency)),
      weights_(std::move(weights)),
      meets_low_(std::move(meets_low)),
      meets_high_(std::move(meets_high)) {
  const std::size_t m = adjacency_.size();
  if (weights_.size() != m || meets_low_.size() != m ||
      meets_high_.size() != m) {
    throw InputError("ChainGraph: inconsistent node counts");
  }
  axes_ = m == 0 ? 0 : weights_.front().size();
  for (std::size_t i = 0; i < m; ++i) {
    if (weights_[i].size() != axes_ || meets_low_[i].size() != axes_ ||
        meets_high_[i].size() != axes_) {
      throw InputError("ChainGraph: inconsistent axis counts");
    }
    auto& adj = adjacency_[i];
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    adj.erase(std::remove(adj.begin(), adj.end(), i), adj.end());
    for (std::size_t j : adj) {
      if (j >= m) throw InputError("ChainGraph: neighbor out of range");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j : adjacency_[i]) {
      if (!std::binary_search(adjacency_[j].begin(), adjacency_[j].end(), i)) {
        throw InputError("ChainGraph: adjacency is not symmetric");
      }
    }
  }
}

ChainGraph ChainGraph::from_cover(const WeightedCover& cover) {
  const std::size_t m = cover.size();
  const std::size_t n = cover.dimension;
  auto adjacency = intersection_adjacency(cover.sets);
  std::vector<std::vector<bool>> low(m, std::vector<bool>(n));
  std::vector<std::vector<bool>> high(m, std::vector<bool>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      low[i][k] = box_meets_face(cover.sets[i], Face::low(k));
      high[i][k] = box_meets_face(cover.sets[i], Face::high(k));
    }
  }
  return ChainGraph(std::move(adjacency), cover.weights, std::move(low),
                    std::move(high));
}

bool ChainGraph::adjacent(std::size_t i, std::size_t j) const {
  const auto& adj = adjacency_[i];
  return std::binary_search(adj.begin(), adj.end(), j);
}

bool ChainGraph::meets(std::size_t i, const Face& face) const {
  if (face.axis >= axes_) throw InputError("face axis out of range");
  return face.side == Side::kLow ? meets_low_[i][face.axis]
                                 : meets_high_[i][face.axis];
}

namespace {

// Sets that "meet" an endpoint: the face incidence, or the closed
// neighborhood of a set.
std::vector<bool> terminal_mask(const ChainGraph& g, const Endpoint& end) {
  std::vector<bool> mask(g.size(), false);
  if (const Face* face = std::get_if<Face>(&end)) {
    for (std::size_t i = 0; i < g.size(); ++i) mask[i] = g.meets(i, *face);
  } else {
    std::size_t a = std::get<SetId>(end).index;
    if (a >= g.size()) throw InputError("set id out of range");
    mask[a] = true;
    for (std::size_t j : g.neighbors(a)) mask[j] = true;
  }
  return mask;
}

bool empty_chain_applies(const ChainGraph& g, const Endpoint& source,
                         const Endpoint& target) {
  const Face* face = std::get_if<Face>(&source);
  const SetId* set = std::get_if<SetId>(&target);
  if (face && set) {
    if (set->index >= g.size()) throw InputError("set id out of range");
    return g.meets(set->index, *face);
  }
  return false;
}

void check_axis(const ChainGraph& g, std::size_t axis) {
  if (axis >= g.axes()) throw InputError("axis out of range");
}

struct Settled {
  std::vector<std::optional<Rational>> dist;  // chain length ending at node
  std::vector<std::size_t> parent;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Node-weighted Dijkstra: a chain's length includes every member, so a node's
// weight is charged on entry; sources start at their own weight.
Settled dijkstra(const ChainGraph& g, std::size_t axis,
                 const std::vector<bool>& sources) {
  Settled s{std::vector<std::optional<Rational>>(g.size()),
            std::vector<std::size_t>(g.size(), kNone)};
  using Item = std::pair<Rational, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (sources[i]) {
      s.dist[i] = g.weight(i, axis);
      queue.emplace(*s.dist[i], i);
    }
  }
  std::vector<bool> done(g.size(), false);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = true;
    for (std::size_t v : g.neighbors(u)) {
      Rational candidate = d + g.weight(v, axis);
      if (!s.dist[v] || candidate < *s.dist[v]) {
        s.dist[v] = candidate;
        s.parent[v] = u;
        queue.emplace(candidate, v);
      }
    }
  }
  return s;
}

std::vector<std::size_t> trace(const Settled& s, std::size_t end) {
  std::vector<std::size_t> chain;
  for (std::size_t v = end; v != kNone; v = s.parent[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

std::optional<ChainPath> chain_distance(const ChainGraph& graph,
                                        std::size_t axis,
                                        const Endpoint& source,
                                        const Endpoint& target) {
  check_axis(graph, axis);
  if (empty_chain_applies(graph, source, target)) {
    return ChainPath{Rational(0), {}};
  }
  const std::vector<bool> targets = terminal_mask(graph, target);
  const Settled s = dijkstra(graph, axis, terminal_mask(graph, source));
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (targets[i] && s.dist[i] && (!best || *s.dist[i] < *s.dist[*best])) {
      best = i;
    }
  }
  if (!best) return std::nullopt;
  return ChainPath{*s.dist[*best], trace(s, *best)};
}

std::optional<ChainPath> brute_force_distance(const ChainGraph& graph,
                                              std::size_t axis,
                                              const Endpoint& source,
                                              const Endpoint& target,
                                              std::size_t max_len) {
  check_axis(graph, axis);
  if (empty_chain_applies(graph, source, target)) {
    return ChainPath{Rational(0), {}};
  }
  const std::vector<bool> sources = terminal_mask(graph, source);
  const std::vector<bool> targets = terminal_mask(graph, target);
  std::optional<ChainPath> best;
  std::vector<std::size_t> chain;
  std::vector<bool> used(graph.size(), false);

  std::function<void(std::size_t, const Rational&)> extend =
      [&](std::size_t node, const Rational& length) {
        if (targets[node] && (!best || length < best->length)) {
          best = ChainPath{length, chain};
        }
        if (chain.size() == max_len) return;
        for (std::size_t next : graph.neighbors(node)) {
          if (used[next]) continue;
          used[next] = true;
          chain.push_back(next);
          extend(next, length + graph.weight(next, axis));
          chain.pop_back();
          used[next] = false;
        }
      };

  if (max_len == 0) return std::nullopt;
  for (std::size_t start = 0; start < graph.size(); ++start) {
    if (!sources[start]) continue;
    used[start] = true;
    chain.push_back(start);
    extend(start, graph.weight(start, axis));
    chain.pop_back();
    used[start] = false;
  }
  return best;
}

std::vector<std::optional<Rational>> distances_from_face(
    const ChainGraph& graph, std::size_t axis, const Face& face) {
  check_axis(graph, axis);
  std::vector<bool> sources(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) sources[i] = graph.meets(i, face);
  const Settled s = dijkstra(graph, axis, sources);
  std::vector<std::optional<Rational>> out(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (sources[i]) {
      out[i] = Rational(0);
      continue;
    }
    // The last chain set must intersect U_i; U_i itself qualifies but is
    // never cheaper than the neighbor it was reached from.
    std::optional<Rational> best = s.dist[i];
    for (std::size_t j : graph.neighbors(i)) {
      if (s.dist[j] && (!best || *s.dist[j] < *best)) best = s.dist[j];
    }
    out[i] = best;
  }
  return out;
}

std::vector<Rational> face_distances(const ChainGraph& graph) {
  std::vector<Rational> d;
  for (std::size_t k = 0; k < graph.axes(); ++k) {
    auto path = chain_distance(graph, k, Face::low(k), Face::high(k));
    if (!path) {
      throw InvariantViolation("faces of axis " + std::to_string(k + 1) +
                               " are not connected by any chain");
    }
    d.push_back(path->length);
  }
  return d;
}

std::vector<Rational> face_distances(const WeightedCover& cover) {
  return face_distances(ChainGraph::from_cover(cover));
}

}  // namespace lvi
