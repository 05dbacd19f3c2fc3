#include "lvi/content.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "lvi/chains.hpp"
#include "lvi/error.hpp"

namespace lvi {

namespace {

constexpr double kRadiusSlack = 1e-12;
constexpr std::size_t kExactDiameterLimit = 3000;

bool within(double d, double r) { return d <= r + kRadiusSlack * std::max(1.0, r); }

double diameter(const FiniteMetricSpace& s, const std::vector<std::size_t>& pts) {
  double d = 0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) d = std::max(d, s(pts[a], pts[b]));
  }
  return d;
}

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<std::size_t> CubeImage::grid_coordinates(std::size_t index) const {
  std::vector<std::size_t> c(dimension);
  for (std::size_t k = 0; k < dimension; ++k) {
    c[k] = index % (resolution + 1);
    index /= resolution + 1;
  }
  return c;
}

void check_image(const CubeImage& image, const FiniteMetricSpace& space) {
  if (image.dimension == 0 || image.resolution == 0) {
    throw InputError("cube image needs dimension and resolution >= 1");
  }
  if (image.table.size() != ipow(image.resolution + 1, image.dimension)) {
    throw InputError("cube image table must list (r+1)^n grid points");
  }
  for (std::size_t p : image.table) {
    if (p >= space.size()) throw InputError("cube image refers to a missing point");
  }
}

std::vector<std::size_t> face_image(const CubeImage& image, const Face& face) {
  const std::size_t target = face.side == Side::kLow ? 0 : image.resolution;
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < image.table.size(); ++g) {
    if (image.grid_coordinates(g)[face.axis] == target) out.push_back(image.table[g]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SampledCube identity_image(std::size_t n, std::size_t resolution, Norm norm) {
  CubeImage img{n, resolution, {}};
  std::vector<std::vector<double>> pts;
  const std::size_t total = ipow(resolution + 1, n);
  for (std::size_t g = 0; g < total; ++g) {
    std::vector<double> p;
    for (auto c : img.grid_coordinates(g)) {
      p.push_back(static_cast<double>(c) / static_cast<double>(resolution));
    }
    pts.push_back(std::move(p));
    img.table.push_back(g);
  }
  return {FiniteMetricSpace::from_points(std::move(pts), norm), std::move(img)};
}

SampledCube constant_image(std::size_t n, std::size_t resolution) {
  CubeImage img{n, resolution,
                std::vector<std::size_t>(ipow(resolution + 1, n), 0)};
  return {FiniteMetricSpace::from_matrix({{0.0}}), std::move(img)};
}

double set_distance(const FiniteMetricSpace& space,
                    const std::vector<std::size_t>& a,
                    const std::vector<std::size_t>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x : a) {
    for (std::size_t y : b) best = std::min(best, space(x, y));
  }
  return best;
}

double content_lower_bound(const FiniteMetricSpace& space,
                           const CubeImage& image) {
  check_image(image, space);
  double product = 1;
  for (std::size_t k = 0; k < image.dimension; ++k) {
    product *= set_distance(space, face_image(image, Face::low(k)),
                            face_image(image, Face::high(k)));
  }
  return product;
}

ContentUpperBound content_upper_bound(const FiniteMetricSpace& space,
                                      const std::vector<std::size_t>& subset,
                                      double q, double floor,
                                      std::size_t budget) {
  if (subset.empty()) throw InputError("content_upper_bound: empty subset");
  if (!(q > 0)) throw InputError("content exponent Q must be positive");
  if (!(floor >= 0)) throw InputError("scale floor must be non-negative");
  for (std::size_t p : subset) {
    if (p >= space.size()) throw InputError("subset refers to a missing point");
  }
  const std::size_t s = subset.size();
  auto weight = [&](double diam) { return std::pow(diam + floor, q); };

  // Distinct radii per center with cumulative ball sizes.
  struct Candidate {
    std::size_t center;  // position in subset
    double radius;
    std::size_t count;
  };
  std::vector<Candidate> candidates;
  std::vector<double> row(s);
  for (std::size_t c = 0; c < s; ++c) {
    for (std::size_t j = 0; j < s; ++j) row[j] = space(subset[c], subset[j]);
    std::sort(row.begin(), row.end());
    for (std::size_t j = 0; j < s;) {
      std::size_t e = j + 1;
      while (e < s && within(row[e], row[j])) ++e;
      candidates.push_back({c, row[e - 1], e});
      j = e;
    }
  }
  ContentUpperBound out;
  out.candidates = candidates.size();

  auto members = [&](const Candidate& cand) {
    std::vector<std::size_t> m;
    for (std::size_t j = 0; j < s; ++j) {
      if (within(space(subset[cand.center], subset[j]), cand.radius)) m.push_back(j);
    }
    return m;
  };
  auto point_ids = [&](const std::vector<std::size_t>& pos) {
    std::vector<std::size_t> ids;
    for (auto p : pos) ids.push_back(subset[p]);
    return ids;
  };

  if (candidates.size() <= kExhaustiveCandidateLimit) {
    out.mode = "exhaustive";
    std::vector<std::vector<std::size_t>> balls;
    std::vector<double> costs;
    for (const auto& c : candidates) {
      balls.push_back(members(c));
      costs.push_back(weight(diameter(space, point_ids(balls.back()))));
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_mask = 0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << balls.size()); ++mask) {
      std::vector<bool> hit(s, false);
      double total = 0;
      for (std::size_t b = 0; b < balls.size(); ++b) {
        if (!(mask >> b & 1)) continue;
        total += costs[b];
        for (auto p : balls[b]) hit[p] = true;
      }
      ++out.evaluations;
      if (total < best && std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) {
        best = total;
        best_mask = mask;
      }
    }
    out.value = best;
    for (std::size_t b = 0; b < balls.size(); ++b) {
      if (best_mask >> b & 1) {
        out.sets.push_back({subset[candidates[b].center], candidates[b].radius,
                            balls[b].size(),
                            diameter(space, point_ids(balls[b]))});
      }
    }
    return out;
  }

  out.mode = "greedy";
  struct Entry {
    double cost;
    double radius;
    std::size_t center;
    std::size_t index;
  };
  auto later = [](const Entry& a, const Entry& b) {
    if (a.cost != b.cost) return a.cost > b.cost;
    if (a.radius != b.radius) return a.radius > b.radius;
    return a.center > b.center;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    heap.push({std::pow(2 * c.radius + floor, q) / static_cast<double>(c.count),
               c.radius, c.center, i});
  }
  std::vector<bool> covered(s, false);
  std::size_t remaining = s;
  while (remaining > 0 && !heap.empty()) {
    if (out.evaluations >= budget) {
      out.approximate = true;
      break;
    }
    Entry top = heap.top();
    heap.pop();
    ++out.evaluations;
    const Candidate& cand = candidates[top.index];
    std::vector<std::size_t> fresh;
    for (std::size_t j : members(cand)) {
      if (!covered[j]) fresh.push_back(j);
    }
    if (fresh.empty()) continue;
    const double cost =
        std::pow(2 * cand.radius + floor, q) / static_cast<double>(fresh.size());
    if (cost > top.cost && !heap.empty() && later(Entry{cost, top.radius, top.center, top.index}, heap.top())) {
      heap.push({cost, top.radius, top.center, top.index});
      continue;
    }
    for (auto j : fresh) covered[j] = true;
    remaining -= fresh.size();
    const auto ids = point_ids(fresh);
    const double diam = ids.size() <= kExactDiameterLimit ? diameter(space, ids)
                                                          : 2 * cand.radius;
    out.sets.push_back({subset[cand.center], cand.radius, fresh.size(), diam});
  }
  for (std::size_t j = 0; j < s; ++j) {
    if (!covered[j]) out.sets.push_back({subset[j], 0.0, 1, 0.0});
  }
  out.value = 0;
  for (const auto& set : out.sets) out.value += weight(set.diameter);
  return out;
}

ImageCoverReport weighted_cover_bound(
    const CubeImage& image, const std::vector<std::vector<std::size_t>>& sets,
    const std::vector<std::vector<Rational>>& weights) {
  const std::size_t n = image.dimension, m = sets.size();
  if (weights.size() != m) throw InputError("one weight row per set is required");
  for (const auto& row : weights) {
    if (row.size() != n) throw InputError("weight rows need one entry per axis");
    for (const auto& w : row) {
      if (w < 0) throw InputError("weights must be non-negative");
    }
  }
  std::size_t points = 0;
  for (auto p : image.table) points = std::max(points, p + 1);
  for (const auto& set : sets) {
    for (auto p : set) points = std::max(points, p + 1);
  }
  std::vector<std::vector<std::size_t>> holders(points);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto p : sets[i]) holders[p].push_back(i);
  }
  for (auto p : image.table) {
    if (holders[p].empty()) {
      throw InputError("image point " + std::to_string(p + 1) + " is not covered");
    }
  }
  std::vector<std::vector<std::size_t>> adj(m);
  for (auto& h : holders) {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    for (std::size_t a = 0; a < h.size(); ++a) {
      for (std::size_t b = a + 1; b < h.size(); ++b) {
        adj[h[a]].push_back(h[b]);
        adj[h[b]].push_back(h[a]);
      }
    }
  }
  std::vector<std::vector<bool>> low(m, std::vector<bool>(n)), high = low;
  for (std::size_t k = 0; k < n; ++k) {
    for (auto p : face_image(image, Face::low(k))) {
      for (auto i : holders[p]) low[i][k] = true;
    }
    for (auto p : face_image(image, Face::high(k))) {
      for (auto i : holders[p]) high[i][k] = true;
    }
  }
  const ChainGraph graph(std::move(adj), weights, std::move(low), std::move(high));
  ImageCoverReport r;
  r.distances = face_distances(graph);
  r.volume = 0;
  for (const auto& row : weights) {
    Rational t = 1;
    for (const auto& w : row) t *= w;
    r.volume += t;
  }
  r.distance_product = 1;
  for (const auto& d : r.distances) r.distance_product *= d;
  r.slack = r.volume - r.distance_product;
  r.inequality_holds = r.slack >= 0;
  return r;
}

std::vector<std::vector<std::size_t>> image_sets_from_cover(
    const CubeImage& image, const WeightedCover& cover) {
  if (cover.dimension != image.dimension) {
    throw InputError("cover and image dimensions differ");
  }
  std::vector<std::vector<std::size_t>> out(cover.size());
  for (std::size_t g = 0; g < image.table.size(); ++g) {
    Point x;
    for (auto c : image.grid_coordinates(g)) {
      x.push_back(Rational(static_cast<long long>(c),
                           static_cast<long long>(image.resolution)));
    }
    for (std::size_t i = 0; i < cover.size(); ++i) {
      if (box_contains(cover.sets[i], x)) out[i].push_back(image.table[g]);
    }
  }
  for (auto& s : out) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return out;
}

Quotient pseudometric_quotient(const FiniteMetricSpace& space) {
  if (auto v = find_metric_violation(space, true, true)) {
    throw InputError("not a pseudometric (" + v->axiom + ")");
  }
  const std::size_t m = space.size();
  DisjointSets ds(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (space(i, j) == 0) ds.unite(i, j);
    }
  }
  Quotient q{FiniteMetricSpace::from_matrix({}), std::vector<std::size_t>(m), {}};
  std::vector<std::size_t> class_of_root(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t root = ds.find(i);
    if (class_of_root[root] == m) {
      class_of_root[root] = q.classes.size();
      q.classes.emplace_back();
    }
    q.projection[i] = class_of_root[root];
    q.classes[q.projection[i]].push_back(i);
  }
  const std::size_t c = q.classes.size();
  std::vector<std::vector<double>> d(c, std::vector<double>(c, 0.0));
  std::vector<long long> ids;
  for (std::size_t a = 0; a < c; ++a) {
    ids.push_back(space.id(q.classes[a][0]));
    for (std::size_t b = a + 1; b < c; ++b) {
      const double rep = space(q.classes[a][0], q.classes[b][0]);
      for (auto x : q.classes[a]) {
        for (auto y : q.classes[b]) {
          if (std::abs(space(x, y) - rep) >
              kMetricTolerance * std::max(1.0, rep)) {
            throw InvariantViolation("quotient distance depends on representatives");
          }
        }
      }
      d[a][b] = d[b][a] = rep;
    }
  }
  q.space = FiniteMetricSpace::from_matrix(std::move(d), std::move(ids));
  return q;
}

CubeImage image_from_json(const nlohmann::json& doc) {
  try {
    if (doc.value("kind", "") != "cube_image") {
      throw InputError("expected \"kind\": \"cube_image\"");
    }
    CubeImage img;
    img.dimension = doc.at("dimension").get<std::size_t>();
    img.resolution = doc.at("resolution").get<std::size_t>();
    for (const auto& v : doc.at("table")) {
      const auto p = v.get<std::size_t>();
      if (p == 0) throw InputError("image table entries are 1-based");
      img.table.push_back(p - 1);
    }
    return img;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("cube image: ") + e.what());
  }
}

nlohmann::json image_to_json(const CubeImage& image) {
  nlohmann::json table = nlohmann::json::array();
  for (auto p : image.table) table.push_back(p + 1);
  return {{"kind", "cube_image"},
          {"dimension", image.dimension},
          {"resolution", image.resolution},
          {"table", std::move(table)}};
}

}  // namespace lvi
