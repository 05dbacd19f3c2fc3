#include <algorithm>
#include <cmath>
#include <map>

#include "lvi/derrick.hpp"
#include "lvi/error.hpp"

namespace lvi {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

// Smallest m with m^e >= s.
std::size_t per_axis_count(std::size_t s, std::size_t e) {
  std::size_t m = 1;
  auto power = [&](std::size_t base) {
    std::size_t p = 1;
    for (std::size_t i = 0; i < e; ++i) {
      p *= base;
      if (p >= s) return p;
    }
    return p;
  };
  while (power(m) < s) ++m;
  return m;
}

std::vector<Rational> axis_grid(std::size_t m) {
  if (m == 1) return {make_rational(1, 2)};
  std::vector<Rational> g;
  for (std::size_t j = 0; j < m; ++j) {
    g.push_back(make_rational(static_cast<long long>(j),
                              static_cast<long long>(m - 1)));
  }
  return g;
}

// Calls visit(point) for every point of grid^dims.
template <class Visit>
void for_each_grid_point(const std::vector<Rational>& grid, std::size_t dims,
                         Visit&& visit) {
  std::vector<std::size_t> idx(dims, 0);
  std::vector<Rational> p(dims, grid.empty() ? Rational(0) : grid[0]);
  if (grid.empty()) return;
  while (true) {
    visit(p);
    std::size_t d = 0;
    while (d < dims && ++idx[d] == grid.size()) {
      idx[d] = 0;
      p[d] = grid[0];
      ++d;
    }
    if (d == dims) return;
    p[d] = grid[idx[d]];
  }
}

Rational linf(const Point& a, const Point& b) {
  Rational r = 0;
  for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, abs(a[k] - b[k]));
  return r;
}

struct BudgetExceeded {};

class Sampler {
 public:
  Sampler(const CubeMap& f, std::size_t budget) : f_(f), budget_(budget) {}
  Point operator()(const Point& x) {
    if (count_ >= budget_) throw BudgetExceeded{};
    ++count_;
    return f_(x);
  }
  std::size_t count() const { return count_; }

 private:
  const CubeMap& f_;
  std::size_t budget_;
  std::size_t count_ = 0;
};

// Samples a path x(t), t in [0, 1], refining until consecutive images are
// closer than `threshold`. Appends images for t in [0, 1) to `out`.
template <class Path>
void sample_path(Sampler& eval, Path&& path, std::size_t pieces,
                 const Rational& threshold, std::vector<Point>& out) {
  struct Node {
    Rational t;
    Point y;
  };
  std::vector<Node> coarse;
  for (std::size_t j = 0; j <= pieces; ++j) {
    Rational t = make_rational(static_cast<long long>(j),
                               static_cast<long long>(pieces));
    coarse.push_back({t, eval(path(t))});
  }
  for (std::size_t j = 0; j < pieces; ++j) {
    // Depth-first refinement of [t_j, t_{j+1}].
    std::vector<Node> stack{coarse[j + 1]};
    Node left = coarse[j];
    out.push_back(left.y);
    while (!stack.empty()) {
      const Node& right = stack.back();
      if (linf(left.y, right.y) < threshold) {
        left = right;
        stack.pop_back();
        if (!stack.empty()) out.push_back(left.y);
        continue;
      }
      Rational mid = (left.t + right.t) / 2;
      Point y = eval(path(mid));
      stack.push_back({std::move(mid), std::move(y)});
    }
  }
}

// Winding number of the closed polygon around p.
int winding_number(const std::vector<Point>& loop, const Point& p) {
  int wn = 0;
  const std::size_t v = loop.size();
  for (std::size_t j = 0; j < v; ++j) {
    const Point& a = loop[j];
    const Point& b = loop[(j + 1) % v];
    const Rational side =
        (b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1]);
    if (side == 0 && std::min(a[0], b[0]) <= p[0] &&
        p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
        p[1] <= std::max(a[1], b[1])) {
      throw InvariantViolation("boundary image passes through int(R)");
    }
    if (a[1] <= p[1]) {
      if (b[1] > p[1] && side > 0) ++wn;
    } else if (b[1] <= p[1] && side < 0) {
      --wn;
    }
  }
  return wn;
}

// Multiples of h strictly inside (0, d), or in [0, d] when closed.
std::vector<Rational> multiples(const Rational& h, const Rational& d,
                                bool closed) {
  std::vector<Rational> out;
  if (closed) out.push_back(0);
  for (long long i = 1;; ++i) {
    Rational v = h * i;
    if (v > d || (!closed && v == d)) break;
    out.push_back(std::move(v));
  }
  return out;
}

SurjectivityReport surjectivity_line(Sampler& eval, const Rational& d,
                                     std::size_t resolution) {
  SurjectivityReport r;
  r.method = "interval-scan";
  const Rational h = d / static_cast<long long>(resolution);
  std::vector<Point> images;
  sample_path(
      eval, [](const Rational& t) { return Point{t}; }, resolution, h / 4,
      images);
  images.push_back(eval(Point{Rational(1)}));
  for (const Rational& y : multiples(h, d, true)) {
    ++r.grid_points;
    bool hit = false;
    for (std::size_t j = 0; j + 1 < images.size() && !hit; ++j) {
      const auto& a = images[j][0];
      const auto& b = images[j + 1][0];
      hit = std::min(a, b) <= y && y <= std::max(a, b);
    }
    if (hit) {
      ++r.covered_points;
    } else if (r.uncovered.size() < kMaxWitnesses) {
      r.uncovered.push_back({y});
    }
  }
  r.loop_vertices = images.size();
  return r;
}

SurjectivityReport surjectivity_plane(Sampler& eval,
                                      std::span<const Rational> d,
                                      std::size_t resolution) {
  SurjectivityReport r;
  r.method = "winding";
  const Rational dmax = std::max(d[0], d[1]);
  const Rational h = dmax / static_cast<long long>(resolution);
  const Rational threshold = h / 4;
  // Counterclockwise: bottom, right, top, left.
  const Rational one = 1, zero = 0;
  std::vector<Point> loop;
  auto edge = [&](Point from, Point to) {
    sample_path(
        eval,
        [&](const Rational& t) {
          return Point{from[0] + t * (to[0] - from[0]),
                       from[1] + t * (to[1] - from[1])};
        },
        resolution, threshold, loop);
  };
  edge({zero, zero}, {one, zero});
  edge({one, zero}, {one, one});
  edge({one, one}, {zero, one});
  edge({zero, one}, {zero, zero});
  r.loop_vertices = loop.size();
  const auto xs = multiples(h, d[0], false);
  const auto ys = multiples(h, d[1], false);
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      Point p{x, y};
      ++r.grid_points;
      if (winding_number(loop, p) != 0) {
        ++r.covered_points;
      } else if (r.uncovered.size() < kMaxWitnesses) {
        r.uncovered.push_back(std::move(p));
      }
    }
  }
  return r;
}

SurjectivityReport surjectivity_proximity(Sampler& eval,
                                          std::span<const Rational> d,
                                          std::size_t resolution,
                                          std::size_t budget) {
  SurjectivityReport r;
  r.method = "grid-proximity";
  const std::size_t n = d.size();
  double cube_points = std::pow(static_cast<double>(resolution + 1), n);
  if (cube_points > static_cast<double>(budget)) throw BudgetExceeded{};
  const Rational dmax = *std::max_element(d.begin(), d.end());
  const double h = to_double(dmax) / static_cast<double>(resolution);
  std::map<std::vector<long long>, std::vector<std::vector<double>>> buckets;
  for_each_grid_point(axis_grid(resolution + 1), n, [&](const Point& x) {
    const Point y = eval(x);
    std::vector<double> yd(n);
    std::vector<long long> key(n);
    for (std::size_t k = 0; k < n; ++k) {
      yd[k] = to_double(y[k]);
      key[k] = static_cast<long long>(std::floor(yd[k] / h));
    }
    buckets[key].push_back(std::move(yd));
  });
  std::vector<std::vector<double>> axes(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& v : multiples(Rational(dmax / static_cast<long long>(resolution)), d[k], true)) {
      axes[k].push_back(to_double(v));
    }
  }
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<double> p(n);
    std::vector<long long> base(n);
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = axes[k][idx[k]];
      base[k] = static_cast<long long>(std::floor(p[k] / h));
    }
    ++r.grid_points;
    bool hit = false;
    std::vector<int> off(n, -1);
    while (!hit) {
      std::vector<long long> key(n);
      for (std::size_t k = 0; k < n; ++k) key[k] = base[k] + off[k];
      if (auto it = buckets.find(key); it != buckets.end()) {
        for (const auto& y : it->second) {
          double dist = 0;
          for (std::size_t k = 0; k < n; ++k) {
            dist = std::max(dist, std::abs(y[k] - p[k]));
          }
          if (dist <= h) {
            hit = true;
            break;
          }
        }
      }
      std::size_t k = 0;
      while (k < n && ++off[k] == 2) off[k++] = -1;
      if (k == n) break;
    }
    if (hit) {
      ++r.covered_points;
    } else if (r.uncovered.size() < kMaxWitnesses) {
      Point w;
      for (std::size_t k = 0; k < n; ++k) {
        w.push_back(dmax / static_cast<long long>(resolution) *
                    static_cast<long long>(idx[k]));
      }
      r.uncovered.push_back(std::move(w));
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == axes[k].size()) idx[k++] = 0;
    if (k == n) break;
  }
  return r;
}

}  // namespace

BoundaryReport boundary_check(const CubeMap& f,
                              std::span<const Rational> distances,
                              std::size_t samples_per_face) {
  BoundaryReport report;
  const std::size_t n = distances.size();
  if (samples_per_face == 0) return report;
  const std::size_t m = n == 1 ? 1 : per_axis_count(samples_per_face, n - 1);
  const auto grid = axis_grid(m);
  for (std::size_t k = 0; k < n; ++k) {
    for (Side side : {Side::kLow, Side::kHigh}) {
      const Face face{k, side};
      auto check = [&](const Point& rest) {
        Point x;
        for (std::size_t a = 0, r = 0; a < n; ++a) {
          if (a == k) {
            x.push_back(side == Side::kLow ? Rational(0) : Rational(1));
          } else {
            x.push_back(rest[r++]);
          }
        }
        const Point y = f(x);
        ++report.samples;
        const bool ok =
            side == Side::kLow ? y[k] == 0 : y[k] >= distances[k];
        if (!ok) {
          ++report.violations;
          if (report.witnesses.size() < kMaxWitnesses) {
            report.witnesses.push_back({face, x, y[k]});
          }
        }
      };
      if (n == 1) {
        check(Point{});
      } else {
        for_each_grid_point(grid, n - 1, check);
      }
    }
  }
  return report;
}

std::string to_string(SurjectivityStatus status) {
  switch (status) {
    case SurjectivityStatus::kPass: return "pass";
    case SurjectivityStatus::kFail: return "fail";
    case SurjectivityStatus::kInconclusive: return "inconclusive";
    case SurjectivityStatus::kVacuous: return "vacuous";
  }
  return "unknown";
}

SurjectivityReport surjectivity_sample(const CubeMap& f,
                                       std::span<const Rational> distances,
                                       std::size_t resolution,
                                       std::size_t evaluation_budget) {
  if (resolution == 0) throw InputError("resolution must be positive");
  const std::size_t n = distances.size();
  SurjectivityReport r;
  if (std::any_of(distances.begin(), distances.end(),
                  [](const Rational& d) { return d == 0; })) {
    r.method = "none";
    r.status = SurjectivityStatus::kVacuous;
    return r;
  }
  Sampler eval(f, evaluation_budget);
  try {
    if (n == 1) {
      r = surjectivity_line(eval, distances[0], resolution);
    } else if (n == 2) {
      r = surjectivity_plane(eval, distances, resolution);
    } else {
      r = surjectivity_proximity(eval, distances, resolution,
                                 evaluation_budget);
    }
  } catch (const BudgetExceeded&) {
    r = {};
    r.method = n == 1 ? "interval-scan" : n == 2 ? "winding" : "grid-proximity";
    r.status = SurjectivityStatus::kInconclusive;
    r.evaluations = eval.count();
    return r;
  }
  r.evaluations = eval.count();
  if (r.covered_points == r.grid_points) {
    r.status = SurjectivityStatus::kPass;
  } else {
    // Sampling on n >= 3 can miss thin parts of the image.
    r.status = n <= 2 ? SurjectivityStatus::kFail
                      : SurjectivityStatus::kInconclusive;
  }
  return r;
}

LVCertificate verify_lv(const WeightedCover& cover,
                        const CertifyOptions& options) {
  LVCertificate c;
  c.dimension = cover.dimension;
  c.sets = cover.size();
  c.volume = cover_volume(cover);
  const ChainGraph graph = ChainGraph::from_cover(cover);
  c.distances = face_distances(graph);
  c.distance_product = 1;
  for (const auto& d : c.distances) c.distance_product *= d;
  c.slack = c.volume - c.distance_product;
  c.inequality_holds = c.slack >= 0;
  c.spanning = is_spanning(cover);

  NerveComplex nerve = NerveComplex::build(cover);
  ProxyAssignment pa = build_proxies(cover, graph, nerve);
  for (std::size_t i = 0; i < c.sets; ++i) {
    for (std::size_t j = i + 1; j < c.sets; ++j) {
      if (nerve.adjacent(i, j)) ++c.claim_pairs_checked;
    }
  }
  c.claim_simplices_checked = nerve.maximal_simplices().size();

  if (!options.certify) return c;
  if (c.spanning) {
    c.map_status = "skipped-spanning";
    return c;
  }
  if (std::any_of(c.distances.begin(), c.distances.end(),
                  [](const Rational& d) { return d == 0; })) {
    c.map_status = "degenerate";
    return c;
  }
  const CubeMap f(cover, std::move(pa), std::move(nerve));
  c.boundary = boundary_check(f, c.distances, options.samples_per_face);
  c.surjectivity = surjectivity_sample(f, c.distances, options.resolution,
                                       options.evaluation_budget);
  c.map_status = "certified";
  return c;
}

}  // namespace lvi
