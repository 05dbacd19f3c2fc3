#include "lvi/metricdiag.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "lvi/error.hpp"

namespace lvi {

namespace {

double scaled(double r) { return kDistanceSlack * std::max(1.0, r); }
// Threshold comparisons that treat values within the slack as equal.
bool at_most(double d, double r) { return d <= r + scaled(r); }
bool below(double d, double r) { return d < r - scaled(r); }

double diameter(const FiniteMetricSpace& s) {
  double d = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) d = std::max(d, s(i, j));
  }
  return d;
}

double min_positive_distance(const FiniteMetricSpace& s) {
  double d = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double v = s(i, j);
      if (v > 0 && (d == 0 || v < d)) d = v;
    }
  }
  return d;
}

void check_point(const FiniteMetricSpace& s, std::size_t p, const char* what) {
  if (p >= s.size()) throw InputError(std::string(what) + " index out of range");
}

// Source region and target region membership for one (p, r) sample.
struct Regions {
  std::vector<bool> source;
  std::vector<bool> target;
};

Regions regions(const std::vector<double>& dp, Connectivity property,
                double r, double lambda) {
  Regions out{std::vector<bool>(dp.size()), std::vector<bool>(dp.size())};
  for (std::size_t i = 0; i < dp.size(); ++i) {
    const double d = dp[i];
    switch (property) {
      case Connectivity::kLLC1:
        out.source[i] = below(d, r);
        out.target[i] = below(d, lambda * r);
        break;
      case Connectivity::kLLC2:
        out.source[i] = !below(d, r);
        out.target[i] = !below(d, r / lambda);
        break;
      case Connectivity::kALC:
        out.source[i] = !below(d, r) && at_most(d, 2 * r);
        out.target[i] = !below(d, r / lambda) && at_most(d, 2 * lambda * r);
        break;
    }
  }
  return out;
}

std::vector<std::size_t> strided(std::size_t total, std::size_t wanted) {
  std::vector<std::size_t> out;
  if (wanted >= total) {
    for (std::size_t i = 0; i < total; ++i) out.push_back(i);
    return out;
  }
  for (std::size_t k = 0; k < wanted; ++k) out.push_back(k * total / wanted);
  return out;
}

}  // namespace

DeltaGraph::DeltaGraph(const FiniteMetricSpace& space, double delta)
    : space_(&space), delta_(delta), adjacency_(space.size()) {
  if (!(delta > 0)) throw InputError("delta must be positive");
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      if (at_most(space(i, j), delta)) {
        adjacency_[i].push_back(j);
        adjacency_[j].push_back(i);
      }
    }
  }
}

std::size_t DeltaGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& a : adjacency_) e += a.size();
  return e / 2;
}

std::vector<long> DeltaGraph::components(const std::vector<bool>& member) const {
  std::vector<long> label(adjacency_.size(), -1);
  long next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < adjacency_.size(); ++s) {
    if (!member[s] || label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adjacency_[u]) {
        if (member[v] && label[v] < 0) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

std::optional<std::size_t> DeltaGraph::hops(std::size_t from, std::size_t to) const {
  std::vector<std::size_t> dist(adjacency_.size(), SIZE_MAX);
  std::deque<std::size_t> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (u == to) return dist[u];
    for (std::size_t v : adjacency_[u]) {
      if (dist[v] == SIZE_MAX) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return std::nullopt;
}

DoublingEstimate doubling_estimate(const FiniteMetricSpace& space,
                                   std::vector<double> radii) {
  if (space.size() == 0) throw InputError("doubling_estimate: empty space");
  DoublingEstimate best;
  if (space.size() == 1) return best;
  const auto m = space.matrix();
  if (radii.empty()) {
    const double lo = min_positive_distance(space);
    for (double r = diameter(space); r >= lo && lo > 0; r /= 2) radii.push_back(r);
  }
  for (double r : radii) {
    if (!(r > 0)) throw InputError("doubling radii must be positive");
  }
  const std::size_t size = space.size();
  for (double r : radii) {
    for (std::size_t p = 0; p < size; ++p) {
      std::vector<std::size_t> ball;
      for (std::size_t q = 0; q < size; ++q) {
        if (below(m[p][q], r)) ball.push_back(q);
      }
      // Only centres within 3r/2 of p can reach the ball.
      std::vector<std::size_t> centres;
      for (std::size_t c = 0; c < size; ++c) {
        if (below(m[p][c], 1.5 * r)) centres.push_back(c);
      }
      std::vector<bool> covered(ball.size(), false);
      std::size_t remaining = ball.size();
      std::size_t count = 0;
      while (remaining > 0) {
        std::size_t pick = 0, gain = 0;
        for (std::size_t c : centres) {
          std::size_t g = 0;
          for (std::size_t b = 0; b < ball.size(); ++b) {
            if (!covered[b] && below(m[c][ball[b]], r / 2)) ++g;
          }
          if (g > gain) {
            gain = g;
            pick = c;
          }
        }
        if (gain == 0) throw InvariantViolation("doubling greedy made no progress");
        for (std::size_t b = 0; b < ball.size(); ++b) {
          if (!covered[b] && below(m[pick][ball[b]], r / 2)) {
            covered[b] = true;
            --remaining;
          }
        }
        ++count;
      }
      ++best.balls_checked;
      if (count > best.value) {
        best.value = count;
        best.center = p;
        best.radius = r;
      }
    }
  }
  return best;
}

Connectivity parse_connectivity(const std::string& name) {
  if (name == "llc1" || name == "LLC1") return Connectivity::kLLC1;
  if (name == "llc2" || name == "LLC2") return Connectivity::kLLC2;
  if (name == "alc" || name == "ALC") return Connectivity::kALC;
  throw InputError("unknown connectivity property '" + name + "'");
}

std::string to_string(Connectivity property) {
  switch (property) {
    case Connectivity::kLLC1: return "LLC1";
    case Connectivity::kLLC2: return "LLC2";
    case Connectivity::kALC: return "ALC";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

ConnectivityReport check_llc(const FiniteMetricSpace& space,
                             Connectivity property, double lambda,
                             double delta, const LLCOptions& options) {
  if (!(lambda >= 1)) throw InputError("lambda must be at least 1");
  if (!(delta > 0)) throw InputError("delta must be positive");
  for (std::size_t c : options.centers) check_point(space, c, "center");
  ConnectivityReport report;
  report.property = property;
  report.lambda = lambda;
  report.delta = delta;
  if (space.size() <= 1) return report;

  const DeltaGraph graph(space, delta);
  {
    const auto all = graph.components(std::vector<bool>(space.size(), true));
    report.space_connected =
        std::all_of(all.begin(), all.end(), [](long c) { return c == 0; });
  }
  if (property == Connectivity::kALC && !report.space_connected) {
    report.verdict = Verdict::kFail;
    report.failures = 1;
    std::size_t other = 0;
    const auto all = graph.components(std::vector<bool>(space.size(), true));
    while (all[other] == 0) ++other;
    report.witnesses.push_back({0, 0, 0, other});
  }

  report.radii = options.radii;
  if (report.radii.empty()) {
    for (double r = diameter(space); at_most(delta, r); r /= 2) report.radii.push_back(r);
  }
  for (double r : report.radii) {
    if (!(r > 0)) throw InputError("radii must be positive");
  }
  std::vector<std::size_t> centers = options.centers;
  if (centers.empty()) {
    const std::size_t per_radius =
        std::max<std::size_t>(1, options.sample_budget / std::max<std::size_t>(1, report.radii.size()));
    centers = strided(space.size(), per_radius);
  }

  for (std::size_t p : centers) {
    std::vector<double> dp(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) dp[i] = space(p, i);
    for (double r : report.radii) {
      if (report.samples >= options.sample_budget) break;
      ++report.samples;
      const Regions reg = regions(dp, property, r, lambda);
      const auto label = graph.components(reg.target);
      long first = -1;
      std::size_t first_point = 0;
      std::optional<std::size_t> split;
      for (std::size_t i = 0; i < space.size(); ++i) {
        if (!reg.source[i]) continue;
        if (first < 0) {
          first = label[i];
          first_point = i;
        } else if (label[i] != first) {
          split = i;
          break;
        }
      }
      if (!split) continue;
      bool isolated = false;
      for (std::size_t i = 0; i < space.size() && !isolated; ++i) {
        if (!reg.source[i]) continue;
        const auto& nb = graph.neighbors(i);
        isolated = std::none_of(nb.begin(), nb.end(),
                                [&](std::size_t v) { return bool(reg.target[v]); });
      }
      if (isolated) {
        ++report.inconclusive;
        continue;
      }
      ++report.failures;
      if (report.witnesses.size() < options.witness_limit) {
        report.witnesses.push_back({p, r, first_point, *split});
      }
    }
  }
  if (report.failures > 0) {
    report.verdict = Verdict::kFail;
  } else if (report.inconclusive > 0) {
    report.verdict = Verdict::kInconclusive;
  }
  return report;
}

std::optional<std::size_t> delta_path_length(const FiniteMetricSpace& space,
                                             std::size_t x, std::size_t y,
                                             double delta) {
  check_point(space, x, "x");
  check_point(space, y, "y");
  return DeltaGraph(space, delta).hops(x, y);
}

FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double alpha) {
  if (!(alpha > 0) || alpha > 1) {
    throw InputError("snowflake exponent must lie in (0, 1]");
  }
  if (alpha == 1) return space;
  auto matrix = space.matrix();
  for (auto& row : matrix) {
    for (double& v : row) v = std::pow(v, alpha);
  }
  auto out = FiniteMetricSpace::from_matrix(std::move(matrix), space.ids());
  if (auto v = find_metric_violation(out, true)) {
    throw InvariantViolation("snowflake broke the " + v->axiom + " axiom");
  }
  return out;
}

ComparisonReport check_comparison(const FiniteMetricSpace& d,
                                  const FiniteMetricSpace& rho,
                                  double exponent, double tolerance) {
  if (d.size() != rho.size()) throw InputError("comparison spaces differ in size");
  if (!(exponent > 0)) throw InputError("comparison exponent must be positive");
  if (!(tolerance >= 1)) throw InputError("comparison constant must be at least 1");
  ComparisonReport report;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      ++report.pairs;
      const double base = std::pow(d(i, j), exponent);
      const double r = rho(i, j);
      double c;
      if (base == 0) {
        c = r == 0 ? 1 : INFINITY;
      } else {
        const double ratio = r / base;
        c = ratio == 0 ? INFINITY : std::max(ratio, 1 / ratio);
      }
      if (c > report.tightest) {
        report.tightest = c;
        report.worst_x = i;
        report.worst_y = j;
      }
    }
  }
  report.holds = at_most(report.tightest, tolerance);
  return report;
}

namespace {

FatSquareReport fat_square_common(const FiniteMetricSpace& space,
                                  const CubeImage& image, std::size_t x,
                                  double radius, double ball_radius,
                                  double required) {
  check_image(image, space);
  FatSquareReport rep;
  rep.radius = radius;
  rep.ball_radius = ball_radius;
  rep.required = required;
  for (std::size_t p : image.table) rep.max_distance = std::max(rep.max_distance, space(x, p));
  rep.inside_ball = below(rep.max_distance, ball_radius);
  rep.holds = rep.inside_ball;
  for (std::size_t k = 0; k < image.dimension; ++k) {
    const double dist = set_distance(space, face_image(image, Face::low(k)),
                                     face_image(image, Face::high(k)));
    rep.face_distances.push_back(dist);
    rep.face_ok.push_back(!below(dist, required));
    rep.holds = rep.holds && rep.face_ok.back();
  }
  const std::size_t side = image.resolution + 1;
  for (std::size_t g = 0; g < image.table.size(); ++g) {
    std::size_t stride = 1;
    const auto c = image.grid_coordinates(g);
    for (std::size_t k = 0; k < image.dimension; ++k, stride *= side) {
      if (c[k] + 1 < side) {
        rep.max_step = std::max(rep.max_step, space(image.table[g], image.table[g + stride]));
      }
    }
  }
  return rep;
}

}  // namespace

FatSquareReport check_fat_square(const FiniteMetricSpace& space,
                                 const CubeImage& image, std::size_t x,
                                 double r, double lambda) {
  check_point(space, x, "center");
  if (image.dimension != 2) throw InputError("fat square needs a 2-dimensional image");
  if (!(r > 0)) throw InputError("radius must be positive");
  if (!(lambda >= 1)) throw InputError("lambda must be at least 1");
  return fat_square_common(space, image, x, r, r, r / lambda);
}

FatSquareReport check_fat_connecting_square(const FiniteMetricSpace& space,
                                            const CubeImage& image,
                                            std::size_t x, std::size_t y,
                                            double lambda) {
  check_point(space, x, "x");
  check_point(space, y, "y");
  if (image.dimension != 2) throw InputError("fat square needs a 2-dimensional image");
  if (!(lambda >= 1)) throw InputError("lambda must be at least 1");
  const double dxy = space(x, y);
  if (!(dxy > 0)) throw InputError("connecting square needs distinct points");
  auto rep = fat_square_common(space, image, x, dxy, lambda * dxy, dxy / lambda);
  rep.target = y;
  for (std::size_t p : face_image(image, Face::low(0))) {
    rep.start_face_ok = rep.start_face_ok && below(space(x, p), dxy / 4);
  }
  for (std::size_t p : face_image(image, Face::high(0))) {
    rep.end_face_ok = rep.end_face_ok && below(space(y, p), dxy / 4);
  }
  rep.holds = rep.holds && rep.start_face_ok && rep.end_face_ok;
  return rep;
}

FiniteMetricSpace circle_space(std::size_t points) {
  if (points == 0) throw InputError("circle needs at least one point");
  const double step = 2 * std::numbers::pi / static_cast<double>(points);
  return FiniteMetricSpace(points, [points, step](std::size_t i, std::size_t j) {
    const std::size_t gap = i > j ? i - j : j - i;
    return step * static_cast<double>(std::min(gap, points - gap));
  });
}

FiniteMetricSpace snowflaked_line(std::size_t points, double alpha) {
  if (points < 2) throw InputError("line needs at least two points");
  if (!(alpha > 0) || alpha > 1) throw InputError("snowflake exponent must lie in (0, 1]");
  const double last = static_cast<double>(points - 1);
  return FiniteMetricSpace(points, [last, alpha](std::size_t i, std::size_t j) {
    const double gap = static_cast<double>(i > j ? i - j : j - i);
    return std::pow(gap / last, alpha);
  });
}

ThinNeck thin_neck(std::size_t cluster_size, std::size_t neck_length) {
  if (cluster_size < 1) throw InputError("thin neck cluster size must be positive");
  if (neck_length < 2) throw InputError("thin neck length must be at least 2");
  std::vector<std::vector<double>> coords;
  std::size_t middle = 0;
  const double k = static_cast<double>(cluster_size);
  const double row = std::floor((k - 1) / 2);
  const double shift = k - 1 + static_cast<double>(neck_length);
  for (double ox : {0.0, shift}) {
    for (std::size_t j = 0; j < cluster_size; ++j) {
      for (std::size_t i = 0; i < cluster_size; ++i) {
        coords.push_back({ox + static_cast<double>(i), static_cast<double>(j)});
      }
    }
  }
  for (std::size_t t = 1; t < neck_length; ++t) {
    if (t == neck_length / 2) middle = coords.size();
    coords.push_back({k - 1 + static_cast<double>(t), row});
  }
  auto space = FiniteMetricSpace::from_points(coords, Norm::kL2);
  return ThinNeck{std::move(space), std::move(coords), middle, 1};
}

nlohmann::json to_json(const DoublingEstimate& e, const FiniteMetricSpace& space) {
  return {{"kind", "doubling"},
          {"N", e.value},
          {"worst_center", space.id(e.center)},
          {"worst_radius", e.radius},
          {"balls_checked", e.balls_checked},
          {"note", "greedy upper bound on the half-radius cover count"}};
}

nlohmann::json to_json(const ConnectivityReport& r, const FiniteMetricSpace& space) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"center", space.id(w.center)},
                         {"radius", w.radius},
                         {"x", space.id(w.x)},
                         {"y", space.id(w.y)}});
  }
  return {{"kind", "connectivity"},
          {"property", to_string(r.property)},
          {"lambda", r.lambda},
          {"delta", r.delta},
          {"verdict", to_string(r.verdict)},
          {"space_connected", r.space_connected},
          {"samples", r.samples},
          {"failures", r.failures},
          {"inconclusive", r.inconclusive},
          {"radii", r.radii},
          {"witnesses", witnesses}};
}

nlohmann::json to_json(const ComparisonReport& r, const FiniteMetricSpace& space) {
  return {{"kind", "comparison"},
          {"tightest_constant", r.tightest},
          {"tolerance", r.tolerance},
          {"holds", r.holds},
          {"pairs", r.pairs},
          {"worst_pair", {space.id(r.worst_x), space.id(r.worst_y)}}};
}

nlohmann::json to_json(const FatSquareReport& r, const FiniteMetricSpace& space) {
  nlohmann::json out = {{"kind", r.target ? "fat_connecting_square" : "fat_square"},
                        {"holds", r.holds},
                        {"inside_ball", r.inside_ball},
                        {"radius", r.radius},
                        {"ball_radius", r.ball_radius},
                        {"max_distance", r.max_distance},
                        {"required_face_distance", r.required},
                        {"face_distances", r.face_distances},
                        {"face_ok", r.face_ok},
                        {"max_step", r.max_step}};
  if (r.target) {
    out["target"] = space.id(*r.target);
    out["start_face_ok"] = r.start_face_ok;
    out["end_face_ok"] = r.end_face_ok;
  }
  return out;
}

}  // namespace lvi
