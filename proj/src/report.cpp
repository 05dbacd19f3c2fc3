#include "lvi/report.hpp"

#include "lvi/cover_io.hpp"

namespace lvi {

namespace {

nlohmann::json rationals(const std::vector<Rational>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : values) out.push_back(rational_to_json(v));
  return out;
}

nlohmann::json face_to_json(const Face& face) {
  return {{"axis", face.axis + 1}, {"side", face.side == Side::kLow ? "low" : "high"}};
}

nlohmann::json labels(const std::vector<std::size_t>& indices, const WeightedCover& cover) {
  nlohmann::json out = nlohmann::json::array();
  for (auto i : indices) out.push_back(set_label(cover, i));
  return out;
}

}  // namespace

nlohmann::json to_json(const BoundaryReport& report) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : report.witnesses) {
    witnesses.push_back({{"face", face_to_json(w.face)},
                         {"x", point_to_json(w.x)},
                         {"value", rational_to_json(w.value)}});
  }
  return {{"passed", report.passed()},
          {"samples", report.samples},
          {"violations", report.violations},
          {"witnesses", witnesses}};
}

nlohmann::json to_json(const SurjectivityReport& report) {
  nlohmann::json uncovered = nlohmann::json::array();
  for (const auto& p : report.uncovered) uncovered.push_back(point_to_json(p));
  return {{"status", to_string(report.status)},
          {"method", report.method},
          {"grid_points", report.grid_points},
          {"covered_points", report.covered_points},
          {"coverage", report.coverage()},
          {"evaluations", report.evaluations},
          {"loop_vertices", report.loop_vertices},
          {"uncovered", uncovered}};
}

nlohmann::json to_json(const LVCertificate& cert) {
  nlohmann::json out = {{"kind", "lv_certificate"},
                        {"dimension", cert.dimension},
                        {"sets", cert.sets},
                        {"volume", rational_to_json(cert.volume)},
                        {"distances", rationals(cert.distances)},
                        {"distance_product", rational_to_json(cert.distance_product)},
                        {"slack", rational_to_json(cert.slack)},
                        {"slack_approx", to_double(cert.slack)},
                        {"inequality_holds", cert.inequality_holds},
                        {"spanning", cert.spanning},
                        {"map_status", cert.map_status},
                        {"claim_pairs_checked", cert.claim_pairs_checked},
                        {"claim_simplices_checked", cert.claim_simplices_checked}};
  if (cert.boundary) out["boundary"] = to_json(*cert.boundary);
  if (cert.surjectivity) out["surjectivity"] = to_json(*cert.surjectivity);
  return out;
}

nlohmann::json to_json(const SpanningReduction& r, const WeightedCover& cover) {
  nlohmann::json chain = nlohmann::json::array();
  for (auto i : r.dominance_chain) {
    if (i < cover.size()) {
      chain.push_back({{"set", set_label(cover, i)}});
    } else {
      chain.push_back({{"patch", i - cover.size() + 1}});
    }
  }
  return {{"kind", "spanning_reduction"},
          {"dimension", r.dimension},
          {"delta1", rational_to_json(r.delta1)},
          {"delta2", rational_to_json(r.delta2)},
          {"delta3", rational_to_json(r.delta3)},
          {"delta", rational_to_json(r.delta)},
          {"binding", r.binding},
          {"eps", rational_to_json(r.eps)},
          {"eps_bound", rational_to_json(r.eps_bound)},
          {"sqrt_n", rational_to_json(r.sqrt_n)},
          {"sets", r.inflated.size()},
          {"empty_sets", r.empty_sets},
          {"patches", r.patch_count()},
          {"patch_weight", rational_to_json(r.patch_weight)},
          {"distances", rationals(r.distances)},
          {"reduced_distances", rationals(r.reduced_distances)},
          {"covered", r.covered},
          {"non_spanning", r.non_spanning},
          {"distances_dominate", r.distances_dominate},
          {"dominance_axis", r.dominance_axis ? nlohmann::json(*r.dominance_axis + 1)
                                              : nlohmann::json(nullptr)},
          {"dominance_chain", chain},
          {"volume", rational_to_json(r.volume)},
          {"patch_volume", rational_to_json(r.patch_volume)},
          {"reduced_volume", rational_to_json(r.reduced_volume)},
          {"inflation_bound", rational_to_json(r.inflation_bound)},
          {"patch_count_bound", r.patch_count_bound.str()},
          {"inflation_within_bound", r.inflation_within_bound},
          {"reduced_inequality_holds", r.reduced_inequality_holds}};
}

nlohmann::json chain_path_to_json(const std::optional<ChainPath>& path,
                                  const WeightedCover& cover) {
  if (!path) return {{"reachable", false}};
  return {{"reachable", true},
          {"distance", rational_to_json(path->length)},
          {"witness_chain", labels(path->chain, cover)}};
}

nlohmann::json nerve_to_json(const NerveComplex& nerve, const WeightedCover& cover) {
  nlohmann::json maximal = nlohmann::json::array();
  for (const auto& s : nerve.maximal_simplices()) maximal.push_back(labels(s, cover));
  return {{"kind", "nerve"},
          {"vertices", nerve.vertex_count()},
          {"simplex_counts", nerve.simplex_counts()},
          {"maximal_simplices", maximal}};
}

}  // namespace lvi
