// lvi: command-line front end. Exit codes: 0 all checks pass, 1 a check
// failed or an invariant was violated, 2 bad input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lvi/chains.hpp"
#include "lvi/content.hpp"
#include "lvi/cover_io.hpp"
#include "lvi/derrick.hpp"
#include "lvi/error.hpp"
#include "lvi/generators.hpp"
#include "lvi/metricdiag.hpp"
#include "lvi/nerve.hpp"
#include "lvi/reduction.hpp"
#include "lvi/report.hpp"
#include "lvi/simplex.hpp"
#include "lvi/suite.hpp"

namespace {

using nlohmann::json;
using namespace lvi;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct Output {
  std::string path;
  bool csv = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

WeightedCover read_cover(const std::string& path) {
  WeightedCover cover = cover_from_json(read_json(path));
  const auto coverage = validate_cover(cover);
  if (!coverage.covered) {
    throw InputError(path + ": sets do not cover the cube; uncovered point " +
                     point_to_json(*coverage.gap_witness).dump());
  }
  return cover;
}

FiniteMetricSpace read_metric(const std::string& path) {
  return metric_from_json(read_json(path));
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Top-level scalar fields as a header row and a value row.
std::string flat_csv(const json& doc) {
  std::ostringstream head, row;
  bool first = true;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_structured()) continue;
    head << (first ? "" : ",") << key;
    row << (first ? "" : ",") << csv_cell(value);
    first = false;
  }
  return head.str() + "\n" + row.str() + "\n";
}

void emit(const Output& out, const json& doc, const std::string& csv = {}) {
  const std::string text = out.csv ? (csv.empty() ? flat_csv(doc) : csv) : doc.dump(2) + "\n";
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out.path);
  if (!file) throw InputError("cannot write " + out.path);
  file << text;
}

Rational parse_rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw InputError(std::string("bad rational for ") + what + ": '" + text + "'");
  }
}

double parse_real_arg(const std::string& text, const char* what) {
  return to_double(parse_rational_arg(text, what));
}

// gen KIND key=value ...: integers stay integers, lists split on ',' and
// intervals on ':'.
json parse_gen_params(const std::string& kind, const std::vector<std::string>& args) {
  json params = {{"kind", kind}};
  for (const auto& p : args) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw InputError("expected key=value, got '" + p + "'");
    const std::string key = p.substr(0, eq), value = p.substr(eq + 1);
    if (key == "intervals") {
      json list = json::array();
      std::stringstream ss(value);
      for (std::string item; std::getline(ss, item, ',');) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw InputError("interval must be lo:hi");
        list.push_back({item.substr(0, colon), item.substr(colon + 1)});
      }
      params[key] = list;
    } else if (key == "weights") {
      json list = json::array();
      std::stringstream ss(value);
      for (std::string item; std::getline(ss, item, ',');) list.push_back(item);
      params[key] = list;
    } else if (!value.empty() &&
               value.find_first_not_of("0123456789") == std::string::npos) {
      params[key] = std::stoull(value);
    } else {
      params[key] = value;
    }
  }
  return params;
}

Endpoint parse_endpoint(const std::string& text, const WeightedCover& cover) {
  if (text.size() >= 2 && text[0] == 'F') {
    const bool high = text.back() == '\'';
    const std::string num = text.substr(1, text.size() - 1 - (high ? 1 : 0));
    const std::size_t axis = std::stoul(num);
    if (axis == 0 || axis > cover.dimension) throw InputError("face axis out of range");
    return high ? Endpoint{Face::high(axis - 1)} : Endpoint{Face::low(axis - 1)};
  }
  if (text.size() >= 2 && text[0] == 'U') {
    const long long id = std::stoll(text.substr(1));
    for (std::size_t i = 0; i < cover.size(); ++i) {
      if (set_label(cover, i) == id) return SetId{i};
    }
    throw InputError("no set with id " + text.substr(1));
  }
  throw InputError("endpoint must be Fk, Fk' or U<id>, got '" + text + "'");
}

std::size_t point_index(const FiniteMetricSpace& space, long long id) {
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.id(i) == id) return i;
  }
  throw InputError("no point with id " + std::to_string(id));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volume bounds for weighted box covers and metric diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("-o,--output", out.path, "Write the report to a file");
  app.add_flag("--csv", out.csv, "CSV instead of JSON");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a cover, metric space, or corpus");
  std::string gen_kind;
  std::vector<std::string> gen_params;
  gen->add_option("kind", gen_kind,
                  "grid, line, random_boxes, spanning_demo, simplex_patch, circle, "
                  "snowflaked_line, thin_neck, corpus")
      ->required();
  gen->add_option("params", gen_params, "key=value parameters");

  // verify-lv / certify
  std::string cover_path;
  CertifyOptions copts;
  auto* verify = app.add_subcommand("verify-lv", "Check the volume inequality");
  verify->add_option("cover", cover_path)->required()->check(CLI::ExistingFile);
  verify->add_flag("--certify", copts.certify, "Also certify the map f");
  auto* certify = app.add_subcommand("certify", "Volume inequality plus map certificate");
  certify->add_option("cover", cover_path)->required()->check(CLI::ExistingFile);
  for (auto* cmd : {verify, certify}) {
    cmd->add_option("--samples", copts.samples_per_face, "Boundary samples per face");
    cmd->add_option("--resolution", copts.resolution, "Surjectivity grid resolution");
    cmd->add_option("--budget", copts.evaluation_budget, "Evaluations of f allowed");
  }

  // chain-dist
  auto* chain = app.add_subcommand("chain-dist", "Weighted chain distances");
  chain->add_option("cover", cover_path)->required()->check(CLI::ExistingFile);
  std::size_t chain_axis = 0;
  std::string chain_from, chain_to;
  chain->add_option("--axis", chain_axis, "Weight axis (1-based); all axes if omitted");
  chain->add_option("--from", chain_from, "Fk, Fk' or U<id> (default Fk)");
  chain->add_option("--to", chain_to, "Fk, Fk' or U<id> (default Fk')");

  auto* nerve = app.add_subcommand("nerve", "Nerve of a cover");
  nerve->add_option("cover", cover_path)->required()->check(CLI::ExistingFile);

  // reduce-spanning
  auto* reduce = app.add_subcommand("reduce-spanning", "Reduce a spanning cover");
  reduce->add_option("cover", cover_path)->required()->check(CLI::ExistingFile);
  std::string eps_text, factor_text = "1";
  reduce->add_option("--eps", eps_text, "Patch scale")->required();
  reduce->add_option("--patch-factor", factor_text, "Patch weight = factor * eps");

  // simplex
  auto* simplex = app.add_subcommand("simplex", "Bounds for a cover of the simplex");
  std::string simplex_path;
  std::size_t simplex_res = 24;
  simplex->add_option("cover", simplex_path)->required()->check(CLI::ExistingFile);
  simplex->add_option("--resolution", simplex_res, "Coverage sampling resolution");

  // content
  auto* content = app.add_subcommand("content", "Content bounds for a sampled cube image");
  std::string metric_path, image_path, identity_spec, floor_text = "0", q_text = "2";
  std::size_t content_budget = 1000000;
  content->add_option("--metric", metric_path, "Metric file")->check(CLI::ExistingFile);
  content->add_option("--image", image_path, "Cube image file")->check(CLI::ExistingFile);
  content->add_option("--identity", identity_spec, "n,resolution[,norm]: identity image");
  content->add_option("--q", q_text, "Content exponent Q");
  content->add_option("--floor", floor_text, "Scale floor (sampling pitch)");
  content->add_option("--budget", content_budget, "Greedy evaluation budget");
  content->add_option("--cover", cover_path, "Weighted box cover of the cube")
      ->check(CLI::ExistingFile);

  // diag
  auto* diag = app.add_subcommand("diag", "Metric space diagnostics");
  std::string diag_what;
  diag->add_option("check", diag_what,
                   "doubling, llc1, llc2, alc, delta-path, snowflake, compare, fat-square")
      ->required();
  diag->add_option("metric", metric_path, "Metric file")->required()->check(CLI::ExistingFile);
  std::string lambda_text = "2", delta_text, alpha_text, exponent_text, tol_text = "1";
  std::string rho_path, radius_text;
  std::vector<std::string> radii_text;
  std::vector<long long> centers;
  long long x_id = 0, y_id = 0;
  std::size_t diag_budget = 20000;
  diag->add_option("--lambda", lambda_text);
  diag->add_option("--delta", delta_text);
  diag->add_option("--alpha", alpha_text);
  diag->add_option("--radii", radii_text)->delimiter(',');
  diag->add_option("--centers", centers, "Point ids")->delimiter(',');
  diag->add_option("--budget", diag_budget);
  diag->add_option("--x", x_id, "Point id");
  diag->add_option("--y", y_id, "Point id");
  diag->add_option("--rho", rho_path, "Second metric for compare")->check(CLI::ExistingFile);
  diag->add_option("--exponent", exponent_text, "Exponent 1/eps for compare");
  diag->add_option("--tolerance", tol_text, "Constant C for compare");
  diag->add_option("--image", image_path, "Cube image for fat-square")->check(CLI::ExistingFile);
  diag->add_option("--radius", radius_text, "r for fat-square (omit with --y)");

  // suite
  auto* suite = app.add_subcommand("suite", "Run checks over a corpus directory");
  std::string corpus;
  SuiteOptions sopts;
  std::string csv_path;
  suite->add_option("corpus", corpus)->required()->check(CLI::ExistingDirectory);
  suite->add_flag("--certify", sopts.certify);
  suite->add_option("--samples", sopts.certify_options.samples_per_face);
  suite->add_option("--resolution", sopts.certify_options.resolution);
  suite->add_option("--csv-file", csv_path, "Also write the CSV plot data here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*gen) {
      json params = parse_gen_params(gen_kind, gen_params);
      if (gen_kind == "corpus") {
        const std::string dir = params.value("dir", "corpus");
        const auto paths = write_corpus(dir, params.value("prefix", "cover"),
                                        params.value("instances", 200), params.value("n", 2),
                                        params.value("seed", std::uint64_t{1}));
        emit(out, {{"kind", "corpus"}, {"dir", dir}, {"files", paths.size()}});
      } else {
        emit(out, generate(params));
      }
      return kOk;
    }
    if (*verify || *certify) {
      if (*certify) copts.certify = true;
      const auto cover = read_cover(cover_path);
      const auto cert = verify_lv(cover, copts);
      emit(out, to_json(cert));
      bool ok = cert.inequality_holds;
      if (cert.boundary) ok = ok && cert.boundary->passed();
      if (cert.surjectivity) ok = ok && cert.surjectivity->status != SurjectivityStatus::kFail;
      return ok ? kOk : kCheckFailed;
    }
    if (*chain) {
      const auto cover = read_cover(cover_path);
      const auto graph = ChainGraph::from_cover(cover);
      json doc = {{"kind", "chain_distance"}};
      if (chain_axis == 0) {
        if (!chain_from.empty() || !chain_to.empty()) {
          throw InputError("--from/--to need --axis");
        }
        json list = json::array();
        for (const auto& d : face_distances(graph)) list.push_back(rational_to_json(d));
        doc["distances"] = list;
      } else {
        if (chain_axis > cover.dimension) throw InputError("axis out of range");
        const std::size_t k = chain_axis - 1;
        const Endpoint from = chain_from.empty() ? Endpoint{Face::low(k)}
                                                 : parse_endpoint(chain_from, cover);
        const Endpoint to = chain_to.empty() ? Endpoint{Face::high(k)}
                                             : parse_endpoint(chain_to, cover);
        doc["axis"] = chain_axis;
        doc["path"] = chain_path_to_json(chain_distance(graph, k, from, to), cover);
      }
      emit(out, doc);
      return kOk;
    }
    if (*nerve) {
      const auto cover = read_cover(cover_path);
      emit(out, nerve_to_json(NerveComplex::build(cover), cover));
      return kOk;
    }
    if (*reduce) {
      const auto cover = read_cover(cover_path);
      ReductionOptions ropts;
      ropts.patch_weight_factor = parse_rational_arg(factor_text, "--patch-factor");
      const auto r = reduce_spanning(cover, parse_rational_arg(eps_text, "--eps"), ropts);
      emit(out, to_json(r, cover));
      const bool ok = r.covered && r.non_spanning && r.distances_dominate &&
                      r.inflation_within_bound && r.reduced_inequality_holds;
      return ok ? kOk : kCheckFailed;
    }
    if (*simplex) {
      const auto cover = simplex_cover_from_json(read_json(simplex_path));
      const auto bounds = verify_simplex_bounds(cover, simplex_res);
      emit(out, simplex_bounds_to_json(bounds, cover));
      return bounds.volume_bound_holds && bounds.count_bound_holds ? kOk : kCheckFailed;
    }
    if (*content) {
      std::optional<SampledCube> cube;
      if (!identity_spec.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(identity_spec);
        for (std::string s; std::getline(ss, s, ',');) parts.push_back(s);
        if (parts.size() < 2) throw InputError("--identity needs n,resolution[,norm]");
        cube = identity_image(std::stoul(parts[0]), std::stoul(parts[1]),
                              parse_norm(parts.size() > 2 ? parts[2] : "linf"));
      } else {
        if (metric_path.empty() || image_path.empty()) {
          throw InputError("content needs --identity or both --metric and --image");
        }
        auto space = read_metric(metric_path);
        auto image = image_from_json(read_json(image_path));
        check_image(image, space);
        cube = SampledCube{std::move(space), std::move(image)};
      }
      std::vector<std::size_t> subset(cube->image.table.begin(), cube->image.table.end());
      std::sort(subset.begin(), subset.end());
      subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
      const double qv = parse_real_arg(q_text, "--q");
      const auto upper = content_upper_bound(cube->space, subset, qv,
                                             parse_real_arg(floor_text, "--floor"),
                                             content_budget);
      const double lower = content_lower_bound(cube->space, cube->image);
      json doc = {{"kind", "content"},
                  {"points", subset.size()},
                  {"q", qv},
                  {"lower_bound", lower},
                  {"upper_bound", upper.value},
                  {"mode", upper.mode},
                  {"approximate", upper.approximate},
                  {"candidates", upper.candidates},
                  {"evaluations", upper.evaluations},
                  {"cover_sets", upper.sets.size()}};
      bool ok = true;
      if (!cover_path.empty()) {
        const auto cover = read_cover(cover_path);
        if (cover.dimension != cube->image.dimension) throw InputError("cover dimension mismatch");
        const auto rep = weighted_cover_bound(cube->image,
                                              image_sets_from_cover(cube->image, cover),
                                              cover.weights);
        doc["cover"] = {{"volume", rational_to_json(rep.volume)},
                        {"distance_product", rational_to_json(rep.distance_product)},
                        {"slack", rational_to_json(rep.slack)},
                        {"inequality_holds", rep.inequality_holds}};
        ok = rep.inequality_holds;
      }
      emit(out, doc);
      return ok ? kOk : kCheckFailed;
    }
    if (*diag) {
      const auto space = read_metric(metric_path);
      const double lambda = parse_real_arg(lambda_text, "--lambda");
      auto need = [](const std::string& v, const char* name) {
        if (v.empty()) throw InputError(std::string(name) + " is required");
        return v;
      };
      std::vector<double> radii;
      for (const auto& r : radii_text) radii.push_back(parse_real_arg(r, "--radii"));
      if (diag_what == "doubling") {
        emit(out, to_json(doubling_estimate(space, radii), space));
        return kOk;
      }
      if (diag_what == "llc" || diag_what == "llc1" || diag_what == "llc2" ||
          diag_what == "alc") {
        LLCOptions lopts;
        lopts.radii = radii;
        lopts.sample_budget = diag_budget;
        for (long long c : centers) lopts.centers.push_back(point_index(space, c));
        const auto rep = check_llc(space, parse_connectivity(diag_what == "llc" ? "llc1" : diag_what),
                                   lambda, parse_real_arg(need(delta_text, "--delta"), "--delta"),
                                   lopts);
        emit(out, to_json(rep, space));
        return rep.verdict == Verdict::kFail ? kCheckFailed : kOk;
      }
      if (diag_what == "delta-path") {
        const auto len = delta_path_length(space, point_index(space, x_id),
                                           point_index(space, y_id),
                                           parse_real_arg(need(delta_text, "--delta"), "--delta"));
        emit(out, {{"kind", "delta_path"},
                   {"x", x_id},
                   {"y", y_id},
                   {"reachable", len.has_value()},
                   {"length", len ? json(*len) : json(nullptr)}});
        return kOk;
      }
      if (diag_what == "snowflake") {
        emit(out, metric_to_json(snowflake(space, parse_real_arg(need(alpha_text, "--alpha"), "--alpha"))));
        return kOk;
      }
      if (diag_what == "compare") {
        const auto rho = read_metric(need(rho_path, "--rho"));
        const auto rep = check_comparison(space, rho,
                                          parse_real_arg(need(exponent_text, "--exponent"), "--exponent"),
                                          parse_real_arg(tol_text, "--tolerance"));
        emit(out, to_json(rep, space));
        return rep.holds ? kOk : kCheckFailed;
      }
      if (diag_what == "fat-square") {
        const auto image = image_from_json(read_json(need(image_path, "--image")));
        const std::size_t x = point_index(space, x_id);
        const auto rep = y_id != 0
                             ? check_fat_connecting_square(space, image, x, point_index(space, y_id), lambda)
                             : check_fat_square(space, image, x,
                                                parse_real_arg(need(radius_text, "--radius"), "--radius"),
                                                lambda);
        emit(out, to_json(rep, space));
        return rep.holds ? kOk : kCheckFailed;
      }
      throw InputError("unknown diag check '" + diag_what + "'");
    }
    if (*suite) {
      const auto res = run_suite(corpus, sopts);
      emit(out, res.report, res.csv);
      if (!csv_path.empty()) {
        std::ofstream file(csv_path);
        if (!file) throw InputError("cannot write " + csv_path);
        file << res.csv;
      }
      if (res.failed > 0) return kCheckFailed;
      return res.errors > 0 ? kBadInput : kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  }
  return kOk;
}
