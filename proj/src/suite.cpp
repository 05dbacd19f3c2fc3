#include "lvi/suite.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lvi/cover_io.hpp"
#include "lvi/error.hpp"
#include "lvi/generators.hpp"
#include "lvi/metric_space.hpp"
#include "lvi/report.hpp"
#include "lvi/simplex.hpp"

namespace lvi {

namespace {

struct Row {
  std::string file, kind, status;
  std::size_t dimension = 0, sets = 0;
  std::string volume, product, slack;
  double slack_value = 0;
  std::size_t resolution = 0;
  double coverage = -1;
};

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json check_cover_file(const nlohmann::json& doc, const SuiteOptions& options,
                                Row& row) {
  const WeightedCover cover = cover_from_json(doc);
  if (!validate_cover(cover).covered) throw InputError("sets do not cover the cube");
  CertifyOptions opts = options.certify_options;
  opts.certify = options.certify;
  const LVCertificate cert = verify_lv(cover, opts);
  bool ok = cert.inequality_holds;
  if (cert.boundary) ok = ok && cert.boundary->passed();
  if (cert.surjectivity) ok = ok && cert.surjectivity->status != SurjectivityStatus::kFail;
  row.kind = "cover";
  row.status = ok ? "pass" : "fail";
  row.dimension = cert.dimension;
  row.sets = cert.sets;
  row.volume = to_string(cert.volume);
  row.product = to_string(cert.distance_product);
  row.slack = to_string(cert.slack);
  row.slack_value = to_double(cert.slack);
  if (cert.surjectivity) {
    row.resolution = opts.resolution;
    row.coverage = cert.surjectivity->coverage();
  }
  return to_json(cert);
}

nlohmann::json check_simplex_file(const nlohmann::json& doc, Row& row) {
  const SimplexCover cover = simplex_cover_from_json(doc);
  const SimplexBounds bounds = verify_simplex_bounds(cover);
  row.kind = "simplex";
  row.dimension = cover.dimension;
  row.sets = cover.sets.size();
  row.status = bounds.volume_bound_holds && bounds.count_bound_holds ? "pass" : "fail";
  row.volume = to_string(bounds.power_sum);
  row.product = to_string(bounds.volume_bound);
  row.slack = to_string(bounds.power_sum - bounds.volume_bound);
  row.slack_value = to_double(bounds.power_sum - bounds.volume_bound);
  return simplex_bounds_to_json(bounds, cover);
}

nlohmann::json check_metric_file(const nlohmann::json& doc, Row& row) {
  const FiniteMetricSpace space = metric_from_json(doc);
  row.kind = "metric";
  row.sets = space.size();
  row.status = "pass";
  return {{"kind", "metric_check"}, {"points", space.size()}, {"valid", true}};
}

}  // namespace

std::vector<nlohmann::json> corpus_specs(std::size_t instances, std::size_t n,
                                         std::uint64_t seed) {
  Rng rng(seed);
  std::vector<nlohmann::json> out;
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t count = 2 + draw(rng, 15);
    const std::uint64_t instance_seed = rng();
    const long long overlap_den = 16 << draw(rng, 3);
    out.push_back({{"kind", "random_boxes"},
                   {"count", count},
                   {"n", n},
                   {"seed", instance_seed},
                   {"min_overlap", "1/" + std::to_string(overlap_den)}});
  }
  return out;
}

std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir,
                                                const std::string& prefix,
                                                std::size_t instances, std::size_t n,
                                                std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  std::size_t i = 0;
  for (const auto& params : corpus_specs(instances, n, seed)) {
    char name[32];
    std::snprintf(name, sizeof name, "_%04zu.json", i++);
    const auto path = dir / (prefix + name);
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << generate(params).dump(2) << '\n';
    paths.push_back(path);
  }
  return paths;
}

SuiteResult run_suite(const std::filesystem::path& corpus, const SuiteOptions& options) {
  if (!std::filesystem::is_directory(corpus)) {
    throw InputError("corpus is not a directory: " + corpus.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  SuiteResult result;
  nlohmann::json entries = nlohmann::json::array();
  std::vector<Row> rows;
  double slack_min = 0, slack_max = 0, slack_sum = 0;
  std::size_t slack_count = 0;
  for (const auto& path : files) {
    Row row;
    row.file = path.filename().string();
    nlohmann::json entry = {{"file", row.file}};
    try {
      std::ifstream in(path);
      if (!in) throw InputError("cannot open file");
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
      }
      const std::string kind = doc.is_object() ? doc.value("kind", "cover") : "";
      if (kind == "simplex") {
        entry["result"] = check_simplex_file(doc, row);
      } else if (kind == "metric") {
        entry["result"] = check_metric_file(doc, row);
      } else if (kind == "cover") {
        entry["result"] = check_cover_file(doc, options, row);
      } else {
        throw InputError("unsupported file kind '" + kind + "'");
      }
    } catch (const InvariantViolation& e) {
      row.status = "fail";
      entry["error"] = std::string("invariant violated: ") + e.what();
    } catch (const std::exception& e) {
      row.status = "error";
      entry["error"] = e.what();
    }
    entry["kind"] = row.kind.empty() ? "unknown" : row.kind;
    entry["status"] = row.status;
    if (row.status == "pass") ++result.passed;
    if (row.status == "fail") ++result.failed;
    if (row.status == "error") ++result.errors;
    if (!row.slack.empty()) {
      if (slack_count == 0) slack_min = slack_max = row.slack_value;
      slack_min = std::min(slack_min, row.slack_value);
      slack_max = std::max(slack_max, row.slack_value);
      slack_sum += row.slack_value;
      ++slack_count;
    }
    entries.push_back(std::move(entry));
    rows.push_back(std::move(row));
  }

  nlohmann::json slack = {{"count", slack_count}};
  if (slack_count > 0) {
    slack["min"] = slack_min;
    slack["max"] = slack_max;
    slack["mean"] = slack_sum / static_cast<double>(slack_count);
  }
  result.report = {{"kind", "suite"},
                   {"corpus", corpus.filename().string()},
                   {"files", files.size()},
                   {"passed", result.passed},
                   {"failed", result.failed},
                   {"errors", result.errors},
                   {"certify", options.certify},
                   {"slack", slack},
                   {"entries", entries}};

  std::ostringstream csv;
  csv << "file,kind,status,dimension,sets,volume,distance_product,slack,slack_value,"
         "resolution,coverage\n";
  for (const auto& r : rows) {
    csv << r.file << ',' << r.kind << ',' << r.status << ',' << r.dimension << ','
        << r.sets << ',' << r.volume << ',' << r.product << ',' << r.slack << ','
        << (r.slack.empty() ? "" : csv_number(r.slack_value)) << ','
        << (r.coverage < 0 ? "" : std::to_string(r.resolution)) << ','
        << (r.coverage < 0 ? "" : csv_number(r.coverage)) << '\n';
  }
  result.csv = csv.str();
  return result;
}

}  // namespace lvi
