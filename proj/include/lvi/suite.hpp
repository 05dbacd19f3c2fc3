#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvi/derrick.hpp"

namespace lvi {

// Generator specs for a seeded corpus of random box covers of [0,1]^n with
// 2 to 16 sets each. Instance i has its own seed drawn from `seed`.
std::vector<nlohmann::json> corpus_specs(std::size_t instances, std::size_t n,
                                         std::uint64_t seed);

// Writes corpus_specs into `dir` as <prefix>_<nnnn>.json; returns the paths.
std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir,
                                                const std::string& prefix,
                                                std::size_t instances, std::size_t n,
                                                std::uint64_t seed);

struct SuiteOptions {
  bool certify = false;  // boundary and surjectivity checks on covers
  CertifyOptions certify_options;
};

struct SuiteResult {
  nlohmann::json report;
  std::string csv;  // one row per file
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;
};

// Every *.json file in `corpus`, in filename order. Cover files get the
// volume inequality (and the map certificate when requested), simplex files
// the simplex bounds, metric files the axiom check. A file that cannot be
// read or parsed is an error entry; the run continues.
SuiteResult run_suite(const std::filesystem::path& corpus, const SuiteOptions& options);

}  // namespace lvi
