#include "lvi/cover_io.hpp"

#include <fstream>

#include "lvi/error.hpp"

namespace lvi {

using nlohmann::json;

Rational rational_from_json(const json& value) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw InputError("expected a rational string or integer, got " +
                   value.dump());
}

json rational_to_json(const Rational& value) { return to_string(value); }

json point_to_json(const Point& point) {
  json out = json::array();
  for (const Rational& x : point) out.push_back(rational_to_json(x));
  return out;
}

namespace {

std::vector<Rational> rationals(const json& arr, const char* what) {
  if (!arr.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const json& v : arr) out.push_back(rational_from_json(v));
  return out;
}

std::vector<Rational> weight_row(const json& w, std::size_t n) {
  if (!w.is_array()) return std::vector<Rational>(n, rational_from_json(w));
  std::vector<Rational> flat;
  for (const json& row : w) {
    if (row.is_array()) {
      for (const json& v : row) flat.push_back(rational_from_json(v));
    } else {
      flat.push_back(rational_from_json(row));
    }
  }
  if (flat.size() == 1) return std::vector<Rational>(n, flat.front());
  if (flat.size() != n) {
    throw InputError("weight table has " + std::to_string(flat.size()) +
                     " entries for dimension " + std::to_string(n));
  }
  return flat;
}

}  // namespace

WeightedCover cover_from_json(const json& doc) {
  WeightedCover cover;
  try {
    cover.dimension = doc.at("dimension").get<std::size_t>();
    const json& sets = doc.at("sets");
    if (!sets.is_array()) throw InputError("\"sets\" must be an array");
    long long next_id = 1;
    for (const json& s : sets) {
      OpenBox box{rationals(s.at("lo"), "lo"), rationals(s.at("hi"), "hi")};
      cover.sets.push_back(std::move(box));
      cover.weights.push_back(weight_row(s.at("weights"), cover.dimension));
      cover.ids.push_back(s.contains("id") ? s.at("id").get<long long>()
                                           : next_id);
      ++next_id;
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("cover file: ") + e.what());
  }
  check_cover(cover);
  return cover;
}

long long set_label(const WeightedCover& cover, std::size_t i) {
  return cover.ids.empty() ? static_cast<long long>(i + 1) : cover.ids[i];
}

json cover_to_json(const WeightedCover& cover) {
  json sets = json::array();
  for (std::size_t i = 0; i < cover.size(); ++i) {
    sets.push_back({{"id", set_label(cover, i)},
                    {"lo", point_to_json(cover.sets[i].lo)},
                    {"hi", point_to_json(cover.sets[i].hi)},
                    {"weights", json::array({point_to_json(cover.weights[i])})}});
  }
  return {{"dimension", cover.dimension}, {"sets", std::move(sets)}};
}

WeightedCover load_cover(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return cover_from_json(doc);
}

void save_cover(const WeightedCover& cover, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << cover_to_json(cover).dump(2) << "\n";
}

}  // namespace lvi
