// JSON and CSV serialization.

#pragma once

#include "absord/absorder.hpp"
#include "absord/qseries.hpp"
#include "absord/singer.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace absord {

using nlohmann::json;

inline json to_json(const Factorization& w) {
  json factors = json::array();
  for (const Matrix& t : w.factors()) factors.push_back(format_matrix(t));
  return json{{"factors", factors}, {"product", format_matrix(w.product())}};
}

/// Parses {"factors": [...], "product": "..."} and rejects a product mismatch.
inline Factorization factorization_from_json(const json& j, const FieldPtr& field, int n) {
  std::vector<Matrix> factors;
  for (const auto& s : j.at("factors")) factors.push_back(parse_matrix(s.get<std::string>(), field));
  Factorization w(field, n, std::move(factors));
  if (j.contains("product") && !(parse_matrix(j.at("product").get<std::string>(), field) == w.product()))
    throw std::invalid_argument("stored product does not match the factors");
  return w;
}

/// {exponent: "num/den"}.
inline json to_json(const LaurentPoly& f) {
  json out = json::object();
  for (const auto& [e, c] : f.terms()) out[std::to_string(e)] = to_string(c);
  return out;
}

inline json to_json(const IntervalModel& model) {
  json ranks = json::array();
  for (int r = 0; r <= model.length(); ++r) {
    json level = json::array();
    for (auto i : model.rank(r)) level.push_back(format_matrix(model.element(i)));
    ranks.push_back(level);
  }
  // covers use positions in the flattened rank lists, which equal model indices
  json covers = json::array();
  for (auto [i, j] : model.cover_pairs()) covers.push_back(json::array({i, j}));
  return json{{"n", model.n()},
              {"length", model.length()},
              {"q", model.top().field().name()},
              {"top", format_matrix(model.top())},
              {"ranks", ranks},
              {"covers", covers}};
}

struct FlagRow {
  Composition alpha;
  Int enumerated;
  std::optional<Int> formula;  // absent when the top is not regular elliptic

  bool match() const { return formula && *formula == enumerated; }
};

inline void write_flag_csv(std::ostream& os, const std::vector<FlagRow>& rows) {
  os << "alpha;enumerated;formula;match\n";
  for (const auto& r : rows)
    os << r.alpha.str() << ';' << to_string(r.enumerated) << ';'
       << (r.formula ? to_string(*r.formula) : std::string()) << ';'
       << (r.formula ? (r.match() ? "true" : "false") : "") << '\n';
}

}  // namespace absord
