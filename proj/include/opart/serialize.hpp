#pragma once

// Canonical JSON for series, count tables and chain reports. Needs the vendored
// nlohmann json.hpp on the include path. Keys come out sorted and integers are
// written as strings, so equal values serialize to identical bytes.

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "alpha_system.hpp"
#include "chain.hpp"
#include "count_table.hpp"
#include "qlaurent.hpp"

namespace opart {

using Json = nlohmann::json;

inline Json to_json(const AlphaSystem& sys) {
  Json a = Json::array();
  for (auto x : sys.generators()) a.push_back(x);
  return Json{{"N", sys.modulus()}, {"a", a}};
}

/// {"trunc": n or null when exact, "terms": [{"c": "...", "d": k, "q": e}, ...]}
inline Json to_json(const QLaurent& s) {
  Json terms = Json::array();
  s.for_each_term([&](Exp e, const DPoly& c) {
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) terms.push_back(Json{{"q", e}, {"d", k}, {"c", to_string(c[k])}});
  });
  return Json{{"trunc", s.is_exact() ? Json(nullptr) : Json(s.trunc())}, {"terms", terms}};
}

inline Json row_json(const DPoly& row) {
  Json by_k = Json::array();
  for (std::size_t k = 0; k < row.size(); ++k) by_k.push_back(to_string(row[k]));
  if (by_k.empty()) by_k.push_back("0");
  return by_k;
}

inline Json to_json(const CountTable& t, const AlphaSystem& sys, std::string_view side) {
  Json rows = Json::array();
  for (std::int64_t n = 0; n <= t.n_max(); ++n) rows.push_back(Json{{"n", n}, {"by_k", row_json(t.row(n))}});
  return Json{{"system", to_json(sys)}, {"n_max", t.n_max()}, {"side", side}, {"rows", rows}};
}

inline Json to_json(const XSeries::Monomial& m) {
  return Json{{"x", m.x}, {"q", m.q}, {"d", m.d.to_string()}};
}

inline Json to_json(const ChainReport& rep) {
  Json stages = Json::array();
  for (const auto& s : rep.stages) {
    Json j{{"name", s.name}, {"residual_zero", s.residual_zero}};
    if (s.first_offending) j["first_offending"] = to_json(*s.first_offending);
    stages.push_back(std::move(j));
  }
  return Json{{"system", to_json(rep.system)},
              {"trunc", rep.trunc},
              {"x_trunc", rep.x_trunc},
              {"ell_max", rep.ell_max},
              {"stages", stages},
              {"verdict", rep.passed() ? "pass" : "fail"}};
}

/// Compact canonical text.
inline std::string canonical(const Json& j) { return j.dump(); }

}  // namespace opart
