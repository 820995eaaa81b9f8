#include "fibdet/serialize.hpp"

namespace fibdet {

using nlohmann::json;

json to_json(const Polynomial& p) {
  json terms = json::array();
  for (const Term& t : p.terms()) {
    terms.push_back({{"coef", t.coef.get_str()}, {"x", t.mono.ex}, {"s", t.mono.es}, {"q", t.mono.eq}});
  }
  return {{"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const json& j) {
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    terms.push_back({Monomial{t.at("x").get<std::int32_t>(), t.at("s").get<std::int32_t>(),
                              t.at("q").get<std::int32_t>()},
                     Integer(t.at("coef").get<std::string>())});
  }
  return Polynomial::from_terms(std::move(terms));
}

json to_json(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_canonical_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const IdentityParams& p) {
  json out = json::object();
  if (p.k) out["k"] = *p.k;
  if (p.r) out["r"] = *p.r;
  if (p.n) out["n"] = *p.n;
  if (p.i) out["i"] = *p.i;
  if (p.m) out["m"] = *p.m;
  return out;
}

json to_json(const IdentityCheck& c) {
  return {{"identity_id", c.identity_id},
          {"params", to_json(c.params)},
          {"pass", c.pass},
          {"expected_failure", c.expected_failure},
          {"witness", to_json(c.witness)},
          {"witness_text", to_canonical_string(c.witness)}};
}

json to_json(const SuiteRanges& r) {
  json out = {{"kmax", r.kmax}, {"nmax", r.nmax}, {"qkmax", r.qkmax}, {"qnmax", r.qnmax}, {"seq_nmax", r.seq_nmax}};
  if (r.subset) out["subset"] = *r.subset;
  return out;
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json probes = json::array();
  for (const auto& c : r.expected_failures) probes.push_back(to_json(c));
  return {{"ranges", to_json(r.ranges)},
          {"checks", std::move(checks)},
          {"expected_failures", std::move(probes)},
          {"failures", r.failures},
          {"elapsed_ms", r.elapsed.count()}};
}

}  // namespace fibdet
