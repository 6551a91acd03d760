#include "anrec/json_io.hpp"

#include <stdexcept>

namespace anrec {

namespace {

template <class S, class CoeffFn>
Json poly_json(const SparsePoly<S>& p, CoeffFn coeff) {
  const auto vars = variables(p);
  Json jv = Json::array();
  std::map<std::uint32_t, int> index;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    jv.push_back({vars[i].m, vars[i].a});
    index[vars[i].code()] = static_cast<int>(i);
  }
  Json terms = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json exps = Json::array();
    for (const auto& [code, e] : mono.factors()) exps.push_back({index.at(code), e});
    terms.push_back({{"exps", exps}, {"coeff", coeff(c)}});
  }
  return {{"vars", jv}, {"terms", terms}};
}

}  // namespace

Json to_json(const Rat& r) { return to_string(r); }

Json to_json(const CycScalar& c) {
  Json coeffs = Json::array();
  for (const auto& x : c.coeffs()) coeffs.push_back(to_string(x));
  return {{"h", c.h()}, {"coeffs", coeffs}};
}

Json to_json(const RatPoly& p) {
  return poly_json(p, [](const Rat& c) { return to_json(c); });
}

Json to_json(const CycPoly& p) {
  return poly_json(p, [](const CycScalar& c) { return to_json(c); });
}

Json to_json(const SymState& s) {
  Json terms = Json::array();
  for (const auto& [k, c] : s.terms()) terms.push_back({{"gammas", k}, {"coeff", to_json(c)}});
  return {{"h", s.h()}, {"terms", terms}};
}

Json to_json(const VerifyReport& r) {
  return {{"claim", r.claim}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}};
}

Json to_json(const CheckReport& r) {
  return {{"name", r.name}, {"pass", r.pass}, {"failures", r.failures}};
}

Json to_json(const PotentialG0& pot) {
  Json p = Json::array();
  for (const auto& [v, poly] : pot.p) p.push_back({{"m", v.m}, {"a", v.a}, {"poly", to_json(poly)}});
  return {{"N", pot.profile.N},
          {"D", pot.profile.D},
          {"mode", pot.profile.kind == ProfileKind::Primary ? "primary" : "descendant"},
          {"max_level", pot.profile.max_level},
          {"F", to_json(pot.F)},
          {"p", p}};
}

Json to_json(const PotentialTable& table) {
  Json genus = Json::array();
  for (int g = 0; g <= table.genus_max(); ++g) {
    genus.push_back({{"g", g},
                     {"cap", table.caps[g]},
                     {"constant_undetermined", g >= 2},
                     {"F", to_json(table.F[g])}});
  }
  return {{"N", table.N}, {"genus", genus}};
}

Json to_json(const WResidual& res, int N) {
  Json terms = Json::array();
  for (std::size_t g = 0; g < res.by_genus.size(); ++g) {
    for (const auto& [mono, c] : res.by_genus[g].terms()) {
      terms.push_back({{"genus", g}, {"monomial", mono.to_string()}, {"coeff", to_string(c)}});
    }
  }
  return {{"N", N}, {"a", res.a}, {"m", res.m}, {"cap", res.cap}, {"residual_terms", terms}, {"pass", res.vanishes()}};
}

Rat rat_from_json(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
  return parse_rat(j.get<std::string>());
}

CycScalar cyc_from_json(const Json& j) {
  const int h = j.at("h").get<int>();
  std::vector<Rat> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(rat_from_json(c));
  if (h == 1) {
    if (coeffs.size() != 1) throw std::invalid_argument("rational scalar needs exactly one coefficient");
    return CycScalar(coeffs[0]);
  }
  return CycScalar(CycContext::get(h), std::move(coeffs));
}

RatPoly rat_poly_from_json(const Json& j) {
  std::vector<VarId> vars;
  for (const auto& v : j.at("vars")) vars.push_back({v.at(0).get<int>(), v.at(1).get<int>()});
  RatPoly p;
  for (const auto& t : j.at("terms")) {
    std::vector<Monomial::Factor> f;
    for (const auto& e : t.at("exps")) {
      f.emplace_back(vars.at(e.at(0).get<std::size_t>()).code(), e.at(1).get<std::uint32_t>());
    }
    p.add_term(Monomial::from_factors(std::move(f)), rat_from_json(t.at("coeff")));
  }
  return p;
}

}  // namespace anrec
