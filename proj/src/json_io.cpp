#include "apfact/json_io.hpp"

#include "apfact/errors.hpp"

namespace apfact {

namespace {

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

double number_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) {
    throw ParseError(std::string("field \"") + key + "\" must be a number");
  }
  return v.get<double>();
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) {
    throw ParseError(std::string("field \"") + key + "\" must be a string");
  }
  return v.get<std::string>();
}

Json attain_json(Attain a) { return std::string(to_string(a)); }

Attain attain_from_json(const Json& j) {
  if (j.is_boolean()) return j.get<bool>() ? Attain::Yes : Attain::No;
  const std::string s = j.get<std::string>();
  if (s == "yes") return Attain::Yes;
  if (s == "no") return Attain::No;
  if (s == "unknown") return Attain::Unknown;
  throw ParseError("attainment must be yes/no/unknown, got \"" + s + "\"");
}

Json edge_json(const Edge& e) {
  Json j;
  j["value"] = e.is_finite() ? Json(e.value->str()) : Json("inf");
  j["attained"] = attain_json(e.attained);
  return j;
}

Json vec2_json(const Vec2& v) {
  return Json{{"c1", to_json(v.c1)}, {"c2", to_json(v.c2)}};
}

// One declared edge out of the flat key layout:
//   "eta1_plus": "num/den" | "inf",  "eta1_plus_attained": bool (optional).
std::optional<DeclaredSpectrum::Entry> declared_entry(const Json& j,
                                                      const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  DeclaredSpectrum::Entry entry;
  if (it->is_string() && it->get<std::string>() == "inf") {
    entry.value = std::nullopt;
  } else {
    entry.value = frequency_from_json(*it);
  }
  auto at = j.find(std::string(key) + "_attained");
  if (at != j.end()) entry.attained = attain_from_json(*at);
  return entry;
}

void emit_declared_entry(Json& j, const char* key,
                         const std::optional<DeclaredSpectrum::Entry>& entry) {
  if (!entry) return;
  j[key] = entry->value ? Json(entry->value->str()) : Json("inf");
  if (entry->attained != Attain::Unknown) {
    j[std::string(key) + "_attained"] = attain_json(entry->attained);
  }
}

}  // namespace

Json to_json(const Frequency& f) { return f.str(); }

Frequency frequency_from_json(const Json& j) {
  if (!j.is_string()) {
    throw ParseError("frequency must be a \"num/den\" string");
  }
  try {
    return Frequency::parse(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(std::string("bad frequency: ") + e.what());
  }
}

Json to_json(const APPoly& p) {
  Json arr = Json::array();
  for (const Term& t : p.terms()) {
    arr.push_back(Json{{"freq", t.freq.str()},
                       {"re", t.coeff.real()},
                       {"im", t.coeff.imag()}});
  }
  return arr;
}

APPoly appoly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("exponential sum must be an array");
  std::vector<Term> terms;
  terms.reserve(j.size());
  for (const Json& t : j) {
    terms.push_back({frequency_from_json(field(t, "freq")),
                     Complex(number_field(t, "re"), number_field(t, "im"))});
  }
  return APPoly::from_terms(std::move(terms));
}

Json to_json(const TriangularSymbol& sym) {
  Json j;
  j["lambda"] = sym.lambda.str();
  j["g"] = to_json(sym.g);
  if (sym.declared_gaps) {
    Json d = Json::object();
    emit_declared_entry(d, "eta1_minus", sym.declared_gaps->eta1_minus);
    emit_declared_entry(d, "eta2_minus", sym.declared_gaps->eta2_minus);
    emit_declared_entry(d, "eta1_plus", sym.declared_gaps->eta1_plus);
    emit_declared_entry(d, "eta2_plus", sym.declared_gaps->eta2_plus);
    j["declared_gaps"] = d;
  }
  return j;
}

TriangularSymbol symbol_from_json(const Json& j) {
  TriangularSymbol sym;
  sym.lambda = frequency_from_json(field(j, "lambda"));
  if (sym.lambda.sign() <= 0) {
    throw ValidationError("lambda must be positive, got " + sym.lambda.str());
  }
  sym.g = appoly_from_json(field(j, "g"));
  auto it = j.find("declared_gaps");
  if (it != j.end() && !it->is_null()) {
    DeclaredSpectrum ds;
    ds.eta1_minus = declared_entry(*it, "eta1_minus");
    ds.eta2_minus = declared_entry(*it, "eta2_minus");
    ds.eta1_plus = declared_entry(*it, "eta1_plus");
    ds.eta2_plus = declared_entry(*it, "eta2_plus");
    sym.declared_gaps = ds;
  }
  return sym;
}

Json to_json(const Mat2& m) {
  return Json{{"e11", to_json(m.e11)},
              {"e12", to_json(m.e12)},
              {"e21", to_json(m.e21)},
              {"e22", to_json(m.e22)}};
}

Mat2 mat2_from_json(const Json& j) {
  Mat2 m;
  m.e11 = appoly_from_json(field(j, "e11"));
  m.e12 = appoly_from_json(field(j, "e12"));
  m.e21 = appoly_from_json(field(j, "e21"));
  m.e22 = appoly_from_json(field(j, "e22"));
  return m;
}

Json to_json(const Factorization& fac) {
  return Json{{"g_minus", to_json(fac.G_minus)},
              {"g_plus", to_json(fac.G_plus)},
              {"d_exponents",
               Json::array({fac.D_exponents.first.str(),
                            fac.D_exponents.second.str()})},
              {"truncation_residual", fac.truncation_residual}};
}

Factorization factorization_from_json(const Json& j) {
  Factorization fac;
  fac.G_minus = mat2_from_json(field(j, "g_minus"));
  fac.G_plus = mat2_from_json(field(j, "g_plus"));
  const Json& d = field(j, "d_exponents");
  if (!d.is_array() || d.size() != 2) {
    throw ParseError("d_exponents must be a two-element array");
  }
  fac.D_exponents = {frequency_from_json(d[0]), frequency_from_json(d[1])};
  auto it = j.find("truncation_residual");
  if (it != j.end()) fac.truncation_residual = it->get<double>();
  return fac;
}

Json to_json(const RHSolution& sol) {
  return Json{{"phi1_plus", to_json(sol.phi1_plus)},
              {"phi2_plus", to_json(sol.phi2_plus)},
              {"phi1_minus", to_json(sol.phi1_minus)},
              {"phi2_minus", to_json(sol.phi2_minus)},
              {"provenance", to_string(sol.provenance)},
              {"used_nu", sol.used_nu.str()}};
}

RHSolution solution_from_json(const Json& j) {
  RHSolution sol;
  sol.phi1_plus = appoly_from_json(field(j, "phi1_plus"));
  sol.phi2_plus = appoly_from_json(field(j, "phi2_plus"));
  sol.phi1_minus = appoly_from_json(field(j, "phi1_minus"));
  sol.phi2_minus = appoly_from_json(field(j, "phi2_minus"));
  const std::string p = string_field(j, "provenance");
  if (p == "structured") {
    sol.provenance = Provenance::StructuredN;
  } else if (p == "big-gap") {
    sol.provenance = Provenance::BigGap;
  } else if (p == "one-sided") {
    sol.provenance = Provenance::OneSided;
  } else {
    throw ParseError("unknown provenance \"" + p + "\"");
  }
  sol.used_nu = frequency_from_json(field(j, "used_nu"));
  return sol;
}

Json to_json(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(
        Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return Json{{"max_residual", rep.max_residual},
              {"sample_count", rep.sample_count},
              {"worst_point", Json{{"re", rep.worst_point.real()},
                                   {"im", rep.worst_point.imag()}}},
              {"checks", checks}};
}

Json to_json(const GapData& gap) {
  return Json{{"g_minus", to_json(gap.g_minus)},
              {"g_plus", to_json(gap.g_plus)},
              {"zero_coeff", Json{{"re", gap.zero_coeff.real()},
                                  {"im", gap.zero_coeff.imag()}}},
              {"has_zero_frequency", gap.has_zero_frequency},
              {"eta1_minus", edge_json(gap.eta1_minus)},
              {"eta2_minus", edge_json(gap.eta2_minus)},
              {"eta1_plus", edge_json(gap.eta1_plus)},
              {"eta2_plus", edge_json(gap.eta2_plus)}};
}

Json to_json(const ClassMembership& mem) {
  Json j{{"n", mem.N},
         {"lambda", mem.lambda.str()},
         {"nu_min", mem.nu_min.str()},
         {"nu_max", mem.nu_max.str()},
         {"chosen_nu", mem.chosen_nu.str()},
         {"beta", mem.beta.str()},
         {"a_minus", to_json(mem.a_minus)},
         {"a_plus", to_json(mem.a_plus)}};
  if (mem.b_minus) j["b_minus"] = to_json(*mem.b_minus);
  if (mem.b_plus) j["b_plus"] = to_json(*mem.b_plus);
  return j;
}

Json to_json(const IndexResult& idx) {
  Json j{{"status", to_string(idx.status)},
         {"mu", idx.mu.str()},
         {"delta1", idx.delta1.str()},
         {"delta2", idx.delta2.str()},
         {"case_tag", idx.case_tag}};
  if (idx.first_columns) {
    j["first_columns"] = Json{{"minus", vec2_json(idx.first_columns->first)},
                              {"plus", vec2_json(idx.first_columns->second)}};
  }
  return j;
}

Json to_json(const ToeplitzVerdict& verdict) {
  Json j{{"verdict", to_string(verdict.verdict)},
         {"not_semi_fredholm", verdict.not_semi_fredholm},
         {"only_if", verdict.only_if},
         {"rules", verdict.rules},
         {"conditions", verdict.conditions},
         {"detail", verdict.detail}};
  if (verdict.mu) j["mu"] = verdict.mu->str();
  return j;
}

}  // namespace apfact
