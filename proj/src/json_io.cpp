#include "circov/json_io.hpp"

#include "circov/errors.hpp"

namespace circov::json_io {

Json rational(const Rational& q) { return to_string(q); }

Json rationals(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational(q));
  return out;
}

void put_rational(Json& obj, const std::string& key, const Rational& q, const Format& fmt) {
  obj[key] = rational(q);
  if (fmt.decimal) obj[key + "_decimal"] = to_decimal(q, fmt.digits);
}

void put_rationals(Json& obj, const std::string& key, std::span<const Rational> v, const Format& fmt) {
  obj[key] = rationals(v);
  if (fmt.decimal) {
    Json d = Json::array();
    for (const auto& q : v) d.push_back(to_decimal(q, fmt.digits));
    obj[key + "_decimal"] = d;
  }
}

Json index_set(const IndexSet& s) { return Json(s.elements()); }

IndexSet index_set_from(const Json& j, int n) {
  if (!j.is_array()) throw InvalidArgument("index set must be a JSON array");
  std::vector<int> v;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InvalidArgument("index set entries must be integers");
    v.push_back(e.get<int>());
  }
  return IndexSet(n, std::move(v));
}

Json instance(const CirculantInstance& inst) { return Json{{"n", inst.n()}, {"k", inst.k()}}; }

CirculantInstance instance_from(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j["n"].is_number_integer() ||
      !j["k"].is_number_integer()) {
    throw InvalidArgument(R"(instance must look like {"n": int, "k": int})");
  }
  return CirculantInstance(j["n"].get<int>(), j["k"].get<int>());
}

Json params(const MinorParams& p) {
  return Json{{"d", p.d},           {"n1", p.n1},           {"n2", p.n2}, {"n3", p.n3},
              {"n_prime", p.n_prime}, {"k_prime", p.k_prime}, {"r", p.r}};
}

Json minor(const CirculantMinor& m) {
  Json cycles = Json::array();
  for (const auto& c : m.cycles) cycles.push_back(index_set(c));
  return Json{{"W", index_set(m.W)}, {"cycles", cycles}, {"params", params(m.params)}};
}

Json inequality(const LinearInequality& ineq, const Format& fmt) {
  Json out = Json::object();
  put_rationals(out, "coefficients", ineq.coefficients, fmt);
  put_rational(out, "rhs", ineq.rhs, fmt);
  return out;
}

Json facet_report(const FacetReport& r, const Format& fmt) {
  Json out{{"inequality", inequality(r.inequality, fmt)},
           {"valid", r.valid},
           {"relevant", r.relevant},
           {"facet_by_theorem", r.facet_by_theorem}};
  out["facet_by_rank"] = r.facet_by_rank ? Json(*r.facet_by_rank) : Json(nullptr);
  out["roots_found"] = r.roots_found;
  return out;
}

Json separation(const SeparationResult& s, const Format& fmt) {
  Json out{{"kind", to_string(s.kind)}, {"violated", s.violated}};
  if (s.kind == CutKind::kRow) out["row"] = s.row;
  if (s.kind == CutKind::kMinor) {
    out["W"] = index_set(s.W);
    out["d"] = s.d;
    out["r"] = s.r;
    out["a"] = s.a;
    out["rotation"] = s.rotation;
    if (s.params) out["params"] = params(*s.params);
  }
  out["inequality"] = inequality(s.inequality, fmt);
  put_rational(out, "violation", s.violation, fmt);
  return out;
}

Json cutting_plane(const CuttingPlaneReport& r, const Format& fmt) {
  Json rounds = Json::array();
  for (const auto& round : r.rounds) {
    Json cuts = Json::array();
    for (const auto& c : round.cuts_added) cuts.push_back(separation(c, fmt));
    Json entry = Json::object();
    put_rational(entry, "lp_value", round.lp_value, fmt);
    put_rationals(entry, "point", round.point, fmt);
    entry["cuts_added"] = cuts;
    rounds.push_back(entry);
  }
  Json final_ = Json::object();
  put_rational(final_, "lp_value", r.lp_value, fmt);
  put_rationals(final_, "point", r.point, fmt);
  final_["converged"] = r.converged;
  if (r.ip_value) {
    put_rational(final_, "ip_value", *r.ip_value, fmt);
    final_["ip_cover"] = index_set(*r.ip_cover);
    put_rational(final_, "gap", *r.gap, fmt);
  } else {
    final_["ip_value"] = nullptr;
    final_["gap"] = nullptr;
  }
  return Json{{"rounds", rounds}, {"final", final_}};
}

Json conjecture(const ConjectureRecord& rec) {
  Json out{{"verdict", to_string(rec.verdict)}, {"subsets_examined", rec.subsets_examined}};
  out["witness"] = rec.witness ? minor(*rec.witness) : Json(nullptr);
  return out;
}

RationalVector rational_vector_from(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected a JSON array of rationals");
  RationalVector out;
  for (const auto& e : j) {
    if (e.is_string()) {
      out.push_back(parse_rational(e.get<std::string>()));
    } else if (e.is_number_integer()) {
      out.push_back(Rational(e.get<long>()));
    } else if (e.is_number()) {
      out.push_back(parse_rational(e.dump()));
    } else {
      throw InvalidArgument("expected a rational string or number, got " + e.dump());
    }
  }
  return out;
}

}  // namespace circov::json_io
