#pragma once

#include <json.hpp>

#include "circov/core.hpp"
#include "circov/exactlp.hpp"
#include "circov/inequalities.hpp"
#include "circov/minors.hpp"
#include "circov/rational.hpp"
#include "circov/separation.hpp"

namespace circov::json_io {

using Json = nlohmann::ordered_json;

struct Format {
  bool decimal = false;  ///< add "<name>_decimal" next to every exact value
  int digits = 12;
};

Json rational(const Rational& q);
Json rationals(std::span<const Rational> v);
/// Adds key (exact string) and, when requested, key_decimal.
void put_rational(Json& obj, const std::string& key, const Rational& q, const Format& fmt);
void put_rationals(Json& obj, const std::string& key, std::span<const Rational> v, const Format& fmt);

Json index_set(const IndexSet& s);
IndexSet index_set_from(const Json& j, int n);

Json instance(const CirculantInstance& inst);
/// {"n": int, "k": int}
CirculantInstance instance_from(const Json& j);

Json params(const MinorParams& p);
Json minor(const CirculantMinor& m);
Json inequality(const LinearInequality& ineq, const Format& fmt = {});
Json facet_report(const FacetReport& r, const Format& fmt = {});
Json separation(const SeparationResult& s, const Format& fmt = {});
Json cutting_plane(const CuttingPlaneReport& r, const Format& fmt = {});
Json conjecture(const ConjectureRecord& rec);

/// Array of rational strings ("1/3"), decimal strings ("0.25") or JSON numbers,
/// all converted exactly.
RationalVector rational_vector_from(const Json& j);

}  // namespace circov::json_io
