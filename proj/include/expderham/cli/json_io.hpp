#pragma once

// JSON forms of the model types. Complex floats are [re, im], exact scalars are
// "p/q" strings (see ExactComplex::parse), a puncture at infinity is "inf".

#include <json.hpp>

#include "expderham/global0/global0.hpp"
#include "expderham/model/curve.hpp"
#include "expderham/model/differential.hpp"
#include "expderham/reduction/reduction.hpp"

namespace expderham {

using json = nlohmann::ordered_json;

json complex_json(Complex z);
Complex complex_from_json(const json& j);

json exact_json(const ExactComplex& c);
ExactComplex exact_from_json(const json& j);

/// Ascending coefficient list.
json poly_json(const Poly& p);
Poly poly_from_json(const json& j);

/// {"numerator": [...], "denominator": [...]}; the denominator defaults to 1.
json rational_json(const RationalFunction& r);
RationalFunction rational_from_json(const json& j);

/// {"exponent": "coefficient", ...} with an optional "tail": {"C", "R", "start"}.
json laurent_json(const LaurentData& g);
LaurentData laurent_from_json(const json& j);

/// Local: {"d": 2, "convention": "plus"}. Global: {"punctures": [{"location", "principal"}]}.
/// A missing convention falls back to `fallback`.
json type_json(const ExpType& t);
ExpType type_from_json(const json& j, Convention fallback = Convention::plus);
GlobalExpType global_type_from_json(const json& j);

/// {"type": ..., "coefficient": ...}. A local coefficient is a Laurent object or a rational one.
json differential_json(const ExpDifferential& w);
ExpDifferential differential_from_json(const json& j, Convention fallback = Convention::plus);

json curve_json(const CurveSpec& c);

json reduction_json(const ReductionResult& r);

/// Throws InputError naming the missing key.
const json& require(const json& j, const char* key);

}  // namespace expderham
