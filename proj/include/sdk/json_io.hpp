#pragma once

#include "sdk/descent.hpp"

#include "json.hpp"

#include <string>

namespace sdk {

using json = nlohmann::json;

// Rationals travel as "p/q" strings; integers may also be given as JSON numbers.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& q);

// {"re", "im", "precision_bits"}
json complex_to_json(Complex z, int precision_bits = 53);
json complex_matrix_to_json(const CMat& m, int precision_bits = 53);
json int_matrix_to_json(const IntMat& m);
IntMat int_matrix_from_json(const json& j);

// "Q", or {"min_poly": [c0, c1, ..., 1]}
NumberField field_from_json(const json& j);
json field_to_json(const NumberField& f);
// a rational, or a coefficient list in the power basis
FieldElement element_from_json(const json& j, const NumberField& f);
json element_to_json(const FieldElement& x);

// a K element: a rational or F element, or {"a": ..., "b": ...} for a + b sqrt(delta)
KElement k_element_from_json(const json& j, const CMExtension& k);
FQuat quaternion_from_json(const json& j, const FQuatAlgebra& d);
QK k_quaternion_from_json(const json& j, const SecondKindData& d);

// Throws ParseError on any malformed input.
DatumSpec spec_from_json(const json& j);
DatumSpec load_spec(const std::string& path);

json to_json(const FactorClass& c);
json to_json(const PlaceReport& p);
json to_json(const BundleReport& r);
json to_json(const DescentReport& r);
json bundle_to_json(const InvolutionBundle& b, int precision_bits = kDefaultPrecisionBits);

// q.json: {"factor": k, "q": matrix} or {"factor": k, "qs": [matrix, ...]}; entries as for the factor's algebra.
std::vector<HeckeEntry> hecke_from_json(const json& j, const std::vector<InvolutionBundle>& bundles);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace sdk
