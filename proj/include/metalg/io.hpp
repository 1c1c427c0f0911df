#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "metalg/algebra.hpp"
#include "metalg/semantics.hpp"

namespace metalg::io {

using nlohmann::json;

/// Algebra file:
///   signature: [{name, arity}], carrier: [names], dist: n x n distance literals,
///   ops: {name: nested array of element names, depth = arity; constants a bare name}.
/// Shape errors throw InputError with a location; metric axioms and table
/// contents beyond name lookup are left to validate_algebra.
MetricAlgebra algebra_from_json(const json& j);
json algebra_to_json(const MetricAlgebra& a);

/// Distance literal as JSON: string ("3/2", "0.5", "inf") or integer.
ExtDistance distance_from_json(const json& j);
json distance_to_json(const ExtDistance& d);

/// Homomorphism file: {source: algebra, target: algebra, map: {element: element}}.
/// Throws InputError when the map is not a homomorphism.
Homomorphism homomorphism_from_json(const json& j);
json homomorphism_to_json(const Homomorphism& h);

/// Reads a whole file; "-" reads stdin.
std::string read_text(const std::string& path);
json read_json(const std::string& path);
AlgebraPtr load_algebra(const std::string& path);
std::vector<MEquation> load_equations(const Signature& sig, const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace metalg::io
