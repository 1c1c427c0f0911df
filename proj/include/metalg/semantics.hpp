#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "metalg/algebra.hpp"
#include "metalg/metric.hpp"
#include "metalg/term.hpp"

namespace metalg {

/// Assignment of carrier indices to variables, ordered by variable name.
using Valuation = std::map<std::string, std::size_t>;

std::string format_valuation(const Valuation& v, const MetricAlgebra& a);

/// v#(t): variables through `v`, applications through the operation tables.
/// Throws InputError on an unbound variable or unknown symbol.
std::size_t eval_term(const MetricAlgebra& a, const Valuation& v, const Term& t);

/// X |- lhs =eps rhs with finite eps >= 0.
class MEquation {
 public:
  /// Throws InputError unless both terms' variables lie in `vars` and eps >= 0.
  MEquation(std::set<std::string> vars, Term lhs, Term rhs, Rational eps);

  const std::set<std::string>& vars() const { return vars_; }
  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }
  const Rational& eps() const { return eps_; }

  /// Same equation over another variable set (must contain the terms' variables).
  MEquation with_vars(std::set<std::string> vars) const;
  MEquation with_eps(Rational eps) const;

  friend bool operator==(const MEquation&, const MEquation&) = default;

 private:
  std::set<std::string> vars_;
  Term lhs_, rhs_;
  Rational eps_;
};

/// `lhs =eps rhs`.
std::string format_equation(const MEquation& e);

struct SatWitness {
  Valuation valuation;
  ExtDistance distance;
};

struct SatResult {
  /// Empty when the equation holds; otherwise the lexicographically least
  /// violating valuation (variables by name, values by index).
  std::optional<SatWitness> witness;

  bool holds() const { return !witness.has_value(); }
  explicit operator bool() const { return holds(); }
};

struct SatBounds {
  std::size_t max_valuations = 10'000'000;
};

/// Exhaustive check of d(v# lhs, v# rhs) <= eps over all v : X -> A.
/// Throws BoundError when |A|^|X| exceeds the bound.
SatResult satisfies(const MetricAlgebra& a, const MEquation& e, SatBounds bounds = {});

/// Largest d(v# lhs, v# rhs) over all valuations of `vars`.
ExtDistance max_distance(const MetricAlgebra& a, const std::set<std::string>& vars, const Term& lhs,
                         const Term& rhs, SatBounds bounds = {});

struct TheoryFailure {
  std::size_t index;  // into the theory
  SatWitness witness;
};

/// nullopt when every equation holds.
std::optional<TheoryFailure> satisfies_all(const MetricAlgebra& a,
                                           const std::vector<MEquation>& theory,
                                           SatBounds bounds = {});

/// Equation file: `vars x, y; eq xor(x,y) =0 xor(y,x);`. A `vars` statement
/// applies to the equations after it. `#` starts a comment.
std::vector<MEquation> parse_equations(const Signature& sig, std::string_view text);

}  // namespace metalg
