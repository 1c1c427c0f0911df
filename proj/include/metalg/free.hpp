#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "metalg/algebra.hpp"
#include "metalg/semantics.hpp"
#include "metalg/term.hpp"

namespace metalg {

/// A nonempty finite class of algebras over one signature.
class ClassK {
 public:
  /// Throws InputError on an empty list, mixed signatures, or invalid members.
  explicit ClassK(std::vector<AlgebraPtr> members);

  const std::vector<AlgebraPtr>& members() const { return members_; }
  const Signature& signature() const { return members_.front()->signature(); }
  bool all_quantitative() const { return quantitative_; }

 private:
  std::vector<AlgebraPtr> members_;
  bool quantitative_ = false;
};

struct FreeBounds {
  std::size_t max_coordinates = 100000;  // sum over members of |A|^|X|
  std::size_t max_carrier = 4096;
};

/// One factor of the valuation-indexed product: member index and the values of
/// the (sorted) variables.
struct Coordinate {
  std::size_t member;
  std::vector<std::size_t> values;
};

/// Free algebra of SP(K) over X, realized inside the product of one copy of
/// each member per valuation X -> A, generated by the variable tuples.
struct FreeAlgebra {
  AlgebraPtr base;
  std::vector<std::string> vars;            // sorted
  std::vector<std::size_t> generators;      // aligned with vars
  std::vector<Term> reps;                   // per element: a minimal-depth term F maps onto it
  std::vector<Coordinate> coordinates;
  std::vector<std::vector<std::size_t>> tuples;  // per element: value at each coordinate
  std::vector<AlgebraPtr> members;

  std::set<std::string> var_set() const { return {vars.begin(), vars.end()}; }
  /// The coordinate tuple of t, i.e. v#(t) at each (member, valuation).
  std::vector<std::size_t> evaluate(const Term& t) const;
  /// F(t). Throws InputError if t is not over vars or its tuple is outside the
  /// carrier (which would mean a closure bug).
  std::size_t image(const Term& t) const;
};

FreeAlgebra free_algebra(const ClassK& k, const std::set<std::string>& vars, FreeBounds bounds = {});

/// d(F s, F t) = max over members and valuations of d(v# s, v# t).
ExtDistance free_distance(const FreeAlgebra& f, const Term& s, const Term& t);

/// Why a universal extension could not be built.
class ExtensionError : public InputError {
 public:
  using InputError::InputError;
};

/// The unique M-homomorphism h : Free -> a with h . F = v#, built from the
/// representatives and verified homomorphic and non-expansive. Throws
/// ExtensionError when a is outside the prevariety generated by the class.
Homomorphism universal_extension(const FreeAlgebra& f, AlgebraPtr a, const Valuation& v);

/// Each variable mapped to its generator in the free algebra.
Valuation generator_valuation(const FreeAlgebra& f);

struct TheoryEntry {
  Term lhs, rhs;
  ExtDistance eps;
  /// Finite eps: an M-equation. Infinite entries are informative only.
  bool is_equation() const { return !eps.is_infinite(); }
};

struct Theory {
  std::vector<std::string> vars;
  std::vector<TheoryEntry> entries;
};

/// `<lhs> =<eps> <rhs>` per entry; infinite entries prefixed `# `.
std::string format_theory(const Theory& t);

struct TheoryBounds {
  FreeBounds free;
  std::size_t max_terms = 200000;
};

/// Distances between all pairs of distinct free elements (by representative),
/// plus (representative, term) for every term up to `depth` other than its
/// representative. Each entry's eps is the free distance.
Theory equational_theory(const ClassK& k, const std::set<std::string>& vars, std::size_t depth,
                         TheoryBounds bounds = {});

struct Refuted {
  MEquation equation;
  SatWitness witness;
};

struct ConsistentUpTo {
  std::size_t depth;
};

using Membership = std::variant<Refuted, ConsistentUpTo>;

/// Checks `candidate` against every finite entry of the bounded theory of K.
Membership membership_bounded(const ClassK& k, const MetricAlgebra& candidate,
                              const std::set<std::string>& vars, std::size_t depth,
                              TheoryBounds bounds = {});

struct ClosureViolation {
  std::string construction;  // e.g. "product(0,1)", "subalgebra(2){0,1}", "quotient(0)"
  MEquation equation;
  SatWitness witness;
};

struct HspBounds {
  ProductBounds product;
  std::size_t max_subset_carrier = 12;
  std::size_t max_congruence_carrier = 6;
};

struct HspReport {
  std::size_t pool = 0;
  std::vector<std::size_t> models;  // pool indices that satisfy the theory
  std::size_t products = 0;
  std::size_t subalgebras = 0;
  std::size_t quotients = 0;
  std::vector<ClosureViolation> violations;

  bool closed() const { return violations.empty(); }
};

/// Keeps the models of `theory` from `pool`, then checks that every product of
/// two models, every generated subalgebra of a model and every canonical
/// quotient of a model by a congruence still satisfies the theory.
HspReport hsp_closure_suite(const std::vector<MEquation>& theory,
                            const std::vector<AlgebraPtr>& pool, HspBounds bounds = {});

struct NonVarietyReport {
  AlgebraPtr original;
  AlgebraPtr quotient;
  Homomorphism projection;
  Rational scale;
  ExtDistance original_min_distance;
  ExtDistance quotient_min_distance;
  /// All distinct points at distance >= 1.
  bool original_has_lower_bound = false;
  bool quotient_has_lower_bound = false;
  bool original_quantitative = false;
  bool quotient_quantitative = false;
};

/// Smallest distance between distinct points; infinity for a one-point carrier.
ExtDistance min_distinct_distance(const MetricAlgebra& a);

/// xor on {0,1} with d = 1, scaled by `scale`: the identity is a surjective
/// M-homomorphism that destroys the lower bound "distinct points are >= 1 apart".
NonVarietyReport non_variety_demo(const Rational& scale = Rational(1, 2));

/// Fixed example algebras used by the demo, tests, and data files.
namespace examples {
Signature xor_signature();
/// ({0,1}, xor, d(0,1) = distance).
AlgebraPtr xor_algebra(const ExtDistance& distance = ExtDistance(1));
/// ({0,1}, u = negation, d(0,1) = 1) over {u/1}.
AlgebraPtr negation_algebra();
/// Z4 under addition with constant zero, over {add/2, zero/0}, unit distances times `scale`.
AlgebraPtr z4_algebra(const Rational& scale = Rational(1));
/// One-point algebra over `sig`.
AlgebraPtr trivial_algebra(const Signature& sig);
}  // namespace examples

}  // namespace metalg
