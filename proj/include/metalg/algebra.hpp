#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "metalg/error.hpp"
#include "metalg/metric.hpp"
#include "metalg/term.hpp"

namespace metalg {

/// Total operation table A^arity -> A, indexed in lexicographic tuple order
/// (first argument most significant).
struct OpTable {
  std::size_t arity = 0;
  std::vector<std::size_t> values;

  friend bool operator==(const OpTable&, const OpTable&) = default;
};

/// Finite metric Σ-algebra on carrier {0, ..., n-1}.
///
/// The constructor only checks that shapes line up (one table per symbol, one
/// name per element, n x n distances); validate_algebra reports the rest.
class MetricAlgebra {
 public:
  MetricAlgebra(Signature sig, std::vector<std::string> names, DistMatrix dist,
                std::vector<OpTable> ops);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t e) const { return names_[e]; }
  std::optional<std::size_t> element(std::string_view name) const;
  const DistMatrix& dist() const { return dist_; }
  const ExtDistance& dist(std::size_t a, std::size_t b) const { return dist_(a, b); }
  const std::vector<OpTable>& ops() const { return ops_; }
  const OpTable& table(std::size_t symbol) const { return ops_[symbol]; }

  /// sigma(args) for symbol index `symbol`.
  std::size_t apply(std::size_t symbol, std::span<const std::size_t> args) const {
    std::size_t idx = 0;
    for (auto a : args) idx = idx * size() + a;
    return ops_[symbol].values[idx];
  }

  friend bool operator==(const MetricAlgebra&, const MetricAlgebra&) = default;

 private:
  Signature sig_;
  std::vector<std::string> names_;
  DistMatrix dist_;
  std::vector<OpTable> ops_;
};

using AlgebraPtr = std::shared_ptr<const MetricAlgebra>;

template <typename... Args>
AlgebraPtr make_algebra(Args&&... args) {
  return std::make_shared<const MetricAlgebra>(std::forward<Args>(args)...);
}

/// Names "0", "1", ... for a carrier of size n.
std::vector<std::string> index_names(std::size_t n);

enum class DefectKind { Metric, TableArity, TableSize, TableRange };

struct AlgebraDefect {
  DefectKind kind;
  std::string message;
};

/// Empty when `a` satisfies every MetricAlgebra invariant.
std::vector<AlgebraDefect> validate_algebra(const MetricAlgebra& a);
/// Throws InputError naming the first defect.
void require_valid(const MetricAlgebra& a);

/// An operation that is not non-expansive for the sup metric on argument tuples.
struct QuantWitness {
  std::size_t symbol;
  std::vector<std::size_t> xs, ys;
};

/// nullopt when every operation is non-expansive from the sup metric. The
/// witness is the first violation in (symbol, xs, ys) lexicographic order.
std::optional<QuantWitness> is_quantitative(const MetricAlgebra& a);

/// A Σ-homomorphism with its metric properties computed.
struct Homomorphism {
  AlgebraPtr source;
  AlgebraPtr target;
  std::vector<std::size_t> map;
  bool non_expansive = false;
  bool surjective = false;
  bool injective = false;
  bool isometric = false;

  std::size_t operator()(std::size_t e) const { return map[e]; }
  /// Σ-homomorphic and non-expansive.
  bool is_m_homomorphism() const { return non_expansive; }
};

/// Operation-preservation failure: f(sigma(args)) != sigma(f(args)).
struct HomDefect {
  std::size_t symbol;
  std::vector<std::size_t> args;
  std::size_t image_of_result;  // f(sigma^A(args))
  std::size_t result_of_images; // sigma^B(f(args))
};

/// Throws InputError on signature or carrier-size mismatch or out-of-range map values.
std::variant<Homomorphism, HomDefect> check_homomorphism(std::vector<std::size_t> map,
                                                         AlgebraPtr source, AlgebraPtr target);
/// check_homomorphism that throws InputError on a defect.
Homomorphism make_homomorphism(std::vector<std::size_t> map, AlgebraPtr source, AlgebraPtr target);
Homomorphism identity_homomorphism(AlgebraPtr a);
/// g after f. Throws InputError unless f.target and g.source agree.
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);

struct ProductBounds {
  std::size_t max_carrier = 4096;
};

struct ProductResult {
  AlgebraPtr algebra;
  std::vector<Homomorphism> projections;
};

/// Pointwise operations, sup metric, lexicographic tuple carrier. The empty
/// product is the one-point algebra. Throws BoundError past `bounds`.
ProductResult m_product(std::span<const AlgebraPtr> factors, const Signature& sig,
                        ProductBounds bounds = {});
/// Non-empty factor list; the signature is taken from the first factor.
ProductResult m_product(std::span<const AlgebraPtr> factors, ProductBounds bounds = {});

struct SubalgebraResult {
  AlgebraPtr algebra;
  Homomorphism embedding;
};

/// Least operation-closed subset containing `gens`, with the induced metric.
/// Elements keep their ascending order from `a`. Throws InputError if the
/// closure is empty.
SubalgebraResult generated_subalgebra(AlgebraPtr a, std::span<const std::size_t> gens);
std::vector<std::size_t> closure(const MetricAlgebra& a, std::span<const std::size_t> gens);

/// A block pair that an operation fails to respect: replacing argument
/// `position` of `args` by `replacement` (same block) moves the result to another block.
struct CongruenceDefect {
  std::size_t symbol;
  std::vector<std::size_t> args;
  std::size_t position;
  std::size_t replacement;
};

std::optional<CongruenceDefect> find_congruence_defect(const MetricAlgebra& a, const Partition& p);
inline bool is_congruence(const MetricAlgebra& a, const Partition& p) {
  return !find_congruence_defect(a, p);
}

/// All congruences, in restricted-growth-string order (one block first).
/// Throws BoundError when the carrier exceeds `max_carrier`.
std::vector<Partition> enumerate_congruences(const MetricAlgebra& a, std::size_t max_carrier = 6);

class NotCongruence : public InputError {
 public:
  explicit NotCongruence(CongruenceDefect defect);
  const CongruenceDefect& defect() const { return defect_; }

 private:
  CongruenceDefect defect_;
};

struct QuotientResult {
  AlgebraPtr algebra;
  Homomorphism projection;
  /// Set when the source is quantitative: whether the quotient is too (a Q-quotient).
  std::optional<bool> q_quotient;
};

/// Blocks become elements; tables descend; metric is quotient_metric.
/// Throws NotCongruence.
QuotientResult m_quotient(AlgebraPtr a, const Partition& p);

/// Kernel-condition or metric-kernel-condition failure.
class FactorError : public InputError {
 public:
  FactorError(std::string what, std::optional<std::pair<std::size_t, std::size_t>> witness = {});
  /// Source elements a, b violating the condition, when applicable.
  const std::optional<std::pair<std::size_t, std::size_t>>& witness() const { return witness_; }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> witness_;
};

/// The unique h with h . p = q for surjective homomorphisms with a common
/// source, provided ker p is contained in ker q. Throws FactorError.
Homomorphism factor_homomorphism(const Homomorphism& p, const Homomorphism& q);
/// As factor_homomorphism for surjective M-homomorphisms, requiring
/// d(q a, q b) <= d(p a, p b) for all a, b; the result is non-expansive.
Homomorphism factor_m_homomorphism(const Homomorphism& p, const Homomorphism& q);

/// Same algebra with every distance multiplied by `c`, 0 < c <= 1, and the
/// identity map onto it. Throws InputError for other c.
QuotientResult scale_metric(AlgebraPtr a, const Rational& c);

}  // namespace metalg
