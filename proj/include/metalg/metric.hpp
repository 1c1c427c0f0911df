#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace metalg {

using Rational = boost::rational<std::int64_t>;

/// A value in [0, inf]: an exact nonnegative rational or infinity.
///
/// Ordering and arithmetic are exact. Addition saturates at infinity.
class ExtDistance {
 public:
  ExtDistance() = default;
  /* implicit */ ExtDistance(Rational value);
  /* implicit */ ExtDistance(std::int64_t value) : ExtDistance(Rational(value)) {}

  static ExtDistance infinity();
  static ExtDistance zero() { return {}; }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_.numerator() == 0; }
  /// Precondition: finite.
  const Rational& value() const;

  friend ExtDistance operator+(const ExtDistance& a, const ExtDistance& b);
  /// Scales a finite distance; infinity stays infinity. `c` must be positive.
  friend ExtDistance operator*(const ExtDistance& a, const Rational& c);

  friend bool operator==(const ExtDistance& a, const ExtDistance& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtDistance& a, const ExtDistance& b);

  /// "inf", an integer "3", or a reduced fraction "3/2".
  std::string to_string() const;
  /// Decimal rendering with `digits` fractional digits (truncated toward zero).
  std::string to_decimal(int digits) const;

 private:
  Rational value_{0};
  bool infinite_ = false;
};

ExtDistance min(const ExtDistance& a, const ExtDistance& b);
ExtDistance max(const ExtDistance& a, const ExtDistance& b);

/// Parses "inf", a fraction "3/2", an integer, or a decimal "0.25" (converted exactly).
/// Throws InputError on malformed or negative literals.
ExtDistance parse_distance(std::string_view text);
/// Same grammar restricted to finite values.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

/// Square n x n array of distances, row-major. Metric axioms are not enforced on
/// construction; see check_metric_axioms.
class DistMatrix {
 public:
  DistMatrix() = default;
  /// n x n matrix of zeros.
  explicit DistMatrix(std::size_t n) : n_(n), entries_(n * n) {}
  /// Throws InputError unless `rows` is square.
  static DistMatrix from_rows(const std::vector<std::vector<ExtDistance>>& rows);

  std::size_t size() const { return n_; }
  const ExtDistance& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  ExtDistance& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  /// Sets d(i,j) and d(j,i).
  void set_symmetric(std::size_t i, std::size_t j, const ExtDistance& d) {
    (*this)(i, j) = d;
    (*this)(j, i) = d;
  }

  /// Distinct distance values occurring in the matrix, ascending.
  std::vector<ExtDistance> realized_distances() const;

  friend bool operator==(const DistMatrix&, const DistMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<ExtDistance> entries_;
};

enum class MetricAxiom { ZeroDiagonal, Symmetry, Indiscernibles, Triangle };

std::string_view to_string(MetricAxiom axiom);

/// First metric-axiom failure. For Triangle the witness is (x, z, y) with
/// d(x,z) > d(x,y) + d(y,z); the other kinds use the first one or two slots.
struct MetricViolation {
  MetricAxiom axiom;
  std::vector<std::size_t> witness;

  friend bool operator==(const MetricViolation&, const MetricViolation&) = default;
};

/// nullopt when `m` is an extended metric. Checks run in the order diagonal,
/// symmetry, indiscernibles, triangle; each scans indices lexicographically.
std::optional<MetricViolation> check_metric_axioms(const DistMatrix& m);
/// Throws InputError when `rows` is not square.
std::optional<MetricViolation> check_metric_axioms(
    const std::vector<std::vector<ExtDistance>>& rows);

/// Mixed-radix indexing of a cartesian product; the first factor is most significant.
class TupleIndexer {
 public:
  explicit TupleIndexer(std::vector<std::size_t> radices);

  std::size_t count() const { return count_; }
  std::size_t arity() const { return radices_.size(); }
  std::size_t encode(std::span<const std::size_t> digits) const;
  void decode(std::size_t index, std::span<std::size_t> digits) const;
  std::vector<std::size_t> decode(std::size_t index) const;

 private:
  std::vector<std::size_t> radices_;
  std::size_t count_ = 1;
};

/// Sup-metric on the product carrier in lexicographic tuple order. The empty
/// product is the one-point space.
DistMatrix sup_product(std::span<const DistMatrix> factors);

/// Every pair of distinct points at infinite distance. Throws InputError for n == 0.
DistMatrix discrete_metric(std::size_t n);

/// Set partition of {0, ..., n-1}. Stored canonically: each block ascending,
/// blocks ordered by their least element.
class Partition {
 public:
  /// Throws InputError on empty, overlapping, or non-covering blocks.
  Partition(std::size_t n, std::vector<std::vector<std::size_t>> blocks);
  /// From a block label per element (labels arbitrary).
  static Partition from_labels(std::span<const std::size_t> labels);
  static Partition discrete(std::size_t n);
  static Partition single_block(std::size_t n);

  std::size_t carrier_size() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t element) const { return block_of_[element]; }
  bool same_block(std::size_t a, std::size_t b) const { return block_of_[a] == block_of_[b]; }
  /// True when every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  Partition() = default;
  void canonicalize();

  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Greatest metric on the blocks of `p` that makes the projection
/// non-expansive: min over cross pairs, then shortest-path closure.
DistMatrix quotient_metric(const DistMatrix& m, const Partition& p);

}  // namespace metalg
