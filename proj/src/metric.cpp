#include "metalg/metric.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <charconv>
#include <numeric>

#include "metalg/error.hpp"

namespace metalg {

ExtDistance::ExtDistance(Rational value) : value_(value) {
  if (value < Rational(0)) throw InputError("negative distance " + format_rational(value));
}

ExtDistance ExtDistance::infinity() {
  ExtDistance d;
  d.infinite_ = true;
  return d;
}

const Rational& ExtDistance::value() const {
  assert(!infinite_);
  return value_;
}

ExtDistance operator+(const ExtDistance& a, const ExtDistance& b) {
  if (a.infinite_ || b.infinite_) return ExtDistance::infinity();
  return ExtDistance(a.value_ + b.value_);
}

ExtDistance operator*(const ExtDistance& a, const Rational& c) {
  if (c <= Rational(0)) throw InputError("distance scale factor must be positive");
  if (a.infinite_) return a;
  return ExtDistance(a.value_ * c);
}

std::strong_ordering operator<=>(const ExtDistance& a, const ExtDistance& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExtDistance::to_string() const {
  return infinite_ ? "inf" : format_rational(value_);
}

std::string ExtDistance::to_decimal(int digits) const {
  if (infinite_) return "inf";
  std::int64_t num = value_.numerator();
  const std::int64_t den = value_.denominator();
  std::string out = std::to_string(num / den);
  num %= den;
  if (digits > 0) {
    out += '.';
    for (int i = 0; i < digits; ++i) {
      num *= 10;
      out += static_cast<char>('0' + num / den);
      num %= den;
    }
  }
  return out;
}

ExtDistance min(const ExtDistance& a, const ExtDistance& b) { return b < a ? b : a; }
ExtDistance max(const ExtDistance& a, const ExtDistance& b) { return a < b ? b : a; }

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty() || digits.size() > 18 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InputError("malformed distance literal '" + std::string(whole) + "'");
  }
  std::int64_t v = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), v);
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (!s.empty() && s.front() == '-') throw InputError("negative distance '" + std::string(s) + "'");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = parse_digits(s.substr(0, slash), s);
    const auto den = parse_digits(s.substr(slash + 1), s);
    if (den == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if (int_part.size() + frac_part.size() > 18) {
      throw InputError("distance literal too long '" + std::string(s) + "'");
    }
    const std::int64_t whole = int_part.empty() ? 0 : parse_digits(int_part, s);
    const std::int64_t frac = parse_digits(frac_part, s);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    return Rational(whole * scale + frac, scale);
  }
  return Rational(parse_digits(s, s));
}

ExtDistance parse_distance(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "inf") return ExtDistance::infinity();
  return ExtDistance(parse_rational(s));
}

DistMatrix DistMatrix::from_rows(const std::vector<std::vector<ExtDistance>>& rows) {
  DistMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw InputError("distance matrix is not square: row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<ExtDistance> DistMatrix::realized_distances() const {
  std::vector<ExtDistance> out(entries_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view to_string(MetricAxiom axiom) {
  switch (axiom) {
    case MetricAxiom::ZeroDiagonal: return "zero-diagonal";
    case MetricAxiom::Symmetry: return "symmetry";
    case MetricAxiom::Indiscernibles: return "identity-of-indiscernibles";
    case MetricAxiom::Triangle: return "triangle";
  }
  return "unknown";
}

std::optional<MetricViolation> check_metric_axioms(const DistMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m(i, i).is_zero()) return MetricViolation{MetricAxiom::ZeroDiagonal, {i}};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i)) return MetricViolation{MetricAxiom::Symmetry, {i, j}};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j).is_zero()) return MetricViolation{MetricAxiom::Indiscernibles, {i, j}};
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      for (std::size_t y = 0; y < n; ++y) {
        if (m(x, y) + m(y, z) < m(x, z)) return MetricViolation{MetricAxiom::Triangle, {x, z, y}};
      }
    }
  }
  return std::nullopt;
}

std::optional<MetricViolation> check_metric_axioms(
    const std::vector<std::vector<ExtDistance>>& rows) {
  return check_metric_axioms(DistMatrix::from_rows(rows));
}

TupleIndexer::TupleIndexer(std::vector<std::size_t> radices) : radices_(std::move(radices)) {
  for (auto r : radices_) count_ *= r;
}

std::size_t TupleIndexer::encode(std::span<const std::size_t> digits) const {
  std::size_t index = 0;
  for (std::size_t k = 0; k < radices_.size(); ++k) index = index * radices_[k] + digits[k];
  return index;
}

void TupleIndexer::decode(std::size_t index, std::span<std::size_t> digits) const {
  for (std::size_t k = radices_.size(); k-- > 0;) {
    digits[k] = index % radices_[k];
    index /= radices_[k];
  }
}

std::vector<std::size_t> TupleIndexer::decode(std::size_t index) const {
  std::vector<std::size_t> digits(radices_.size());
  decode(index, digits);
  return digits;
}

DistMatrix sup_product(std::span<const DistMatrix> factors) {
  std::vector<std::size_t> radices;
  for (const auto& f : factors) radices.push_back(f.size());
  const TupleIndexer idx(radices);
  DistMatrix out(idx.count());
  std::vector<std::size_t> a(factors.size()), b(factors.size());
  for (std::size_t i = 0; i < idx.count(); ++i) {
    idx.decode(i, a);
    for (std::size_t j = i + 1; j < idx.count(); ++j) {
      idx.decode(j, b);
      ExtDistance d;
      for (std::size_t k = 0; k < factors.size(); ++k) d = max(d, factors[k](a[k], b[k]));
      out.set_symmetric(i, j, d);
    }
  }
  return out;
}

DistMatrix discrete_metric(std::size_t n) {
  if (n == 0) throw InputError("empty carriers are not allowed");
  DistMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.set_symmetric(i, j, ExtDistance::infinity());
  }
  return m;
}

Partition::Partition(std::size_t n, std::vector<std::vector<std::size_t>> blocks)
    : blocks_(std::move(blocks)), block_of_(n, n) {
  for (const auto& block : blocks_) {
    if (block.empty()) throw InputError("partition has an empty block");
    for (auto e : block) {
      if (e >= n) throw InputError("partition element " + std::to_string(e) + " out of range");
      if (block_of_[e] != n) {
        throw InputError("partition element " + std::to_string(e) + " occurs twice");
      }
      block_of_[e] = 0;
    }
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (block_of_[e] == n) throw InputError("partition misses element " + std::to_string(e));
  }
  canonicalize();
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  Partition p;
  p.block_of_.assign(labels.begin(), labels.end());
  std::vector<std::size_t> seen;
  for (std::size_t e = 0; e < labels.size(); ++e) {
    auto it = std::find(seen.begin(), seen.end(), labels[e]);
    if (it == seen.end()) {
      seen.push_back(labels[e]);
      p.blocks_.push_back({e});
    } else {
      p.blocks_[static_cast<std::size_t>(it - seen.begin())].push_back(e);
    }
  }
  p.canonicalize();
  return p;
}

Partition Partition::discrete(std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(labels);
}

Partition Partition::single_block(std::size_t n) {
  return from_labels(std::vector<std::size_t>(n, 0));
}

void Partition::canonicalize() {
  for (auto& block : blocks_) std::sort(block.begin(), block.end());
  std::sort(blocks_.begin(), blocks_.end());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (auto e : blocks_[b]) block_of_[e] = b;
  }
}

bool Partition::refines(const Partition& coarser) const {
  for (const auto& block : blocks_) {
    for (auto e : block) {
      if (!coarser.same_block(block.front(), e)) return false;
    }
  }
  return true;
}

DistMatrix quotient_metric(const DistMatrix& m, const Partition& p) {
  const std::size_t k = p.block_count();
  DistMatrix w(k);
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < k; ++v) {
      ExtDistance best = ExtDistance::infinity();
      for (auto a : p.blocks()[u]) {
        for (auto b : p.blocks()[v]) best = min(best, m(a, b));
      }
      w.set_symmetric(u, v, best);
    }
  }
  for (std::size_t via = 0; via < k; ++via) {
    for (std::size_t u = 0; u < k; ++u) {
      for (std::size_t v = 0; v < k; ++v) {
        if (u == v) continue;
        const ExtDistance through = w(u, via) + w(via, v);
        if (through < w(u, v)) w(u, v) = through;
      }
    }
  }
  // Cross-block minima of a true metric are positive, hence so are path sums.
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < k; ++v) assert(!w(u, v).is_zero());
  }
  return w;
}

}  // namespace metalg
