#include "metalg/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace metalg {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t limit,
                          const std::string& bound) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > limit / base) throw BoundError(bound, limit, limit + 1);
    out *= base;
  }
  return out;
}

/// Steps `digits` to the next tuple in lexicographic order; false after the last one.
bool next_tuple(std::vector<std::size_t>& digits, std::size_t radix) {
  std::size_t k = digits.size();
  while (k > 0) {
    if (++digits[k - 1] < radix) return true;
    digits[--k] = 0;
  }
  return false;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || *a == *b; }

}  // namespace

MetricAlgebra::MetricAlgebra(Signature sig, std::vector<std::string> names, DistMatrix dist,
                             std::vector<OpTable> ops)
    : sig_(std::move(sig)), names_(std::move(names)), dist_(std::move(dist)), ops_(std::move(ops)) {
  if (names_.empty()) throw InputError("empty carriers are not allowed");
  if (dist_.size() != names_.size()) {
    throw InputError("distance matrix size " + std::to_string(dist_.size()) +
                     " does not match carrier size " + std::to_string(names_.size()));
  }
  if (ops_.size() != sig_.size()) {
    throw InputError("expected " + std::to_string(sig_.size()) + " operation tables, got " +
                     std::to_string(ops_.size()));
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw InputError("duplicate element name '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> MetricAlgebra::element(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> index_names(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<AlgebraDefect> validate_algebra(const MetricAlgebra& a) {
  std::vector<AlgebraDefect> defects;
  if (auto v = check_metric_axioms(a.dist())) {
    std::string msg = "metric axiom " + std::string(to_string(v->axiom)) + " fails at (";
    for (std::size_t i = 0; i < v->witness.size(); ++i) {
      if (i > 0) msg += ",";
      msg += a.name(v->witness[i]);
    }
    defects.push_back({DefectKind::Metric, msg + ")"});
  }
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const auto& sym = a.signature()[s];
    const auto& table = a.table(s);
    if (table.arity != sym.arity) {
      defects.push_back({DefectKind::TableArity, "table '" + sym.name + "' has arity " +
                                                     std::to_string(table.arity) + ", expected " +
                                                     std::to_string(sym.arity)});
      continue;
    }
    std::size_t expected = 1;
    for (std::size_t k = 0; k < sym.arity; ++k) expected *= n;
    if (table.values.size() != expected) {
      defects.push_back({DefectKind::TableSize, "table '" + sym.name + "' has " +
                                                    std::to_string(table.values.size()) +
                                                    " cells, expected " + std::to_string(expected)});
      continue;
    }
    const TupleIndexer idx(std::vector<std::size_t>(sym.arity, n));
    for (std::size_t cell = 0; cell < table.values.size(); ++cell) {
      if (table.values[cell] < n) continue;
      std::string msg = "table '" + sym.name + "' cell (";
      const auto args = idx.decode(cell);
      for (std::size_t k = 0; k < args.size(); ++k) {
        if (k > 0) msg += ",";
        msg += a.name(args[k]);
      }
      defects.push_back({DefectKind::TableRange, msg + ") = " + std::to_string(table.values[cell]) +
                                                     " is outside the carrier"});
    }
  }
  return defects;
}

void require_valid(const MetricAlgebra& a) {
  const auto defects = validate_algebra(a);
  if (!defects.empty()) throw InputError("invalid algebra: " + defects.front().message);
}

std::optional<QuantWitness> is_quantitative(const MetricAlgebra& a) {
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const std::size_t k = a.signature()[s].arity;
    if (k == 0) continue;
    const TupleIndexer idx(std::vector<std::size_t>(k, n));
    const auto& values = a.table(s).values;
    std::vector<std::size_t> xs(k), ys(k);
    for (std::size_t i = 0; i < idx.count(); ++i) {
      idx.decode(i, xs);
      for (std::size_t j = i + 1; j < idx.count(); ++j) {
        idx.decode(j, ys);
        ExtDistance bound;
        for (std::size_t c = 0; c < k; ++c) bound = max(bound, a.dist(xs[c], ys[c]));
        if (bound < a.dist(values[i], values[j])) return QuantWitness{s, xs, ys};
      }
    }
  }
  return std::nullopt;
}

std::variant<Homomorphism, HomDefect> check_homomorphism(std::vector<std::size_t> map,
                                                         AlgebraPtr source, AlgebraPtr target) {
  if (!(source->signature() == target->signature())) {
    throw InputError("homomorphism between algebras of different signatures");
  }
  if (map.size() != source->size()) {
    throw InputError("map has " + std::to_string(map.size()) + " entries, source carrier has " +
                     std::to_string(source->size()));
  }
  for (auto v : map) {
    if (v >= target->size()) throw InputError("map value " + std::to_string(v) + " outside target");
  }
  const std::size_t n = source->size();
  for (std::size_t s = 0; s < source->signature().size(); ++s) {
    const std::size_t k = source->signature()[s].arity;
    std::vector<std::size_t> args(k, 0), images(k);
    do {
      for (std::size_t c = 0; c < k; ++c) images[c] = map[args[c]];
      const std::size_t lhs = map[source->apply(s, args)];
      const std::size_t rhs = target->apply(s, images);
      if (lhs != rhs) return HomDefect{s, args, lhs, rhs};
    } while (next_tuple(args, n));
  }

  Homomorphism h{std::move(source), std::move(target), std::move(map)};
  h.non_expansive = h.isometric = h.injective = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto& up = h.source->dist(a, b);
      const auto& down = h.target->dist(h.map[a], h.map[b]);
      if (up < down) h.non_expansive = false;
      if (up != down) h.isometric = false;
      if (h.map[a] == h.map[b]) h.injective = false;
    }
  }
  std::vector<bool> hit(h.target->size(), false);
  for (auto v : h.map) hit[v] = true;
  h.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  return h;
}

Homomorphism make_homomorphism(std::vector<std::size_t> map, AlgebraPtr source, AlgebraPtr target) {
  auto result = check_homomorphism(std::move(map), source, target);
  if (auto* defect = std::get_if<HomDefect>(&result)) {
    std::string msg = "not a homomorphism at " + source->signature()[defect->symbol].name + "(";
    for (std::size_t k = 0; k < defect->args.size(); ++k) {
      if (k > 0) msg += ",";
      msg += source->name(defect->args[k]);
    }
    throw InputError(msg + ")");
  }
  return std::get<Homomorphism>(std::move(result));
}

Homomorphism identity_homomorphism(AlgebraPtr a) {
  std::vector<std::size_t> map(a->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return make_homomorphism(std::move(map), a, a);
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
  if (!same_algebra(f.target, g.source)) throw InputError("cannot compose: target/source mismatch");
  std::vector<std::size_t> map(f.map.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = g.map[f.map[i]];
  return make_homomorphism(std::move(map), f.source, g.target);
}

ProductResult m_product(std::span<const AlgebraPtr> factors, const Signature& sig,
                        ProductBounds bounds) {
  std::vector<std::size_t> radices;
  std::size_t count = 1;
  for (const auto& f : factors) {
    if (!(f->signature() == sig)) throw InputError("product factors have different signatures");
    if (count > bounds.max_carrier / f->size()) {
      throw BoundError("product carrier", bounds.max_carrier, count * f->size());
    }
    count *= f->size();
    radices.push_back(f->size());
  }
  const TupleIndexer idx(radices);
  const std::size_t m = factors.size();

  std::vector<std::string> names;
  names.reserve(count);
  std::vector<std::size_t> digits(m);
  for (std::size_t e = 0; e < count; ++e) {
    idx.decode(e, digits);
    std::string name = "(";
    for (std::size_t c = 0; c < m; ++c) {
      if (c > 0) name += ",";
      name += factors[c]->name(digits[c]);
    }
    names.push_back(name + ")");
  }

  std::vector<DistMatrix> metrics;
  for (const auto& f : factors) metrics.push_back(f->dist());
  DistMatrix dist = sup_product(metrics);

  std::vector<OpTable> ops;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    const std::size_t k = sig[s].arity;
    OpTable table{k, {}};
    table.values.resize(checked_power(count, k, bounds.max_carrier * bounds.max_carrier,
                                      "product table size"));
    std::vector<std::size_t> args(k, 0);
    std::vector<std::vector<std::size_t>> arg_digits(k, std::vector<std::size_t>(m));
    std::vector<std::size_t> component_args(k), result(m);
    std::size_t cell = 0;
    do {
      for (std::size_t a = 0; a < k; ++a) idx.decode(args[a], arg_digits[a]);
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t a = 0; a < k; ++a) component_args[a] = arg_digits[a][c];
        result[c] = factors[c]->apply(s, component_args);
      }
      table.values[cell++] = idx.encode(result);
    } while (next_tuple(args, count));
    ops.push_back(std::move(table));
  }

  ProductResult out;
  out.algebra = make_algebra(sig, std::move(names), std::move(dist), std::move(ops));
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<std::size_t> map(count);
    for (std::size_t e = 0; e < count; ++e) {
      idx.decode(e, digits);
      map[e] = digits[c];
    }
    out.projections.push_back(make_homomorphism(std::move(map), out.algebra, factors[c]));
  }
  return out;
}

ProductResult m_product(std::span<const AlgebraPtr> factors, ProductBounds bounds) {
  if (factors.empty()) throw InputError("empty product needs an explicit signature");
  return m_product(factors, factors.front()->signature(), bounds);
}

std::vector<std::size_t> closure(const MetricAlgebra& a, std::span<const std::size_t> gens) {
  const std::size_t n = a.size();
  std::vector<bool> member(n, false);
  std::vector<std::size_t> elems;
  for (auto g : gens) {
    if (g >= n) throw InputError("generator " + std::to_string(g) + " outside carrier");
    if (!member[g]) {
      member[g] = true;
      elems.push_back(g);
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t s = 0; s < a.signature().size(); ++s) {
      const std::size_t k = a.signature()[s].arity;
      if (k > 0 && elems.empty()) continue;
      const std::size_t current = elems.size();
      std::vector<std::size_t> pick(k, 0), args(k);
      do {
        for (std::size_t c = 0; c < k; ++c) args[c] = elems[pick[c]];
        const std::size_t r = a.apply(s, args);
        if (!member[r]) {
          member[r] = true;
          elems.push_back(r);
          grew = true;
        }
      } while (next_tuple(pick, current));
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

SubalgebraResult generated_subalgebra(AlgebraPtr a, std::span<const std::size_t> gens) {
  const auto elems = closure(*a, gens);
  if (elems.empty()) {
    throw InputError("generated subalgebra is empty (no generators and no constants)");
  }
  const std::size_t m = elems.size();
  std::vector<std::size_t> position(a->size(), m);
  for (std::size_t i = 0; i < m; ++i) position[elems[i]] = i;

  std::vector<std::string> names;
  DistMatrix dist(m);
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(a->name(elems[i]));
    for (std::size_t j = 0; j < m; ++j) dist(i, j) = a->dist(elems[i], elems[j]);
  }
  std::vector<OpTable> ops;
  for (std::size_t s = 0; s < a->signature().size(); ++s) {
    const std::size_t k = a->signature()[s].arity;
    OpTable table{k, {}};
    std::vector<std::size_t> pick(k, 0), args(k);
    do {
      for (std::size_t c = 0; c < k; ++c) args[c] = elems[pick[c]];
      table.values.push_back(position[a->apply(s, args)]);
    } while (next_tuple(pick, m));
    ops.push_back(std::move(table));
  }
  auto sub = make_algebra(a->signature(), std::move(names), std::move(dist), std::move(ops));
  return {sub, make_homomorphism(elems, sub, a)};
}

std::optional<CongruenceDefect> find_congruence_defect(const MetricAlgebra& a, const Partition& p) {
  if (p.carrier_size() != a.size()) throw InputError("partition size does not match carrier");
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const std::size_t k = a.signature()[s].arity;
    if (k == 0) continue;
    std::vector<std::size_t> args(k, 0), moved(k);
    do {
      const std::size_t base = p.block_of(a.apply(s, args));
      for (std::size_t pos = 0; pos < k; ++pos) {
        for (auto other : p.blocks()[p.block_of(args[pos])]) {
          if (other <= args[pos]) continue;
          moved = args;
          moved[pos] = other;
          if (p.block_of(a.apply(s, moved)) != base) return CongruenceDefect{s, args, pos, other};
        }
      }
    } while (next_tuple(args, n));
  }
  return std::nullopt;
}

std::vector<Partition> enumerate_congruences(const MetricAlgebra& a, std::size_t max_carrier) {
  const std::size_t n = a.size();
  if (n > max_carrier) throw BoundError("congruence carrier", max_carrier, n);
  std::vector<Partition> out;
  // Restricted growth strings: labels[i] <= 1 + max(labels[0..i)).
  std::vector<std::size_t> labels(n, 0);
  while (true) {
    auto p = Partition::from_labels(labels);
    if (is_congruence(a, p)) out.push_back(std::move(p));
    bool advanced = false;
    for (std::size_t i = n; i-- > 1;) {
      const std::size_t prefix_max = *std::max_element(labels.begin(), labels.begin() + i);
      if (labels[i] <= prefix_max) {
        ++labels[i];
        std::fill(labels.begin() + i + 1, labels.end(), 0);
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

NotCongruence::NotCongruence(CongruenceDefect defect)
    : InputError("partition is not a congruence: operation " + std::to_string(defect.symbol) +
                 " separates a block"),
      defect_(std::move(defect)) {}

QuotientResult m_quotient(AlgebraPtr a, const Partition& p) {
  if (auto defect = find_congruence_defect(*a, p)) throw NotCongruence(*defect);
  const std::size_t m = p.block_count();
  std::vector<std::string> names;
  for (const auto& block : p.blocks()) {
    std::string name = "{";
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i > 0) name += ",";
      name += a->name(block[i]);
    }
    names.push_back(name + "}");
  }
  std::vector<OpTable> ops;
  for (std::size_t s = 0; s < a->signature().size(); ++s) {
    const std::size_t k = a->signature()[s].arity;
    OpTable table{k, {}};
    std::vector<std::size_t> blocks(k, 0), reps(k);
    do {
      for (std::size_t c = 0; c < k; ++c) reps[c] = p.blocks()[blocks[c]].front();
      table.values.push_back(p.block_of(a->apply(s, reps)));
    } while (next_tuple(blocks, m));
    ops.push_back(std::move(table));
  }
  auto q = make_algebra(a->signature(), std::move(names), quotient_metric(a->dist(), p),
                        std::move(ops));
  std::vector<std::size_t> map(a->size());
  for (std::size_t e = 0; e < map.size(); ++e) map[e] = p.block_of(e);

  QuotientResult out{q, make_homomorphism(std::move(map), a, q), std::nullopt};
  if (!is_quantitative(*a)) out.q_quotient = !is_quantitative(*q).has_value();
  return out;
}

FactorError::FactorError(std::string what, std::optional<std::pair<std::size_t, std::size_t>> witness)
    : InputError(std::move(what)), witness_(witness) {}

Homomorphism factor_homomorphism(const Homomorphism& p, const Homomorphism& q) {
  if (!same_algebra(p.source, q.source)) throw FactorError("p and q have different sources");
  if (!p.surjective) throw FactorError("p is not surjective");
  if (!q.surjective) throw FactorError("q is not surjective");
  const std::size_t n = p.source->size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (p(a) == p(b) && q(a) != q(b)) {
        throw FactorError("kernel condition fails: p identifies " + p.source->name(a) + " and " +
                              p.source->name(b) + " but q does not",
                          std::pair{a, b});
      }
    }
  }
  std::vector<std::size_t> h(p.target->size());
  for (std::size_t a = 0; a < n; ++a) h[p(a)] = q(a);
  auto result = check_homomorphism(std::move(h), p.target, q.target);
  if (std::holds_alternative<HomDefect>(result)) {
    throw std::logic_error("factor of surjective homomorphisms is not a homomorphism");
  }
  return std::get<Homomorphism>(std::move(result));
}

Homomorphism factor_m_homomorphism(const Homomorphism& p, const Homomorphism& q) {
  if (!p.non_expansive) throw FactorError("p is not non-expansive");
  if (!q.non_expansive) throw FactorError("q is not non-expansive");
  if (!same_algebra(p.source, q.source)) throw FactorError("p and q have different sources");
  const std::size_t n = p.source->size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto& dp = p.target->dist(p(a), p(b));
      const auto& dq = q.target->dist(q(a), q(b));
      if (dp < dq) {
        throw FactorError("metric kernel condition fails at (" + p.source->name(a) + "," +
                              p.source->name(b) + "): d(q a, q b) = " + dq.to_string() +
                              " > d(p a, p b) = " + dp.to_string(),
                          std::pair{a, b});
      }
    }
  }
  Homomorphism h = factor_homomorphism(p, q);
  if (!h.non_expansive) throw std::logic_error("metric factor is not non-expansive");
  return h;
}

QuotientResult scale_metric(AlgebraPtr a, const Rational& c) {
  if (c <= Rational(0) || c > Rational(1)) throw InputError("scale factor must lie in (0, 1], got " + format_rational(c));
  DistMatrix dist(a->size());
  for (std::size_t i = 0; i < a->size(); ++i) {
    for (std::size_t j = 0; j < a->size(); ++j) dist(i, j) = a->dist(i, j) * c;
  }
  auto scaled = make_algebra(a->signature(), a->names(), std::move(dist), a->ops());
  std::vector<std::size_t> map(a->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  QuotientResult out{scaled, make_homomorphism(std::move(map), a, scaled), std::nullopt};
  if (!is_quantitative(*a)) out.q_quotient = !is_quantitative(*scaled).has_value();
  return out;
}

}  // namespace metalg
