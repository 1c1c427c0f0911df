#include "metalg/free.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace metalg {

ClassK::ClassK(std::vector<AlgebraPtr> members) : members_(std::move(members)) {
  if (members_.empty()) throw InputError("class K must have at least one member");
  quantitative_ = true;
  for (const auto& m : members_) {
    if (!(m->signature() == members_.front()->signature())) {
      throw InputError("class K members have different signatures");
    }
    require_valid(*m);
    if (is_quantitative(*m)) quantitative_ = false;
  }
}

namespace {

/// Pointwise application of `symbol` across coordinates.
std::vector<std::size_t> apply_pointwise(const FreeAlgebra& f, std::size_t symbol,
                                         const std::vector<const std::vector<std::size_t>*>& args) {
  std::vector<std::size_t> out(f.coordinates.size());
  std::vector<std::size_t> component(args.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    for (std::size_t i = 0; i < args.size(); ++i) component[i] = (*args[i])[c];
    out[c] = f.members[f.coordinates[c].member]->apply(symbol, component);
  }
  return out;
}

bool next_tuple(std::vector<std::size_t>& digits, std::size_t radix) {
  std::size_t k = digits.size();
  while (k > 0) {
    if (++digits[k - 1] < radix) return true;
    digits[--k] = 0;
  }
  return false;
}

}  // namespace

std::vector<std::size_t> FreeAlgebra::evaluate(const Term& t) const {
  if (t.is_var()) {
    auto it = std::lower_bound(vars.begin(), vars.end(), t.name());
    if (it == vars.end() || *it != t.name()) {
      throw InputError("variable '" + t.name() + "' is not a free generator");
    }
    return tuples[generators[static_cast<std::size_t>(it - vars.begin())]];
  }
  const auto sym = base->signature().index_of(t.name());
  if (!sym || base->signature()[*sym].arity != t.args().size()) {
    throw InputError("term " + format_term(t) + " does not match the signature");
  }
  std::vector<std::vector<std::size_t>> values;
  for (const auto& a : t.args()) values.push_back(evaluate(a));
  std::vector<const std::vector<std::size_t>*> args;
  for (const auto& v : values) args.push_back(&v);
  return apply_pointwise(*this, *sym, args);
}

std::size_t FreeAlgebra::image(const Term& t) const {
  const auto tuple = evaluate(t);
  auto it = std::find(tuples.begin(), tuples.end(), tuple);
  if (it == tuples.end()) throw std::logic_error("term image outside the free carrier");
  return static_cast<std::size_t>(it - tuples.begin());
}

FreeAlgebra free_algebra(const ClassK& k, const std::set<std::string>& vars, FreeBounds bounds) {
  const Signature& sig = k.signature();
  for (const auto& v : vars) {
    if (!is_identifier(v) || sig.index_of(v)) throw InputError("invalid variable name '" + v + "'");
  }
  if (vars.empty() && !sig.has_constant()) {
    throw InputError("free algebra over no variables needs a constant symbol");
  }

  FreeAlgebra f;
  f.vars.assign(vars.begin(), vars.end());
  f.members = k.members();
  for (std::size_t m = 0; m < f.members.size(); ++m) {
    std::vector<std::size_t> values(f.vars.size(), 0);
    do {
      if (f.coordinates.size() == bounds.max_coordinates) {
        throw BoundError("free coordinates", bounds.max_coordinates, bounds.max_coordinates + 1);
      }
      f.coordinates.push_back({m, values});
    } while (next_tuple(values, f.members[m]->size()));
  }
  const std::size_t coords = f.coordinates.size();

  std::map<std::vector<std::size_t>, std::size_t> index;
  auto add = [&](std::vector<std::size_t> tuple, Term rep) {
    if (f.tuples.size() == bounds.max_carrier) {
      throw BoundError("free carrier", bounds.max_carrier, bounds.max_carrier + 1);
    }
    index.emplace(tuple, f.tuples.size());
    f.tuples.push_back(std::move(tuple));
    f.reps.push_back(std::move(rep));
  };

  for (std::size_t i = 0; i < f.vars.size(); ++i) {
    std::vector<std::size_t> tuple(coords);
    for (std::size_t c = 0; c < coords; ++c) tuple[c] = f.coordinates[c].values[i];
    auto it = index.find(tuple);
    if (it == index.end()) {
      f.generators.push_back(f.tuples.size());
      add(std::move(tuple), Term::var(f.vars[i]));
    } else {
      f.generators.push_back(it->second);
    }
  }

  // Breadth-first by depth: an element first reached at level d has a
  // representative of depth d built from earlier representatives.
  std::size_t frontier = 0;
  for (std::size_t depth = 1;; ++depth) {
    const std::size_t current = f.tuples.size();
    std::map<std::vector<std::size_t>, std::pair<std::string, Term>> fresh;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      const std::size_t arity = sig[s].arity;
      if (arity == 0 && depth != 1) continue;
      if (arity > 0 && current == 0) continue;
      std::vector<std::size_t> pick(arity, 0);
      std::vector<const std::vector<std::size_t>*> args(arity);
      do {
        if (arity > 0 &&
            std::none_of(pick.begin(), pick.end(), [&](std::size_t p) { return p >= frontier; })) {
          continue;
        }
        for (std::size_t i = 0; i < arity; ++i) args[i] = &f.tuples[pick[i]];
        auto tuple = apply_pointwise(f, s, args);
        if (index.contains(tuple)) continue;
        std::vector<Term> sub;
        for (auto p : pick) sub.push_back(f.reps[p]);
        Term t = Term::app(sig[s].name, std::move(sub));
        std::string text = format_term(t);
        auto it = fresh.find(tuple);
        if (it == fresh.end()) {
          fresh.emplace(std::move(tuple), std::pair{std::move(text), std::move(t)});
        } else if (text < it->second.first) {
          it->second = {std::move(text), std::move(t)};
        }
      } while (next_tuple(pick, current));
    }
    if (fresh.empty()) break;
    std::vector<std::pair<std::string, std::pair<Term, std::vector<std::size_t>>>> level;
    for (auto& [tuple, named] : fresh) {
      level.push_back({std::move(named.first), {std::move(named.second), tuple}});
    }
    std::sort(level.begin(), level.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    frontier = current;
    for (auto& [text, entry] : level) add(std::move(entry.second), std::move(entry.first));
  }
  if (f.tuples.empty()) throw InputError("free algebra carrier is empty");

  const std::size_t n = f.tuples.size();
  std::vector<std::string> names;
  for (const auto& r : f.reps) names.push_back(format_term(r));
  DistMatrix dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ExtDistance d;
      for (std::size_t c = 0; c < coords; ++c) {
        const auto& member = *f.members[f.coordinates[c].member];
        d = max(d, member.dist(f.tuples[i][c], f.tuples[j][c]));
        if (d.is_infinite()) break;
      }
      dist.set_symmetric(i, j, d);
    }
  }
  std::vector<OpTable> ops;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    const std::size_t arity = sig[s].arity;
    OpTable table{arity, {}};
    std::vector<std::size_t> pick(arity, 0);
    std::vector<const std::vector<std::size_t>*> args(arity);
    do {
      for (std::size_t i = 0; i < arity; ++i) args[i] = &f.tuples[pick[i]];
      auto it = index.find(apply_pointwise(f, s, args));
      if (it == index.end()) throw std::logic_error("free carrier is not closed");
      table.values.push_back(it->second);
    } while (next_tuple(pick, n));
    ops.push_back(std::move(table));
  }
  f.base = make_algebra(sig, std::move(names), std::move(dist), std::move(ops));
  return f;
}

ExtDistance free_distance(const FreeAlgebra& f, const Term& s, const Term& t) {
  return f.base->dist(f.image(s), f.image(t));
}

Valuation generator_valuation(const FreeAlgebra& f) {
  Valuation v;
  for (std::size_t i = 0; i < f.vars.size(); ++i) v[f.vars[i]] = f.generators[i];
  return v;
}

Homomorphism universal_extension(const FreeAlgebra& f, AlgebraPtr a, const Valuation& v) {
  if (!(a->signature() == f.base->signature())) {
    throw InputError("target algebra has a different signature");
  }
  for (const auto& x : f.vars) {
    auto it = v.find(x);
    if (it == v.end()) throw InputError("valuation does not bind '" + x + "'");
    if (it->second >= a->size()) throw InputError("valuation of '" + x + "' outside carrier");
  }
  std::vector<std::size_t> map;
  map.reserve(f.reps.size());
  for (const auto& r : f.reps) map.push_back(eval_term(*a, v, r));
  auto result = check_homomorphism(std::move(map), f.base, a);
  if (auto* defect = std::get_if<HomDefect>(&result)) {
    std::string msg = "extension is not well defined: " +
                      f.base->signature()[defect->symbol].name + "(";
    for (std::size_t i = 0; i < defect->args.size(); ++i) {
      if (i > 0) msg += ",";
      msg += f.base->name(defect->args[i]);
    }
    throw ExtensionError(msg + ") has two different images");
  }
  auto h = std::get<Homomorphism>(std::move(result));
  if (!h.non_expansive) {
    throw ExtensionError("extension is not non-expansive: the target violates an equation of K");
  }
  return h;
}

std::string format_theory(const Theory& t) {
  std::string out;
  for (const auto& e : t.entries) {
    if (!e.is_equation()) out += "# ";
    out += format_term(e.lhs) + " =" + e.eps.to_string() + " " + format_term(e.rhs) + "\n";
  }
  return out;
}

Theory equational_theory(const ClassK& k, const std::set<std::string>& vars, std::size_t depth,
                         TheoryBounds bounds) {
  if (depth == 0) throw InputError("theory depth must be positive");
  const FreeAlgebra f = free_algebra(k, vars, bounds.free);
  Theory theory;
  theory.vars = f.vars;
  const std::size_t n = f.reps.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      theory.entries.push_back({f.reps[i], f.reps[j], f.base->dist(i, j)});
    }
  }
  for (const auto& t : enumerate_terms(k.signature(), vars, depth, bounds.max_terms)) {
    const std::size_t e = f.image(t);
    if (!(t == f.reps[e])) theory.entries.push_back({f.reps[e], t, ExtDistance()});
  }

  using Key = std::tuple<std::size_t, std::string, std::size_t, std::string>;
  std::vector<std::pair<Key, std::size_t>> keyed;
  keyed.reserve(theory.entries.size());
  for (std::size_t i = 0; i < theory.entries.size(); ++i) {
    const auto& e = theory.entries[i];
    keyed.push_back({Key{e.lhs.depth(), format_term(e.lhs), e.rhs.depth(), format_term(e.rhs)}, i});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<TheoryEntry> sorted;
  sorted.reserve(keyed.size());
  for (const auto& [key, i] : keyed) sorted.push_back(theory.entries[i]);
  theory.entries = std::move(sorted);
  return theory;
}

Membership membership_bounded(const ClassK& k, const MetricAlgebra& candidate,
                              const std::set<std::string>& vars, std::size_t depth,
                              TheoryBounds bounds) {
  if (!(candidate.signature() == k.signature())) {
    throw InputError("candidate has a different signature than K");
  }
  const Theory theory = equational_theory(k, vars, depth, bounds);
  for (const auto& entry : theory.entries) {
    if (!entry.is_equation()) continue;
    MEquation eq(vars, entry.lhs, entry.rhs, entry.eps.value());
    auto result = satisfies(candidate, eq);
    if (!result.holds()) return Refuted{std::move(eq), std::move(*result.witness)};
  }
  return ConsistentUpTo{depth};
}

HspReport hsp_closure_suite(const std::vector<MEquation>& theory,
                            const std::vector<AlgebraPtr>& pool, HspBounds bounds) {
  HspReport report;
  report.pool = pool.size();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!satisfies_all(*pool[i], theory)) report.models.push_back(i);
  }

  auto check = [&](const MetricAlgebra& a, std::string construction) {
    if (auto failure = satisfies_all(a, theory)) {
      report.violations.push_back(
          {std::move(construction), theory[failure->index], std::move(failure->witness)});
    }
  };

  for (std::size_t x = 0; x < report.models.size(); ++x) {
    for (std::size_t y = x; y < report.models.size(); ++y) {
      const std::size_t i = report.models[x], j = report.models[y];
      const AlgebraPtr factors[] = {pool[i], pool[j]};
      auto product = m_product(factors, bounds.product);
      ++report.products;
      check(*product.algebra, "product(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }

  for (auto i : report.models) {
    const AlgebraPtr& a = pool[i];
    const std::size_t n = a->size();
    if (n > bounds.max_subset_carrier) {
      throw BoundError("subalgebra generator subsets", bounds.max_subset_carrier, n);
    }
    std::set<std::vector<std::size_t>> seen;
    const std::size_t first_mask = a->signature().has_constant() ? 0 : 1;
    for (std::size_t mask = first_mask; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> gens;
      for (std::size_t e = 0; e < n; ++e) {
        if (mask >> e & 1) gens.push_back(e);
      }
      auto elems = closure(*a, gens);
      if (!seen.insert(elems).second) continue;
      auto sub = generated_subalgebra(a, elems);
      ++report.subalgebras;
      std::string label = "subalgebra(" + std::to_string(i) + "){";
      for (std::size_t e = 0; e < elems.size(); ++e) {
        if (e > 0) label += ",";
        label += a->name(elems[e]);
      }
      check(*sub.algebra, label + "}");
    }
    for (const auto& p : enumerate_congruences(*a, bounds.max_congruence_carrier)) {
      auto q = m_quotient(a, p);
      ++report.quotients;
      check(*q.algebra, "quotient(" + std::to_string(i) + ")" + q.algebra->name(0));
    }
  }
  return report;
}

ExtDistance min_distinct_distance(const MetricAlgebra& a) {
  ExtDistance best = ExtDistance::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) best = min(best, a.dist(i, j));
  }
  return best;
}

NonVarietyReport non_variety_demo(const Rational& scale) {
  NonVarietyReport r;
  r.original = examples::xor_algebra(ExtDistance(1));
  auto scaled = scale_metric(r.original, scale);
  r.quotient = scaled.algebra;
  r.projection = scaled.projection;
  r.scale = scale;
  r.original_min_distance = min_distinct_distance(*r.original);
  r.quotient_min_distance = min_distinct_distance(*r.quotient);
  r.original_has_lower_bound = r.original_min_distance >= ExtDistance(1);
  r.quotient_has_lower_bound = r.quotient_min_distance >= ExtDistance(1);
  r.original_quantitative = !is_quantitative(*r.original);
  r.quotient_quantitative = !is_quantitative(*r.quotient);
  return r;
}

namespace examples {

Signature xor_signature() { return Signature({{"xor", 2}}); }

AlgebraPtr xor_algebra(const ExtDistance& distance) {
  DistMatrix d(2);
  d.set_symmetric(0, 1, distance);
  return make_algebra(xor_signature(), index_names(2), d, std::vector<OpTable>{{2, {0, 1, 1, 0}}});
}

AlgebraPtr negation_algebra() {
  DistMatrix d(2);
  d.set_symmetric(0, 1, ExtDistance(1));
  return make_algebra(Signature({{"u", 1}}), index_names(2), d, std::vector<OpTable>{{1, {1, 0}}});
}

AlgebraPtr z4_algebra(const Rational& scale) {
  DistMatrix d(4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) d.set_symmetric(i, j, ExtDistance(scale));
  }
  OpTable add{2, {}};
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) add.values.push_back((a + b) % 4);
  }
  return make_algebra(Signature({{"add", 2}, {"zero", 0}}), index_names(4), d,
                      std::vector<OpTable>{add, {0, {0}}});
}

AlgebraPtr trivial_algebra(const Signature& sig) {
  std::vector<OpTable> ops;
  for (const auto& s : sig.symbols()) ops.push_back({s.arity, {0}});
  return make_algebra(sig, index_names(1), DistMatrix(1), std::move(ops));
}

}  // namespace examples

}  // namespace metalg
