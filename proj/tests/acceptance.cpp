// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "metalg/free.hpp"
#include "oracles.hpp"

using namespace metalg;
using oracle::D;
using oracle::Q;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// 1. Validator accepts closed random metrics and rejects single-axiom mutations.
Check metric_validator() {
  Check c;
  oracle::Rng rng(101);
  int accepted = 0, rejected = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.below(6);
    auto rows = oracle::random_metric(rng, n);
    c.require(oracle::is_metric(rows), "generator produced a non-metric");
    if (!check_metric_axioms(oracle::to_matrix(rows))) ++accepted;

    auto mutated = rows;
    MetricAxiom target;
    const std::size_t kind = n == 1 ? 0 : rng.below(n >= 3 ? 4 : 3);
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - (n > 1 ? 1 : 0));
    if (n > 1 && b >= a) ++b;
    switch (kind) {
      case 0:
        target = MetricAxiom::ZeroDiagonal;
        mutated[a][a] = Q(1, 3);
        break;
      case 1:
        target = MetricAxiom::Symmetry;
        mutated[a][b] = mutated[a][b] ? D(*mutated[a][b] + Q(1)) : D(Q(1));
        break;
      case 2:
        target = MetricAxiom::Indiscernibles;
        mutated[a][b] = mutated[b][a] = Q(0);
        break;
      default: {
        // Push d(a,b) past d(a,m) + d(m,b) through some third point m with finite sides.
        target = MetricAxiom::Triangle;
        std::size_t m = 0;
        while (m == a || m == b) ++m;
        const D via = oracle::add(mutated[a][m], mutated[m][b]);
        if (!via) {
          // Make the detour finite first; d(a,b) is then raised above it.
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              if (x != y) mutated[x][y] = Q(1);
        }
        const D path = oracle::add(mutated[a][m], mutated[m][b]);
        mutated[a][b] = mutated[b][a] = *path + Q(1, 2);
      }
    }
    const auto v = check_metric_axioms(oracle::to_matrix(mutated));
    c.require(!oracle::is_metric(mutated), "mutation left a metric");
    if (v && v->axiom == target) ++rejected;
  }
  c.require(accepted == 200, "accepted " + std::to_string(accepted) + "/200");
  c.require(rejected == 200, "rejected with the mutated axiom " + std::to_string(rejected) + "/200");
  c.detail = c.ok ? "200 accepted, 200 mutations rejected" : c.detail;
  return c;
}

// 2. Sup-product distance <= eps iff every coordinate distance <= eps.
Check sup_product_characterization() {
  Check c;
  auto m = [](oracle::Rows r) { return oracle::to_matrix(r); };
  const D inf;
  const std::vector<DistMatrix> spaces{
      m({{Q(0)}}),
      m({{Q(0), Q(1)}, {Q(1), Q(0)}}),
      m({{Q(0), Q(1, 2)}, {Q(1, 2), Q(0)}}),
      m({{Q(0), inf}, {inf, Q(0)}}),
      m({{Q(0), Q(1), Q(2)}, {Q(1), Q(0), Q(1)}, {Q(2), Q(1), Q(0)}}),
      m({{Q(0), Q(1, 3), Q(1)}, {Q(1, 3), Q(0), Q(1)}, {Q(1), Q(1), Q(0)}}),
      m({{Q(0), Q(3, 2), inf}, {Q(3, 2), Q(0), inf}, {inf, inf, Q(0)}}),
  };
  std::size_t products = 0, checks = 0;
  std::vector<std::size_t> pick;
  std::function<void()> visit = [&] {
    if (!pick.empty()) {
      std::vector<DistMatrix> f;
      for (auto i : pick) f.push_back(spaces[i]);
      const auto prod = sup_product(f);
      ++products;
      std::set<D, bool (*)(const D&, const D&)> eps([](const D& x, const D& y) { return oracle::le(x, y) && x != y; });
      for (const auto& s : f)
        for (std::size_t i = 0; i < s.size(); ++i)
          for (std::size_t j = 0; j < s.size(); ++j) eps.insert(oracle::of(s(i, j)));
      const std::size_t n = prod.size();
      c.require(!check_metric_axioms(prod), "product is not a metric");
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          // Decode tuples with the first factor most significant.
          std::vector<std::size_t> xs(f.size()), ys(f.size());
          std::size_t rx = x, ry = y;
          for (std::size_t k = f.size(); k-- > 0;) {
            xs[k] = rx % f[k].size(), rx /= f[k].size();
            ys[k] = ry % f[k].size(), ry /= f[k].size();
          }
          for (const auto& e : eps) {
            bool all = true;
            for (std::size_t k = 0; k < f.size(); ++k) all = all && oracle::le(oracle::of(f[k](xs[k], ys[k])), e);
            c.require(oracle::le(oracle::of(prod(x, y)), e) == all, "characterization fails");
            ++checks;
          }
        }
      }
    }
    if (pick.size() == 3) return;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      pick.push_back(i);
      visit();
      pick.pop_back();
    }
  };
  visit();
  c.require(sup_product({}).size() == 1, "empty product");
  if (c.ok) c.detail = std::to_string(products) + " products, " + std::to_string(checks) + " checks";
  return c;
}

// 3. Satisfaction over Y equals satisfaction over any X containing Y.
Check renaming() {
  Check c;
  oracle::Rng rng(303);
  const auto sig = parse_signature("op u/1; op xor/2");
  const std::vector<std::string> names{"x", "y", "z"};
  std::vector<std::set<std::string>> subsets;
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::set<std::string> s;
    for (unsigned i = 0; i < 3; ++i)
      if (mask & (1u << i)) s.insert(names[i]);
    subsets.push_back(s);
  }
  std::size_t comparisons = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto a = oracle::random_algebra(rng, sig, 1 + rng.below(3));
    std::vector<ExtDistance> realized = a->dist().realized_distances();
    for (const auto& y : subsets) {
      if (y.size() == 3) continue;  // no proper superset
      const auto ts = enumerate_terms(sig, y, 2);
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
          // eps at the largest distance over Y and at the next realized value below it.
          const auto top = max_distance(*a, y, ts[i], ts[j]);
          std::vector<Rational> eps;
          if (!top.is_infinite()) eps.push_back(top.value());
          for (auto it = realized.rbegin(); it != realized.rend(); ++it) {
            if (*it < top) {
              eps.push_back(it->value());
              break;
            }
          }
          for (const auto& e : eps) {
            const MEquation over_y(y, ts[i], ts[j], e);
            const bool base = satisfies(*a, over_y).holds();
            for (const auto& x : subsets) {
              if (x == y || !std::includes(x.begin(), x.end(), y.begin(), y.end())) continue;
              c.require(satisfies(*a, over_y.with_vars(x)).holds() == base,
                        "renaming fails for " + format_equation(over_y));
              ++comparisons;
            }
          }
        }
      }
    }
  }
  if (c.ok) c.detail = "50 algebras, " + std::to_string(comparisons) + " comparisons";
  return c;
}

AlgebraPtr additive_group(const std::vector<std::size_t>& add, std::size_t n, std::size_t zero,
                          const DistMatrix& d) {
  return make_algebra(parse_signature("op add/2; op zero/0"), index_names(n), d,
                      std::vector<OpTable>{{2, add}, {0, {zero}}});
}

DistMatrix unit_metric(std::size_t n, const Rational& s = Rational(1)) {
  DistMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.set_symmetric(i, j, ExtDistance(s));
  return d;
}

// 4. Factorization through congruence quotients of small groups.
Check factorization() {
  Check c;
  std::vector<AlgebraPtr> algebras;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::size_t> cyclic;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cyclic.push_back((i + j) % n);
    algebras.push_back(additive_group(cyclic, n, 0, unit_metric(n)));
    // Cyclic path metric.
    DistMatrix ring(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) ring.set_symmetric(i, j, ExtDistance(std::min(j - i, n - (j - i))));
    algebras.push_back(additive_group(cyclic, n, 0, ring));
  }
  std::vector<std::size_t> klein;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) klein.push_back(i ^ j);
  DistMatrix hamming(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      hamming.set_symmetric(i, j, ExtDistance(Rational(static_cast<std::int64_t>(__builtin_popcount(i ^ j)), 2)));
  algebras.push_back(additive_group(klein, 4, 0, hamming));

  std::size_t ok_cases = 0, error_cases = 0;
  for (const auto& a : algebras) {
    c.require(validate_algebra(*a).empty(), "invalid test algebra");
    const auto cs = enumerate_congruences(*a);
    for (const auto& pc : cs) {
      for (const auto& qc : cs) {
        const auto p = m_quotient(a, pc).projection;
        const auto q = m_quotient(a, qc).projection;
        const bool kernel = pc.refines(qc);
        for (bool metric : {false, true}) {
          try {
            const auto h = metric ? factor_m_homomorphism(p, q) : factor_homomorphism(p, q);
            c.require(kernel, "factored without the kernel condition");
            for (std::size_t e = 0; e < a->size(); ++e) c.require(h(p(e)) == q(e), "h . p != q");
            c.require(h.surjective, "h not surjective");
            c.require(std::holds_alternative<Homomorphism>(check_homomorphism(h.map, h.source, h.target)),
                      "h not a homomorphism");
            if (metric) {
              for (std::size_t x = 0; x < h.source->size(); ++x)
                for (std::size_t y = 0; y < h.source->size(); ++y)
                  c.require(h.target->dist(h(x), h(y)) <= h.source->dist(x, y), "h expands");
            }
            ++ok_cases;
          } catch (const FactorError& err) {
            c.require(!kernel, std::string("kernel condition holds but factor failed: ") + err.what());
            c.require(err.witness().has_value(), "no witness");
            if (err.witness()) {
              const auto [x, y] = *err.witness();
              c.require(p(x) == p(y) && q(x) != q(y), "invalid witness");
            }
            ++error_cases;
          }
        }
        // Metric kernel failure: q keeps the original metric, p halves it first.
        if (kernel && a->size() > 1) {
          const auto halved = scale_metric(a, Rational(1, 2));
          const auto p2 = compose(m_quotient(halved.algebra, pc).projection, halved.projection);
          const auto q2 = m_quotient(a, pc).projection;
          try {
            factor_m_homomorphism(p2, q2);
            c.require(pc.block_count() == 1, "stretched factor accepted");
          } catch (const FactorError& err) {
            c.require(err.witness().has_value(), "no metric witness");
            if (err.witness()) {
              const auto [x, y] = *err.witness();
              c.require(q2.target->dist(q2(x), q2(y)) > p2.target->dist(p2(x), p2(y)), "invalid metric witness");
            }
            ++error_cases;
          }
        }
      }
    }
  }
  if (c.ok) c.detail = std::to_string(ok_cases) + " factorizations, " + std::to_string(error_cases) + " rejections";
  return c;
}

// 5. Free distance vs. valuation oracle, and universal extensions.
Check free_algebra_check() {
  Check c;
  std::size_t pairs = 0, extensions = 0;
  for (const auto& member : {examples::negation_algebra(), examples::xor_algebra()}) {
    const std::vector<AlgebraPtr> k{member};
    for (const auto& vars : {std::set<std::string>{"x"}, std::set<std::string>{"x", "y"}}) {
      const auto f = free_algebra(ClassK(k), vars);
      const auto ts = oracle::terms(member->signature(), vars, 3);
      // Oracle side: value vectors per (valuation) without the free carrier.
      const auto vals = oracle::valuations(vars, member->size());
      std::vector<std::vector<std::size_t>> images(ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i)
        for (const auto& v : vals) images[i].push_back(oracle::eval(*member, v, ts[i]));
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i; j < ts.size(); ++j) {
          D want = Q(0);
          for (std::size_t v = 0; v < vals.size(); ++v)
            want = oracle::maxd(want, oracle::of(member->dist(images[i][v], images[j][v])));
          c.require(oracle::of(free_distance(f, ts[i], ts[j])) == want,
                    "free distance mismatch at " + format_term(ts[i]) + ", " + format_term(ts[j]));
          ++pairs;
        }
      }
      for (std::size_t v = 0; v < vals.size(); ++v) {
        const auto h = universal_extension(f, member, vals[v]);
        c.require(h.is_m_homomorphism(), "extension is not an M-homomorphism");
        for (std::size_t i = 0; i < ts.size(); ++i) {
          c.require(h(f.image(ts[i])) == images[i][v], "h . F != v# at " + format_term(ts[i]));
        }
        ++extensions;
      }
    }
  }
  if (c.ok) c.detail = std::to_string(pairs) + " term pairs, " + std::to_string(extensions) + " extensions";
  return c;
}

AlgebraPtr bitwise_xor_hamming() {
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t.push_back(i ^ j);
  DistMatrix d(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      d.set_symmetric(i, j, ExtDistance(Rational(static_cast<std::int64_t>(__builtin_popcount(i ^ j)), 2)));
  return make_algebra(examples::xor_signature(), index_names(4), d, std::vector<OpTable>{{2, t}});
}

// 6. Models of the theory stay models under products, subalgebras, quotients.
Check hsp_closure() {
  Check c;
  const auto sig = examples::xor_signature();
  const auto theory = parse_equations(sig, "vars x, y; eq xor(x,y) =0 xor(y,x); eq x =1 y;");
  const std::vector<AlgebraPtr> pool{examples::xor_algebra(), examples::xor_algebra(ExtDistance(Rational(1, 2))),
                                     examples::xor_algebra(ExtDistance(Rational(3, 4))), bitwise_xor_hamming(),
                                     examples::trivial_algebra(sig), examples::xor_algebra(ExtDistance(2))};
  const auto report = hsp_closure_suite(theory, pool);
  c.require(report.models.size() >= 4, "fewer than 4 models");
  c.require(report.products > 0 && report.subalgebras > 0 && report.quotients > 0, "empty suite");
  c.require(report.violations.empty(), std::to_string(report.violations.size()) + " violations");

  // Independent re-check with the oracle evaluator.
  auto models_theory = [&](const MetricAlgebra& a) {
    for (const auto& e : theory)
      if (!oracle::sat(a, e.vars(), e.lhs(), e.rhs(), e.eps())) return false;
    return true;
  };
  std::vector<AlgebraPtr> models;
  for (auto i : report.models) models.push_back(pool[i]);
  std::size_t constructed = 0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = i; j < models.size(); ++j) {
      std::vector<AlgebraPtr> f{models[i], models[j]};
      c.require(models_theory(*m_product(f).algebra), "product violates theory");
      ++constructed;
    }
    const std::size_t n = models[i]->size();
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> gens;
      for (std::size_t e = 0; e < n; ++e)
        if (mask & (1u << e)) gens.push_back(e);
      c.require(models_theory(*generated_subalgebra(models[i], gens).algebra), "subalgebra violates theory");
      ++constructed;
    }
    for (const auto& p : enumerate_congruences(*models[i])) {
      c.require(models_theory(*m_quotient(models[i], p).algebra), "quotient violates theory");
      ++constructed;
    }
  }
  if (c.ok) {
    c.detail = std::to_string(report.models.size()) + " models, " +
               std::to_string(report.products + report.subalgebras + report.quotients) +
               " constructions, 0 violations; " + std::to_string(constructed) + " re-checked";
  }
  return c;
}

// 7. Refutations hold in K and fail in the candidate.
Check membership_soundness() {
  Check c;
  const ClassK k({examples::xor_algebra()});
  const std::set<std::string> vars{"x", "y"};
  struct Case {
    Rational scale;
    bool member;
  };
  std::size_t refuted = 0, consistent = 0;
  for (const auto& cs : {Case{Rational(2), false}, Case{Rational(1, 2), true}, Case{Rational(3), false},
                         Case{Rational(1, 3), true}, Case{Rational(1), true}, Case{Rational(3, 2), false}}) {
    const auto b = examples::xor_algebra(ExtDistance(cs.scale));
    const auto m = membership_bounded(k, *b, vars, 3);
    if (const auto* r = std::get_if<Refuted>(&m)) {
      c.require(!cs.member, "scaled by " + format_rational(cs.scale) + " refuted");
      const auto& e = r->equation;
      for (const auto& a : k.members())
        c.require(oracle::sat(*a, e.vars(), e.lhs(), e.rhs(), e.eps()), "refuting equation fails in K");
      c.require(!oracle::sat(*b, e.vars(), e.lhs(), e.rhs(), e.eps()), "refuting equation holds in candidate");
      ++refuted;
    } else {
      c.require(cs.member, "scaled by " + format_rational(cs.scale) + " not refuted");
      ++consistent;
    }
  }
  if (c.ok) c.detail = std::to_string(refuted) + " refuted (double-checked), " + std::to_string(consistent) + " consistent";
  return c;
}

// 8. A scaled M-quotient destroys the distance lower bound.
Check non_variety() {
  Check c;
  const auto d = non_variety_demo();
  c.require(d.original_min_distance == ExtDistance(1), "min distance in A");
  c.require(d.quotient_min_distance == ExtDistance(Rational(1, 2)), "min distance in quotient");
  c.require(d.original_has_lower_bound, "lower bound fails in A");
  c.require(!d.quotient_has_lower_bound, "lower bound holds in quotient");
  c.require(!is_quantitative(*d.quotient), "quotient not quantitative");
  c.require(oracle::non_expansive_ops(*d.quotient), "quotient not quantitative (oracle)");
  c.require(std::holds_alternative<Homomorphism>(
                check_homomorphism(d.projection.map, d.projection.source, d.projection.target)),
            "projection not a homomorphism");
  c.require(d.projection.is_m_homomorphism() && d.projection.surjective, "projection not an M-quotient");
  for (std::size_t x = 0; x < d.original->size(); ++x)
    for (std::size_t y = 0; y < d.original->size(); ++y)
      c.require(d.quotient->dist(d.projection(x), d.projection(y)) <= d.original->dist(x, y), "projection expands");
  if (c.ok) c.detail = "min distance 1 -> 1/2, property destroyed";
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "metric validator on random closed metrics and mutations", 1, metric_validator},
      {2, "sup-product characterization", 1, sup_product_characterization},
      {3, "renaming invariance of satisfaction", 10, renaming},
      {4, "factorization through quotients", 10, factorization},
      {5, "free algebra distance and universal extension", 30, free_algebra_check},
      {6, "HSP closure suite", 30, hsp_closure},
      {7, "membership soundness on scaled xor", 5, membership_soundness},
      {8, "non-variety demo", 1, non_variety},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = cr.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < cr.limit_s;
    const bool pass = result.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s [%d] %s: %s (%.3f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", cr.id, cr.name,
                result.detail.c_str(), secs, cr.limit_s, in_time ? "" : ", too slow");
  }
  return failures == 0 ? 0 : 1;
}
