#include "metalg/semantics.hpp"

#include "lexer.hpp"
#include "metalg/error.hpp"

namespace metalg {

std::string format_valuation(const Valuation& v, const MetricAlgebra& a) {
  std::string out;
  for (const auto& [var, value] : v) {
    if (!out.empty()) out += ", ";
    out += var + "=" + a.name(value);
  }
  return out;
}

std::size_t eval_term(const MetricAlgebra& a, const Valuation& v, const Term& t) {
  if (t.is_var()) {
    auto it = v.find(t.name());
    if (it == v.end()) throw InputError("unbound variable '" + t.name() + "'");
    return it->second;
  }
  const auto sym = a.signature().index_of(t.name());
  if (!sym) throw InputError("unknown operation symbol '" + t.name() + "'");
  if (a.signature()[*sym].arity != t.args().size()) {
    throw InputError("arity mismatch for '" + t.name() + "'");
  }
  std::vector<std::size_t> args;
  args.reserve(t.args().size());
  for (const auto& arg : t.args()) args.push_back(eval_term(a, v, arg));
  return a.apply(*sym, args);
}

MEquation::MEquation(std::set<std::string> vars, Term lhs, Term rhs, Rational eps)
    : vars_(std::move(vars)), lhs_(std::move(lhs)), rhs_(std::move(rhs)), eps_(eps) {
  if (eps_ < Rational(0)) throw InputError("equation bound must be nonnegative");
  for (const Term* t : {&lhs_, &rhs_}) {
    for (const auto& x : vars_of(*t)) {
      if (!vars_.contains(x)) {
        throw InputError("variable '" + x + "' of " + format_term(*t) + " is not declared");
      }
    }
  }
}

MEquation MEquation::with_vars(std::set<std::string> vars) const {
  return MEquation(std::move(vars), lhs_, rhs_, eps_);
}

MEquation MEquation::with_eps(Rational eps) const { return MEquation(vars_, lhs_, rhs_, eps); }

std::string format_equation(const MEquation& e) {
  return format_term(e.lhs()) + " =" + format_rational(e.eps()) + " " + format_term(e.rhs());
}

namespace {

/// Postfix program for a term: symbol indices and variable slots resolved once.
class CompiledTerm {
 public:
  CompiledTerm(const MetricAlgebra& a, const std::vector<std::string>& slots, const Term& t) {
    compile(a, slots, t);
  }

  std::size_t eval(const MetricAlgebra& a, const std::vector<std::size_t>& values,
                   std::vector<std::size_t>& stack) const {
    stack.clear();
    for (const auto& ins : code_) {
      if (ins.is_var) {
        stack.push_back(values[ins.index]);
        continue;
      }
      const std::size_t base = stack.size() - ins.arity;
      const std::size_t r = a.apply(ins.index, std::span<const std::size_t>(stack).subspan(base));
      stack.resize(base);
      stack.push_back(r);
    }
    return stack.back();
  }

 private:
  struct Instr {
    bool is_var;
    std::size_t index;  // slot or symbol
    std::size_t arity;
  };

  void compile(const MetricAlgebra& a, const std::vector<std::string>& slots, const Term& t) {
    if (t.is_var()) {
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i] == t.name()) {
          code_.push_back({true, i, 0});
          return;
        }
      }
      throw InputError("unbound variable '" + t.name() + "'");
    }
    const auto sym = a.signature().index_of(t.name());
    if (!sym) throw InputError("unknown operation symbol '" + t.name() + "'");
    if (a.signature()[*sym].arity != t.args().size()) {
      throw InputError("arity mismatch for '" + t.name() + "'");
    }
    for (const auto& arg : t.args()) compile(a, slots, arg);
    code_.push_back({false, *sym, t.args().size()});
  }

  std::vector<Instr> code_;
};

std::size_t valuation_count(std::size_t n, std::size_t vars, SatBounds bounds) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < vars; ++i) {
    if (count > bounds.max_valuations / n) {
      throw BoundError("valuations", bounds.max_valuations, count * n);
    }
    count *= n;
  }
  return count;
}

/// Calls visit(values, distance) over valuations in lexicographic order until it returns false.
template <typename Visit>
void for_each_valuation(const MetricAlgebra& a, const std::set<std::string>& vars, const Term& lhs,
                        const Term& rhs, SatBounds bounds, Visit&& visit) {
  const std::vector<std::string> slots(vars.begin(), vars.end());
  valuation_count(a.size(), slots.size(), bounds);
  const CompiledTerm l(a, slots, lhs), r(a, slots, rhs);
  std::vector<std::size_t> values(slots.size(), 0), stack;
  while (true) {
    const auto& d = a.dist(l.eval(a, values, stack), r.eval(a, values, stack));
    if (!visit(values, d)) return;
    std::size_t k = values.size();
    while (k > 0 && ++values[k - 1] == a.size()) values[--k] = 0;
    if (k == 0) return;
  }
}

Valuation to_valuation(const std::set<std::string>& vars, const std::vector<std::size_t>& values) {
  Valuation v;
  std::size_t i = 0;
  for (const auto& x : vars) v[x] = values[i++];
  return v;
}

}  // namespace

SatResult satisfies(const MetricAlgebra& a, const MEquation& e, SatBounds bounds) {
  SatResult result;
  const ExtDistance eps(e.eps());
  for_each_valuation(a, e.vars(), e.lhs(), e.rhs(), bounds,
                     [&](const std::vector<std::size_t>& values, const ExtDistance& d) {
                       if (d <= eps) return true;
                       result.witness = SatWitness{to_valuation(e.vars(), values), d};
                       return false;
                     });
  return result;
}

ExtDistance max_distance(const MetricAlgebra& a, const std::set<std::string>& vars, const Term& lhs,
                         const Term& rhs, SatBounds bounds) {
  ExtDistance worst;
  for_each_valuation(a, vars, lhs, rhs, bounds,
                     [&](const std::vector<std::size_t>&, const ExtDistance& d) {
                       if (worst < d) worst = d;
                       return !worst.is_infinite();
                     });
  return worst;
}

std::optional<TheoryFailure> satisfies_all(const MetricAlgebra& a,
                                           const std::vector<MEquation>& theory,
                                           SatBounds bounds) {
  for (std::size_t i = 0; i < theory.size(); ++i) {
    auto r = satisfies(a, theory[i], bounds);
    if (!r.holds()) return TheoryFailure{i, std::move(*r.witness)};
  }
  return std::nullopt;
}

std::vector<MEquation> parse_equations(const Signature& sig, std::string_view text) {
  detail::Cursor cur(text);
  std::vector<MEquation> out;
  std::set<std::string> vars;
  while (!cur.at_end()) {
    if (cur.accept_word("vars")) {
      vars.clear();
      if (cur.peek() != ';') {
        do {
          vars.insert(cur.identifier());
        } while (cur.accept(','));
      }
      detail::check_var_names(sig, vars);
    } else if (cur.accept_word("eq")) {
      Term lhs = detail::parse_term_at(cur, sig, vars);
      cur.expect('=');
      const std::size_t eps_pos = cur.pos();
      const std::string literal = cur.distance_literal();
      if (literal == "inf") throw ParseError("equation bound must be finite", eps_pos);
      Rational eps;
      try {
        eps = parse_rational(literal);
      } catch (const InputError& e) {
        throw ParseError(e.what(), eps_pos);
      }
      Term rhs = detail::parse_term_at(cur, sig, vars);
      out.emplace_back(vars, std::move(lhs), std::move(rhs), eps);
    } else {
      cur.fail("expected 'vars' or 'eq'");
    }
    cur.expect(';');
  }
  return out;
}

}  // namespace metalg
