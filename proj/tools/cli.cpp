#include "cli.hpp"

#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "metalg/algebra.hpp"
#include "metalg/free.hpp"
#include "metalg/io.hpp"
#include "metalg/semantics.hpp"

namespace metalg::cli {

namespace {

using io::json;

struct Options {
  std::optional<std::string> json_path;
  std::optional<int> decimal;
  std::optional<std::string> out_path;
  std::size_t max_carrier = 4096;
};

struct Outcome {
  int code = kOk;
  json twin;
};

std::string dist_text(const ExtDistance& d, const Options& opt) {
  std::string s = d.to_string();
  if (opt.decimal && !d.is_infinite() && d.value().denominator() != 1) {
    s += " (" + d.to_decimal(*opt.decimal) + ")";
  }
  return s;
}

std::string tuple_text(const MetricAlgebra& a, const std::vector<std::size_t>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += ",";
    s += a.name(xs[i]);
  }
  return s + ")";
}

json names_of(const MetricAlgebra& a, const std::vector<std::size_t>& xs) {
  json arr = json::array();
  for (auto x : xs) arr.push_back(a.name(x));
  return arr;
}

json valuation_json(const Valuation& v, const MetricAlgebra& a) {
  json j = json::object();
  for (const auto& [var, value] : v) j[var] = a.name(value);
  return j;
}

json map_json(const Homomorphism& h) {
  json j = json::object();
  for (std::size_t e = 0; e < h.map.size(); ++e) j[h.source->name(e)] = h.target->name(h.map[e]);
  return j;
}

void describe(std::ostream& out, const MetricAlgebra& a, const Options& opt) {
  out << "signature: " << format_signature(a.signature()) << "\n";
  out << "carrier (" << a.size() << "):";
  for (const auto& n : a.names()) out << " " << n;
  out << "\ndist:\n";
  std::vector<std::vector<std::string>> cells(a.size());
  std::size_t width = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      cells[i].push_back(dist_text(a.dist(i, j), opt));
      width = std::max(width, cells[i].back().size());
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << "  " << a.name(i) << ":";
    for (const auto& c : cells[i]) out << " " << std::setw(static_cast<int>(width)) << c;
    out << "\n";
  }
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const auto& sym = a.signature()[s];
    out << "op " << sym.name << "/" << sym.arity << ":";
    const TupleIndexer idx(std::vector<std::size_t>(sym.arity, a.size()));
    for (std::size_t cell = 0; cell < idx.count(); ++cell) {
      out << " " << sym.name;
      if (sym.arity > 0) out << tuple_text(a, idx.decode(cell));
      out << "=" << a.name(a.table(s).values[cell]);
    }
    out << "\n";
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

std::set<std::string> parse_vars(const std::string& s) {
  std::set<std::string> vars;
  for (auto& v : split(s, ',')) {
    if (v.empty()) continue;
    if (!is_identifier(v)) throw InputError("invalid variable name '" + v + "'");
    vars.insert(v);
  }
  return vars;
}

std::size_t element_or_fail(const MetricAlgebra& a, const std::string& name) {
  if (auto e = a.element(name)) return *e;
  throw InputError("unknown element '" + name + "'");
}

std::vector<AlgebraPtr> load_all(const std::vector<std::string>& paths) {
  std::vector<AlgebraPtr> out;
  for (const auto& p : paths) {
    auto a = io::load_algebra(p);
    const auto defects = validate_algebra(*a);
    if (!defects.empty()) throw InputError(p + ": invalid algebra: " + defects.front().message);
    out.push_back(std::move(a));
  }
  return out;
}

void maybe_write_algebra(const Options& opt, const MetricAlgebra& a) {
  if (opt.out_path) io::write_text(*opt.out_path, io::algebra_to_json(a).dump(2) + "\n");
}

std::string blocks_text(const MetricAlgebra& a, const Partition& p) {
  std::string s;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    if (b > 0) s += " | ";
    for (std::size_t i = 0; i < p.blocks()[b].size(); ++i) {
      if (i > 0) s += " ";
      s += a.name(p.blocks()[b][i]);
    }
  }
  return s;
}

json blocks_json(const MetricAlgebra& a, const Partition& p) {
  json arr = json::array();
  for (const auto& block : p.blocks()) arr.push_back(names_of(a, block));
  return arr;
}

// ---------------------------------------------------------------------------

Outcome cmd_validate(const std::string& path, std::ostream& out) {
  auto a = io::load_algebra(path);
  const auto defects = validate_algebra(*a);
  Outcome r;
  r.twin = {{"valid", defects.empty()}, {"defects", json::array()}};
  if (defects.empty()) {
    out << "valid\n";
    return r;
  }
  out << "invalid:\n";
  for (const auto& d : defects) {
    out << "  - " << d.message << "\n";
    r.twin["defects"].push_back(d.message);
  }
  r.code = kFails;
  return r;
}

Outcome cmd_quantitative(const std::string& path, std::ostream& out, const Options& opt) {
  auto a = load_all({path}).front();
  Outcome r;
  auto w = is_quantitative(*a);
  r.twin = {{"quantitative", !w}};
  if (!w) {
    out << "quantitative\n";
    return r;
  }
  const auto& sym = a->signature()[w->symbol];
  ExtDistance args_d;
  for (std::size_t i = 0; i < w->xs.size(); ++i) args_d = max(args_d, a->dist(w->xs[i], w->ys[i]));
  const auto res_d = a->dist(a->apply(w->symbol, w->xs), a->apply(w->symbol, w->ys));
  out << "not quantitative: " << sym.name << tuple_text(*a, w->xs) << " vs " << sym.name
      << tuple_text(*a, w->ys) << ": result distance " << dist_text(res_d, opt)
      << " > argument distance " << dist_text(args_d, opt) << "\n";
  r.twin["witness"] = {{"symbol", sym.name},
                       {"xs", names_of(*a, w->xs)},
                       {"ys", names_of(*a, w->ys)},
                       {"argument_distance", args_d.to_string()},
                       {"result_distance", res_d.to_string()}};
  r.code = kFails;
  return r;
}

Outcome cmd_sat(const std::string& alg, const std::string& eqs, std::ostream& out,
                const Options& opt) {
  auto a = load_all({alg}).front();
  const auto theory = io::load_equations(a->signature(), eqs);
  Outcome r;
  r.twin = {{"holds", true}, {"equations", json::array()}};
  for (const auto& e : theory) {
    auto res = satisfies(*a, e);
    json entry = {{"equation", format_equation(e)}, {"holds", res.holds()}};
    if (res.holds()) {
      out << "holds  " << format_equation(e) << "\n";
    } else {
      out << "FAILS  " << format_equation(e) << "  at " << format_valuation(res.witness->valuation, *a)
          << " (distance " << dist_text(res.witness->distance, opt) << ")\n";
      entry["witness"] = {{"valuation", valuation_json(res.witness->valuation, *a)},
                          {"distance", res.witness->distance.to_string()}};
      r.twin["holds"] = false;
      r.code = kFails;
    }
    r.twin["equations"].push_back(std::move(entry));
  }
  return r;
}

Outcome cmd_product(const std::vector<std::string>& paths, std::ostream& out, const Options& opt) {
  auto factors = load_all(paths);
  auto p = m_product(factors, ProductBounds{opt.max_carrier});
  describe(out, *p.algebra, opt);
  maybe_write_algebra(opt, *p.algebra);
  Outcome r;
  r.twin = {{"algebra", io::algebra_to_json(*p.algebra)}, {"projections", json::array()}};
  for (const auto& proj : p.projections) r.twin["projections"].push_back(map_json(proj));
  return r;
}

Outcome cmd_subalg(const std::string& path, const std::string& gens, std::ostream& out,
                   const Options& opt) {
  auto a = load_all({path}).front();
  std::vector<std::size_t> g;
  for (const auto& name : split(gens, ',')) {
    if (!name.empty()) g.push_back(element_or_fail(*a, name));
  }
  auto sub = generated_subalgebra(a, g);
  describe(out, *sub.algebra, opt);
  out << "embedding: isometric=" << sub.embedding.isometric
      << " injective=" << sub.embedding.injective << "\n";
  maybe_write_algebra(opt, *sub.algebra);
  Outcome r;
  r.twin = {{"algebra", io::algebra_to_json(*sub.algebra)}, {"embedding", map_json(sub.embedding)}};
  return r;
}

Outcome cmd_congruences(const std::string& path, std::ostream& out) {
  auto a = load_all({path}).front();
  const auto cs = enumerate_congruences(*a);
  Outcome r;
  r.twin = {{"congruences", json::array()}};
  out << cs.size() << " congruences\n";
  for (const auto& p : cs) {
    out << "  " << blocks_text(*a, p) << "\n";
    r.twin["congruences"].push_back(blocks_json(*a, p));
  }
  return r;
}

Outcome cmd_quotient(const std::string& path, const std::string& blocks, std::ostream& out,
                     const Options& opt) {
  auto a = load_all({path}).front();
  std::vector<std::vector<std::size_t>> bs;
  for (const auto& block : split(blocks, '|')) {
    std::vector<std::size_t> b;
    std::istringstream in(block);
    for (std::string name; in >> name;) b.push_back(element_or_fail(*a, name));
    bs.push_back(std::move(b));
  }
  const Partition p(a->size(), bs);
  Outcome r;
  if (auto defect = find_congruence_defect(*a, p)) {
    const auto& sym = a->signature()[defect->symbol];
    auto moved = defect->args;
    moved[defect->position] = defect->replacement;
    out << "not a congruence: " << sym.name << tuple_text(*a, defect->args) << " = "
        << a->name(a->apply(defect->symbol, defect->args)) << " but " << sym.name
        << tuple_text(*a, moved) << " = " << a->name(a->apply(defect->symbol, moved))
        << " lies in another block\n";
    r.twin = {{"congruence", false},
              {"witness", {{"symbol", sym.name},
                           {"args", names_of(*a, defect->args)},
                           {"moved", names_of(*a, moved)}}}};
    r.code = kFails;
    return r;
  }
  auto q = m_quotient(a, p);
  describe(out, *q.algebra, opt);
  if (q.q_quotient) out << "Q-quotient: " << (*q.q_quotient ? "yes" : "no") << "\n";
  maybe_write_algebra(opt, *q.algebra);
  r.twin = {{"congruence", true},
            {"algebra", io::algebra_to_json(*q.algebra)},
            {"projection", map_json(q.projection)},
            {"q_quotient", q.q_quotient ? json(*q.q_quotient) : json(nullptr)}};
  return r;
}

Outcome cmd_factor(const std::string& p_path, const std::string& q_path, bool metric,
                   std::ostream& out) {
  const auto p = io::homomorphism_from_json(io::read_json(p_path));
  const auto q = io::homomorphism_from_json(io::read_json(q_path));
  Outcome r;
  try {
    const auto h = metric ? factor_m_homomorphism(p, q) : factor_homomorphism(p, q);
    out << "h:";
    for (std::size_t e = 0; e < h.map.size(); ++e) {
      out << " " << h.source->name(e) << "->" << h.target->name(h.map[e]);
    }
    out << "\nsurjective=" << h.surjective << " non_expansive=" << h.non_expansive << "\n";
    r.twin = {{"factored", true},
              {"map", map_json(h)},
              {"surjective", h.surjective},
              {"non_expansive", h.non_expansive}};
  } catch (const FactorError& e) {
    out << "cannot factor: " << e.what() << "\n";
    r.twin = {{"factored", false}, {"reason", e.what()}};
    if (e.witness()) {
      r.twin["witness"] = {p.source->name(e.witness()->first), p.source->name(e.witness()->second)};
    }
    r.code = kFails;
  }
  return r;
}

Outcome cmd_scale(const std::string& path, const std::string& by, std::ostream& out,
                  const Options& opt) {
  auto a = load_all({path}).front();
  auto s = scale_metric(a, parse_rational(by));
  describe(out, *s.algebra, opt);
  out << "identity is an M-homomorphism: " << (s.projection.is_m_homomorphism() ? "yes" : "no")
      << "\n";
  maybe_write_algebra(opt, *s.algebra);
  Outcome r;
  r.twin = {{"algebra", io::algebra_to_json(*s.algebra)},
            {"m_homomorphism", s.projection.is_m_homomorphism()},
            {"q_quotient", s.q_quotient ? json(*s.q_quotient) : json(nullptr)}};
  return r;
}

Outcome cmd_free(const std::vector<std::string>& paths, const std::string& vars, std::ostream& out,
                 const Options& opt) {
  const ClassK k(load_all(paths));
  const auto f = free_algebra(k, parse_vars(vars), FreeBounds{100000, opt.max_carrier});
  out << "free algebra over {" << vars << "} in SP(K) of " << k.members().size()
      << " member(s), " << f.coordinates.size() << " coordinates\n";
  describe(out, *f.base, opt);
  maybe_write_algebra(opt, *f.base);
  Outcome r;
  json reps = json::array();
  for (const auto& t : f.reps) reps.push_back(format_term(t));
  r.twin = {{"vars", f.vars},
            {"coordinates", f.coordinates.size()},
            {"representatives", reps},
            {"algebra", io::algebra_to_json(*f.base)},
            {"note", "free algebra of the prevariety SP(K)"}};
  return r;
}

json theory_json(const Theory& t, std::size_t depth) {
  json entries = json::array();
  for (const auto& e : t.entries) {
    entries.push_back({{"lhs", format_term(e.lhs)},
                       {"rhs", format_term(e.rhs)},
                       {"eps", e.eps.to_string()},
                       {"equation", e.is_equation()}});
  }
  return {{"vars", t.vars}, {"depth", depth}, {"entries", entries}};
}

Outcome cmd_theory(const std::vector<std::string>& paths, const std::string& vars,
                   std::size_t depth, std::ostream& out, const Options& opt) {
  const ClassK k(load_all(paths));
  TheoryBounds bounds;
  bounds.free.max_carrier = opt.max_carrier;
  const auto t = equational_theory(k, parse_vars(vars), depth, bounds);
  out << format_theory(t);
  return {kOk, theory_json(t, depth)};
}

Outcome cmd_member(const std::vector<std::string>& paths, const std::string& candidate,
                   const std::string& vars, std::size_t depth, std::ostream& out,
                   const Options& opt) {
  const ClassK k(load_all(paths));
  auto b = load_all({candidate}).front();
  TheoryBounds bounds;
  bounds.free.max_carrier = opt.max_carrier;
  const auto verdict = membership_bounded(k, *b, parse_vars(vars), depth, bounds);
  Outcome r;
  if (const auto* refuted = std::get_if<Refuted>(&verdict)) {
    out << "refuted: " << format_equation(refuted->equation) << " holds in K but fails at "
        << format_valuation(refuted->witness.valuation, *b) << " (distance "
        << dist_text(refuted->witness.distance, opt) << ")\n";
    r.twin = {{"verdict", "refuted"},
              {"equation", format_equation(refuted->equation)},
              {"valuation", valuation_json(refuted->witness.valuation, *b)},
              {"distance", refuted->witness.distance.to_string()}};
    r.code = kFails;
  } else {
    out << "consistent up to depth " << depth << " (bounded check, not a membership proof)\n";
    r.twin = {{"verdict", "consistent"}, {"depth", depth}};
  }
  return r;
}

Outcome cmd_hsp(const std::string& eqs, const std::vector<std::string>& paths, std::ostream& out,
                const Options& opt) {
  auto pool = load_all(paths);
  const auto theory = io::load_equations(pool.front()->signature(), eqs);
  HspBounds bounds;
  bounds.product.max_carrier = opt.max_carrier;
  const auto report = hsp_closure_suite(theory, pool, bounds);
  out << "models: " << report.models.size() << " of " << report.pool << "\n"
      << "products: " << report.products << "\n"
      << "subalgebras: " << report.subalgebras << "\n"
      << "quotients: " << report.quotients << "\n"
      << "violations: " << report.violations.size() << "\n";
  Outcome r;
  r.twin = {{"pool", report.pool},
            {"models", report.models},
            {"products", report.products},
            {"subalgebras", report.subalgebras},
            {"quotients", report.quotients},
            {"violations", json::array()}};
  for (const auto& v : report.violations) {
    out << "  " << v.construction << ": " << format_equation(v.equation) << " (distance "
        << dist_text(v.witness.distance, opt) << ")\n";
    r.twin["violations"].push_back({{"construction", v.construction},
                                    {"equation", format_equation(v.equation)},
                                    {"distance", v.witness.distance.to_string()}});
  }
  if (!report.closed()) r.code = kFails;
  return r;
}

Outcome cmd_demo(const std::string& by, std::ostream& out, const Options& opt) {
  const auto d = non_variety_demo(parse_rational(by));
  out << "A: xor on {0,1}, d(0,1) = " << dist_text(d.original->dist(0, 1), opt)
      << ", quantitative: " << (d.original_quantitative ? "yes" : "no") << "\n"
      << "B: same algebra with distances scaled by " << format_rational(d.scale)
      << ", d(0,1) = " << dist_text(d.quotient->dist(0, 1), opt)
      << ", quantitative: " << (d.quotient_quantitative ? "yes" : "no") << "\n"
      << "identity A -> B: surjective=" << d.projection.surjective
      << " M-homomorphism=" << d.projection.is_m_homomorphism() << " (an M-quotient)\n"
      << "property 'distinct points are at distance >= 1': A "
      << (d.original_has_lower_bound ? "holds" : "fails") << " (min "
      << dist_text(d.original_min_distance, opt) << "), B "
      << (d.quotient_has_lower_bound ? "holds" : "fails") << " (min "
      << dist_text(d.quotient_min_distance, opt) << ")\n"
      << "A distance lower bound is not preserved by M-quotients, so no set of metric "
         "equations defines it.\nInfinite original: the reals with d(x,y) = |tanh(y) - tanh(x)| "
         "as a quotient of the normed line.\n";
  Outcome r;
  r.twin = {{"scale", format_rational(d.scale)},
            {"original_min_distance", d.original_min_distance.to_string()},
            {"quotient_min_distance", d.quotient_min_distance.to_string()},
            {"original_has_lower_bound", d.original_has_lower_bound},
            {"quotient_has_lower_bound", d.quotient_has_lower_bound},
            {"original_quantitative", d.original_quantitative},
            {"quotient_quantitative", d.quotient_quantitative},
            {"projection_surjective", d.projection.surjective},
            {"projection_m_homomorphism", d.projection.is_m_homomorphism()},
            {"property_destroyed",
             d.original_has_lower_bound && !d.quotient_has_lower_bound}};
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite metric algebra workbench", "metalg"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  std::string json_path, seed;
  int decimal = -1;
  app.add_option("--json", json_path, "Write the machine-readable report to this path");
  app.add_option("--decimal", decimal, "Also print distances with this many decimal digits")
      ->check(CLI::Range(0, 18));
  app.add_option("--seed", seed, "Rejected: every algorithm is deterministic");
  app.add_option("--max-carrier", opt.max_carrier, "Carrier bound for products and free algebras");

  std::vector<std::string> paths;
  std::string path, second, text;
  std::string vars = "x,y";
  std::size_t depth = 3;
  bool metric = false;
  std::string candidate;
  std::string by = "1/2";
  std::string out_path;
  std::function<Outcome()> action;

  auto with_out = [&](CLI::App* sub) {
    sub->add_option("-o,--out", out_path, "Write the resulting algebra file");
  };

  auto* validate = app.add_subcommand("validate", "Check metric axioms and operation tables");
  validate->add_option("algebra", path)->required();
  validate->callback([&] { action = [&] { return cmd_validate(path, out); }; });

  auto* quant = app.add_subcommand("quantitative", "Check that every operation is non-expansive");
  quant->add_option("algebra", path)->required();
  quant->callback([&] { action = [&] { return cmd_quantitative(path, out, opt); }; });

  auto* sat = app.add_subcommand("sat", "Check metric equations against an algebra");
  sat->add_option("algebra", path)->required();
  sat->add_option("equations", second)->required();
  sat->callback([&] { action = [&] { return cmd_sat(path, second, out, opt); }; });

  auto* product = app.add_subcommand("product", "Product with the sup metric");
  product->add_option("algebras", paths)->required();
  with_out(product);
  product->callback([&] { action = [&] { return cmd_product(paths, out, opt); }; });

  auto* subalg = app.add_subcommand("subalg", "Subalgebra generated by elements");
  subalg->add_option("algebra", path)->required();
  subalg->add_option("--gens", text, "Comma-separated element names")->required();
  with_out(subalg);
  subalg->callback([&] { action = [&] { return cmd_subalg(path, text, out, opt); }; });

  auto* congr = app.add_subcommand("congruences", "Enumerate congruences");
  congr->add_option("algebra", path)->required();
  congr->callback([&] { action = [&] { return cmd_congruences(path, out); }; });

  auto* quotient = app.add_subcommand("quotient", "Quotient by a congruence, canonical metric");
  quotient->add_option("algebra", path)->required();
  quotient->add_option("--blocks", text, "Blocks of element names, e.g. \"0 1|2 3\"")->required();
  with_out(quotient);
  quotient->callback([&] { action = [&] { return cmd_quotient(path, text, out, opt); }; });

  auto* factor = app.add_subcommand("factor", "Factor q through p (h . p = q)");
  factor->add_option("p", path)->required();
  factor->add_option("q", second)->required();
  factor->add_flag("--metric", metric, "Require and produce non-expansive maps");
  factor->callback([&] { action = [&] { return cmd_factor(path, second, metric, out); }; });

  auto* scale = app.add_subcommand("scale", "Scale all distances by a factor in (0, 1]");
  scale->add_option("algebra", path)->required();
  scale->add_option("--by", by, "Scale factor")->required();
  with_out(scale);
  scale->callback([&] { action = [&] { return cmd_scale(path, by, out, opt); }; });

  auto* free = app.add_subcommand("free", "Free algebra over variables for a finite class");
  free->add_option("algebras", paths)->required();
  free->add_option("--vars", vars, "Comma-separated variables");
  with_out(free);
  free->callback([&] { action = [&] { return cmd_free(paths, vars, out, opt); }; });

  auto* theory = app.add_subcommand("theory", "Bounded equational theory of a finite class");
  theory->add_option("algebras", paths)->required();
  theory->add_option("--vars", vars, "Comma-separated variables");
  theory->add_option("--depth", depth, "Maximum term depth")->check(CLI::PositiveNumber);
  theory->callback([&] { action = [&] { return cmd_theory(paths, vars, depth, out, opt); }; });

  auto* member = app.add_subcommand("member", "Bounded test of membership in the generated variety");
  member->add_option("algebras", paths)->required();
  member->add_option("--candidate", candidate, "Candidate algebra file")->required();
  member->add_option("--vars", vars, "Comma-separated variables");
  member->add_option("--depth", depth, "Maximum term depth")->check(CLI::PositiveNumber);
  member->callback(
      [&] { action = [&] { return cmd_member(paths, candidate, vars, depth, out, opt); }; });

  auto* hsp = app.add_subcommand("hsp", "Closure of a theory's models under products, subalgebras, quotients");
  hsp->add_option("equations", second)->required();
  hsp->add_option("algebras", paths)->required();
  hsp->callback([&] { action = [&] { return cmd_hsp(second, paths, out, opt); }; });

  auto* demo = app.add_subcommand("demo-nonvariety", "Scaled-metric quotient destroying a distance lower bound");
  demo->add_option("--by", by, "Scale factor");
  demo->callback([&] { action = [&] { return cmd_demo(by, out, opt); }; });

  std::vector<const char*> argv{"metalg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  if (!seed.empty()) {
    err << "error: --seed is not supported; every algorithm is deterministic\n";
    return kInputError;
  }
  if (!json_path.empty()) opt.json_path = json_path;
  if (decimal >= 0) opt.decimal = decimal;
  if (!out_path.empty()) opt.out_path = out_path;

  try {
    Outcome r = action();
    if (opt.json_path) io::write_text(*opt.json_path, r.twin.dump(2) + "\n");
    return r.code;
  } catch (const BoundError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace metalg::cli
