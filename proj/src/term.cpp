#include "metalg/term.hpp"

#include <algorithm>
#include <cctype>

#include "lexer.hpp"
#include "metalg/error.hpp"

namespace metalg {

namespace detail {

void Cursor::skip_space() {
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos_;
    } else if (c == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }
}

bool Cursor::accept(char c) {
  if (peek() != c) return false;
  ++pos_;
  return true;
}

void Cursor::expect(char c) {
  if (!accept(c)) fail(std::string("expected '") + c + "'");
}

bool Cursor::accept_word(std::string_view word) {
  skip_space();
  if (text_.substr(pos_, word.size()) != word) return false;
  const std::size_t end = pos_ + word.size();
  if (end < text_.size()) {
    const char c = text_[end];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
  }
  pos_ = end;
  return true;
}

std::string Cursor::identifier() {
  skip_space();
  const std::size_t start = pos_;
  if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
    fail("expected identifier");
  }
  while (pos_ < text_.size() &&
         (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
    ++pos_;
  }
  return std::string(text_.substr(start, pos_ - start));
}

std::string Cursor::natural() {
  skip_space();
  const std::size_t start = pos_;
  if (pos_ < text_.size() && text_[pos_] == '-') fail("negative arity");
  while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  if (start == pos_) fail("expected natural number");
  return std::string(text_.substr(start, pos_ - start));
}

std::string Cursor::distance_literal() {
  const std::size_t start = pos_;
  if (text_.substr(pos_, 3) == "inf") {
    pos_ += 3;
    return "inf";
  }
  while (pos_ < text_.size() &&
         (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
          text_[pos_] == '/')) {
    ++pos_;
  }
  if (start == pos_) fail("expected distance literal");
  return std::string(text_.substr(start, pos_ - start));
}

}  // namespace detail

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!is_identifier(symbols_[i].name)) {
      throw InputError("invalid symbol name '" + symbols_[i].name + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (symbols_[j].name == symbols_[i].name) {
        throw InputError("duplicate symbol '" + symbols_[i].name + "'");
      }
    }
  }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

bool Signature::has_constant() const {
  return std::any_of(symbols_.begin(), symbols_.end(), [](const Symbol& s) { return s.arity == 0; });
}

Signature parse_signature(std::string_view text) {
  detail::Cursor cur(text);
  std::vector<Symbol> symbols;
  if (cur.at_end()) return Signature{};
  do {
    if (!cur.accept_word("op")) cur.fail("expected 'op'");
    const std::size_t name_pos = cur.pos();
    Symbol s{cur.identifier(), 0};
    cur.expect('/');
    const std::string digits = cur.natural();
    if (digits.size() > 9) cur.fail("arity too large");
    s.arity = std::stoul(digits);
    for (const auto& prev : symbols) {
      if (prev.name == s.name) throw ParseError("duplicate symbol '" + s.name + "'", name_pos);
    }
    symbols.push_back(std::move(s));
  } while (cur.accept(';') && !cur.at_end());
  if (!cur.at_end()) cur.fail("unexpected input");
  return Signature(std::move(symbols));
}

std::string format_signature(const Signature& sig) {
  std::string out;
  for (const auto& s : sig.symbols()) {
    if (!out.empty()) out += "; ";
    out += "op " + s.name + "/" + std::to_string(s.arity);
  }
  return out;
}

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{true, std::move(name), {}, 0}));
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  std::size_t depth = 0;
  for (const auto& a : args) depth = std::max(depth, a.depth());
  return Term(std::make_shared<const Node>(Node{false, std::move(symbol), std::move(args), depth + 1}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.is_var() == b.is_var() && a.depth() == b.depth() && a.name() == b.name() &&
         a.args() == b.args();
}

namespace {

void append_term(const Term& t, std::string& out) {
  out += t.name();
  if (t.is_var() || t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i > 0) out += ',';
    append_term(t.args()[i], out);
  }
  out += ')';
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

}  // namespace

namespace detail {

Term parse_term_at(Cursor& cur, const Signature& sig, const std::set<std::string>& vars) {
  const std::size_t start = cur.pos();
  std::string name = cur.identifier();
  const auto sym = sig.index_of(name);
  if (cur.accept('(')) {
    if (!sym) throw ParseError("unknown operation symbol '" + name + "'", start);
    std::vector<Term> args;
    if (!cur.accept(')')) {
      do {
        args.push_back(parse_term_at(cur, sig, vars));
      } while (cur.accept(','));
      cur.expect(')');
    }
    if (args.size() != sig[*sym].arity) {
      throw ParseError("arity mismatch for '" + name + "': expected " +
                           std::to_string(sig[*sym].arity) + " arguments, got " +
                           std::to_string(args.size()),
                       start);
    }
    return Term::app(std::move(name), std::move(args));
  }
  if (sym) {
    if (sig[*sym].arity != 0) {
      throw ParseError("arity mismatch for '" + name + "': expected " +
                           std::to_string(sig[*sym].arity) + " arguments, got 0",
                       start);
    }
    return Term::app(std::move(name), {});
  }
  if (!vars.contains(name)) throw ParseError("variable '" + name + "' not declared", start);
  return Term::var(std::move(name));
}

void check_var_names(const Signature& sig, const std::set<std::string>& vars) {
  for (const auto& v : vars) {
    if (!is_identifier(v)) throw InputError("invalid variable name '" + v + "'");
    if (sig.index_of(v)) throw InputError("variable '" + v + "' clashes with an operation symbol");
  }
}

}  // namespace detail

std::string format_term(const Term& t) {
  std::string out;
  append_term(t, out);
  return out;
}

bool term_less(const Term& a, const Term& b) {
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  return format_term(a) < format_term(b);
}

std::set<std::string> vars_of(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

Term parse_term(const Signature& sig, const std::set<std::string>& vars, std::string_view text) {
  detail::check_var_names(sig, vars);
  detail::Cursor cur(text);
  Term t = detail::parse_term_at(cur, sig, vars);
  if (!cur.at_end()) cur.fail("unexpected input after term");
  return t;
}

void check_term(const Signature& sig, const std::set<std::string>& vars, const Term& t) {
  if (t.is_var()) {
    if (!vars.contains(t.name())) throw InputError("variable '" + t.name() + "' not declared");
    return;
  }
  const auto sym = sig.index_of(t.name());
  if (!sym) throw InputError("unknown operation symbol '" + t.name() + "'");
  if (sig[*sym].arity != t.args().size()) {
    throw InputError("arity mismatch for '" + t.name() + "'");
  }
  for (const auto& a : t.args()) check_term(sig, vars, a);
}

std::vector<Term> enumerate_terms(const Signature& sig, const std::set<std::string>& vars,
                                  std::size_t max_depth, std::size_t limit) {
  std::vector<Term> all;
  std::vector<std::size_t> depth_start;  // all[depth_start[d]..] have depth d
  auto check_limit = [&](std::size_t n) {
    if (n > limit) throw BoundError("term count", limit, n);
  };

  depth_start.push_back(0);
  for (const auto& v : vars) all.push_back(Term::var(v));
  check_limit(all.size());

  for (std::size_t d = 1; d <= max_depth; ++d) {
    const std::size_t prev_begin = depth_start[d - 1];
    const std::size_t below = all.size();  // terms of depth < d
    std::vector<Term> level;
    for (const auto& s : sig.symbols()) {
      if (s.arity == 0) {
        if (d == 1) level.push_back(Term::app(s.name, {}));
        continue;
      }
      std::vector<std::size_t> pick(s.arity, 0);
      while (true) {
        const bool reaches_depth = std::any_of(pick.begin(), pick.end(),
                                               [&](std::size_t p) { return p >= prev_begin; });
        if (reaches_depth) {
          std::vector<Term> args;
          args.reserve(s.arity);
          for (auto p : pick) args.push_back(all[p]);
          level.push_back(Term::app(s.name, std::move(args)));
          check_limit(below + level.size());
        }
        std::size_t k = s.arity;
        while (k > 0 && ++pick[k - 1] == below) pick[--k] = 0;
        if (k == 0) break;
      }
    }
    std::vector<std::pair<std::string, Term>> keyed;
    keyed.reserve(level.size());
    for (auto& t : level) keyed.emplace_back(format_term(t), std::move(t));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    depth_start.push_back(all.size());
    for (auto& [text, t] : keyed) all.push_back(std::move(t));
    if (keyed.empty()) break;
  }
  return all;
}

}  // namespace metalg
