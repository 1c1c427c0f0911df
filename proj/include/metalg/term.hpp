#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace metalg {

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Operation symbols with arities, in declaration order.
class Signature {
 public:
  Signature() = default;
  /// Throws InputError on duplicate or malformed names.
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool has_constant() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Symbol> symbols_;
};

bool is_identifier(std::string_view name);

/// `op NAME/NAT (; op NAME/NAT)*`.
Signature parse_signature(std::string_view text);
std::string format_signature(const Signature& sig);

/// Immutable term: a variable or an operation applied to subterms. Copies share
/// structure; equality is structural.
class Term {
 public:
  static Term var(std::string name);
  static Term app(std::string symbol, std::vector<Term> args);

  bool is_var() const { return node_->is_var; }
  /// Variable name or operation symbol.
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  /// 0 for variables, 1 + max child depth otherwise (constants have depth 1).
  std::size_t depth() const { return node_->depth; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var;
    std::string name;
    std::vector<Term> args;
    std::size_t depth;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Canonical text: `x`, `zero`, `xor(x,u(y))`.
std::string format_term(const Term& t);

/// Orders by depth, then by canonical text.
bool term_less(const Term& a, const Term& b);

std::set<std::string> vars_of(const Term& t);

/// Parses a term. A bare name is a constant when Σ declares it with arity 0, a
/// variable otherwise; variables must be in `vars`. Throws ParseError/InputError.
Term parse_term(const Signature& sig, const std::set<std::string>& vars, std::string_view text);

/// Throws InputError unless every application in `t` matches `sig` and every
/// variable lies in `vars`.
void check_term(const Signature& sig, const std::set<std::string>& vars, const Term& t);

/// All terms over `vars` of depth <= `max_depth`, ordered by term_less.
/// Throws BoundError when more than `limit` terms would be produced.
std::vector<Term> enumerate_terms(const Signature& sig, const std::set<std::string>& vars,
                                  std::size_t max_depth, std::size_t limit = 200000);

}  // namespace metalg
