#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "metalg/error.hpp"
#include "metalg/term.hpp"

namespace metalg::detail {

/// Character cursor shared by the signature, term, and equation parsers.
/// Whitespace and `#` line comments are skipped between tokens.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  std::string_view text() const { return text_; }

  void skip_space();
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  /// Consumes `c` if it is next.
  bool accept(char c);
  void expect(char c);
  /// Consumes the keyword if followed by a non-identifier character.
  bool accept_word(std::string_view word);
  /// Letter followed by letters, digits, underscores.
  std::string identifier();
  std::string natural();
  /// Raw chars of a distance literal (`inf`, digits, `.`, `/`), no whitespace skipping.
  std::string distance_literal();

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Term parse_term_at(Cursor& cur, const Signature& sig, const std::set<std::string>& vars);
/// Throws InputError for malformed names or names that clash with symbols.
void check_var_names(const Signature& sig, const std::set<std::string>& vars);

}  // namespace metalg::detail
