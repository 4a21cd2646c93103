#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "regkit/errors.hpp"

namespace regkit {

// A formula of the closed fragment: either falsum or an implication
// between two formulas. Immutable value type; subtrees are shared, so
// copies are cheap. Structural equality is the only identity.
class Formula {
public:
  Formula() = default;  // falsum

  static Formula falsum() { return Formula(); }
  static Formula implication(Formula antecedent, Formula consequent);

  bool is_falsum() const { return node_ == nullptr; }
  bool is_implication() const { return node_ != nullptr; }

  // Pre: is_implication().
  const Formula& antecedent() const;
  const Formula& consequent() const;

  // Number of implication nodes. size(neg(a)) == size(a) + 1.
  std::size_t size() const;

  friend bool operator==(const Formula& lhs, const Formula& rhs);
  friend std::strong_ordering operator<=>(const Formula& lhs,
                                          const Formula& rhs);

private:
  struct Node;

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;  // null means falsum
};

// neg(a) = a -> bot. Never equal to a itself: the result is strictly larger.
Formula neg(const Formula& a);

inline constexpr std::size_t kEnumerationCap = 10;

// All formulas with exactly `n` implication nodes, each exactly once, in
// antecedent-size-major order with lexicographic recursion below that.
// Throws std::invalid_argument when n exceeds the cap.
std::vector<Formula> enumerate_formulas(std::size_t n,
                                        std::size_t cap = kEnumerationCap);

// Concatenation of enumerate_formulas(0..n), smallest sizes first.
std::vector<Formula> enumerate_up_to(std::size_t n,
                                     std::size_t cap = kEnumerationCap);

// Surface syntax: `bot`, right-associative `->`, prefix `~` as sugar for
// `F -> bot`, parentheses. Whitespace insignificant. Throws ParseError on
// malformed input or trailing garbage.
Formula parse(std::string_view text);

// Canonical surface form: minimal parentheses, right-associative `->`, no
// `~` sugar. parse(print(f)) == f.
std::string print(const Formula& f);

// S-expression form used inside certificate files: `bot` | `(imp F G)`.
Formula parse_sexp(std::string_view text);
std::string print_sexp(const Formula& f);

// Parses one formula node starting at `pos` and advances `pos` past it.
// For certificate readers that embed formulas in larger s-expressions.
Formula parse_sexp_prefix(std::string_view text, std::size_t& pos);

}  // namespace regkit
