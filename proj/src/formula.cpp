#include "regkit/formula.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace regkit {

struct Formula::Node {
  Formula antecedent;
  Formula consequent;
  std::size_t size;
};

Formula Formula::implication(Formula antecedent, Formula consequent) {
  std::size_t size = antecedent.size() + consequent.size() + 1;
  return Formula(std::make_shared<const Node>(
      Node{std::move(antecedent), std::move(consequent), size}));
}

const Formula& Formula::antecedent() const {
  if (!node_) throw std::logic_error("antecedent of falsum");
  return node_->antecedent;
}

const Formula& Formula::consequent() const {
  if (!node_) throw std::logic_error("consequent of falsum");
  return node_->consequent;
}

std::size_t Formula::size() const { return node_ ? node_->size : 0; }

bool operator==(const Formula& lhs, const Formula& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  if (!lhs.node_ || !rhs.node_) return false;
  if (lhs.node_->size != rhs.node_->size) return false;
  return lhs.node_->antecedent == rhs.node_->antecedent &&
         lhs.node_->consequent == rhs.node_->consequent;
}

std::strong_ordering operator<=>(const Formula& lhs, const Formula& rhs) {
  if (lhs.node_ == rhs.node_) return std::strong_ordering::equal;
  if (!lhs.node_) return std::strong_ordering::less;
  if (!rhs.node_) return std::strong_ordering::greater;
  if (auto cmp = lhs.node_->antecedent <=> rhs.node_->antecedent; cmp != 0)
    return cmp;
  return lhs.node_->consequent <=> rhs.node_->consequent;
}

Formula neg(const Formula& a) {
  return Formula::implication(a, Formula::falsum());
}

std::vector<Formula> enumerate_formulas(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw std::invalid_argument("enumeration size " + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap));
  }
  // Level-by-level construction; levels[k] holds all formulas with k
  // implication nodes in their canonical order.
  std::vector<std::vector<Formula>> levels(n + 1);
  levels[0] = {Formula::falsum()};
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t k = 0; k < m; ++k) {
      for (const Formula& antecedent : levels[k]) {
        for (const Formula& consequent : levels[m - 1 - k]) {
          levels[m].push_back(Formula::implication(antecedent, consequent));
        }
      }
    }
  }
  return std::move(levels[n]);
}

std::vector<Formula> enumerate_up_to(std::size_t n, std::size_t cap) {
  std::vector<Formula> out;
  for (std::size_t m = 0; m <= n; ++m) {
    auto level = enumerate_formulas(m, cap);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

namespace {

// Recursive-descent parser for the surface grammar
//   formula := unary ('->' formula)?
//   unary   := 'bot' | '~' unary | '(' formula ')'
class SurfaceParser {
public:
  explicit SurfaceParser(std::string_view text) : text_(text) {}

  Formula run() {
    Formula f = parse_formula();
    skip_space();
    if (pos_ != text_.size()) fail("trailing garbage");
    return f;
  }

private:
  Formula parse_formula() {
    Formula lhs = parse_unary();
    skip_space();
    if (match("->")) return Formula::implication(lhs, parse_formula());
    return lhs;
  }

  Formula parse_unary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (match("~")) return neg(parse_unary());
    if (match("(")) {
      Formula f = parse_formula();
      skip_space();
      if (!match(")")) fail("expected ')'");
      return f;
    }
    if (match_keyword("bot")) return Formula::falsum();
    fail("expected 'bot', '~' or '('");
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool match(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  // Like match() but refuses to split an identifier ("botx" is garbage,
  // not "bot" followed by "x").
  bool match_keyword(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t end = pos_ + word.size();
    if (end < text_.size() &&
        std::isalnum(static_cast<unsigned char>(text_[end])))
      return false;
    pos_ = end;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("syntax error at position " + std::to_string(pos_) +
                         ": " + what,
                     pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_into(const Formula& f, std::string& out) {
  if (f.is_falsum()) {
    out += "bot";
    return;
  }
  if (f.antecedent().is_implication()) {
    out += '(';
    print_into(f.antecedent(), out);
    out += ')';
  } else {
    print_into(f.antecedent(), out);
  }
  out += " -> ";
  print_into(f.consequent(), out);
}

class SexpParser {
public:
  explicit SexpParser(std::string_view text, std::size_t pos = 0)
      : text_(text), pos_(pos) {}

  Formula run() {
    Formula f = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing garbage");
    return f;
  }

  std::size_t position() const { return pos_; }

  Formula parse_node() {
    skip_space();
    if (match_keyword("bot")) return Formula::falsum();
    if (match("(")) {
      skip_space();
      if (!match_keyword("imp")) fail("expected 'imp'");
      Formula antecedent = parse_node();
      Formula consequent = parse_node();
      skip_space();
      if (!match(")")) fail("expected ')'");
      return Formula::implication(antecedent, consequent);
    }
    fail("expected 'bot' or '(imp ...)'");
  }

private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool match(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  bool match_keyword(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t end = pos_ + word.size();
    if (end < text_.size() &&
        std::isalnum(static_cast<unsigned char>(text_[end])))
      return false;
    pos_ = end;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("s-expression error at position " +
                         std::to_string(pos_) + ": " + what,
                     pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_sexp_into(const Formula& f, std::string& out) {
  if (f.is_falsum()) {
    out += "bot";
    return;
  }
  out += "(imp ";
  print_sexp_into(f.antecedent(), out);
  out += ' ';
  print_sexp_into(f.consequent(), out);
  out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return SurfaceParser(text).run(); }

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

Formula parse_sexp(std::string_view text) { return SexpParser(text).run(); }

Formula parse_sexp_prefix(std::string_view text, std::size_t& pos) {
  SexpParser parser(text, pos);
  Formula f = parser.parse_node();
  pos = parser.position();
  return f;
}

std::string print_sexp(const Formula& f) {
  std::string out;
  print_sexp_into(f, out);
  return out;
}

}  // namespace regkit
