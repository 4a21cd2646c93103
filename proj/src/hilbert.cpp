#include "regkit/hilbert.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

#include "regkit/errors.hpp"

namespace regkit {

struct Proof::Node {
  Kind kind;
  Formula fa, fb, fc;
  std::size_t index = 0;
  std::optional<Proof> major, minor;
  std::size_t node_count = 1;
  std::size_t depth = 1;
};

Proof Proof::schema_k(Formula a, Formula b) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::schema_k;
  node->fa = std::move(a);
  node->fb = std::move(b);
  return Proof(std::move(node));
}

Proof Proof::schema_s(Formula a, Formula b, Formula c) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::schema_s;
  node->fa = std::move(a);
  node->fb = std::move(b);
  node->fc = std::move(c);
  return Proof(std::move(node));
}

Proof Proof::axiom(std::size_t index) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::axiom;
  node->index = index;
  return Proof(std::move(node));
}

Proof Proof::hypothesis(std::size_t index) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::hypothesis;
  node->index = index;
  return Proof(std::move(node));
}

Proof Proof::mp(Proof major, Proof minor) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::mp;
  node->node_count = major.node_count() + minor.node_count() + 1;
  node->depth = std::max(major.depth(), minor.depth()) + 1;
  node->major = std::move(major);
  node->minor = std::move(minor);
  return Proof(std::move(node));
}

Proof::Kind Proof::kind() const { return node_->kind; }
const Formula& Proof::a() const { return node_->fa; }
const Formula& Proof::b() const { return node_->fb; }
const Formula& Proof::c() const { return node_->fc; }
std::size_t Proof::index() const { return node_->index; }
const Proof& Proof::major() const { return *node_->major; }
const Proof& Proof::minor() const { return *node_->minor; }
std::size_t Proof::node_count() const { return node_->node_count; }
std::size_t Proof::depth() const { return node_->depth; }

namespace {

Formula imp(Formula a, Formula b) {
  return Formula::implication(std::move(a), std::move(b));
}

// True when the subtree references hypothesis `index`.
bool uses_hypothesis(const Proof& p, std::size_t index) {
  switch (p.kind()) {
    case Proof::Kind::hypothesis:
      return p.index() == index;
    case Proof::Kind::mp:
      return uses_hypothesis(p.major(), index) ||
             uses_hypothesis(p.minor(), index);
    default:
      return false;
  }
}

}  // namespace

Formula conclusion(const Proof& p, const Theory& theory,
                   const Context& context) {
  switch (p.kind()) {
    case Proof::Kind::schema_k:
      return imp(p.a(), imp(p.b(), p.a()));
    case Proof::Kind::schema_s:
      return imp(imp(p.a(), imp(p.b(), p.c())),
                 imp(imp(p.a(), p.b()), imp(p.a(), p.c())));
    case Proof::Kind::axiom:
      if (p.index() >= theory.axioms.size()) {
        throw ProofError("axiom index " + std::to_string(p.index()) +
                         " out of range (theory has " +
                         std::to_string(theory.axioms.size()) + " axioms)");
      }
      return theory.axioms[p.index()];
    case Proof::Kind::hypothesis:
      if (p.index() >= context.hypotheses.size()) {
        throw ProofError("hypothesis index " + std::to_string(p.index()) +
                         " out of range (context has " +
                         std::to_string(context.hypotheses.size()) +
                         " hypotheses)");
      }
      return context.hypotheses[p.index()];
    case Proof::Kind::mp: {
      Formula major = conclusion(p.major(), theory, context);
      Formula minor = conclusion(p.minor(), theory, context);
      if (!major.is_implication() || major.antecedent() != minor) {
        throw ProofError("modus ponens mismatch: major concludes " +
                         print(major) + ", minor concludes " + print(minor));
      }
      return major.consequent();
    }
  }
  throw ProofError("corrupt proof node");
}

CheckResult check(const Proof& p, const Theory& theory, const Context& context,
                  const Formula& goal) {
  Formula proved = Formula::falsum();
  try {
    proved = conclusion(p, theory, context);
  } catch (const ProofError& e) {
    return {false, e.what()};
  }
  if (proved != goal) {
    return {false,
            "wrong conclusion: proved " + print(proved) + ", goal " +
                print(goal)};
  }
  return {true, ""};
}

Proof identity_proof(const Formula& a) {
  Formula a_to_a = imp(a, a);
  return Proof::mp(Proof::mp(Proof::schema_s(a, a_to_a, a),
                             Proof::schema_k(a, a_to_a)),
                   Proof::schema_k(a, a));
}

namespace {

// Bracket abstraction over the last hypothesis. Subtrees not touching the
// discharged hypothesis are lifted with one K; detachments through it are
// rebuilt with S.
Proof bracket(const Proof& p, const Formula& discharged, std::size_t last,
              const Theory& theory, const Context& context) {
  if (!uses_hypothesis(p, last)) {
    Formula x = conclusion(p, theory, context);
    return Proof::mp(Proof::schema_k(x, discharged), p);
  }
  if (p.kind() == Proof::Kind::hypothesis) {
    return identity_proof(discharged);
  }
  // Only an mp node can reference the hypothesis below itself.
  Formula major = conclusion(p.major(), theory, context);
  return Proof::mp(
      Proof::mp(Proof::schema_s(discharged, major.antecedent(),
                                major.consequent()),
                bracket(p.major(), discharged, last, theory, context)),
      bracket(p.minor(), discharged, last, theory, context));
}

}  // namespace

Proof deduction(const Proof& p, const Theory& theory, const Context& context) {
  if (context.hypotheses.empty()) {
    throw ProofError("deduction requires a nonempty context");
  }
  conclusion(p, theory, context);  // throws when p does not check
  std::size_t last = context.hypotheses.size() - 1;
  return bracket(p, context.hypotheses[last], last, theory, context);
}

Proof reductio(const Proof& p, const Theory& theory, const Context& context) {
  if (context.hypotheses.empty()) {
    throw ProofError("reductio requires a nonempty context");
  }
  Formula proved = conclusion(p, theory, context);
  if (!proved.is_falsum()) {
    throw ProofError("reductio requires conclusion falsum, got " +
                     print(proved));
  }
  return deduction(p, theory, context);
}

SynthResult synth(const Formula& a) {
  static const Theory no_theory{};
  if (a.is_falsum()) {
    Proof id = identity_proof(Formula::falsum());
    return NegWitness{id, id};  // neg(bot) and bot -> bot coincide
  }
  const Formula& x = a.antecedent();
  const Formula& y = a.consequent();

  SynthResult for_y = synth(y);
  if (const auto* pos_y = std::get_if<PosWitness>(&for_y)) {
    return PosWitness{Proof::mp(Proof::schema_k(y, x), pos_y->proof)};
  }
  const auto& neg_y = std::get<NegWitness>(for_y);

  SynthResult for_x = synth(x);
  if (const auto* pos_x = std::get_if<PosWitness>(&for_x)) {
    // True antecedent, false consequent: the implication is refutable.
    // Under [x -> y]: detach y from the hypothesis, then falsum.
    Context assume_a{{a}};
    Proof to_falsum = Proof::mp(
        neg_y.refutation, Proof::mp(Proof::hypothesis(0), pos_x->proof));
    Proof refutation = deduction(to_falsum, no_theory, assume_a);
    // Under [bot]: reach y through the embedding, lift to x -> y.
    Context assume_falsum{{Formula::falsum()}};
    Proof to_a = Proof::mp(Proof::schema_k(y, x),
                           Proof::mp(neg_y.embedding, Proof::hypothesis(0)));
    Proof embedding = deduction(to_a, no_theory, assume_falsum);
    return NegWitness{std::move(refutation), std::move(embedding)};
  }
  const auto& neg_x = std::get<NegWitness>(for_x);

  // False antecedent: under [x], falsum via the refutation of x, then y
  // via the embedding of y.
  Context assume_x{{x}};
  Proof to_y = Proof::mp(neg_y.embedding,
                         Proof::mp(neg_x.refutation, Proof::hypothesis(0)));
  return PosWitness{deduction(to_y, no_theory, assume_x)};
}

namespace {

class ProofParser {
public:
  explicit ProofParser(std::string_view text) : text_(text) {}

  Proof run() {
    Proof p = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing garbage");
    return p;
  }

private:
  Proof parse_node() {
    skip_space();
    if (!match("(")) fail("expected '('");
    skip_space();
    Proof p = parse_body();
    skip_space();
    if (!match(")")) fail("expected ')'");
    return p;
  }

  Proof parse_body() {
    if (match_keyword("k")) {
      Formula a = parse_formula();
      Formula b = parse_formula();
      return Proof::schema_k(std::move(a), std::move(b));
    }
    if (match_keyword("s")) {
      Formula a = parse_formula();
      Formula b = parse_formula();
      Formula c = parse_formula();
      return Proof::schema_s(std::move(a), std::move(b), std::move(c));
    }
    if (match_keyword("ax")) return Proof::axiom(parse_index());
    if (match_keyword("hyp")) return Proof::hypothesis(parse_index());
    if (match_keyword("mp")) {
      Proof major = parse_node();
      Proof minor = parse_node();
      return Proof::mp(std::move(major), std::move(minor));
    }
    fail("expected 'k', 's', 'ax', 'hyp' or 'mp'");
  }

  Formula parse_formula() {
    skip_space();
    return parse_sexp_prefix(text_, pos_);
  }

  std::size_t parse_index() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected an index");
    return static_cast<std::size_t>(
        std::stoull(std::string(text_.substr(start, pos_ - start))));
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
    throw ParseError("certificate error at position " + std::to_string(pos_) +
                         ": " + what,
                     pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_proof_into(const Proof& p, std::string& out) {
  switch (p.kind()) {
    case Proof::Kind::schema_k:
      out += "(k ";
      out += print_sexp(p.a());
      out += ' ';
      out += print_sexp(p.b());
      out += ')';
      return;
    case Proof::Kind::schema_s:
      out += "(s ";
      out += print_sexp(p.a());
      out += ' ';
      out += print_sexp(p.b());
      out += ' ';
      out += print_sexp(p.c());
      out += ')';
      return;
    case Proof::Kind::axiom:
      out += "(ax " + std::to_string(p.index()) + ')';
      return;
    case Proof::Kind::hypothesis:
      out += "(hyp " + std::to_string(p.index()) + ')';
      return;
    case Proof::Kind::mp:
      out += "(mp ";
      print_proof_into(p.major(), out);
      out += ' ';
      print_proof_into(p.minor(), out);
      out += ')';
      return;
  }
}

std::vector<Formula> parse_formula_lines(std::string_view text) {
  std::vector<Formula> formulas;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) {
      return std::isspace(c);
    });
    if (blank) continue;
    formulas.push_back(parse_sexp(line));
  }
  return formulas;
}

}  // namespace

Proof parse_proof(std::string_view text) { return ProofParser(text).run(); }

std::string print_proof(const Proof& p) {
  std::string out;
  print_proof_into(p, out);
  return out;
}

Theory parse_theory(std::string_view text) {
  return Theory{parse_formula_lines(text)};
}

Context parse_context(std::string_view text) {
  return Context{parse_formula_lines(text)};
}

}  // namespace regkit
