#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regkit/formula.hpp"
#include "regkit/hilbert.hpp"
#include "regkit/semantics.hpp"

namespace regkit {

// How a saturated member entered the closure: from the base, or by one
// detachment from two earlier members.
struct Derivation {
  enum class Kind { base, mp };
  Kind kind = Kind::base;
  std::size_t major = 0;  // index of the implication member (kind == mp)
  std::size_t minor = 0;  // index of its antecedent member
};

struct ClosureSet {
  std::vector<Formula> members;    // insertion order, duplicates removed
  std::vector<Derivation> traces;  // parallel to members
  std::map<Formula, std::size_t> index;

  bool contains(const Formula& f) const { return index.count(f) != 0; }
  std::optional<std::size_t> index_of(const Formula& f) const;
};

// Least set containing `base` and closed under detachment. Terminates
// because every detached conclusion is a subterm of a base formula.
// Worklist runs in insertion order; the first derivation wins the trace.
ClosureSet mp_closure(const std::vector<Formula>& base);

// Total Boolean classifier with a finite description.
class Classifier {
public:
  static Classifier truth_table();       // tt iff truth(a)
  static Classifier truth_complement();  // tt iff !truth(a)
  static Classifier constant(Verdict v);
  static Classifier lookup(std::map<Formula, Verdict> table, Verdict fallback);

  Verdict operator()(const Formula& a) const;
  std::string describe() const;

private:
  struct Rep;
  explicit Classifier(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// The always-ff classifier. Its refutation soundness condition has an
// empty antecedent, so ref_soundness holds against every regulator.
Classifier refutation_trivial();

// A finitely described closure predicate with a decidable acceptance
// test. Immutable; copies are cheap.
class RegulatorSpec {
public:
  enum class Family { total, semantic_taut, mp_closure, hilbert_theory };

  static RegulatorSpec total();
  static RegulatorSpec semantic_taut();
  static RegulatorSpec mp_closure_over(std::vector<Formula> base);
  // Acceptance is certificate-relative: a formula is accepted when it is
  // an axiom or hypothesis, when a stored certificate checks for it, or
  // when bounded synthesis proves it outright (K/S proofs hold under any
  // theory).
  static RegulatorSpec hilbert_theory(Theory theory, Context context,
                                      std::size_t search_bound,
                                      std::map<Formula, Proof> certificates = {});

  Family family() const;
  const std::vector<Formula>& base() const;   // pre: mp_closure
  const ClosureSet& closure() const;          // pre: mp_closure
  const Theory& theory() const;               // pre: hilbert_theory
  const Context& context() const;             // pre: hilbert_theory
  std::size_t search_bound() const;           // pre: hilbert_theory
  const std::map<Formula, Proof>& certificates() const;  // pre: hilbert_theory

  std::string describe() const;

  friend bool operator==(const RegulatorSpec& lhs, const RegulatorSpec& rhs);

private:
  struct Rep;
  explicit RegulatorSpec(std::shared_ptr<const Rep> rep)
      : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

bool accepts(const RegulatorSpec& r, const Formula& a);

// Closure equivalence: the regulator accepts both implications.
bool equiv(const RegulatorSpec& r, const Formula& a, const Formula& b);

enum class Property { mp, cons, lem, dec, ref };

std::string_view property_tag(Property p);

struct PropertyReport {
  Property property;
  std::size_t bound;
  bool holds;
  std::vector<Formula> witnesses;  // empty iff holds; first entry reported

  std::string render() const;  // "property=<tag> bound=<n> verdict=..."
};

// Fragment probes for the structural properties, scanning formulas in
// size-ascending enumeration order and reporting the first failure:
//   mp:   accepted implication with accepted antecedent must have an
//         accepted consequent (checked over implications of size <= n)
//   cons: fails iff the regulator accepts falsum
//   lem:  every formula of size <= n has itself or its negation accepted
// Throws std::invalid_argument for dec/ref (those take a classifier) or
// when n exceeds the enumeration cap.
PropertyReport probe(const RegulatorSpec& r, Property property, std::size_t n);

// Both classifier branches sound on the fragment: tt -> accepted,
// ff -> negation accepted.
PropertyReport dec_soundness(const Classifier& d, const RegulatorSpec& r,
                             std::size_t n);

// Only the tt branch carries a condition: tt -> negation accepted.
PropertyReport ref_soundness(const Classifier& rc, const RegulatorSpec& r,
                             std::size_t n);

struct LemWitness {
  enum class Side { left, right };
  Side side;
  Formula accepted;  // a (left) or neg(a) (right), verified via accepts
};

// Case analysis on the classifier at `a`, with the claimed branch
// re-verified. Throws AcceptanceError when the branch claim fails.
LemWitness dec_to_lem(const Classifier& d, const RegulatorSpec& r,
                      const Formula& a);

// Base/axiom file contents: one formula per line in surface syntax,
// `#` starts a comment, blank lines ignored.
std::vector<Formula> parse_base_text(std::string_view text);

}  // namespace regkit
