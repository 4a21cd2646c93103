#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "regkit/formula.hpp"

namespace regkit {

// Axiom set of a checked derivability relation. Indices are stable.
struct Theory {
  std::vector<Formula> axioms;
};

// Local assumptions. Indices are stable; the deduction transformer always
// discharges the last entry.
struct Context {
  std::vector<Formula> hypotheses;
};

// Proof certificate over the K/S Hilbert system with modus ponens. A tree
// whose conclusion is recomputable from the node alone plus a theory and
// context for the reference nodes.
class Proof {
public:
  enum class Kind { schema_k, schema_s, axiom, hypothesis, mp };

  // a -> (b -> a)
  static Proof schema_k(Formula a, Formula b);
  // (a -> (b -> c)) -> ((a -> b) -> (a -> c))
  static Proof schema_s(Formula a, Formula b, Formula c);
  static Proof axiom(std::size_t index);
  static Proof hypothesis(std::size_t index);
  static Proof mp(Proof major, Proof minor);

  Kind kind() const;

  // Schema payloads. Pre: schema_k (a, b) or schema_s (a, b, c).
  const Formula& a() const;
  const Formula& b() const;
  const Formula& c() const;

  std::size_t index() const;  // pre: axiom or hypothesis

  const Proof& major() const;  // pre: mp
  const Proof& minor() const;  // pre: mp

  std::size_t node_count() const;
  std::size_t depth() const;

private:
  struct Node;
  explicit Proof(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Recomputes the conclusion. Throws ProofError on an out-of-range
// axiom/hypothesis index or a detachment mismatch (the message carries
// both sub-conclusions).
Formula conclusion(const Proof& p, const Theory& theory, const Context& context);

struct CheckResult {
  bool accepted;
  std::string reason;  // empty iff accepted
};

// Accepts iff the conclusion recomputes and equals `goal` structurally.
// Rejection is a value, never an exception.
CheckResult check(const Proof& p, const Theory& theory, const Context& context,
                  const Formula& goal);

// K/S derivation of a -> a (the S K K instance).
Proof identity_proof(const Formula& a);

// Discharges the last hypothesis A by bracket abstraction: given p with
// conclusion B under `context`, returns a proof of A -> B under the
// context without A. Throws ProofError when the context is empty or p
// fails to check.
Proof deduction(const Proof& p, const Theory& theory, const Context& context);

// deduction specialized to conclusion falsum: yields neg(A) under the
// shortened context. Throws ProofError when the conclusion is not falsum.
Proof reductio(const Proof& p, const Theory& theory, const Context& context);

struct PosWitness {
  Proof proof;  // checks with conclusion a under empty theory/context
};

struct NegWitness {
  Proof refutation;  // concludes neg(a)
  Proof embedding;   // concludes falsum -> a
};

using SynthResult = std::variant<PosWitness, NegWitness>;

// Total dual-witness synthesizer: PosWitness exactly when truth(a) holds,
// NegWitness otherwise. Every embedded proof checks under empty
// theory/context, so K/S alone decide the closed fragment.
SynthResult synth(const Formula& a);

inline bool is_positive(const SynthResult& r) {
  return std::holds_alternative<PosWitness>(r);
}

// Certificate file format: a single s-expression over
//   (k F G) | (s F G H) | (ax N) | (hyp N) | (mp P Q)
// with formulas as `bot` | `(imp F G)`.
Proof parse_proof(std::string_view text);
std::string print_proof(const Proof& p);

// Theory and context files: one formula s-expression per line,
// zero-indexed. Blank lines are ignored.
Theory parse_theory(std::string_view text);
Context parse_context(std::string_view text);

}  // namespace regkit
