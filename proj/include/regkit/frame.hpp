#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "regkit/formula.hpp"
#include "regkit/regulator.hpp"

namespace regkit {

// Finitely described total map Code x Code -> Formula. Three families:
// constant, table with default, and size-affine (a negation chain over
// falsum whose length is affine in the code pair).
class EvalFn {
public:
  static EvalFn constant(Formula f);
  static EvalFn table(std::map<std::pair<std::size_t, std::size_t>, Formula> rows,
                      Formula fallback);
  static EvalFn size_affine(std::size_t code_weight, std::size_t arg_weight,
                            std::size_t offset);

  Formula operator()(std::size_t code, std::size_t arg) const;
  std::string describe() const;

private:
  struct Rep;
  explicit EvalFn(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// Codes are the naturals 0..code_bound inclusive. The regulator is the
// closure predicate the frame claims completeness against.
struct EvalFrame {
  std::size_t code_bound;
  EvalFn eval;
  RegulatorSpec regulator;
};

// Formula transformer fed to the fixed-point search: negation, identity,
// or implication into a fixed goal.
class Transformer {
public:
  static Transformer negation();
  static Transformer identity();
  static Transformer implication_goal(Formula goal);

  Formula operator()(const Formula& f) const;
  std::string describe() const;

private:
  struct Rep;
  explicit Transformer(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

enum class Direction { forward, backward };

struct AcceptanceRecord {
  Formula formula;
  bool accepted;
};

// Bounded evidence that code `code` represents x |-> g(eval(x, x)) on the
// searched range, with the self-application instance re-checked.
struct FixedPointCert {
  std::size_t code;
  Formula b;  // eval(code, code)
  AcceptanceRecord equiv_forward;   // b -> g(b)
  AcceptanceRecord equiv_backward;  // g(b) -> b
  std::size_t verified_up_to;
};

struct CodeFailure {
  std::size_t code;
  std::size_t arg;  // first argument where representation broke
  Formula lhs;      // eval(code, arg)
  Formula rhs;      // g(eval(arg, arg))
  Direction rejected;
};

// No code on the searched range represents the behaviour; one failure
// record per code.
struct NoCode {
  std::vector<CodeFailure> failures;
};

using FixedPointResult = std::variant<FixedPointCert, NoCode>;

// Searches codes 0..code_bound ascending for one representing
// x |-> g(eval(x, x)) up to closure equivalence; the smallest code wins.
FixedPointResult fixed_point(const EvalFrame& frame, const Transformer& g);

// fixed_point with g = negation; a success certifies b equivalent to
// neg(b) under the frame's regulator.
FixedPointResult negfp(const EvalFrame& frame);

struct DiagonalFailure {
  std::size_t code;
  Formula diagonal;  // eval(code, code)
  Direction rejected;
  Formula rejected_implication;
};

struct DiagonalReport {
  std::size_t codes_checked;
  std::vector<DiagonalFailure> failures;
  std::vector<std::size_t> representing_codes;  // diagonal equivalence held

  bool refuted() const { return representing_codes.empty(); }
};

// Per-code check of the diagonal instance: code c is ruled out as a
// representation of x |-> neg(eval(x, x)) once the equivalence fails at
// its own diagonal. No preconditions; used by the verdict machinery.
DiagonalReport diagonal_scan(const EvalFrame& frame);

// Checked variant: first confirms mp, cons and classifier soundness on
// the size-`probe_bound` fragment, so a refutation pins the failure on
// the completeness hypothesis. Throws PreconditionError when a probe
// fails (wrong regulator supplied).
DiagonalReport diag_refute(const EvalFrame& frame, std::size_t probe_bound,
                           const Classifier& decision);

// Frame description file: line-oriented, `#` comments.
//   codebound N
//   regulator total|taut|closure <basefile>
//   eval constant <formula>
//   eval table           (then `c x <formula>` rows and `default <formula>`)
//   eval affine <cw> <aw> <k>
// Base file paths resolve relative to the frame file's directory.
EvalFrame parse_frame_file(const std::filesystem::path& path);

}  // namespace regkit
