#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "regkit/formula.hpp"
#include "regkit/frame.hpp"
#include "regkit/regulator.hpp"

namespace regkit {

enum class Branch { left, right };

// One detachment in a collapse trace. Premises always come from prior
// steps, the fixed-point records, or the branch acceptance.
struct MpStep {
  Formula major;
  Formula minor;
  Formula conclusion;
  bool conclusion_accepted;
};

// Bundled collapse evidence: the fixed-point records, the committed LEM
// branch, and the detachment trace ending at falsum.
struct CollapseCert {
  Formula b;
  AcceptanceRecord negfp_forward;      // b -> neg b
  AcceptanceRecord negfp_backward;     // neg b -> b
  Branch branch;
  AcceptanceRecord branch_acceptance;  // b (left) or neg b (right)
  std::vector<MpStep> mp_trace;
  RegulatorSpec regulator;
};

// Line-oriented certificate text:
//   b=<formula>
//   negfp fwd=<formula> bwd=<formula>
//   branch=<left|right> accepted=<formula>
//   mp <i> major=<formula> minor=<formula> concl=<formula>
//   qed=bot
std::string render(const CollapseCert& cert);

// Re-checks the whole certificate against its regulator: acceptance
// records, premise provenance, detachment shapes, and the falsum ending.
bool reverify(const CollapseCert& cert);

// Two detachments from the fixed-point records and one accepted branch
// down to falsum. Throws AcceptanceError naming the missing record when a
// precondition acceptance fails.
CollapseCert branch_collapse(const RegulatorSpec& r, const Formula& b,
                             Branch branch);

// Supplies the excluded-middle commitment at the diagonal formula: a
// constant choice, or case analysis on a classifier.
class LemChoice {
public:
  static LemChoice always(Branch side);
  static LemChoice from_classifier(Classifier d);

  // Verifies the chosen branch via accepts; throws AcceptanceError when
  // the commitment fails at b.
  LemWitness choose(const RegulatorSpec& r, const Formula& b) const;
  std::string describe() const;

private:
  struct Rep;
  explicit LemChoice(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

using CollapseResult = std::variant<CollapseCert, NoCode>;

// negfp, then the committed branch, then branch_collapse. NoCode
// propagates when the frame cannot even produce the fixed point.
CollapseResult diagonal_collapse(const EvalFrame& frame,
                                 const LemChoice& choice);

enum class Hypothesis { eval, mp, cons, lem };

std::string_view hypothesis_tag(Hypothesis h);

// Fragment evidence for the four hypotheses plus the name of the first
// failing one (order: eval, lem, cons, mp) and a re-checkable witness.
struct ObstructionVerdict {
  std::size_t bound;
  bool eval_holds;
  bool mp_holds;
  bool cons_holds;
  bool lem_holds;
  PropertyReport mp_report;
  PropertyReport cons_report;
  PropertyReport lem_report;
  std::vector<Hypothesis> failing;  // all failing hypotheses, canonical order
  Hypothesis failing_named;         // first entry of `failing`
  std::variant<CollapseCert, DiagonalReport, Formula> witness;
};

// Probes mp/cons/lem on the size-n fragment, runs negfp, and names the
// failing hypothesis. When the fixed point exists, the LEM evidence also
// covers the instance at the diagonal formula itself. Throws
// std::invalid_argument when r differs from the frame's regulator, and
// std::logic_error if all four hypotheses survive the checks.
ObstructionVerdict aporetic_check(const RegulatorSpec& r,
                                  const EvalFrame& frame, std::size_t n);

// Hypothesis-weakened collapse: no frame, no consistency assumption. The
// fixed-point records for b must already hold in r; the classifier
// supplies the branch. Throws AcceptanceError on a missing record or an
// unsound classifier at b.
CollapseCert adabs(const RegulatorSpec& r, const Formula& b,
                   const Classifier& d);

struct ProfileRow {
  std::string label;
  RegulatorSpec regulator;
  ObstructionVerdict verdict;
  PropertyReport ref_report;  // ref_soundness(refutation_trivial(), ...)
};

struct ProfileTable {
  std::size_t bound;
  std::vector<ProfileRow> rows;
};

// One verdict per pair plus the unconditional refutation row, which
// never fails for any regulator.
ProfileTable profile(const std::vector<std::pair<RegulatorSpec, EvalFrame>>& pairs,
                     std::size_t n);

// Aligned text, one row per pair, then the ref row.
std::string render(const ProfileTable& table);

}  // namespace regkit
