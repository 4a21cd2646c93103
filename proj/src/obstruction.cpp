#include "regkit/obstruction.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "regkit/errors.hpp"

namespace regkit {

namespace {

Formula imp(Formula a, Formula b) {
  return Formula::implication(std::move(a), std::move(b));
}

}  // namespace

std::string render(const CollapseCert& cert) {
  std::string out;
  out += "b=" + print(cert.b) + "\n";
  out += "negfp fwd=" + print(cert.negfp_forward.formula) +
         " bwd=" + print(cert.negfp_backward.formula) + "\n";
  out += "branch=";
  out += cert.branch == Branch::left ? "left" : "right";
  out += " accepted=" + print(cert.branch_acceptance.formula) + "\n";
  for (std::size_t i = 0; i < cert.mp_trace.size(); ++i) {
    const MpStep& step = cert.mp_trace[i];
    out += "mp " + std::to_string(i + 1) + " major=" + print(step.major) +
           " minor=" + print(step.minor) + " concl=" + print(step.conclusion) +
           "\n";
  }
  out += "qed=bot\n";
  return out;
}

bool reverify(const CollapseCert& cert) {
  const RegulatorSpec& r = cert.regulator;
  Formula nb = neg(cert.b);
  if (cert.negfp_forward.formula != imp(cert.b, nb)) return false;
  if (cert.negfp_backward.formula != imp(nb, cert.b)) return false;
  if (!accepts(r, cert.negfp_forward.formula)) return false;
  if (!accepts(r, cert.negfp_backward.formula)) return false;

  Formula expected_branch = cert.branch == Branch::left ? cert.b : nb;
  if (cert.branch_acceptance.formula != expected_branch) return false;
  if (!accepts(r, cert.branch_acceptance.formula)) return false;

  std::vector<Formula> available{cert.negfp_forward.formula,
                                 cert.negfp_backward.formula,
                                 cert.branch_acceptance.formula};
  for (const MpStep& step : cert.mp_trace) {
    auto known = [&](const Formula& f) {
      return std::find(available.begin(), available.end(), f) !=
             available.end();
    };
    if (!known(step.major) || !known(step.minor)) return false;
    if (step.major != imp(step.minor, step.conclusion)) return false;
    if (!accepts(r, step.conclusion)) return false;
    available.push_back(step.conclusion);
  }
  return !cert.mp_trace.empty() &&
         cert.mp_trace.back().conclusion.is_falsum();
}

CollapseCert branch_collapse(const RegulatorSpec& r, const Formula& b,
                             Branch branch) {
  Formula nb = neg(b);
  Formula forward = imp(b, nb);
  Formula backward = imp(nb, b);
  if (!accepts(r, forward)) {
    throw AcceptanceError("missing acceptance: " + print(forward));
  }
  if (!accepts(r, backward)) {
    throw AcceptanceError("missing acceptance: " + print(backward));
  }

  CollapseCert cert{b,
                    AcceptanceRecord{forward, true},
                    AcceptanceRecord{backward, true},
                    branch,
                    AcceptanceRecord{},
                    {},
                    r};
  if (branch == Branch::left) {
    if (!accepts(r, b)) {
      throw AcceptanceError("missing acceptance: " + print(b));
    }
    cert.branch_acceptance = AcceptanceRecord{b, true};
    // MP(b -> neg b, b) gives neg b; neg b is b -> bot, so MP(neg b, b)
    // gives bot.
    cert.mp_trace.push_back(MpStep{forward, b, nb, accepts(r, nb)});
    cert.mp_trace.push_back(
        MpStep{nb, b, Formula::falsum(), accepts(r, Formula::falsum())});
  } else {
    if (!accepts(r, nb)) {
      throw AcceptanceError("missing acceptance: " + print(nb));
    }
    cert.branch_acceptance = AcceptanceRecord{nb, true};
    cert.mp_trace.push_back(MpStep{backward, nb, b, accepts(r, b)});
    cert.mp_trace.push_back(
        MpStep{nb, b, Formula::falsum(), accepts(r, Formula::falsum())});
  }
  return cert;
}

struct LemChoice::Rep {
  enum class Kind { always_left, always_right, classifier };
  Kind kind;
  std::optional<Classifier> d;
};

LemChoice LemChoice::always(Branch side) {
  auto rep = std::make_shared<Rep>();
  rep->kind =
      side == Branch::left ? Rep::Kind::always_left : Rep::Kind::always_right;
  return LemChoice(std::move(rep));
}

LemChoice LemChoice::from_classifier(Classifier d) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::classifier;
  rep->d = std::move(d);
  return LemChoice(std::move(rep));
}

LemWitness LemChoice::choose(const RegulatorSpec& r, const Formula& b) const {
  switch (rep_->kind) {
    case Rep::Kind::always_left: {
      if (!accepts(r, b)) {
        throw AcceptanceError("left branch not accepted at " + print(b));
      }
      return LemWitness{LemWitness::Side::left, b};
    }
    case Rep::Kind::always_right: {
      Formula nb = neg(b);
      if (!accepts(r, nb)) {
        throw AcceptanceError("right branch not accepted at " + print(b));
      }
      return LemWitness{LemWitness::Side::right, std::move(nb)};
    }
    case Rep::Kind::classifier:
      return dec_to_lem(*rep_->d, r, b);
  }
  throw std::logic_error("corrupt lem choice");
}

std::string LemChoice::describe() const {
  switch (rep_->kind) {
    case Rep::Kind::always_left:
      return "left";
    case Rep::Kind::always_right:
      return "right";
    case Rep::Kind::classifier:
      return "classifier:" + rep_->d->describe();
  }
  return "";
}

CollapseResult diagonal_collapse(const EvalFrame& frame,
                                 const LemChoice& choice) {
  FixedPointResult fp = negfp(frame);
  if (const auto* no_code = std::get_if<NoCode>(&fp)) {
    return *no_code;
  }
  const auto& cert = std::get<FixedPointCert>(fp);
  LemWitness witness = choice.choose(frame.regulator, cert.b);
  Branch branch = witness.side == LemWitness::Side::left ? Branch::left
                                                         : Branch::right;
  return branch_collapse(frame.regulator, cert.b, branch);
}

std::string_view hypothesis_tag(Hypothesis h) {
  switch (h) {
    case Hypothesis::eval:
      return "eval";
    case Hypothesis::mp:
      return "mp";
    case Hypothesis::cons:
      return "cons";
    case Hypothesis::lem:
      return "lem";
  }
  return "";
}

ObstructionVerdict aporetic_check(const RegulatorSpec& r,
                                  const EvalFrame& frame, std::size_t n) {
  if (!(r == frame.regulator)) {
    throw std::invalid_argument(
        "aporetic check requires the frame's own regulator");
  }

  ObstructionVerdict verdict{n,
                             false,
                             false,
                             false,
                             false,
                             probe(r, Property::mp, n),
                             probe(r, Property::cons, n),
                             probe(r, Property::lem, n),
                             {},
                             Hypothesis::eval,
                             Formula::falsum()};
  verdict.mp_holds = verdict.mp_report.holds;
  verdict.cons_holds = verdict.cons_report.holds;
  verdict.lem_holds = verdict.lem_report.holds;

  FixedPointResult fp = negfp(frame);
  verdict.eval_holds = std::holds_alternative<FixedPointCert>(fp);

  // The collapse instantiates LEM at the diagonal formula, which may lie
  // outside the probed fragment; fold that instance into the evidence.
  if (verdict.eval_holds && verdict.lem_holds) {
    const Formula& b = std::get<FixedPointCert>(fp).b;
    if (!accepts(r, b) && !accepts(r, neg(b))) {
      verdict.lem_holds = false;
      verdict.lem_report = PropertyReport{Property::lem, n, false, {b}};
    }
  }

  if (!verdict.eval_holds) verdict.failing.push_back(Hypothesis::eval);
  if (!verdict.lem_holds) verdict.failing.push_back(Hypothesis::lem);
  if (!verdict.cons_holds) verdict.failing.push_back(Hypothesis::cons);
  if (!verdict.mp_holds) verdict.failing.push_back(Hypothesis::mp);

  if (verdict.failing.empty()) {
    throw std::logic_error(
        "all four hypotheses hold on the checked evidence; the obstruction "
        "guarantees this cannot happen");
  }
  verdict.failing_named = verdict.failing.front();

  switch (verdict.failing_named) {
    case Hypothesis::eval:
      verdict.witness = diagonal_scan(frame);
      break;
    case Hypothesis::lem:
      verdict.witness = verdict.lem_report.witnesses.front();
      break;
    case Hypothesis::cons: {
      // eval and lem hold here, so the cert is constructible; its final
      // step is the accepted falsum that refutes consistency.
      const Formula& b = std::get<FixedPointCert>(fp).b;
      Branch branch = accepts(r, b) ? Branch::left : Branch::right;
      verdict.witness = branch_collapse(r, b, branch);
      break;
    }
    case Hypothesis::mp:
      verdict.witness = verdict.mp_report.witnesses.front();
      break;
  }
  return verdict;
}

CollapseCert adabs(const RegulatorSpec& r, const Formula& b,
                   const Classifier& d) {
  Formula nb = neg(b);
  Formula forward = imp(b, nb);
  Formula backward = imp(nb, b);
  if (!accepts(r, forward)) {
    throw AcceptanceError("missing negation fixed-point record: " +
                          print(forward));
  }
  if (!accepts(r, backward)) {
    throw AcceptanceError("missing negation fixed-point record: " +
                          print(backward));
  }
  LemWitness witness = dec_to_lem(d, r, b);
  Branch branch = witness.side == LemWitness::Side::left ? Branch::left
                                                         : Branch::right;
  return branch_collapse(r, b, branch);
}

ProfileTable profile(
    const std::vector<std::pair<RegulatorSpec, EvalFrame>>& pairs,
    std::size_t n) {
  ProfileTable table{n, {}};
  for (const auto& [regulator, frame] : pairs) {
    ProfileRow row{regulator.describe(), regulator,
                   aporetic_check(regulator, frame, n),
                   ref_soundness(refutation_trivial(), regulator, n)};
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::string witness_summary(const ObstructionVerdict& verdict) {
  if (const auto* cert = std::get_if<CollapseCert>(&verdict.witness)) {
    return "collapse(b=" + print(cert->b) + ")";
  }
  if (const auto* diag = std::get_if<DiagonalReport>(&verdict.witness)) {
    return "diag(" + std::to_string(diag->failures.size()) + "/" +
           std::to_string(diag->codes_checked) + " codes rejected)";
  }
  return print(std::get<Formula>(verdict.witness));
}

}  // namespace

std::string render(const ProfileTable& table) {
  std::size_t label_width = std::string("regulator").size();
  for (const ProfileRow& row : table.rows) {
    label_width = std::max(label_width, row.label.size());
  }

  std::ostringstream out;
  auto cell = [](bool holds) { return holds ? "holds" : "fails"; };
  out << std::left << std::setw(static_cast<int>(label_width) + 2)
      << "regulator" << std::setw(7) << "eval" << std::setw(7) << "mp"
      << std::setw(7) << "cons" << std::setw(7) << "lem" << std::setw(9)
      << "failing"
      << "witness\n";
  for (const ProfileRow& row : table.rows) {
    out << std::left << std::setw(static_cast<int>(label_width) + 2)
        << row.label << std::setw(7) << cell(row.verdict.eval_holds)
        << std::setw(7) << cell(row.verdict.mp_holds) << std::setw(7)
        << cell(row.verdict.cons_holds) << std::setw(7)
        << cell(row.verdict.lem_holds) << std::setw(9)
        << hypothesis_tag(row.verdict.failing_named)
        << witness_summary(row.verdict) << "\n";
  }

  bool all_ref = std::all_of(
      table.rows.begin(), table.rows.end(),
      [](const ProfileRow& row) { return row.ref_report.holds; });
  if (table.rows.empty()) {
    out << "ref holds (vacuous: no rows)\n";
  } else if (all_ref) {
    out << "ref holds for all " << table.rows.size()
        << " regulators at bound=" << table.bound << "\n";
  } else {
    out << "ref FAILS for some row\n";
  }
  return out.str();
}

}  // namespace regkit
