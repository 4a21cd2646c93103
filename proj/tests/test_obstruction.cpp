#include "regkit/obstruction.hpp"

#include <string>

#include "doctest.h"
#include "regkit/errors.hpp"
#include "regkit/formula.hpp"

using namespace regkit;

namespace {

Formula bot() { return Formula::falsum(); }
Formula imp(Formula a, Formula b) {
  return Formula::implication(std::move(a), std::move(b));
}

const Formula kB = parse("bot -> bot");

std::vector<Formula> negfp_pair(const Formula& b) {
  return {imp(b, neg(b)), imp(neg(b), b)};
}

RegulatorSpec closure_with(const Formula& b, const Formula& extra) {
  std::vector<Formula> base = negfp_pair(b);
  base.push_back(extra);
  return RegulatorSpec::mp_closure_over(base);
}

EvalFrame total_const_bot(std::size_t bound) {
  return EvalFrame{bound, EvalFn::constant(bot()), RegulatorSpec::total()};
}

EvalFrame taut_const_bot(std::size_t bound) {
  return EvalFrame{bound, EvalFn::constant(bot()),
                   RegulatorSpec::semantic_taut()};
}

EvalFrame closure_negfp_frame(std::size_t bound) {
  return EvalFrame{bound, EvalFn::constant(kB),
                   RegulatorSpec::mp_closure_over(negfp_pair(kB))};
}

}  // namespace

TEST_CASE("branch_collapse produces two detachments down to falsum") {
  SUBCASE("left branch") {
    RegulatorSpec r = closure_with(kB, kB);
    CollapseCert cert = branch_collapse(r, kB, Branch::left);
    REQUIRE(cert.mp_trace.size() == 2);
    CHECK(cert.mp_trace[0].major == imp(kB, neg(kB)));
    CHECK(cert.mp_trace[0].minor == kB);
    CHECK(cert.mp_trace[0].conclusion == neg(kB));
    CHECK(cert.mp_trace[1].conclusion == bot());
    CHECK(cert.mp_trace[0].conclusion_accepted);
    CHECK(cert.mp_trace[1].conclusion_accepted);
    CHECK(reverify(cert));
  }
  SUBCASE("right branch") {
    RegulatorSpec r = closure_with(kB, neg(kB));
    CollapseCert cert = branch_collapse(r, kB, Branch::right);
    REQUIRE(cert.mp_trace.size() == 2);
    CHECK(cert.mp_trace[0].major == imp(neg(kB), kB));
    CHECK(cert.mp_trace[0].minor == neg(kB));
    CHECK(cert.mp_trace[0].conclusion == kB);
    CHECK(cert.mp_trace[1].conclusion == bot());
    CHECK(reverify(cert));
  }
  SUBCASE("missing branch acceptance is named") {
    RegulatorSpec r = RegulatorSpec::mp_closure_over(negfp_pair(kB));
    try {
      branch_collapse(r, kB, Branch::left);
      FAIL("expected missing acceptance");
    } catch (const AcceptanceError& e) {
      CHECK(std::string(e.what()).find("bot -> bot") != std::string::npos);
    }
  }
  SUBCASE("missing fixed-point record is named") {
    RegulatorSpec r = RegulatorSpec::mp_closure_over({kB});
    CHECK_THROWS_AS(branch_collapse(r, kB, Branch::left), AcceptanceError);
  }
}

TEST_CASE("branch symmetry: both branches take exactly two detachments") {
  for (const Formula& b : enumerate_up_to(3)) {
    CollapseCert left = branch_collapse(closure_with(b, b), b, Branch::left);
    CollapseCert right =
        branch_collapse(closure_with(b, neg(b)), b, Branch::right);
    CHECK(left.mp_trace.size() == 2);
    CHECK(right.mp_trace.size() == 2);
    CHECK(reverify(left));
    CHECK(reverify(right));
  }
}

TEST_CASE("collapse certificates render in the line format") {
  RegulatorSpec r = closure_with(kB, kB);
  CollapseCert cert = branch_collapse(r, kB, Branch::left);
  CHECK(render(cert) ==
        "b=bot -> bot\n"
        "negfp fwd=(bot -> bot) -> (bot -> bot) -> bot "
        "bwd=((bot -> bot) -> bot) -> bot -> bot\n"
        "branch=left accepted=bot -> bot\n"
        "mp 1 major=(bot -> bot) -> (bot -> bot) -> bot minor=bot -> bot "
        "concl=(bot -> bot) -> bot\n"
        "mp 2 major=(bot -> bot) -> bot minor=bot -> bot concl=bot\n"
        "qed=bot\n");
}

TEST_CASE("reverify rejects tampered certificates") {
  RegulatorSpec r = closure_with(kB, kB);
  CollapseCert cert = branch_collapse(r, kB, Branch::left);
  REQUIRE(reverify(cert));

  CollapseCert wrong_end = cert;
  wrong_end.mp_trace.pop_back();
  CHECK_FALSE(reverify(wrong_end));

  CollapseCert foreign_premise = cert;
  foreign_premise.mp_trace[0].minor = neg(neg(kB));
  CHECK_FALSE(reverify(foreign_premise));

  CollapseCert wrong_regulator = cert;
  wrong_regulator.regulator = RegulatorSpec::semantic_taut();
  CHECK_FALSE(reverify(wrong_regulator));
}

TEST_CASE("diagonal_collapse on the total frame") {
  SUBCASE("constant left choice") {
    CollapseResult result =
        diagonal_collapse(total_const_bot(10), LemChoice::always(Branch::left));
    REQUIRE(std::holds_alternative<CollapseCert>(result));
    const auto& cert = std::get<CollapseCert>(result);
    CHECK(cert.b == bot());
    CHECK(cert.branch == Branch::left);
    CHECK(cert.mp_trace.back().conclusion == bot());
    CHECK(reverify(cert));
  }
  SUBCASE("classifier choice routes through the decision lemma") {
    CollapseResult result = diagonal_collapse(
        total_const_bot(10),
        LemChoice::from_classifier(Classifier::constant(Verdict::tt)));
    REQUIRE(std::holds_alternative<CollapseCert>(result));
    const auto& cert = std::get<CollapseCert>(result);
    CHECK(cert.b == bot());
    CHECK(cert.branch == Branch::left);
    CHECK(cert.mp_trace.size() == 2);
  }
  SUBCASE("the taut frame blocks at the fixed point, not at consistency") {
    CollapseResult result =
        diagonal_collapse(taut_const_bot(10), LemChoice::always(Branch::left));
    REQUIRE(std::holds_alternative<NoCode>(result));
    CHECK(std::get<NoCode>(result).failures.size() == 11);
  }
  SUBCASE("a rejected commitment is an acceptance error") {
    CHECK_THROWS_AS(diagonal_collapse(closure_negfp_frame(4),
                                      LemChoice::always(Branch::left)),
                    AcceptanceError);
  }
}

TEST_CASE("aporetic_check names the unique failing hypothesis") {
  SUBCASE("total: consistency fails, witnessed by a collapse certificate") {
    ObstructionVerdict verdict =
        aporetic_check(RegulatorSpec::total(), total_const_bot(10), 4);
    CHECK(verdict.eval_holds);
    CHECK(verdict.mp_holds);
    CHECK(verdict.lem_holds);
    CHECK_FALSE(verdict.cons_holds);
    CHECK(verdict.failing ==
          std::vector<Hypothesis>{Hypothesis::cons});
    CHECK(verdict.failing_named == Hypothesis::cons);
    REQUIRE(std::holds_alternative<CollapseCert>(verdict.witness));
    const auto& cert = std::get<CollapseCert>(verdict.witness);
    CHECK(cert.mp_trace.back().conclusion == bot());
    CHECK(reverify(cert));
  }
  SUBCASE("taut: evaluation completeness fails, witnessed by the scan") {
    ObstructionVerdict verdict =
        aporetic_check(RegulatorSpec::semantic_taut(), taut_const_bot(10), 4);
    CHECK_FALSE(verdict.eval_holds);
    CHECK(verdict.mp_holds);
    CHECK(verdict.cons_holds);
    CHECK(verdict.lem_holds);
    CHECK(verdict.failing_named == Hypothesis::eval);
    REQUIRE(std::holds_alternative<DiagonalReport>(verdict.witness));
    CHECK(std::get<DiagonalReport>(verdict.witness).refuted());
  }
  SUBCASE("bare closure: excluded middle fails") {
    RegulatorSpec r = RegulatorSpec::mp_closure_over(negfp_pair(kB));
    ObstructionVerdict verdict = aporetic_check(r, closure_negfp_frame(6), 2);
    CHECK(verdict.eval_holds);  // constant-B frame represents the behaviour
    CHECK(verdict.mp_holds);
    CHECK(verdict.cons_holds);
    CHECK_FALSE(verdict.lem_holds);
    CHECK(verdict.failing_named == Hypothesis::lem);
    REQUIRE(std::holds_alternative<Formula>(verdict.witness));
    Formula witness = std::get<Formula>(verdict.witness);
    CHECK_FALSE(accepts(r, witness));
    CHECK_FALSE(accepts(r, neg(witness)));
  }
  SUBCASE("regulator must match the frame") {
    CHECK_THROWS_AS(aporetic_check(RegulatorSpec::total(), taut_const_bot(4), 3),
                    std::invalid_argument);
  }
}

TEST_CASE("lem evidence covers the diagonal formula itself") {
  // At bound 0 the fragment probe only sees falsum, whose negation is in
  // the base, so it passes; the collapse instantiates LEM at the larger
  // diagonal formula b, where it verifiably fails.
  Formula b = parse("bot -> bot -> bot");
  std::vector<Formula> base = negfp_pair(b);
  base.push_back(parse("bot -> bot"));  // covers LEM at falsum
  RegulatorSpec r = RegulatorSpec::mp_closure_over(base);
  EvalFrame frame{3, EvalFn::constant(b), r};

  ObstructionVerdict verdict = aporetic_check(r, frame, 0);
  CHECK(verdict.eval_holds);
  CHECK(probe(r, Property::lem, 0).holds);  // the fragment alone is blind
  CHECK_FALSE(verdict.lem_holds);
  CHECK(verdict.failing_named == Hypothesis::lem);
  CHECK(std::get<Formula>(verdict.witness) == b);
}

TEST_CASE("adabs derives falsum without a frame") {
  SUBCASE("left branch via constant-tt") {
    RegulatorSpec r = closure_with(kB, kB);
    CollapseCert cert = adabs(r, kB, Classifier::constant(Verdict::tt));
    CHECK(cert.branch == Branch::left);
    CHECK(cert.mp_trace.back().conclusion == bot());
    CHECK(reverify(cert));
  }
  SUBCASE("right branch via constant-ff") {
    RegulatorSpec r = closure_with(kB, neg(kB));
    CollapseCert cert = adabs(r, kB, Classifier::constant(Verdict::ff));
    CHECK(cert.branch == Branch::right);
    CHECK(cert.branch_acceptance.formula == neg(kB));
    CHECK(cert.mp_trace.back().conclusion == bot());
    CHECK(reverify(cert));
  }
  SUBCASE("unsound classifier at b") {
    RegulatorSpec r = RegulatorSpec::mp_closure_over(negfp_pair(kB));
    CHECK_THROWS_AS(adabs(r, kB, Classifier::constant(Verdict::tt)),
                    AcceptanceError);
  }
  SUBCASE("missing fixed-point records") {
    RegulatorSpec r = RegulatorSpec::mp_closure_over({kB});
    CHECK_THROWS_AS(adabs(r, kB, Classifier::constant(Verdict::tt)),
                    AcceptanceError);
  }
}

TEST_CASE("profile covers the three canonical rows plus ref") {
  std::vector<std::pair<RegulatorSpec, EvalFrame>> pairs{
      {RegulatorSpec::total(), total_const_bot(8)},
      {RegulatorSpec::semantic_taut(), taut_const_bot(8)},
      {RegulatorSpec::mp_closure_over(negfp_pair(kB)), closure_negfp_frame(8)},
  };
  ProfileTable table = profile(pairs, 4);
  REQUIRE(table.rows.size() == 3);
  CHECK(table.rows[0].verdict.failing_named == Hypothesis::cons);
  CHECK(table.rows[1].verdict.failing_named == Hypothesis::eval);
  CHECK(table.rows[2].verdict.failing_named == Hypothesis::lem);
  for (const ProfileRow& row : table.rows) {
    CHECK(row.ref_report.holds);
    CHECK(row.ref_report.property == Property::ref);
  }

  std::string text = render(table);
  CHECK(text.find("ref holds for all 3 regulators") != std::string::npos);
  CHECK(text.find("cons") != std::string::npos);
  CHECK(text.find("eval") != std::string::npos);
  CHECK(text.find("lem") != std::string::npos);
}

TEST_CASE("profile of an empty list is the vacuous ref row") {
  ProfileTable table = profile({}, 4);
  CHECK(table.rows.empty());
  CHECK(render(table).find("ref holds (vacuous") != std::string::npos);
}

TEST_CASE("profile verdicts are deterministic across duplicate rows") {
  std::vector<std::pair<RegulatorSpec, EvalFrame>> pairs{
      {RegulatorSpec::total(), total_const_bot(6)},
      {RegulatorSpec::total(), total_const_bot(6)},
  };
  ProfileTable table = profile(pairs, 3);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].verdict.failing_named ==
        table.rows[1].verdict.failing_named);
  CHECK(render(table).find("collapse(b=bot)") != std::string::npos);
}

TEST_CASE("four-way exclusion across shipped pairs and bounds") {
  std::vector<std::pair<RegulatorSpec, EvalFrame>> pairs{
      {RegulatorSpec::total(), total_const_bot(8)},
      {RegulatorSpec::semantic_taut(), taut_const_bot(8)},
      {RegulatorSpec::semantic_taut(),
       EvalFrame{8, EvalFn::size_affine(1, 1, 0),
                 RegulatorSpec::semantic_taut()}},
      {RegulatorSpec::mp_closure_over(negfp_pair(kB)), closure_negfp_frame(8)},
      {closure_with(kB, kB),
       EvalFrame{8, EvalFn::constant(kB), closure_with(kB, kB)}},
  };
  for (std::size_t bound : {2u, 3u, 4u}) {
    for (const auto& [regulator, frame] : pairs) {
      // aporetic_check throws std::logic_error when nothing fails; its
      // absence is the executable exclusion property.
      ObstructionVerdict verdict = aporetic_check(regulator, frame, bound);
      CHECK_FALSE(verdict.failing.empty());
    }
  }
}
