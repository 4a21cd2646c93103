#include "regkit/regulator.hpp"

#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "regkit/errors.hpp"
#include "regkit/formula.hpp"
#include "regkit/semantics.hpp"
#include "testutil.hpp"

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

void collect_subterms(const Formula& f, std::set<Formula>& out) {
  out.insert(f);
  if (f.is_implication()) {
    collect_subterms(f.antecedent(), out);
    collect_subterms(f.consequent(), out);
  }
}

// Structural replay of a closure's traces: base members must come from
// the base, detached members must match an earlier implication and its
// earlier antecedent, and the result must be saturated.
void check_traces(const ClosureSet& cs, const std::vector<Formula>& base) {
  REQUIRE(cs.members.size() == cs.traces.size());
  for (std::size_t i = 0; i < cs.members.size(); ++i) {
    const Derivation& trace = cs.traces[i];
    if (trace.kind == Derivation::Kind::base) {
      CHECK(std::find(base.begin(), base.end(), cs.members[i]) != base.end());
    } else {
      REQUIRE(trace.major < i);
      REQUIRE(trace.minor < i);
      const Formula& major = cs.members[trace.major];
      REQUIRE(major.is_implication());
      CHECK(major.antecedent() == cs.members[trace.minor]);
      CHECK(major.consequent() == cs.members[i]);
    }
  }
  for (const Formula& m : cs.members) {
    if (m.is_implication() && cs.contains(m.antecedent())) {
      CHECK(cs.contains(m.consequent()));
    }
  }
}

}  // namespace

TEST_CASE("accepts on the four families") {
  RegulatorSpec total = RegulatorSpec::total();
  CHECK(accepts(total, bot()));
  CHECK(accepts(total, kB));

  RegulatorSpec taut = RegulatorSpec::semantic_taut();
  CHECK(accepts(taut, kB));
  CHECK_FALSE(accepts(taut, bot()));

  RegulatorSpec closure = RegulatorSpec::mp_closure_over({kB});
  CHECK(accepts(closure, kB));
  CHECK_FALSE(accepts(closure, bot()));
}

TEST_CASE("mp_closure saturation") {
  SUBCASE("empty base") {
    CHECK(mp_closure({}).members.empty());
  }
  SUBCASE("bare fixed-point records do not fire") {
    ClosureSet cs = mp_closure(negfp_pair(kB));
    CHECK(cs.members == negfp_pair(kB));
  }
  SUBCASE("adding the left branch detaches neg B then falsum") {
    std::vector<Formula> base = negfp_pair(kB);
    base.push_back(kB);
    ClosureSet cs = mp_closure(base);
    REQUIRE(cs.members.size() == 5);
    CHECK(cs.members[3] == neg(kB));
    CHECK(cs.members[4] == bot());
    CHECK(cs.traces[3].kind == Derivation::Kind::mp);
    CHECK(cs.traces[4].kind == Derivation::Kind::mp);
    check_traces(cs, base);
  }
  SUBCASE("duplicates in the base collapse") {
    ClosureSet cs = mp_closure({kB, kB, kB});
    CHECK(cs.members.size() == 1);
  }
}

TEST_CASE("closure members stay within base subterms on random bases") {
  std::mt19937 rng(20240813);
  auto formula_pool = enumerate_up_to(6);
  for (int round = 0; round < 30; ++round) {
    std::uniform_int_distribution<std::size_t> count(0, 8);
    std::vector<Formula> base;
    for (std::size_t i = 0, n = count(rng); i < n; ++i) {
      base.push_back(testutil::pick_formula(rng, formula_pool));
    }
    std::set<Formula> allowed;
    for (const Formula& f : base) collect_subterms(f, allowed);
    ClosureSet cs = mp_closure(base);
    for (const Formula& m : cs.members) {
      CHECK(allowed.count(m) == 1);
    }
    check_traces(cs, base);
  }
}

TEST_CASE("equiv needs both implications accepted") {
  RegulatorSpec total = RegulatorSpec::total();
  RegulatorSpec taut = RegulatorSpec::semantic_taut();
  for (const Formula& a : enumerate_up_to(4)) {
    CHECK(equiv(total, a, neg(a)));
  }
  CHECK(equiv(taut, bot(), neg(neg(bot()))));
  for (const Formula& a : enumerate_up_to(6)) {
    CHECK_FALSE(equiv(taut, a, neg(a)));
  }
}

TEST_CASE("probe: total fails cons only") {
  RegulatorSpec total = RegulatorSpec::total();
  for (std::size_t n : {1u, 3u, 5u}) {
    CHECK(probe(total, Property::mp, n).holds);
    CHECK(probe(total, Property::lem, n).holds);
  }
  PropertyReport cons = probe(total, Property::cons, 3);
  CHECK_FALSE(cons.holds);
  REQUIRE(cons.witnesses.size() == 1);
  CHECK(cons.witnesses[0] == bot());
  CHECK(cons.render() == "property=cons bound=3 verdict=fails witness=bot");
}

TEST_CASE("probe: semantic tautology regulator satisfies mp, cons, lem") {
  RegulatorSpec taut = RegulatorSpec::semantic_taut();
  for (std::size_t n : {2u, 4u, 5u, 6u}) {
    CHECK(probe(taut, Property::mp, n).holds);
    CHECK(probe(taut, Property::cons, n).holds);
    CHECK(probe(taut, Property::lem, n).holds);
  }
  CHECK(probe(taut, Property::lem, 5).render() ==
        "property=lem bound=5 verdict=holds");
}

TEST_CASE("probe: bare fixed-point closure fails lem") {
  RegulatorSpec closure = RegulatorSpec::mp_closure_over(negfp_pair(kB));
  PropertyReport lem = probe(closure, Property::lem, 2);
  CHECK_FALSE(lem.holds);
  REQUIRE(lem.witnesses.size() == 1);
  // First failure in size order is falsum; B itself fails as well.
  CHECK(lem.witnesses[0] == bot());
  CHECK_FALSE(accepts(closure, kB));
  CHECK_FALSE(accepts(closure, neg(kB)));

  CHECK(probe(closure, Property::mp, 4).holds);
  CHECK(probe(closure, Property::cons, 4).holds);
}

TEST_CASE("probe rejects classifier properties and oversized bounds") {
  RegulatorSpec total = RegulatorSpec::total();
  CHECK_THROWS_AS(probe(total, Property::dec, 3), std::invalid_argument);
  CHECK_THROWS_AS(probe(total, Property::ref, 3), std::invalid_argument);
  CHECK_THROWS_AS(probe(total, Property::lem, 11), std::invalid_argument);
}

TEST_CASE("dec_soundness on the tautology regulator") {
  RegulatorSpec taut = RegulatorSpec::semantic_taut();
  CHECK(dec_soundness(Classifier::truth_table(), taut, 6).holds);

  PropertyReport always_tt =
      dec_soundness(Classifier::constant(Verdict::tt), taut, 1);
  CHECK_FALSE(always_tt.holds);
  CHECK(always_tt.witnesses[0] == bot());

  PropertyReport always_ff =
      dec_soundness(Classifier::constant(Verdict::ff), taut, 2);
  CHECK_FALSE(always_ff.holds);
  CHECK(always_ff.witnesses[0] == kB);
}

TEST_CASE("ref_soundness constrains only the tt branch") {
  RegulatorSpec total = RegulatorSpec::total();
  RegulatorSpec taut = RegulatorSpec::semantic_taut();

  CHECK(ref_soundness(Classifier::constant(Verdict::ff), total, 6).holds);
  CHECK(ref_soundness(Classifier::truth_complement(), taut, 6).holds);

  PropertyReport bad = ref_soundness(Classifier::constant(Verdict::tt), taut, 1);
  CHECK_FALSE(bad.holds);
  CHECK(bad.witnesses[0] == kB);
}

TEST_CASE("refutation_trivial is sound against every regulator") {
  Classifier r = refutation_trivial();
  CHECK(r(bot()) == Verdict::ff);
  CHECK(r(kB) == Verdict::ff);
  CHECK(r.describe() == "const-ff");
  CHECK(ref_soundness(r, RegulatorSpec::total(), 5).holds);
  CHECK(ref_soundness(r, RegulatorSpec::semantic_taut(), 5).holds);
  CHECK(ref_soundness(r, RegulatorSpec::mp_closure_over(negfp_pair(kB)), 5)
            .holds);
}

TEST_CASE("dec_to_lem verifies the claimed branch") {
  RegulatorSpec taut = RegulatorSpec::semantic_taut();
  Classifier d = Classifier::truth_table();

  LemWitness right = dec_to_lem(d, taut, bot());
  CHECK(right.side == LemWitness::Side::right);
  CHECK(right.accepted == neg(bot()));
  CHECK(accepts(taut, right.accepted));

  LemWitness left = dec_to_lem(d, taut, kB);
  CHECK(left.side == LemWitness::Side::left);
  CHECK(left.accepted == kB);

  CHECK_THROWS_AS(dec_to_lem(Classifier::constant(Verdict::tt), taut, bot()),
                  AcceptanceError);
}

TEST_CASE("lookup classifiers fall back to their default") {
  Classifier table = Classifier::lookup({{bot(), Verdict::tt}}, Verdict::ff);
  CHECK(table(bot()) == Verdict::tt);
  CHECK(table(kB) == Verdict::ff);
}

TEST_CASE("bare fixed-point bases stay consistent for all B up to size 5") {
  for (const Formula& b : enumerate_up_to(5)) {
    ClosureSet cs = mp_closure(negfp_pair(b));
    CHECK_FALSE(cs.contains(bot()));
  }
}

TEST_CASE("hilbert theory acceptance is certificate-relative") {
  Formula axiom = parse("(bot -> bot) -> bot");  // not a tautology
  Theory theory{{axiom}};
  RegulatorSpec r = RegulatorSpec::hilbert_theory(theory, Context{}, 8);

  CHECK(accepts(r, axiom));              // axiom reference
  CHECK(accepts(r, kB));                 // synthesized K/S tautology
  CHECK(accepts(r, parse("bot -> bot -> bot")));
  CHECK_FALSE(accepts(r, bot()));        // no certificate yet

  // Detaching the axiom against the synthesized identity proves falsum;
  // storing that certificate flips acceptance.
  SynthResult identity = synth(kB);
  REQUIRE(is_positive(identity));
  Proof falsum_proof =
      Proof::mp(Proof::axiom(0), std::get<PosWitness>(identity).proof);
  CHECK(check(falsum_proof, theory, Context{}, bot()).accepted);
  RegulatorSpec with_cert = RegulatorSpec::hilbert_theory(
      theory, Context{}, 8, {{bot(), falsum_proof}});
  CHECK(accepts(with_cert, bot()));

  // A stored certificate that fails to check is ignored.
  RegulatorSpec bad_cert = RegulatorSpec::hilbert_theory(
      theory, Context{}, 0, {{bot(), Proof::axiom(7)}});
  CHECK_FALSE(accepts(bad_cert, bot()));

  // Search bound zero disables synthesis fallback for implications.
  RegulatorSpec no_search = RegulatorSpec::hilbert_theory(theory, Context{}, 0);
  CHECK_FALSE(accepts(no_search, kB));
  CHECK(accepts(no_search, axiom));
}

TEST_CASE("regulator equality is structural") {
  CHECK(RegulatorSpec::total() == RegulatorSpec::total());
  CHECK_FALSE(RegulatorSpec::total() == RegulatorSpec::semantic_taut());
  CHECK(RegulatorSpec::mp_closure_over(negfp_pair(kB)) ==
        RegulatorSpec::mp_closure_over(negfp_pair(kB)));
  CHECK_FALSE(RegulatorSpec::mp_closure_over(negfp_pair(kB)) ==
              RegulatorSpec::mp_closure_over({kB}));
}

TEST_CASE("base files use surface syntax with comments") {
  auto base = parse_base_text(
      "# fixed-point records\n"
      "(bot -> bot) -> (bot -> bot) -> bot\n"
      "\n"
      "((bot -> bot) -> bot) -> bot -> bot  # second direction\n");
  REQUIRE(base.size() == 2);
  CHECK(base[0] == imp(kB, neg(kB)));
  CHECK(base[1] == imp(neg(kB), kB));
  CHECK(parse_base_text("").empty());
  CHECK_THROWS_AS(parse_base_text("bof\n"), ParseError);
}
