#include "regkit/regulator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "regkit/errors.hpp"

namespace regkit {

std::optional<std::size_t> ClosureSet::index_of(const Formula& f) const {
  auto it = index.find(f);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

ClosureSet mp_closure(const std::vector<Formula>& base) {
  ClosureSet cs;
  for (const Formula& f : base) {
    if (cs.contains(f)) continue;
    cs.index[f] = cs.members.size();
    cs.members.push_back(f);
    cs.traces.push_back(Derivation{Derivation::Kind::base, 0, 0});
  }
  // Sweep the member list in insertion order until no detachment fires;
  // members appended mid-sweep are picked up by the same loop.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cs.members.size(); ++i) {
      const Formula m = cs.members[i];
      if (!m.is_implication()) continue;
      auto antecedent = cs.index_of(m.antecedent());
      if (!antecedent) continue;
      const Formula& detached = m.consequent();
      if (cs.contains(detached)) continue;
      cs.index[detached] = cs.members.size();
      cs.members.push_back(detached);
      cs.traces.push_back(Derivation{Derivation::Kind::mp, i, *antecedent});
      changed = true;
    }
  }
  return cs;
}

struct Classifier::Rep {
  enum class Kind { truth, truth_complement, constant, lookup };
  Kind kind;
  Verdict value = Verdict::ff;  // constant value or lookup fallback
  std::map<Formula, Verdict> table;
};

Classifier Classifier::truth_table() {
  return Classifier(std::make_shared<const Rep>(Rep{Rep::Kind::truth}));
}

Classifier Classifier::truth_complement() {
  return Classifier(
      std::make_shared<const Rep>(Rep{Rep::Kind::truth_complement}));
}

Classifier Classifier::constant(Verdict v) {
  return Classifier(std::make_shared<const Rep>(Rep{Rep::Kind::constant, v}));
}

Classifier Classifier::lookup(std::map<Formula, Verdict> table,
                              Verdict fallback) {
  return Classifier(std::make_shared<const Rep>(
      Rep{Rep::Kind::lookup, fallback, std::move(table)}));
}

Verdict Classifier::operator()(const Formula& a) const {
  switch (rep_->kind) {
    case Rep::Kind::truth:
      return taut_decide(a);
    case Rep::Kind::truth_complement:
      return truth(a) ? Verdict::ff : Verdict::tt;
    case Rep::Kind::constant:
      return rep_->value;
    case Rep::Kind::lookup: {
      auto it = rep_->table.find(a);
      return it == rep_->table.end() ? rep_->value : it->second;
    }
  }
  return Verdict::ff;
}

std::string Classifier::describe() const {
  switch (rep_->kind) {
    case Rep::Kind::truth:
      return "taut";
    case Rep::Kind::truth_complement:
      return "taut-complement";
    case Rep::Kind::constant:
      return rep_->value == Verdict::tt ? "const-tt" : "const-ff";
    case Rep::Kind::lookup:
      return "table(" + std::to_string(rep_->table.size()) + " entries)";
  }
  return "";
}

Classifier refutation_trivial() { return Classifier::constant(Verdict::ff); }

struct RegulatorSpec::Rep {
  Family family;
  std::vector<Formula> base;  // mp_closure
  ClosureSet closure;         // mp_closure, saturated once at construction
  Theory theory;              // hilbert_theory
  Context context;            // hilbert_theory
  std::size_t search_bound = 0;
  std::map<Formula, Proof> certificates;
};

RegulatorSpec RegulatorSpec::total() {
  auto rep = std::make_shared<Rep>();
  rep->family = Family::total;
  return RegulatorSpec(std::move(rep));
}

RegulatorSpec RegulatorSpec::semantic_taut() {
  auto rep = std::make_shared<Rep>();
  rep->family = Family::semantic_taut;
  return RegulatorSpec(std::move(rep));
}

RegulatorSpec RegulatorSpec::mp_closure_over(std::vector<Formula> base) {
  auto rep = std::make_shared<Rep>();
  rep->family = Family::mp_closure;
  rep->closure = mp_closure(base);
  rep->base = std::move(base);
  return RegulatorSpec(std::move(rep));
}

RegulatorSpec RegulatorSpec::hilbert_theory(
    Theory theory, Context context, std::size_t search_bound,
    std::map<Formula, Proof> certificates) {
  auto rep = std::make_shared<Rep>();
  rep->family = Family::hilbert_theory;
  rep->theory = std::move(theory);
  rep->context = std::move(context);
  rep->search_bound = search_bound;
  rep->certificates = std::move(certificates);
  return RegulatorSpec(std::move(rep));
}

RegulatorSpec::Family RegulatorSpec::family() const { return rep_->family; }
const std::vector<Formula>& RegulatorSpec::base() const { return rep_->base; }
const ClosureSet& RegulatorSpec::closure() const { return rep_->closure; }
const Theory& RegulatorSpec::theory() const { return rep_->theory; }
const Context& RegulatorSpec::context() const { return rep_->context; }
std::size_t RegulatorSpec::search_bound() const { return rep_->search_bound; }
const std::map<Formula, Proof>& RegulatorSpec::certificates() const {
  return rep_->certificates;
}

std::string RegulatorSpec::describe() const {
  switch (rep_->family) {
    case Family::total:
      return "total";
    case Family::semantic_taut:
      return "taut";
    case Family::mp_closure:
      return "closure:" + std::to_string(rep_->base.size());
    case Family::hilbert_theory:
      return "theory:" + std::to_string(rep_->theory.axioms.size());
  }
  return "";
}

bool operator==(const RegulatorSpec& lhs, const RegulatorSpec& rhs) {
  if (lhs.rep_ == rhs.rep_) return true;
  if (lhs.family() != rhs.family()) return false;
  switch (lhs.family()) {
    case RegulatorSpec::Family::total:
    case RegulatorSpec::Family::semantic_taut:
      return true;
    case RegulatorSpec::Family::mp_closure:
      return lhs.base() == rhs.base();
    case RegulatorSpec::Family::hilbert_theory: {
      if (lhs.theory().axioms != rhs.theory().axioms) return false;
      if (lhs.context().hypotheses != rhs.context().hypotheses) return false;
      if (lhs.search_bound() != rhs.search_bound()) return false;
      auto keys = [](const std::map<Formula, Proof>& m) {
        std::vector<Formula> ks;
        for (const auto& [k, v] : m) ks.push_back(k);
        return ks;
      };
      return keys(lhs.certificates()) == keys(rhs.certificates());
    }
  }
  return false;
}

bool accepts(const RegulatorSpec& r, const Formula& a) {
  switch (r.family()) {
    case RegulatorSpec::Family::total:
      return true;
    case RegulatorSpec::Family::semantic_taut:
      return truth(a);
    case RegulatorSpec::Family::mp_closure:
      return r.closure().contains(a);
    case RegulatorSpec::Family::hilbert_theory: {
      const auto& axioms = r.theory().axioms;
      if (std::find(axioms.begin(), axioms.end(), a) != axioms.end())
        return true;
      const auto& hyps = r.context().hypotheses;
      if (std::find(hyps.begin(), hyps.end(), a) != hyps.end()) return true;
      auto it = r.certificates().find(a);
      if (it != r.certificates().end() &&
          check(it->second, r.theory(), r.context(), a).accepted)
        return true;
      // K/S proofs need no axioms or hypotheses, so bounded synthesis is
      // sound under any theory.
      if (a.size() <= r.search_bound() && is_positive(synth(a))) return true;
      return false;
    }
  }
  return false;
}

bool equiv(const RegulatorSpec& r, const Formula& a, const Formula& b) {
  return accepts(r, Formula::implication(a, b)) &&
         accepts(r, Formula::implication(b, a));
}

std::string_view property_tag(Property p) {
  switch (p) {
    case Property::mp:
      return "mp";
    case Property::cons:
      return "cons";
    case Property::lem:
      return "lem";
    case Property::dec:
      return "dec";
    case Property::ref:
      return "ref";
  }
  return "";
}

std::string PropertyReport::render() const {
  std::string out = "property=";
  out += property_tag(property);
  out += " bound=" + std::to_string(bound);
  out += " verdict=";
  out += holds ? "holds" : "fails";
  if (!holds && !witnesses.empty()) {
    out += " witness=" + print(witnesses.front());
  }
  return out;
}

PropertyReport probe(const RegulatorSpec& r, Property property,
                     std::size_t n) {
  PropertyReport report{property, n, true, {}};
  switch (property) {
    case Property::mp: {
      for (const Formula& x : enumerate_up_to(n)) {
        if (!x.is_implication()) continue;
        if (!accepts(r, x) || !accepts(r, x.antecedent())) continue;
        if (!accepts(r, x.consequent())) {
          report.holds = false;
          report.witnesses.push_back(x);
          return report;
        }
      }
      return report;
    }
    case Property::cons: {
      if (accepts(r, Formula::falsum())) {
        report.holds = false;
        report.witnesses.push_back(Formula::falsum());
      }
      return report;
    }
    case Property::lem: {
      for (const Formula& a : enumerate_up_to(n)) {
        if (!accepts(r, a) && !accepts(r, neg(a))) {
          report.holds = false;
          report.witnesses.push_back(a);
          return report;
        }
      }
      return report;
    }
    case Property::dec:
    case Property::ref:
      throw std::invalid_argument(
          "dec/ref probes take a classifier; use dec_soundness or "
          "ref_soundness");
  }
  return report;
}

PropertyReport dec_soundness(const Classifier& d, const RegulatorSpec& r,
                             std::size_t n) {
  PropertyReport report{Property::dec, n, true, {}};
  for (const Formula& a : enumerate_up_to(n)) {
    bool sound = d(a) == Verdict::tt ? accepts(r, a) : accepts(r, neg(a));
    if (!sound) {
      report.holds = false;
      report.witnesses.push_back(a);
      return report;
    }
  }
  return report;
}

PropertyReport ref_soundness(const Classifier& rc, const RegulatorSpec& r,
                             std::size_t n) {
  PropertyReport report{Property::ref, n, true, {}};
  for (const Formula& a : enumerate_up_to(n)) {
    if (rc(a) == Verdict::tt && !accepts(r, neg(a))) {
      report.holds = false;
      report.witnesses.push_back(a);
      return report;
    }
  }
  return report;
}

LemWitness dec_to_lem(const Classifier& d, const RegulatorSpec& r,
                      const Formula& a) {
  if (d(a) == Verdict::tt) {
    if (!accepts(r, a)) {
      throw AcceptanceError("classifier tt-branch unsound at " + print(a) +
                            ": formula not accepted");
    }
    return LemWitness{LemWitness::Side::left, a};
  }
  Formula negated = neg(a);
  if (!accepts(r, negated)) {
    throw AcceptanceError("classifier ff-branch unsound at " + print(a) +
                          ": negation not accepted");
  }
  return LemWitness{LemWitness::Side::right, std::move(negated)};
}

std::vector<Formula> parse_base_text(std::string_view text) {
  std::vector<Formula> formulas;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) {
      return std::isspace(c);
    });
    if (blank) continue;
    formulas.push_back(parse(line));
  }
  return formulas;
}

}  // namespace regkit
