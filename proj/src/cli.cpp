#include "regkit/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "regkit/errors.hpp"
#include "regkit/formula.hpp"
#include "regkit/frame.hpp"
#include "regkit/hilbert.hpp"
#include "regkit/obstruction.hpp"
#include "regkit/regulator.hpp"
#include "regkit/semantics.hpp"

namespace regkit {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string(), 0);
  out << contents;
}

RegulatorSpec parse_regulator_spec(const std::string& spec) {
  if (spec == "total") return RegulatorSpec::total();
  if (spec == "taut") return RegulatorSpec::semantic_taut();
  if (spec.rfind("closure:", 0) == 0) {
    return RegulatorSpec::mp_closure_over(
        parse_base_text(read_file(spec.substr(8))));
  }
  if (spec.rfind("theory:", 0) == 0) {
    Theory theory{parse_base_text(read_file(spec.substr(7)))};
    return RegulatorSpec::hilbert_theory(std::move(theory), Context{}, 8);
  }
  throw ParseError("unknown regulator spec '" + spec +
                       "' (want total|taut|closure:<file>|theory:<file>)",
                   0);
}

// Classifier table file: `default tt|ff`, then `tt <formula>` or
// `ff <formula>` lines; `#` comments.
Classifier parse_classifier_table(const std::string& text) {
  std::map<Formula, Verdict> table;
  Verdict fallback = Verdict::ff;
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    std::string rest;
    std::getline(fields, rest);
    if (keyword == "default") {
      std::istringstream value(rest);
      std::string v;
      value >> v;
      if (v != "tt" && v != "ff")
        throw ParseError("classifier default must be tt or ff", line_number);
      fallback = v == "tt" ? Verdict::tt : Verdict::ff;
    } else if (keyword == "tt") {
      table[parse(rest)] = Verdict::tt;
    } else if (keyword == "ff") {
      table[parse(rest)] = Verdict::ff;
    } else {
      throw ParseError("classifier line must start with tt, ff or default",
                       line_number);
    }
  }
  return Classifier::lookup(std::move(table), fallback);
}

Classifier parse_classifier_spec(const std::string& spec) {
  if (spec == "taut") return Classifier::truth_table();
  if (spec == "const-tt") return Classifier::constant(Verdict::tt);
  if (spec == "const-ff") return Classifier::constant(Verdict::ff);
  if (spec.rfind("table:", 0) == 0) {
    return parse_classifier_table(read_file(spec.substr(6)));
  }
  throw ParseError("unknown classifier spec '" + spec +
                       "' (want taut|const-tt|const-ff|table:<file>)",
                   0);
}

const char* direction_tag(Direction d) {
  return d == Direction::forward ? "fwd" : "bwd";
}

void print_no_code(const NoCode& no_code, std::ostream& out) {
  for (const CodeFailure& failure : no_code.failures) {
    out << "code=" << failure.code << " fails-at=" << failure.arg
        << " reject=" << direction_tag(failure.rejected) << "\n";
  }
}

int run_check(const std::string& proof_file, const std::string& theory_file,
              const std::string& context_file, const std::string& goal_text,
              std::ostream& out) {
  Proof proof = parse_proof(read_file(proof_file));
  Theory theory =
      theory_file.empty() ? Theory{} : parse_theory(read_file(theory_file));
  Context context = context_file.empty()
                        ? Context{}
                        : parse_context(read_file(context_file));
  CheckResult result = check(proof, theory, context, parse(goal_text));
  if (result.accepted) {
    out << "accept\n";
    return 0;
  }
  out << "reject: " << result.reason << "\n";
  return 1;
}

int run_synth(const std::string& formula_text, const std::string& out_file,
              const std::string& embedding_file, std::ostream& out) {
  Formula goal = parse(formula_text);
  SynthResult result = synth(goal);
  if (const auto* pos = std::get_if<PosWitness>(&result)) {
    out << "witness=pos\n";
    out << "conclusion=" << print(goal) << "\n";
    if (!out_file.empty()) write_file(out_file, print_proof(pos->proof) + "\n");
    return 0;
  }
  const auto& witness = std::get<NegWitness>(result);
  out << "witness=neg\n";
  out << "refutation=" << print(neg(goal)) << "\n";
  out << "embedding="
      << print(Formula::implication(Formula::falsum(), goal)) << "\n";
  if (!out_file.empty())
    write_file(out_file, print_proof(witness.refutation) + "\n");
  if (!embedding_file.empty())
    write_file(embedding_file, print_proof(witness.embedding) + "\n");
  return 1;
}

int run_deduce(const std::string& proof_file, const std::string& theory_file,
               const std::string& context_file, const std::string& out_file,
               std::ostream& out) {
  Proof proof = parse_proof(read_file(proof_file));
  Theory theory =
      theory_file.empty() ? Theory{} : parse_theory(read_file(theory_file));
  Context context = parse_context(read_file(context_file));
  Proof transformed = deduction(proof, theory, context);
  std::string text = print_proof(transformed);
  out << text << "\n";
  if (!out_file.empty()) write_file(out_file, text + "\n");
  return 0;
}

int run_closure(const std::string& base_file, std::ostream& out) {
  ClosureSet closure = mp_closure(parse_base_text(read_file(base_file)));
  for (std::size_t i = 0; i < closure.members.size(); ++i) {
    const Derivation& trace = closure.traces[i];
    out << i << ' ';
    if (trace.kind == Derivation::Kind::base) {
      out << "base";
    } else {
      out << "mp " << trace.major << ' ' << trace.minor;
    }
    out << ' ' << print(closure.members[i]) << "\n";
  }
  return 0;
}

int run_negfp(const std::string& frame_file, std::ostream& out) {
  EvalFrame frame = parse_frame_file(frame_file);
  FixedPointResult result = negfp(frame);
  if (const auto* cert = std::get_if<FixedPointCert>(&result)) {
    out << "code=" << cert->code << "\n";
    out << "b=" << print(cert->b) << "\n";
    out << "negfp fwd=" << print(cert->equiv_forward.formula)
        << " bwd=" << print(cert->equiv_backward.formula) << "\n";
    out << "verified-up-to=" << cert->verified_up_to << "\n";
    return 0;
  }
  print_no_code(std::get<NoCode>(result), out);
  out << "negfp: no-code\n";
  return 1;
}

int run_collapse(const std::string& frame_file, const std::string& branch_spec,
                 std::ostream& out) {
  EvalFrame frame = parse_frame_file(frame_file);
  LemChoice choice = LemChoice::always(Branch::left);
  if (branch_spec == "left") {
    choice = LemChoice::always(Branch::left);
  } else if (branch_spec == "right") {
    choice = LemChoice::always(Branch::right);
  } else if (branch_spec.rfind("classifier:", 0) == 0) {
    choice = LemChoice::from_classifier(
        parse_classifier_spec(branch_spec.substr(11)));
  } else {
    throw ParseError("unknown branch '" + branch_spec +
                         "' (want left|right|classifier:<spec>)",
                     0);
  }
  try {
    CollapseResult result = diagonal_collapse(frame, choice);
    if (const auto* cert = std::get_if<CollapseCert>(&result)) {
      out << render(*cert);
      return 0;
    }
    print_no_code(std::get<NoCode>(result), out);
    out << "collapse: no-code\n";
    return 1;
  } catch (const AcceptanceError& e) {
    // The committed branch is verifiably rejected; that is a result, not
    // an input error.
    out << "collapse: " << e.what() << "\n";
    return 1;
  }
}

int run_diag_check(const std::string& frame_file, long long max_codes,
                   std::size_t probe_bound,
                   const std::string& classifier_spec, std::ostream& out) {
  EvalFrame frame = parse_frame_file(frame_file);
  if (max_codes >= 0) frame.code_bound = static_cast<std::size_t>(max_codes);
  Classifier decision = parse_classifier_spec(classifier_spec);
  DiagonalReport report = diag_refute(frame, probe_bound, decision);
  for (const DiagonalFailure& failure : report.failures) {
    out << "code=" << failure.code
        << " reject=" << direction_tag(failure.rejected)
        << " formula=" << print(failure.diagonal) << "\n";
  }
  if (report.refuted()) {
    out << "eval: refuted\n";
    return 1;
  }
  out << "eval: representable code=" << report.representing_codes.front()
      << "\n";
  return 0;
}

int run_probe(const std::string& property, const std::string& regulator_spec,
              std::size_t max_size, const std::string& classifier_spec,
              std::ostream& out) {
  RegulatorSpec regulator = parse_regulator_spec(regulator_spec);
  PropertyReport report{Property::mp, 0, true, {}};
  if (property == "mp" || property == "cons" || property == "lem") {
    Property p = property == "mp"    ? Property::mp
                 : property == "cons" ? Property::cons
                                      : Property::lem;
    report = probe(regulator, p, max_size);
  } else if (property == "dec") {
    Classifier d = parse_classifier_spec(
        classifier_spec.empty() ? "taut" : classifier_spec);
    report = dec_soundness(d, regulator, max_size);
  } else if (property == "ref") {
    Classifier rc = parse_classifier_spec(
        classifier_spec.empty() ? "const-ff" : classifier_spec);
    report = ref_soundness(rc, regulator, max_size);
  } else {
    throw ParseError("unknown property '" + property +
                         "' (want mp|cons|lem|dec|ref)",
                     0);
  }
  out << report.render() << "\n";
  return report.holds ? 0 : 1;
}

// Profile config: `bound N` and `frame <path>` lines; `#` comments; paths
// resolve relative to the config file.
int run_profile(const std::string& config_file, std::ostream& out) {
  fs::path config_path(config_file);
  std::istringstream in(read_file(config_path));
  std::string line;
  std::size_t line_number = 0;
  std::size_t bound = 4;
  std::vector<std::pair<RegulatorSpec, EvalFrame>> pairs;
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    if (keyword == "bound") {
      std::string value;
      if (!(fields >> value))
        throw ParseError("profile config: missing bound", line_number);
      bound = std::stoull(value);
    } else if (keyword == "frame") {
      std::string frame_file;
      if (!(fields >> frame_file))
        throw ParseError("profile config: missing frame path", line_number);
      EvalFrame frame = parse_frame_file(config_path.parent_path() / frame_file);
      pairs.emplace_back(frame.regulator, frame);
      labels.push_back(frame_file);
    } else {
      throw ParseError("profile config: unknown keyword '" + keyword + "'",
                       line_number);
    }
  }
  ProfileTable table = profile(pairs, bound);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    table.rows[i].label = labels[i];
  }
  out << render(table);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"logic kernel and certificate toolkit for the closed "
               "falsum/implication fragment"};
  app.name("regkit");
  app.require_subcommand(1);

  std::string formula_text, proof_file, theory_file, context_file, goal_text;
  std::string out_file, embedding_file, base_file, frame_file, branch_spec;
  std::string regulator_spec, classifier_spec, property, config_file;
  long long max_codes = -1;
  std::size_t max_size = 4;
  std::size_t probe_bound = 4;

  auto* cmd_parse =
      app.add_subcommand("parse", "parse a formula, print its canonical form");
  cmd_parse->add_option("formula", formula_text)->required();

  auto* cmd_eval =
      app.add_subcommand("eval", "truth value of a closed formula");
  cmd_eval->add_option("formula", formula_text)->required();

  auto* cmd_check = app.add_subcommand("check", "check a proof certificate");
  cmd_check->add_option("prooffile", proof_file)->required();
  cmd_check->add_option("--theory", theory_file);
  cmd_check->add_option("--context", context_file);
  cmd_check->add_option("--goal", goal_text)->required();

  auto* cmd_synth =
      app.add_subcommand("synth", "synthesize a dual witness for a formula");
  cmd_synth->add_option("formula", formula_text)->required();
  cmd_synth->add_option("--out", out_file);
  cmd_synth->add_option("--out-embedding", embedding_file);

  auto* cmd_deduce =
      app.add_subcommand("deduce", "discharge the last hypothesis");
  cmd_deduce->add_option("prooffile", proof_file)->required();
  cmd_deduce->add_option("--context", context_file)->required();
  cmd_deduce->add_option("--theory", theory_file);
  cmd_deduce->add_option("--out", out_file);

  auto* cmd_closure =
      app.add_subcommand("closure", "saturate a base set under detachment");
  cmd_closure->add_option("basefile", base_file)->required();

  auto* cmd_negfp =
      app.add_subcommand("negfp", "search a frame for a negation fixed point");
  cmd_negfp->add_option("--frame", frame_file)->required();

  auto* cmd_collapse =
      app.add_subcommand("collapse", "negation fixed point, LEM commitment, "
                                     "detachment trace to falsum");
  cmd_collapse->add_option("--frame", frame_file)->required();
  cmd_collapse->add_option("--branch", branch_spec)->required();

  auto* cmd_diag = app.add_subcommand(
      "diag-check", "refute per-code representation of the diagonal "
                    "negation behaviour");
  cmd_diag->add_option("--frame", frame_file)->required();
  cmd_diag->add_option("--max-codes", max_codes);
  cmd_diag->add_option("--probe-bound", probe_bound);
  cmd_diag->add_option("--classifier", classifier_spec)->default_val("taut");

  auto* cmd_probe =
      app.add_subcommand("probe", "structural property probe on a fragment");
  cmd_probe->add_option("property", property)->required();
  cmd_probe->add_option("--regulator", regulator_spec)->required();
  cmd_probe->add_option("--max-size", max_size)->required();
  cmd_probe->add_option("--classifier", classifier_spec);

  auto* cmd_profile =
      app.add_subcommand("profile", "obstruction verdict table for a config");
  cmd_profile->add_option("--config", config_file)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_parse->parsed()) {
      out << print(parse(formula_text)) << "\n";
      return 0;
    }
    if (cmd_eval->parsed()) {
      bool value = truth(parse(formula_text));
      out << (value ? "true" : "false") << "\n";
      return value ? 0 : 1;
    }
    if (cmd_check->parsed())
      return run_check(proof_file, theory_file, context_file, goal_text, out);
    if (cmd_synth->parsed())
      return run_synth(formula_text, out_file, embedding_file, out);
    if (cmd_deduce->parsed())
      return run_deduce(proof_file, theory_file, context_file, out_file, out);
    if (cmd_closure->parsed()) return run_closure(base_file, out);
    if (cmd_negfp->parsed()) return run_negfp(frame_file, out);
    if (cmd_collapse->parsed())
      return run_collapse(frame_file, branch_spec, out);
    if (cmd_diag->parsed())
      return run_diag_check(frame_file, max_codes, probe_bound,
                            classifier_spec, out);
    if (cmd_probe->parsed())
      return run_probe(property, regulator_spec, max_size, classifier_spec,
                       out);
    if (cmd_profile->parsed()) return run_profile(config_file, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace regkit
