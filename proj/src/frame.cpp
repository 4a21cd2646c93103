#include "regkit/frame.hpp"

#include <fstream>
#include <sstream>

#include "regkit/errors.hpp"

namespace regkit {

struct EvalFn::Rep {
  enum class Kind { constant, table, affine };
  Kind kind;
  Formula value;  // constant value or table fallback
  std::map<std::pair<std::size_t, std::size_t>, Formula> rows;
  std::size_t code_weight = 0;
  std::size_t arg_weight = 0;
  std::size_t offset = 0;
};

EvalFn EvalFn::constant(Formula f) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::constant;
  rep->value = std::move(f);
  return EvalFn(std::move(rep));
}

EvalFn EvalFn::table(std::map<std::pair<std::size_t, std::size_t>, Formula> rows,
                     Formula fallback) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::table;
  rep->rows = std::move(rows);
  rep->value = std::move(fallback);
  return EvalFn(std::move(rep));
}

EvalFn EvalFn::size_affine(std::size_t code_weight, std::size_t arg_weight,
                           std::size_t offset) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::affine;
  rep->code_weight = code_weight;
  rep->arg_weight = arg_weight;
  rep->offset = offset;
  return EvalFn(std::move(rep));
}

Formula EvalFn::operator()(std::size_t code, std::size_t arg) const {
  switch (rep_->kind) {
    case Rep::Kind::constant:
      return rep_->value;
    case Rep::Kind::table: {
      auto it = rep_->rows.find({code, arg});
      return it == rep_->rows.end() ? rep_->value : it->second;
    }
    case Rep::Kind::affine: {
      std::size_t length =
          rep_->code_weight * code + rep_->arg_weight * arg + rep_->offset;
      Formula f = Formula::falsum();
      for (std::size_t i = 0; i < length; ++i) f = neg(f);
      return f;
    }
  }
  return Formula::falsum();
}

std::string EvalFn::describe() const {
  switch (rep_->kind) {
    case Rep::Kind::constant:
      return "constant " + print(rep_->value);
    case Rep::Kind::table:
      return "table(" + std::to_string(rep_->rows.size()) + " rows)";
    case Rep::Kind::affine:
      return "affine " + std::to_string(rep_->code_weight) + " " +
             std::to_string(rep_->arg_weight) + " " +
             std::to_string(rep_->offset);
  }
  return "";
}

struct Transformer::Rep {
  enum class Kind { negation, identity, implication_goal };
  Kind kind;
  Formula goal;
};

Transformer Transformer::negation() {
  return Transformer(std::make_shared<const Rep>(Rep{Rep::Kind::negation, {}}));
}

Transformer Transformer::identity() {
  return Transformer(std::make_shared<const Rep>(Rep{Rep::Kind::identity, {}}));
}

Transformer Transformer::implication_goal(Formula goal) {
  return Transformer(std::make_shared<const Rep>(
      Rep{Rep::Kind::implication_goal, std::move(goal)}));
}

Formula Transformer::operator()(const Formula& f) const {
  switch (rep_->kind) {
    case Rep::Kind::negation:
      return neg(f);
    case Rep::Kind::identity:
      return f;
    case Rep::Kind::implication_goal:
      return Formula::implication(f, rep_->goal);
  }
  return f;
}

std::string Transformer::describe() const {
  switch (rep_->kind) {
    case Rep::Kind::negation:
      return "neg";
    case Rep::Kind::identity:
      return "identity";
    case Rep::Kind::implication_goal:
      return "imp-goal " + print(rep_->goal);
  }
  return "";
}

FixedPointResult fixed_point(const EvalFrame& frame, const Transformer& g) {
  NoCode no_code;
  for (std::size_t c = 0; c <= frame.code_bound; ++c) {
    bool represents = true;
    for (std::size_t x = 0; x <= frame.code_bound; ++x) {
      Formula lhs = frame.eval(c, x);
      Formula rhs = g(frame.eval(x, x));
      if (!accepts(frame.regulator, Formula::implication(lhs, rhs))) {
        no_code.failures.push_back(
            CodeFailure{c, x, std::move(lhs), std::move(rhs),
                        Direction::forward});
        represents = false;
        break;
      }
      if (!accepts(frame.regulator, Formula::implication(rhs, lhs))) {
        no_code.failures.push_back(
            CodeFailure{c, x, std::move(lhs), std::move(rhs),
                        Direction::backward});
        represents = false;
        break;
      }
    }
    if (represents) {
      Formula b = frame.eval(c, c);
      Formula gb = g(b);
      Formula forward = Formula::implication(b, gb);
      Formula backward = Formula::implication(gb, b);
      return FixedPointCert{
          c, b,
          AcceptanceRecord{forward, accepts(frame.regulator, forward)},
          AcceptanceRecord{backward, accepts(frame.regulator, backward)},
          frame.code_bound};
    }
  }
  return no_code;
}

FixedPointResult negfp(const EvalFrame& frame) {
  return fixed_point(frame, Transformer::negation());
}

DiagonalReport diagonal_scan(const EvalFrame& frame) {
  DiagonalReport report;
  report.codes_checked = frame.code_bound + 1;
  for (std::size_t c = 0; c <= frame.code_bound; ++c) {
    Formula diagonal = frame.eval(c, c);
    Formula forward = Formula::implication(diagonal, neg(diagonal));
    if (!accepts(frame.regulator, forward)) {
      report.failures.push_back(DiagonalFailure{
          c, std::move(diagonal), Direction::forward, std::move(forward)});
      continue;
    }
    Formula backward = Formula::implication(neg(diagonal), diagonal);
    if (!accepts(frame.regulator, backward)) {
      report.failures.push_back(DiagonalFailure{
          c, std::move(diagonal), Direction::backward, std::move(backward)});
      continue;
    }
    report.representing_codes.push_back(c);
  }
  return report;
}

DiagonalReport diag_refute(const EvalFrame& frame, std::size_t probe_bound,
                           const Classifier& decision) {
  PropertyReport mp = probe(frame.regulator, Property::mp, probe_bound);
  if (!mp.holds) {
    throw PreconditionError("diag-refute precondition failed: " + mp.render());
  }
  PropertyReport cons = probe(frame.regulator, Property::cons, probe_bound);
  if (!cons.holds) {
    throw PreconditionError("diag-refute precondition failed: " +
                            cons.render());
  }
  PropertyReport dec = dec_soundness(decision, frame.regulator, probe_bound);
  if (!dec.holds) {
    throw PreconditionError("diag-refute precondition failed: " +
                            dec.render());
  }
  return diagonal_scan(frame);
}

namespace {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string(), 0);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

[[noreturn]] void frame_fail(const std::filesystem::path& path,
                             std::size_t line_number,
                             const std::string& what) {
  throw ParseError(path.string() + ":" + std::to_string(line_number) + ": " +
                       what,
                   line_number);
}

}  // namespace

EvalFrame parse_frame_file(const std::filesystem::path& path) {
  std::istringstream in{read_text_file(path)};
  std::string line;
  std::size_t line_number = 0;

  bool have_bound = false, have_regulator = false, have_eval = false;
  std::size_t code_bound = 0;
  RegulatorSpec regulator = RegulatorSpec::total();
  EvalFn eval = EvalFn::constant(Formula::falsum());

  bool in_table = false;
  std::map<std::pair<std::size_t, std::size_t>, Formula> rows;

  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;

    if (in_table) {
      if (keyword == "default") {
        std::string rest;
        std::getline(fields, rest);
        eval = EvalFn::table(std::move(rows), parse(rest));
        rows.clear();
        in_table = false;
        have_eval = true;
        continue;
      }
      std::size_t c = 0, x = 0;
      std::string arg;
      try {
        c = std::stoull(keyword);
        if (!(fields >> arg)) throw std::invalid_argument("missing arg");
        x = std::stoull(arg);
      } catch (const std::exception&) {
        frame_fail(path, line_number, "expected `c x <formula>` table row");
      }
      std::string rest;
      std::getline(fields, rest);
      rows[{c, x}] = parse(rest);
      continue;
    }

    if (keyword == "codebound") {
      std::string value;
      if (!(fields >> value)) frame_fail(path, line_number, "missing bound");
      code_bound = std::stoull(value);
      have_bound = true;
    } else if (keyword == "regulator") {
      std::string kind;
      if (!(fields >> kind)) frame_fail(path, line_number, "missing regulator");
      if (kind == "total") {
        regulator = RegulatorSpec::total();
      } else if (kind == "taut") {
        regulator = RegulatorSpec::semantic_taut();
      } else if (kind == "closure") {
        std::string base_file;
        if (!(fields >> base_file))
          frame_fail(path, line_number, "missing closure base file");
        auto base_path = path.parent_path() / base_file;
        regulator =
            RegulatorSpec::mp_closure_over(parse_base_text(read_text_file(base_path)));
      } else {
        frame_fail(path, line_number, "unknown regulator '" + kind + "'");
      }
      have_regulator = true;
    } else if (keyword == "eval") {
      std::string kind;
      if (!(fields >> kind)) frame_fail(path, line_number, "missing eval kind");
      if (kind == "constant") {
        std::string rest;
        std::getline(fields, rest);
        eval = EvalFn::constant(parse(rest));
        have_eval = true;
      } else if (kind == "table") {
        in_table = true;
      } else if (kind == "affine") {
        std::size_t cw = 0, aw = 0, k = 0;
        std::string f1, f2, f3;
        if (!(fields >> f1 >> f2 >> f3))
          frame_fail(path, line_number, "affine needs three coefficients");
        try {
          cw = std::stoull(f1);
          aw = std::stoull(f2);
          k = std::stoull(f3);
        } catch (const std::exception&) {
          frame_fail(path, line_number, "affine coefficients must be naturals");
        }
        eval = EvalFn::size_affine(cw, aw, k);
        have_eval = true;
      } else {
        frame_fail(path, line_number, "unknown eval kind '" + kind + "'");
      }
    } else {
      frame_fail(path, line_number, "unknown keyword '" + keyword + "'");
    }
  }

  if (in_table) frame_fail(path, line_number, "table missing `default` row");
  if (!have_bound) frame_fail(path, line_number, "missing `codebound`");
  if (!have_regulator) frame_fail(path, line_number, "missing `regulator`");
  if (!have_eval) frame_fail(path, line_number, "missing `eval`");

  return EvalFrame{code_bound, std::move(eval), std::move(regulator)};
}

}  // namespace regkit
