#include "regkit/semantics.hpp"

namespace regkit {

bool truth(const Formula& a) {
  if (a.is_falsum()) return false;
  return !truth(a.antecedent()) || truth(a.consequent());
}

Verdict taut_decide(const Formula& a) {
  return truth(a) ? Verdict::tt : Verdict::ff;
}

bool semantic_equiv(const Formula& a, const Formula& b) {
  return truth(a) == truth(b);
}

}  // namespace regkit
