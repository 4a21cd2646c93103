#pragma once

#include "regkit/formula.hpp"

namespace regkit {

enum class Verdict { tt, ff };

// The unique valuation of the closed fragment with falsum false:
// truth(x -> y) = !truth(x) || truth(y).
bool truth(const Formula& a);

// Boolean tautology classifier: tt iff truth(a). Sound on both branches,
// since truth(neg(a)) is the complement of truth(a).
Verdict taut_decide(const Formula& a);

// Mutual acceptance of both implications under the truth valuation;
// collapses to truth(a) == truth(b) on the closed fragment.
bool semantic_equiv(const Formula& a, const Formula& b);

}  // namespace regkit
