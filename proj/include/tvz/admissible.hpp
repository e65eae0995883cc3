#pragma once

#include "tvz/cover.hpp"

namespace tvz {

// A piecewise-linear function on the source whose corrected canonical divisor
// is pulled back from an effective degree-1 divisor D on the target tree.
// The target shadow is normalized to value 0 at the support vertex; slopes of
// the shadow may be half-integral exactly on expansion-2 target edges, and
// the source slopes are always integral.
struct AdmissibleFunction {
  std::string support;       // target vertex carrying D
  Divisor D;                 // degree-1 divisor on the target
  PLFunction target_shadow;  // on the target tree
  PLFunction source_function; // pullback to the source
};

// One admissible function per target vertex, in id order. For a valid cover
// the construction cannot fail; violations of the defining identities are
// reported as internal errors (a validation bug), never silently dropped.
std::vector<AdmissibleFunction> enumerate_admissible(const TropCover& cover);

// The identity K + div(f) = psi^* D, checked exactly; returns error strings.
std::vector<std::string> check_admissible(const TropCover& cover, const AdmissibleFunction& f);

}  // namespace tvz
