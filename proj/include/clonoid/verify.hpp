#pragma once

#include <string>

#include "json.hpp"

#include "clonoid/operators.hpp"

namespace clonoid {

struct VerificationReport {
  std::string command;
  nlohmann::json instance;
  std::string status;  // verified | refuted | infeasible | bound-relative | error
  nlohmann::json witness;
  int64_t elapsed_ms = 0;
  int64_t seed = 0;

  nlohmann::json to_json() const;
};

// The explicit 12-term averaging identity for binary functions on Z_2,
// checked for every function into Z_E (all 3^4 of them when E = 3, the
// delta basis otherwise).
VerificationReport verify_example_binary(int64_t e);

// Strictly ascending chain of function classes obtained by adjoining the
// lifted products x_1*...*x_k over a common prime.
VerificationReport ascending_chain(const ModulePtr& domain, const ModulePtr& codomain, int kmax);

// Two classes agreeing up to arity n but separated at arity n+1, built from
// a submodule needing n+1 generators.
VerificationReport separation_noncyclic(const ModulePtr& domain, const ModulePtr& codomain,
                                        int n);

// Unary-equal but binary-separated classes over a ring with nonzero radical.
VerificationReport separation_jacobson(const RingPtr& ring, const ModulePtr& codomain);

// The (k+1)-variable interpolation identity on the affine reduct of Z_m.
VerificationReport verify_affine_malcev(int m, int64_t e, int k);

// Structural vs. operational test of unary generation over a commutative
// ring: compares the ring-theoretic criterion with a generation scan.
VerificationReport commutative_spotcheck(const RingPtr& ring, const ModulePtr& codomain);

}  // namespace clonoid
