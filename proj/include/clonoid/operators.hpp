#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "clonoid/clonoid.hpp"

namespace clonoid {

// Linear operator on k-ary functions of the form f |-> sum_r s(r) f(rx),
// stored as a finitely supported coefficient map over k x k matrices. The
// support is keyed by matrix entries so an operator built for one module can
// be reused on any module over the same ring.
struct MinorOperator {
  RingPtr ring;
  int arity = 0;
  int rank_bound = 0;     // certified max inner rank over the support
  int64_t exponent = 1;   // coefficients live in Z_E
  std::map<std::vector<int>, int64_t> support;  // matrix entries -> coefficient
};

MinorOperator op_zero(const RingPtr& ring, int k, int64_t e);
MinorOperator op_identity(const RingPtr& ring, int k, int64_t e);
MinorOperator op_add(const MinorOperator& a, const MinorOperator& b);
MinorOperator op_sub(const MinorOperator& a, const MinorOperator& b);
MinorOperator op_scale(const MinorOperator& a, int64_t c);
// apply(compose(d1, d2), f) = apply(d1, apply(d2, f)); the support rank is
// re-certified by inner-rank computation after the product.
MinorOperator op_compose(const MinorOperator& d1, const MinorOperator& d2);
// d + t applied to the difference: f |-> d(f) + t(f - d(f)).
MinorOperator op_combine_difference(const MinorOperator& d, const MinorOperator& t);
FuncTable op_apply(const MinorOperator& d, const FuncTable& f);
int op_max_inner_rank(const MinorOperator& d);

// Solution of f(x) = sum_{rk(r)<=n} s(r) f(rx) valid for every f: A^k -> B
// with exponent dividing E. Coefficients depend on B only through E.
struct CoeffSolution {
  ModulePtr domain;
  int arity = 0;
  int rank_bound = 0;
  int64_t exponent = 1;
  bool feasible = false;
  bool verified = false;
  std::string method;  // "linear" or "constructive"
  std::vector<std::pair<Matrix, int64_t>> coeffs;
};

// Exhaustive solver: eliminates the delta-basis congruence system
// sum_{r: rx=a} s(r) = [x=a] (mod E) over matrix classes of rank <= n.
// Infeasibility is a valid outcome (feasible=false).
CoeffSolution solve_coeffs_linear(const ModulePtr& domain, int k, int n, int64_t e);

// The same identity built by the structural recursion over submodules; the
// rank bound comes out as the nilpotence degree of the radical.
MinorOperator build_identity_operator(const ModulePtr& domain, int k, int64_t e);
CoeffSolution coeff_solution_constructive(const ModulePtr& domain, int k, int64_t e);

MinorOperator operator_from_coeffs(const CoeffSolution& s);
// Exhaustive congruence check of the delta-basis system for the support.
bool verify_coeff_identity(const ModulePtr& domain, int k, int64_t e,
                           const std::vector<std::pair<Matrix, int64_t>>& coeffs);

// Operator realizing f |-> (f restricted to A x M^{k-1}, zero elsewhere) on
// functions vanishing on every proper power L^k; M must be maximal.
MinorOperator gM_operator(const ModulePtr& domain, const Submodule& m_sub, int k, int64_t e);

// Operator realizing f |-> (f restricted to N, zero elsewhere) on the same
// function class, for N a component of the cover of A^k.
MinorOperator fN_operator(const ModulePtr& domain, const Submodule& n_sub, int k, int64_t e);

}  // namespace clonoid
