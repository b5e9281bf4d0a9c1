#pragma once

#include <string>
#include <vector>

#include "clonoid/funcspace.hpp"
#include "clonoid/rank.hpp"

namespace clonoid {

// Finite window of a set of functions A^k -> B closed under precomposition
// with matrix minors over the ring and pointwise integer combinations.
// parts[k-1] is the k-ary layer for k = 1..max_arity. The lattice bottom is
// tracked by a flag so every stored span stays total.
struct Clonoid {
  ModulePtr domain;
  ModulePtr codomain;
  int max_arity = 0;
  bool empty = true;
  std::vector<SpanBasis> parts;

  const SpanBasis& part(int arity) const { return parts[arity - 1]; }
};

// Close the generators up to max_arity. A single pass through all matrix
// minors suffices: minors of minors are minors and spans absorb sums.
Clonoid clonoid_generate(const ModulePtr& domain, const ModulePtr& codomain, int max_arity,
                         const std::vector<FuncTable>& gens);

enum class CompareResult { equal, less, greater, incomparable };
CompareResult clonoid_compare(const Clonoid& a, const Clonoid& b);

Clonoid clonoid_join(const Clonoid& a, const Clonoid& b);
Clonoid clonoid_meet(const Clonoid& a, const Clonoid& b);

bool clonoid_contains(const Clonoid& c, const FuncTable& f);

// Is f an integer combination of its own minors f(rx) with inner rank r <= n?
// The certificate lists coefficients over matrices_of_rank_at_most(R, k, n).
struct NaryGeneration {
  bool generated = false;
  std::vector<std::pair<Matrix, int64_t>> certificate;
};
NaryGeneration generated_by_nary(const FuncTable& f, int n);

// Transport along a quotient projection: each basis function of c over A/N
// lifts to f(x_1 N, ..., x_k N) over A. The codomain embeds through a
// submodule inclusion when given.
Clonoid clonoid_lift(const Clonoid& c, const ModulePtr& domain, const Quotient& q,
                     const ModulePtr& codomain, const SubmoduleModule* cod_embed = nullptr);

// Restrict every basis table to tuples over a submodule of the domain.
Clonoid clonoid_restrict(const Clonoid& c, const SubmoduleModule& sub);

// All clonoids determined by their n-ary layer, bottom included. For
// non-coprime instances the window may not determine the clonoid, which the
// flag reports.
struct ClonoidCensus {
  std::vector<Clonoid> clonoids;  // windows at max_arity n+1
  bool bound_relative = false;
};
ClonoidCensus enumerate_clonoids(const ModulePtr& domain, const ModulePtr& codomain, int n);

}  // namespace clonoid
