#pragma once

#include <vector>

#include "clonoid/module.hpp"

namespace clonoid {

// Least r such that A factors as an m x r times an r x n product over the ring.
int inner_rank(const RingPtr& ring, const Matrix& m);

// All k x k matrices of inner rank at most n, sorted by entry vector. When a
// module is supplied, matrices inducing the same map on A^k are collapsed to
// the least representative.
std::vector<Matrix> matrices_of_rank_at_most(const RingPtr& ring, int k, int n,
                                             const ModulePtr& dedupe_module = nullptr);

}  // namespace clonoid
