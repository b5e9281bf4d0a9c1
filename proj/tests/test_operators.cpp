#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "clonoid/operators.hpp"
#include "clonoid/rank.hpp"

using namespace clonoid;

namespace {

ModulePtr regular(int m) {
  return module_make({{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", m}}}});
}

ModulePtr abelian(int e) { return module_make({{"kind", "abelian"}, {"invariants", {e}}}); }

FuncTable random_func(const ModulePtr& a, const ModulePtr& b, int k, std::mt19937_64& rng) {
  FuncTable f = func_zero(a, b, k);
  for (int& v : f.values) v = static_cast<int>(rng() % b->size);
  return f;
}

MinorOperator random_op(const RingPtr& ring, int k, int64_t e, std::mt19937_64& rng) {
  MinorOperator d = op_zero(ring, k, e);
  for (int terms = 0; terms < 4; ++terms) {
    std::vector<int> entries(k * k);
    for (int& x : entries) x = static_cast<int>(rng() % ring->size);
    d.support[entries] = 1 + static_cast<int64_t>(rng() % (e - 1));
  }
  d.rank_bound = op_max_inner_rank(d);
  return d;
}

}  // namespace

TEST_CASE("identity and zero operators") {
  ModulePtr a = regular(4);
  ModulePtr b = abelian(3);
  std::mt19937_64 rng(2);
  FuncTable f = random_func(a, b, 2, rng);
  CHECK(func_equal(op_apply(op_identity(a->ring, 2, 3), f), f));
  CHECK(func_equal(op_apply(op_zero(a->ring, 2, 3), f), func_zero(a, b, 2)));
}

TEST_CASE("application is linear and respects composition") {
  ModulePtr a = regular(4);
  ModulePtr b = abelian(3);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    MinorOperator d1 = random_op(a->ring, 2, 3, rng);
    MinorOperator d2 = random_op(a->ring, 2, 3, rng);
    FuncTable f = random_func(a, b, 2, rng);
    FuncTable g = random_func(a, b, 2, rng);
    CHECK(func_equal(op_apply(d1, func_add(f, g)), func_add(op_apply(d1, f), op_apply(d1, g))));
    CHECK(func_equal(op_apply(op_add(d1, d2), f), func_add(op_apply(d1, f), op_apply(d2, f))));
    CHECK(func_equal(op_apply(op_compose(d1, d2), f), op_apply(d1, op_apply(d2, f))));
    CHECK(func_equal(op_apply(op_sub(d1, d2), f), func_sub(op_apply(d1, f), op_apply(d2, f))));
  }
}

TEST_CASE("difference combination realizes d(f) + t(f - d(f))") {
  ModulePtr a = regular(2);
  ModulePtr b = abelian(5);
  std::mt19937_64 rng(6);
  MinorOperator d = random_op(a->ring, 2, 5, rng);
  MinorOperator t = random_op(a->ring, 2, 5, rng);
  FuncTable f = random_func(a, b, 2, rng);
  FuncTable expect = func_add(op_apply(d, f), op_apply(t, func_sub(f, op_apply(d, f))));
  CHECK(func_equal(op_apply(op_combine_difference(d, t), f), expect));
}

TEST_CASE("composition keeps the certified rank bound") {
  ModulePtr a = regular(4);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    MinorOperator d1 = random_op(a->ring, 2, 3, rng);
    MinorOperator d2 = random_op(a->ring, 2, 3, rng);
    MinorOperator c = op_compose(d1, d2);
    CHECK(c.rank_bound <= std::min(d1.rank_bound, d2.rank_bound));
    CHECK(op_max_inner_rank(c) == c.rank_bound);
  }
}

TEST_CASE("linear solver instances") {
  for (int k = 1; k <= 3; ++k) {
    CoeffSolution s = solve_coeffs_linear(regular(2), k, 1, 3);
    CHECK(s.feasible);
    CHECK(s.verified);
    for (const auto& [m, c] : s.coeffs) CHECK(inner_rank(regular(2)->ring, m) <= 1);
  }
  CoeffSolution z4 = solve_coeffs_linear(regular(4), 2, 2, 3);
  CHECK(z4.feasible);
  CHECK(z4.verified);
  CoeffSolution z6 = solve_coeffs_linear(regular(6), 2, 1, 5);
  CHECK(z6.feasible);
  CHECK(z6.verified);

  CoeffSolution tight = solve_coeffs_linear(regular(4), 2, 1, 3);
  CHECK_FALSE(tight.feasible);
}

TEST_CASE("coefficient congruence re-verification") {
  CoeffSolution s = solve_coeffs_linear(regular(2), 2, 1, 3);
  REQUIRE(s.feasible);
  CHECK(verify_coeff_identity(regular(2), 2, 3, s.coeffs));
  // corrupting one coefficient breaks the congruence
  auto bad = s.coeffs;
  bad[0].second = (bad[0].second + 1) % 3;
  CHECK_FALSE(verify_coeff_identity(regular(2), 2, 3, bad));
}

TEST_CASE("restriction operator for a maximal submodule of Z_4") {
  ModulePtr z4 = regular(4);
  ModulePtr b = abelian(3);
  Submodule m = submodule_closure(z4, {2});
  MinorOperator g = gM_operator(z4, m, 2, 3);
  // argument functions must vanish on L^2 for every proper submodule L
  std::vector<int> t(2);
  for (int64_t pt = 0; pt < 16; ++pt) {
    tuple_decode(pt, 4, 2, t);
    if (t[0] % 2 == 0 && t[1] % 2 == 0) continue;
    FuncTable f = func_zero(z4, b, 2);
    f.values[pt] = 1;
    FuncTable out = op_apply(g, f);
    // the operator keeps the values on A x M and kills the rest
    FuncTable expect = func_zero(z4, b, 2);
    if (t[1] % 2 == 0) expect.values[pt] = 1;
    CHECK(func_equal(out, expect));
  }
}

TEST_CASE("structural identity operator matches the solver instances") {
  struct Instance {
    int m, kmax, n;
    int64_t e;
  };
  for (const Instance& inst : {Instance{2, 3, 1, 3}, Instance{4, 2, 2, 3}, Instance{6, 2, 1, 5}}) {
    ModulePtr a = regular(inst.m);
    ModulePtr b = abelian(inst.e);
    for (int k = 1; k <= inst.kmax; ++k) {
      MinorOperator d = build_identity_operator(a, k, inst.e);
      CHECK(d.rank_bound <= inst.n);
      for (const auto& [entries, c] : d.support) {
        Matrix m(k, k);
        m.e = entries;
        CHECK(inner_rank(a->ring, m) <= inst.n);
      }
      for (const FuncTable& f : delta_basis(a, b, k)) CHECK(func_equal(op_apply(d, f), f));
      CoeffSolution s = coeff_solution_constructive(a, k, inst.e);
      CHECK(s.verified);
      CHECK(s.method == "constructive");
    }
  }
}

TEST_CASE("structural recursion refuses a non-coprime exponent") {
  CHECK_THROWS_AS(build_identity_operator(regular(2), 2, 4), Error);
}
