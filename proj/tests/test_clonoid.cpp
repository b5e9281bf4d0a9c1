#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "clonoid/clonoid.hpp"

using namespace clonoid;

namespace {

ModulePtr regular(int m) {
  return module_make({{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", m}}}});
}

ModulePtr abelian(std::vector<int> invariants) {
  return module_make({{"kind", "abelian"}, {"invariants", invariants}});
}

FuncTable point_indicator(const ModulePtr& a, const ModulePtr& b, int k, int64_t point, int val) {
  FuncTable f = func_zero(a, b, k);
  f.values[point] = val;
  return f;
}

}  // namespace

TEST_CASE("generation from a unary indicator over Z_2 into Z_3") {
  ModulePtr a = regular(2);
  ModulePtr b = abelian({3});
  FuncTable delta1 = point_indicator(a, b, 1, 1, 1);
  Clonoid c = clonoid_generate(a, b, 2, {delta1});
  CHECK_FALSE(c.empty);
  CHECK(c.part(1).size() == 3);  // {0, d, 2d}: the minor x -> f(0) is the zero table
  CHECK(clonoid_contains(c, func_add(delta1, delta1)));
  FuncTable delta0 = point_indicator(a, b, 1, 0, 1);
  CHECK_FALSE(clonoid_contains(c, delta0));
}

TEST_CASE("homomorphisms generate the additive clonoid") {
  ModulePtr a = regular(2);
  Clonoid c = clonoid_generate(a, a, 2, hom_group(a, a));
  CHECK(c.part(1).size() == 2);   // 0 and the identity
  CHECK(c.part(2).size() == 4);   // 0, x1, x2, x1+x2
  FuncTable prod = point_indicator(a, a, 2, 3, 1);  // x1*x2
  CHECK_FALSE(clonoid_contains(c, prod));
}

TEST_CASE("compare, join and meet") {
  ModulePtr a = regular(2);
  ModulePtr b = abelian({3});
  Clonoid bottom = clonoid_generate(a, b, 2, {});
  CHECK(bottom.empty);
  Clonoid zero = clonoid_generate(a, b, 2, {func_zero(a, b, 1)});
  FuncTable one = func_zero(a, b, 1);
  one.values = {1, 1};
  Clonoid consts = clonoid_generate(a, b, 2, {one});
  Clonoid all = clonoid_generate(a, b, 2, delta_basis(a, b, 2));

  CHECK(clonoid_compare(bottom, zero) == CompareResult::less);
  CHECK(clonoid_compare(zero, consts) == CompareResult::less);
  CHECK(clonoid_compare(consts, all) == CompareResult::less);
  CHECK(clonoid_compare(all, zero) == CompareResult::greater);
  CHECK(clonoid_compare(zero, zero) == CompareResult::equal);

  // the indicator of 1 is killed by the zero scalar, so its clonoid misses
  // the nonzero constants, and neither class contains the other
  Clonoid d1 = clonoid_generate(a, b, 2, {point_indicator(a, b, 1, 1, 1)});
  CHECK(clonoid_compare(d1, consts) == CompareResult::incomparable);
  // the indicator of 0 has the constant 1 as its zero-scalar minor
  Clonoid d0 = clonoid_generate(a, b, 2, {point_indicator(a, b, 1, 0, 1)});
  CHECK(clonoid_compare(d1, d0) == CompareResult::less);
  CHECK(clonoid_compare(consts, d0) == CompareResult::less);

  Clonoid join = clonoid_join(d1, consts);
  CHECK(clonoid_compare(d1, join) == CompareResult::less);
  CHECK(clonoid_compare(consts, join) == CompareResult::less);
  Clonoid meet = clonoid_meet(d1, consts);
  CHECK(clonoid_compare(meet, zero) == CompareResult::equal);
  // meet absorbs: (x ^ y) v y = y
  CHECK(clonoid_compare(clonoid_join(meet, consts), consts) == CompareResult::equal);
}

TEST_CASE("unary generation of a binary function") {
  ModulePtr a = regular(2);
  ModulePtr b3 = abelian({3});
  // over a coprime codomain the indicator of (1,1) is unary generated
  FuncTable ind = point_indicator(a, b3, 2, 3, 1);
  NaryGeneration gen = generated_by_nary(ind, 1);
  CHECK(gen.generated);
  // certificate recombines: sum of coefficient * minor equals the function
  FuncTable back = func_zero(a, b3, 2);
  for (const auto& [m, c] : gen.certificate) {
    FuncTable minor = func_minor(ind, m);
    for (int64_t i = 0; i < c; ++i) back = func_add(back, minor);
  }
  CHECK(func_equal(back, ind));

  // the product x1*x2 over Z_2 into Z_2 is not generated by unary minors
  FuncTable prod = point_indicator(a, regular(2), 2, 3, 1);
  CHECK_FALSE(generated_by_nary(prod, 1).generated);
  CHECK(generated_by_nary(prod, 2).generated);
}

TEST_CASE("lift along a quotient projection") {
  ModulePtr z4 = regular(4);
  ModulePtr b = abelian({3});
  Submodule two = submodule_closure(z4, {2});
  Quotient q = quotient_module(z4, two);
  Clonoid small = clonoid_generate(q.module, b, 2, delta_basis(q.module, b, 1));
  Clonoid lifted = clonoid_lift(small, z4, q, b);
  CHECK(lifted.domain == z4);
  // lifted functions are constant on cosets of 2Z_4
  for (const Row& row : lifted.part(1).form.rows()) {
    FuncTable f = func_decode(z4, b, 1, row);
    CHECK(f.eval(0) == f.eval(2));
    CHECK(f.eval(1) == f.eval(3));
  }
  // lifting preserves order
  Clonoid smaller = clonoid_generate(q.module, b, 2, {func_zero(q.module, b, 1)});
  CHECK(clonoid_compare(clonoid_lift(smaller, z4, q, b), lifted) == CompareResult::less);
}

TEST_CASE("restriction to a submodule") {
  ModulePtr z4 = regular(4);
  ModulePtr b = abelian({3});
  SubmoduleModule sub = submodule_as_module(z4, submodule_closure(z4, {2}));
  Clonoid c = clonoid_generate(z4, b, 2, delta_basis(z4, b, 1));
  Clonoid r = clonoid_restrict(c, sub);
  CHECK(r.domain == sub.module);
  CHECK(r.part(1).size() == 9);  // all unary functions {0,2} -> Z_3
}

TEST_CASE("census of clonoids determined by the unary layer") {
  ClonoidCensus census = enumerate_clonoids(regular(2), abelian({3}), 1);
  CHECK_FALSE(census.bound_relative);
  CHECK(census.clonoids.size() == 5);
  CHECK(census.clonoids[0].empty);
  // every member reproduces itself from its unary layer
  for (const Clonoid& c : census.clonoids) {
    if (c.empty) continue;
    std::vector<FuncTable> gens = {func_zero(c.domain, c.codomain, 1)};
    for (const Row& row : c.part(1).form.rows())
      gens.push_back(func_decode(c.domain, c.codomain, 1, row));
    Clonoid again = clonoid_generate(c.domain, c.codomain, c.max_arity, gens);
    CHECK(clonoid_compare(c, again) == CompareResult::equal);
  }
}

TEST_CASE("non-coprime census is only bound-relative") {
  ClonoidCensus census = enumerate_clonoids(regular(2), regular(2), 1);
  CHECK(census.bound_relative);
}
