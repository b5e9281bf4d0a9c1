#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "clonoid/funcspace.hpp"

using namespace clonoid;

namespace {

ModulePtr regular(int m) {
  return module_make({{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", m}}}});
}

ModulePtr abelian(std::vector<int> invariants) {
  return module_make({{"kind", "abelian"}, {"invariants", invariants}});
}

FuncTable random_func(const ModulePtr& a, const ModulePtr& b, int k, std::mt19937_64& rng) {
  FuncTable f = func_zero(a, b, k);
  for (int& v : f.values) v = static_cast<int>(rng() % b->size);
  return f;
}

std::vector<Matrix> all_matrices(const RingPtr& ring, int rows, int cols) {
  std::vector<Matrix> out;
  Matrix m(rows, cols, 0);
  int cells = rows * cols;
  while (true) {
    out.push_back(m);
    int i = cells - 1;
    while (i >= 0 && ++m.e[i] == ring->size) m.e[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

}  // namespace

TEST_CASE("encode/decode round trip through the scaled coordinates") {
  std::mt19937_64 rng(3);
  for (const auto& cod : {abelian({6}), abelian({4, 2}), abelian({2, 2})}) {
    ModulePtr dom = regular(3);
    for (int k = 1; k <= 2; ++k)
      for (int trial = 0; trial < 10; ++trial) {
        FuncTable f = random_func(dom, cod, k, rng);
        FuncTable g = func_decode(dom, cod, k, func_encode(f));
        CHECK(func_equal(f, g));
      }
  }
}

TEST_CASE("pointwise arithmetic") {
  std::mt19937_64 rng(5);
  ModulePtr dom = regular(2);
  ModulePtr cod = abelian({4});
  FuncTable f = random_func(dom, cod, 2, rng);
  FuncTable g = random_func(dom, cod, 2, rng);
  CHECK(func_equal(func_sub(func_add(f, g), g), f));
  CHECK(func_equal(func_sub(f, f), func_zero(dom, cod, 2)));
}

TEST_CASE("minor composition law, exhaustive over Z_2") {
  ModulePtr dom = regular(2);
  ModulePtr cod = abelian({3});
  std::mt19937_64 rng(9);
  FuncTable f = random_func(dom, cod, 2, rng);
  for (const Matrix& m : all_matrices(dom->ring, 2, 2))
    for (const Matrix& n : all_matrices(dom->ring, 2, 2))
      CHECK(func_equal(func_minor(func_minor(f, m), n), func_minor(f, mat_mul(*dom->ring, m, n))));
}

TEST_CASE("minor composition law, sampled over Z_4") {
  ModulePtr dom = regular(4);
  ModulePtr cod = abelian({3});
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    FuncTable f = random_func(dom, cod, 2, rng);
    Matrix m(2, 2), n(2, 2);
    for (int& x : m.e) x = static_cast<int>(rng() % 4);
    for (int& x : n.e) x = static_cast<int>(rng() % 4);
    CHECK(func_equal(func_minor(func_minor(f, m), n), func_minor(f, mat_mul(*dom->ring, m, n))));
  }
}

TEST_CASE("minor shape: rows match the source arity") {
  ModulePtr dom = regular(2);
  ModulePtr cod = abelian({3});
  std::mt19937_64 rng(17);
  FuncTable f = random_func(dom, cod, 2, rng);
  Matrix m(2, 3, 0);
  m.at(0, 0) = 1;
  m.at(1, 2) = 1;
  FuncTable g = func_minor(f, m);  // g(x1,x2,x3) = f(x1,x3)
  CHECK(g.arity == 3);
  CHECK(g.eval(tuple_encode({1, 0, 1}, 2)) == f.eval(tuple_encode({1, 1}, 2)));
}

TEST_CASE("span membership certificates recombine") {
  ModulePtr dom = regular(2);
  ModulePtr cod = abelian({3});
  std::mt19937_64 rng(21);
  std::vector<FuncTable> gens;
  for (int i = 0; i < 3; ++i) gens.push_back(random_func(dom, cod, 2, rng));
  SpanBasis basis = span_basis(dom, cod, 2, gens);
  FuncTable probe = func_add(gens[0], func_add(gens[2], gens[2]));
  auto cert = span_contains(basis, probe);
  REQUIRE(cert.has_value());
  FuncTable back = func_zero(dom, cod, 2);
  for (size_t i = 0; i < gens.size(); ++i)
    for (int64_t c = 0; c < (*cert)[i]; ++c) back = func_add(back, gens[i]);
  CHECK(func_equal(back, probe));
}

TEST_CASE("delta basis spans the whole function space") {
  for (const auto& [dom, cod] : {std::pair{regular(2), abelian({3})},
                                 std::pair{regular(2), abelian({2, 2})},
                                 std::pair{regular(3), abelian({4})}}) {
    std::vector<FuncTable> basis = delta_basis(dom, cod, 2);
    CHECK(static_cast<int>(basis.size()) ==
          dom->size * dom->size * static_cast<int>(cod->basis.gens.size()));
    SpanBasis span = span_basis(dom, cod, 2, basis);
    uint64_t full = 1;
    for (int i = 0; i < dom->size * dom->size; ++i) full *= cod->size;
    CHECK(span.size() == full);
  }
}

TEST_CASE("hom groups") {
  CHECK(hom_group(regular(2), regular(2)).size() == 2);
  CHECK(hom_group(regular(4), regular(3)).size() == 1);  // zero only
  CHECK(hom_group(regular(2), regular(4)).size() == 2);  // zero and x -> 2x
  for (const FuncTable& h : hom_group(regular(4), regular(4)))
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        CHECK(h.eval((x + y) % 4) == (h.eval(x) + h.eval(y)) % 4);
}

TEST_CASE("polymorphism check") {
  ModulePtr dom = regular(4);
  ModulePtr cod = regular(2);
  // parity respects the congruence modulo 2Z_4
  FuncTable parity = func_zero(dom, cod, 1);
  for (int x = 0; x < 4; ++x) parity.values[x] = x % 2;
  std::vector<std::vector<int>> mod2, diag;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if ((x - y) % 2 == 0) mod2.push_back({x, y});
  for (int b = 0; b < 2; ++b) diag.push_back({b, b});
  CHECK_FALSE(pol_check(parity, RelationalPair{mod2, diag}).has_value());

  FuncTable high = func_zero(dom, cod, 1);
  high.values = {0, 0, 1, 1};
  auto witness = pol_check(high, RelationalPair{mod2, diag});
  REQUIRE(witness.has_value());
}

TEST_CASE("generated subpowers") {
  ModulePtr z4 = regular(4);
  std::vector<std::vector<int>> sigma = subpower_generate(z4, {{1, 3}});
  CHECK(sigma.size() == 4);
  for (const auto& pair : sigma) CHECK(pair[1] == (3 * pair[0]) % 4);
}
