#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "clonoid/error.hpp"
#include "clonoid/howell.hpp"
#include "clonoid/module.hpp"
#include "clonoid/rank.hpp"

using namespace clonoid;

namespace {

RingPtr zmod(int m) { return ring_make({{"kind", "zmod"}, {"m", m}}); }

ModulePtr regular(int m) {
  return module_make({{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", m}}}});
}

}  // namespace

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(2, 3) == 2);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(5, 12) == 5);
  CHECK_THROWS_AS(mod_inverse(2, 4), Error);
}

TEST_CASE("howell form is canonical and certifies membership") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int64_t e = 2 + static_cast<int64_t>(rng() % 11);
    int cols = 2 + static_cast<int>(rng() % 4);
    std::vector<Row> gens(3, Row(cols));
    for (auto& g : gens)
      for (auto& x : g) x = static_cast<int64_t>(rng() % e);
    HowellForm a(e, cols, gens);

    // random recombinations of the canonical rows span the same set
    std::vector<Row> regen;
    for (const Row& r : a.rows()) regen.push_back(r);
    for (int extra = 0; extra < 3; ++extra) {
      Row mix(cols, 0);
      for (const Row& r : a.rows()) {
        int64_t c = static_cast<int64_t>(rng() % e);
        for (int j = 0; j < cols; ++j) mix[j] = (mix[j] + c * r[j]) % e;
      }
      regen.push_back(mix);
    }
    HowellForm b(e, cols, regen);
    CHECK(a == b);

    // every generator is expressible, and the certificate recombines
    for (const Row& g : gens) {
      auto cert = a.express(g);
      REQUIRE(cert.has_value());
      Row back(cols, 0);
      for (size_t i = 0; i < gens.size(); ++i)
        for (int j = 0; j < cols; ++j) back[j] = (back[j] + (*cert)[i] * gens[i][j]) % e;
      CHECK(back == g);
    }

    // kernel rows really annihilate the generators
    for (const Row& u : a.kernel()) {
      Row zero(cols, 0);
      Row acc(cols, 0);
      for (size_t i = 0; i < gens.size(); ++i)
        for (int j = 0; j < cols; ++j) acc[j] = (acc[j] + u[i] * gens[i][j]) % e;
      CHECK(acc == zero);
    }
  }
}

TEST_CASE("howell span size matches brute force") {
  std::vector<Row> gens = {{2, 0, 1}, {0, 3, 3}};
  HowellForm h(6, 3, gens);
  std::set<Row> span;
  for (int64_t c1 = 0; c1 < 6; ++c1)
    for (int64_t c2 = 0; c2 < 6; ++c2) {
      Row v(3);
      for (int j = 0; j < 3; ++j) v[j] = (c1 * gens[0][j] + c2 * gens[1][j]) % 6;
      span.insert(v);
    }
  CHECK(h.span_size() == span.size());
  for (const Row& v : span) CHECK(h.contains(v));
}

TEST_CASE("ring structure of Z_m") {
  RingPtr r4 = zmod(4);
  CHECK(r4->size == 4);
  CHECK(jacobson_radical(r4).elements == std::vector<int>{0, 2});
  CHECK(nilpotence_degree(*r4, jacobson_radical(r4)) == 2);
  CHECK(ring_units(*r4) == std::vector<int>{1, 3});
  CHECK(ring_is_commutative(*r4));

  RingPtr r6 = zmod(6);
  CHECK(jacobson_radical(r6).elements == std::vector<int>{0});
  CHECK(nilpotence_degree(*r6, jacobson_radical(r6)) == 1);
  CHECK(local_decomposition(r6).blocks.size() == 2);
}

TEST_CASE("triangular matrix ring") {
  RingPtr t = ring_make({{"kind", "triangular"}, {"p", 2}});
  CHECK(t->size == 8);
  CHECK_FALSE(ring_is_commutative(*t));
  CHECK(jacobson_radical(t).elements.size() == 2);
  CHECK(nilpotence_degree(*t, jacobson_radical(t)) == 2);
}

TEST_CASE("matrix determinant and inverse over Z_4") {
  RingPtr r = zmod(4);
  Matrix m(2, 2);
  m.e = {1, 2, 3, 1};  // det = 1 - 6 = -5 = 3, a unit
  CHECK(mat_det(*r, m) == 3);
  Matrix inv;
  REQUIRE(mat_inverse(*r, m, inv));
  CHECK(mat_mul(*r, m, inv) == Matrix::identity(*r, 2));

  Matrix s(2, 2);
  s.e = {2, 0, 0, 2};
  CHECK_FALSE(mat_inverse(*r, s, inv));
}

TEST_CASE("module kinds and submodule lattices") {
  ModulePtr z4 = regular(4);
  CHECK(submodules(z4).size() == 3);
  CHECK(min_generators(z4) == 1);
  CHECK(radical_submodule(z4).elements == std::vector<int>{0, 2});
  CHECK(is_distributive(z4).distributive);

  ModulePtr z2sq = module_make(
      {{"kind", "product"},
       {"factors", {{{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", 2}}}},
                    {{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", 2}}}}}}});
  CHECK(z2sq->size == 4);
  CHECK(submodules(z2sq).size() == 5);
  CHECK(min_generators(z2sq) == 2);
  CHECK_FALSE(is_distributive(z2sq).distributive);

  ModulePtr z2z4 = module_make({{"kind", "zd-over-zm"}, {"d", 2}, {"m", 4}});
  CHECK(z2z4->size == 2);
  CHECK(z2z4->ring->size == 4);
}

TEST_CASE("quotient and submodule views") {
  ModulePtr z4 = regular(4);
  Submodule two = submodule_closure(z4, {2});
  CHECK(two.elements == std::vector<int>{0, 2});
  Quotient q = quotient_module(z4, two);
  CHECK(q.module->size == 2);
  CHECK(q.projection[0] == q.projection[2]);
  CHECK(q.projection[1] == q.projection[3]);
  SubmoduleModule s = submodule_as_module(z4, two);
  CHECK(s.module->size == 2);
  CHECK(s.embed[s.module->zero] == 0);
}

TEST_CASE("tuple codec puts the first argument least significant") {
  std::vector<int> t;
  tuple_decode(6, 4, 2, t);
  CHECK(t == std::vector<int>{2, 1});
  CHECK(tuple_encode(t, 4) == 6);
}

TEST_CASE("inner rank") {
  RingPtr r2 = zmod(2);
  Matrix id2 = Matrix::identity(*r2, 2);
  CHECK(inner_rank(r2, id2) == 2);
  Matrix ones(2, 2, 1);
  CHECK(inner_rank(r2, ones) == 1);
  Matrix zero(2, 2, 0);
  CHECK(inner_rank(r2, zero) == 0);

  // 2*I over Z_4 does not factor through a single column
  RingPtr r4 = zmod(4);
  Matrix twos(2, 2);
  twos.e = {2, 0, 0, 2};
  CHECK(inner_rank(r4, twos) == 2);

  CHECK(matrices_of_rank_at_most(r2, 2, 1).size() == 10);
  CHECK(matrices_of_rank_at_most(r2, 2, 2).size() == 16);
}

TEST_CASE("rank submultiplicativity under products") {
  RingPtr r = zmod(6);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix a(2, 2), b(2, 2);
    for (int& x : a.e) x = static_cast<int>(rng() % 6);
    for (int& x : b.e) x = static_cast<int>(rng() % 6);
    int ra = inner_rank(r, a), rb = inner_rank(r, b);
    CHECK(inner_rank(r, mat_mul(*r, a, b)) <= std::min(ra, rb));
  }
}

TEST_CASE("component cover of Z_4^2") {
  ModulePtr z4 = regular(4);
  CoverComponents cover = cover_components(z4, 2);
  CHECK(cover.V.size() == 3);
  std::set<int64_t> covered;
  for (const Submodule& n : cover.V) {
    CHECK(n.elements.size() == 8);  // |A| * |JA|
    for (int x : n.elements) covered.insert(x);
    Matrix t = find_transitive_matrix(z4, 2, n);
    Matrix inv;
    CHECK(mat_inverse(*z4->ring, t, inv));
  }
  CHECK(covered.size() == 16);
  // pairwise intersections stay inside (JA)^2
  std::vector<int> tup;
  for (size_t i = 0; i < cover.V.size(); ++i)
    for (size_t j = i + 1; j < cover.V.size(); ++j)
      for (int x : cover.V[i].elements)
        if (cover.V[j].contains(x)) {
          tuple_decode(x, 4, 2, tup);
          CHECK(tup[0] % 2 == 0);
          CHECK(tup[1] % 2 == 0);
        }
}
