#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clonoid/verify.hpp"

using namespace clonoid;

namespace {

ModulePtr regular(int m) {
  return module_make({{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", m}}}});
}

}  // namespace

TEST_CASE("the explicit binary identity") {
  VerificationReport r = verify_example_binary(3);
  CHECK(r.status == "verified");
  CHECK(r.witness["functions_checked"] == 81);
  CHECK(r.witness["support_rank"] == 1);
  CHECK(verify_example_binary(5).status == "verified");
  CHECK_THROWS_AS(verify_example_binary(2), Error);
}

TEST_CASE("ascending chains stay strict") {
  VerificationReport r = ascending_chain(regular(2), regular(2), 4);
  CHECK(r.status == "verified");
  CHECK(r.witness["strict_at"] == nlohmann::json({2, 3, 4}));

  VerificationReport lifted = ascending_chain(regular(4), regular(2), 3);
  CHECK(lifted.status == "verified");
  CHECK(lifted.witness["strict_at"] == nlohmann::json({2, 3}));

  CHECK_THROWS_AS(ascending_chain(regular(2), regular(3), 2), Error);
}

TEST_CASE("separation for a non-cyclic domain") {
  ModulePtr z2sq = module_make(
      {{"kind", "product"},
       {"factors", {{{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", 2}}}},
                    {{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", 2}}}}}}});
  VerificationReport r = separation_noncyclic(z2sq, regular(3), 1);
  CHECK(r.status == "verified");
  CHECK(r.witness["witness_arity"] == 2);

  // cyclic domains violate the hypothesis
  CHECK_THROWS_AS(separation_noncyclic(regular(2), regular(3), 1), Error);
}

TEST_CASE("separation from a nonzero radical") {
  RingPtr z4 = ring_make({{"kind", "zmod"}, {"m", 4}});
  VerificationReport r = separation_jacobson(z4, regular(3));
  CHECK(r.status == "verified");
  CHECK(r.witness["ideal"] == nlohmann::json({0, 2}));

  RingPtr tri = ring_make({{"kind", "triangular"}, {"p", 2}});
  CHECK(separation_jacobson(tri, regular(3)).status == "verified");

  RingPtr z2 = ring_make({{"kind", "zmod"}, {"m", 2}});
  CHECK_THROWS_AS(separation_jacobson(z2, regular(3)), Error);
}

TEST_CASE("interpolation on affine reducts") {
  CHECK(verify_affine_malcev(2, 3, 1).status == "verified");
  CHECK(verify_affine_malcev(4, 3, 1).status == "verified");
  CHECK(verify_affine_malcev(2, 3, 2).status == "verified");
  CHECK_THROWS_AS(verify_affine_malcev(3, 3, 1), Error);
}

TEST_CASE("commutative spot checks match the ring criterion") {
  RingPtr z6 = ring_make({{"kind", "zmod"}, {"m", 6}});
  VerificationReport good = commutative_spotcheck(z6, regular(5));
  CHECK(good.status == "verified");
  CHECK(good.witness["structural"] == true);
  CHECK(good.witness["operational"] == true);

  RingPtr z4 = ring_make({{"kind", "zmod"}, {"m", 4}});
  VerificationReport radical = commutative_spotcheck(z4, regular(3));
  CHECK(radical.status == "verified");
  CHECK(radical.witness["structural"] == false);
  CHECK(radical.witness["operational"] == false);
  CHECK_FALSE(radical.witness["counterexample"].is_null());

  RingPtr z2 = ring_make({{"kind", "zmod"}, {"m", 2}});
  VerificationReport shared = commutative_spotcheck(z2, regular(2));
  CHECK(shared.status == "verified");
  CHECK(shared.witness["coprime"] == false);
  CHECK(shared.witness["operational"] == false);
}

TEST_CASE("reports serialize with stable fields") {
  VerificationReport r = verify_example_binary(3);
  nlohmann::json j = r.to_json();
  for (const char* key : {"command", "instance", "status", "witness", "elapsed_ms", "seed"})
    CHECK(j.contains(key));
}
