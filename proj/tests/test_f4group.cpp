#include <doctest.h>

#include "alg/f4group.hpp"

using namespace alg;

namespace {

F4Group grp(const char* conic, std::array<long long, 3> g, const RingPtr& ring) {
  return f4_group_make(f4_make(Her3::make(conic, g, ring)));
}

}  // namespace

TEST_CASE("exponentials of the Chevalley root vectors") {
  F4Group G = grp("base", {1, 1, 1}, Ring::modular(101));
  const auto& B = G.F.B;
  const RingPtr& R = B->ring;
  std::mt19937_64 rng(0xf4a);

  // the two roots of extreme coarse degree exponentiate into the x/y groups;
  // the root (2,0,0,0) carries the extra sign of the homomorphism family
  Scalar t = Scalar::random(R, rng);
  CHECK(f4_theta(G, {2, 0, 0, 0}, Vec{t}).mat ==
        exp_root(B, exp_scalar_param({2, 1}, -t)).mat);
  CHECK(f4_theta(G, {-2, 0, 0, 0}, Vec{t}).mat ==
        exp_root(B, exp_scalar_param({-2, -1}, t)).mat);

  Report add = verify_f4_theta_additivity(G, 2, 0x11);
  INFO(add.detail);
  CHECK(add.ok);
  CHECK(add.checks >= 48);

  // spot-check full automorphism property on a few exponentials
  for (F4Root al : {F4Root{1, 1, 1, 1}, F4Root{0, 1, -1, 0}, F4Root{0, 0, 0, 2}}) {
    Vec a = vec_random(R, f4_param_dim(G.F, al), rng);
    Report rep = is_automorphism(f4_theta(G, al, a), 40, 0x77);
    INFO(rep.detail);
    CHECK(rep.ok);
  }
}

TEST_CASE("Weyl elements act as reflections on all root spaces") {
  F4Group G = grp("base", {1, 1, 1}, Ring::modular(101));
  Report rep = verify_f4_reflections(G.F);
  INFO(rep.detail);
  CHECK(rep.ok);
  CHECK(rep.checks == 42 * 48);
}

TEST_CASE("the six zero-degree roots and their transfer parities") {
  for (const char* conic : {"base", "dual"}) {
    F4Group G = grp(conic, {1, 1, 1}, Ring::modular(101));
    Report rep = verify_zero_fiber_transfer(G, 2, 0x5a);
    INFO(conic, ": ", rep.detail);
    CHECK(rep.ok);
  }
  // twisted diagonal over the rationals
  F4Group Gr = grp("base", {2, -1, 3}, Ring::rationals());
  Report rr = verify_zero_fiber_transfer(Gr, 1, 0x5b);
  INFO(rr.detail);
  CHECK(rr.ok);
}

TEST_CASE("conjugation by simple Weyl elements follows the parity table") {
  // sanity of the recorded table: every root is covered, long rows carry no
  // conjugation twist
  const auto& fix = f4_parity_fixture();
  CHECK(fix.size() == 48);
  for (F4Root al : f4_roots()) {
    REQUIRE(fix.count(al.coords()) == 1);
    if (f4_is_long(al))
      for (int t = 0; t < 4; ++t) CHECK(f4_parity(al, t).conj == 1);
  }

  F4Group G = grp("base", {1, 1, 1}, Ring::modular(101));
  Report rep = verify_f4_weyl(G, 1, 0x21);
  INFO(rep.detail);
  CHECK(rep.ok);

  // the dual numbers have a nontrivial conjugation, pinning down the second
  // parity component as well
  F4Group Gd = grp("dual", {1, 1, 1}, Ring::modular(101));
  Report rd = verify_f4_weyl(Gd, 1, 0x22);
  INFO(rd.detail);
  CHECK(rd.ok);
}

TEST_CASE("the parity rule for composite Weyl words") {
  F4Group G = grp("dual", {1, 2, 3}, Ring::modular(101));
  std::vector<std::vector<int>> words{{0, 1}, {2, 3}, {1, 2}, {0, 3, 2}};
  Report rep = verify_f4_parity_words(G, words, 1, 0x31);
  INFO(rep.detail);
  CHECK(rep.ok);
}

TEST_CASE("commutator relations and interval closure") {
  F4Group G = grp("base", {1, 1, 1}, Ring::modular(101));
  Report rep = verify_f4_commutators(G, 2, 0x41);
  INFO(rep.detail);
  CHECK(rep.ok);

  // a conic algebra with conjugation, subsampled pair sweep
  F4Group Gd = grp("dual", {1, -1, 2}, Ring::modular(101));
  Report rd = verify_f4_commutators(Gd, 1, 0x42, 7);
  INFO(rd.detail);
  CHECK(rd.ok);
}

TEST_CASE("the coarse root groups are recovered from the fine ones") {
  F4Group G = grp("base", {1, 1, 1}, Ring::modular(101));
  Report rep = verify_g2_from_f4_groups(G, 2, 0x51);
  INFO(rep.detail);
  CHECK(rep.ok);
}

TEST_CASE("positive products of exponentials are unitriangular") {
  F4Group G = grp("base", {1, 1, 1}, Ring::modular(101));
  Report rep = verify_f4_triangularity(G, 3, 6, 0x61);
  INFO(rep.detail);
  CHECK(rep.ok);
}
