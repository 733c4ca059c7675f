#include <doctest.h>

#include "alg/jordan.hpp"

using namespace alg;

TEST_CASE("cubic norm pair axioms hold for Her3 instances") {
  struct Cfg {
    const char* ring;
    const char* conic;
    std::array<long long, 3> g;
  };
  for (Cfg cfg : {Cfg{"q", "quat-split", {1, 1, 1}}, Cfg{"q", "base", {1, 2, 3}},
                  Cfg{"zmod:101", "oct-split", {1, 1, 1}},
                  Cfg{"zmod:101", "dual", {2, 5, 7}}}) {
    Her3 H = Her3::make(cfg.conic, cfg.g, Ring::parse(cfg.ring));
    Report rep = verify_cnp_axioms(H.pair(), 6, 99);
    INFO(cfg.conic, " over ", cfg.ring, ": ", rep.detail);
    CHECK(rep.ok);
  }
}

TEST_CASE("identity catalogue holds for Her3 instances") {
  for (auto [ring, conic] : {std::pair{"q", "base"}, std::pair{"zmod:101", "quat-split"}}) {
    Her3 H = Her3::make(conic, {1, -1, 2}, Ring::parse(ring));
    Report rep = verify_identity_catalogue(H.pair(), 3, 5);
    INFO(conic, " over ", ring, ": ", rep.detail);
    CHECK(rep.ok);
  }
}

TEST_CASE("base point of Her3: 1# = 1, N(1) = 1, 1 x a = T(1,a)1 - a") {
  Her3 H = Her3::make("oct-split", {1, 2, 3}, Ring::rationals());
  Vec one = H.one();
  CHECK(H.sharp(one) == one);
  CHECK(H.norm(one).is_one());
  std::mt19937_64 rng(1);
  Vec a = vec_random(H.ring, H.dim, rng);
  CHECK(H.cross(one, a) == H.traceT(one, a) * one - a);
}

TEST_CASE("zero pair is a valid degenerate cubic norm pair") {
  CubicNormPair Z = CubicNormPair::zero_pair(Ring::rationals());
  Report rep = verify_cnp_axioms(Z, 2, 3);
  CHECK(rep.ok);
}

TEST_CASE("isotope at p: cubic norm structure with base point p") {
  Her3 H = Her3::make("quat-split", {1, 2, 1}, Ring::rationals());
  std::mt19937_64 rng(17);
  Vec p;
  do {
    p = vec_random(H.ring, H.dim, rng);
  } while (!H.norm(p).try_invert());
  Isotope iso = isotope(H.pair(), p);
  // base point axioms for p in the isotope
  CHECK(iso.structure.sharpJ(p) == p);
  CHECK(iso.structure.normJ(p).is_one());
  Vec a = vec_random(H.ring, H.dim, rng);
  CHECK(iso.structure.crossJ(p, a) ==
        iso.structure.T(p, a) * p - a);
  // the isotope is itself a cubic norm pair
  Report rep = verify_cnp_axioms(iso.structure, 4, 5);
  INFO(rep.detail);
  CHECK(rep.ok);
  // (id, U_{p'}) is an N(p)-isotopy and the involution is an N(p)-involution
  Report h1 = check_homotopy(iso.structure, H.pair(), iso.isotopy, 4, 6);
  INFO(h1.detail);
  CHECK(h1.ok);
  CubicNormPair swapped = H.pair().swapped();
  Report h2 = check_homotopy(H.pair(), swapped, iso.involution, 4, 7);
  INFO(h2.detail);
  CHECK(h2.ok);
  // involution property: phi' = phi^{-1}
  Mat prod = iso.involution.phiP * iso.involution.phi;
  CHECK(prod == Mat::identity(H.ring, H.dim));
}

TEST_CASE("unit isotope p = 1 recovers the original structure maps") {
  Her3 H = Her3::make("dual", {1, 1, 1}, Ring::rationals());
  Isotope iso = isotope(H.pair(), H.one());
  std::mt19937_64 rng(3);
  Vec a = vec_random(H.ring, H.dim, rng), b = vec_random(H.ring, H.dim, rng);
  CHECK(iso.structure.normJ(a) == H.norm(a));
  CHECK(iso.structure.sharpJ(a) == H.sharp(a));
  CHECK(iso.structure.crossJ(a, b) == H.cross(a, b));
  CHECK(iso.structure.T(a, b) == H.traceT(a, b));
}

TEST_CASE("a broken homotopy is rejected") {
  Her3 H = Her3::make("base", {1, 1, 1}, Ring::rationals());
  Homotopy h{Mat::identity(H.ring, H.dim), Mat::identity(H.ring, H.dim),
             Scalar::from_int(H.ring, 2)};  // wrong twist
  Report rep = check_homotopy(H.pair(), H.pair(), h, 2, 8);
  CHECK(!rep.ok);
}
