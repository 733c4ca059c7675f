#include <doctest.h>

#include "alg/ring.hpp"
#include "alg/vecmat.hpp"

using namespace alg;

TEST_CASE("ring parsing round-trips") {
  for (const char* spec : {"int", "q", "zmod:101", "poly:q:s1,s2", "poly:zmod:7:x"}) {
    RingPtr r = Ring::parse(spec);
    CHECK(r->name() == spec);
    CHECK(Ring::parse(r->name())->same(*r));
  }
  CHECK_THROWS(Ring::parse("zmod:1"));
  CHECK_THROWS(Ring::parse("gibberish"));
}

TEST_CASE("integer and rational arithmetic is exact") {
  RingPtr Z = Ring::integers(), Q = Ring::rationals();
  Scalar a = Scalar::from_int(Z, 1);
  for (int i = 2; i <= 30; ++i) a = a * Scalar::from_int(Z, i);
  CHECK(a.str() == "265252859812191058636308480000000");  // 30!
  Scalar half = Scalar::from_rational(Q, BigRat(1, 2));
  Scalar third = Scalar::from_rational(Q, BigRat(1, 3));
  CHECK((half + third).str() == "5/6");
  CHECK((half * third).invert().str() == "6");
  CHECK(Scalar::from_int(Z, 5).try_invert() == std::nullopt);
  CHECK(Scalar::from_int(Z, -1).invert() == Scalar::from_int(Z, -1));
}

TEST_CASE("modular arithmetic: canonical residues and inverses") {
  RingPtr F = Ring::modular(101);
  Scalar a = Scalar::from_int(F, -5);
  CHECK(a.as_modular() == 96);
  for (int k = 1; k < 101; ++k) {
    Scalar x = Scalar::from_int(F, k);
    CHECK(x * x.invert() == Scalar::one(F));
  }
  RingPtr Z6 = Ring::modular(6);
  CHECK(!Z6->is_field());
  CHECK(Scalar::from_int(Z6, 2).try_invert() == std::nullopt);
  CHECK(Scalar::from_int(Z6, 5).invert() == Scalar::from_int(Z6, 5));
  CHECK(Ring::modular(101)->is_field());
}

TEST_CASE("polynomial ring: canonical form, evaluation, inversion") {
  RingPtr P = Ring::parse("poly:q:s1,s2");
  Scalar s1 = Scalar::variable(P, 0), s2 = Scalar::variable(P, 1);
  Scalar p = (s1 + s2) * (s1 - s2);
  Scalar q = s1 * s1 - s2 * s2;
  CHECK(p == q);
  CHECK((p - q).is_zero());
  bool str_ok = p.str() == "(-1)*s2^2 + s1^2";
  CHECK(str_ok);
  // evaluation hom
  RingPtr Q = Ring::rationals();
  std::vector<Scalar> vals{Scalar::from_int(Q, 7), Scalar::from_int(Q, 3)};
  CHECK(p.evaluate(vals) == Scalar::from_int(Q, 40));
  // only invertible constants invert
  CHECK(s1.try_invert() == std::nullopt);
  Scalar c = Scalar::from_int(P, 4);
  CHECK((c.invert() * c).is_one());
}

TEST_CASE("scalar ring mismatch is an error") {
  Scalar a = Scalar::from_int(Ring::integers(), 1);
  Scalar b = Scalar::from_int(Ring::modular(7), 1);
  CHECK_THROWS(a + b);
}

TEST_CASE("rref / rank / kernel / inverse over Q and F_p") {
  for (RingPtr r : {Ring::rationals(), Ring::modular(101)}) {
    Mat m(r, 3, 4);
    int data[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 0}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = Scalar::from_int(r, data[i][j]);
    CHECK(rank(m) == 2);
    auto ker = kernel_basis(m);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) CHECK(vec_is_zero(m.map_into(lin_field_ring(r)).apply(v)));
  }
  // integer matrices embed in Q
  Mat mz(Ring::integers(), 2, 2);
  mz.at(0, 0) = Scalar::from_int(Ring::integers(), 2);
  mz.at(1, 1) = Scalar::from_int(Ring::integers(), 3);
  CHECK(rank(mz) == 2);
  auto inv = try_inverse(mz);
  REQUIRE(inv.has_value());
  CHECK(inv->at(0, 0).as_rational() == BigRat(1, 2));
}

TEST_CASE("solve and subspace operations") {
  RingPtr F = Ring::modular(5);
  Mat m(F, 2, 2);
  m.at(0, 0) = Scalar::from_int(F, 1);
  m.at(0, 1) = Scalar::from_int(F, 2);
  m.at(1, 0) = Scalar::from_int(F, 3);
  m.at(1, 1) = Scalar::from_int(F, 4);
  Vec b{Scalar::from_int(F, 1), Scalar::from_int(F, 0)};
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  CHECK(m.apply(*x) == b);

  Vec e0 = vec_unit(F, 3, 0), e1 = vec_unit(F, 3, 1), e2 = vec_unit(F, 3, 2);
  Subspace s01 = Subspace::span(F, 3, {e0, e1, e0 + e1});
  CHECK(s01.dim() == 2);
  CHECK(s01.contains(e0 + Scalar::from_int(F, 4) * e1));
  CHECK(!s01.contains(e2));
  Subspace s12 = Subspace::span(F, 3, {e1 + e2, e1 - e2});
  Subspace inter = s01.intersect(s12);
  CHECK(inter.dim() == 1);
  CHECK(inter.contains(e1));
  CHECK(s01.sum(s12).dim() == 3);
  CHECK(Subspace::span(F, 3, {e0, e1}) == Subspace::span(F, 3, {e0 + e1, e0 - e1}));
}

TEST_CASE("seeded randomness is deterministic") {
  RingPtr F = Ring::modular(101);
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 20; ++i) CHECK(Scalar::random(F, a) == Scalar::random(F, b));
}
