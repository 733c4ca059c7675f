#include <doctest.h>

#include "alg/g2group.hpp"
#include "alg/jordan.hpp"

using namespace alg;

namespace {

std::shared_ptr<const LieBasis> basis_for(const char* conic, std::array<long long, 3> g,
                                          const RingPtr& ring) {
  return build_basis(Her3::make(conic, g, ring).pair());
}

ExpParam random_param(const CubicNormPair& P, G2Root g, std::mt19937_64& rng) {
  if (g2_is_long(g)) return exp_scalar_param(g, Scalar::random(P.ring, rng));
  std::size_t n = g2_param_is_J(g) ? P.dimJ : P.dimJp;
  return exp_module_param(P, g, vec_random(P.ring, n, rng));
}

ExpParam zero_param(const CubicNormPair& P, G2Root g) {
  if (g2_is_long(g)) return exp_scalar_param(g, Scalar::zero(P.ring));
  std::size_t n = g2_param_is_J(g) ? P.dimJ : P.dimJp;
  return exp_module_param(P, g, vec_zero(P.ring, n));
}

}  // namespace

TEST_CASE("exponentials: pointwise formulas and group laws") {
  auto B = basis_for("base", {1, 1, 1}, Ring::modular(101));
  const CubicNormPair& P = B->P;
  const RingPtr& R = B->ring;
  std::mt19937_64 rng(0xe1);
  Scalar lam = Scalar::from_int(R, 7);

  // zero parameter gives the identity at every root
  for (G2Root g : g2_roots())
    CHECK(auto_equal(exp_root(B, zero_param(P, g)), lie_identity(B)));

  // e_{lam x}: y -> y + lam xi + lam^2 x, xi -> xi + 2 lam x, zeta -> zeta + lam x
  LieAuto ex = exp_root(B, exp_scalar_param({-2, -1}, lam));
  LieElement want = lie_y(P, Scalar::one(R)) + lie_z(P, lam * z_xi(P)) +
                    lie_x(P, lam * lam);
  CHECK(ex.apply(lie_y(P, Scalar::one(R))) == want);
  CHECK(ex.apply(lie_z(P, z_xi(P))) ==
        lie_z(P, z_xi(P)) + lie_x(P, Scalar::from_int(R, 2) * lam));
  CHECK(ex.apply(lie_z(P, z_zeta(P))) == lie_z(P, z_zeta(P)) + lie_x(P, lam));
  CHECK(ex.apply(lie_x(P, Scalar::one(R))) == lie_x(P, Scalar::one(R)));

  // e_b for b in J: zeta -> zeta - b, and tuples shift inside their own side
  Vec b = vec_random(R, P.dimJ, rng);
  LieAuto eb = exp_root(B, exp_module_param(P, {0, 1}, b));
  CHECK(eb.apply(lie_z(P, z_zeta(P))) == lie_z(P, z_zeta(P)) - lie_j(P, b));
  LieElement mlam = lie_minus(P, {Scalar::one(R), vec_zero(R, P.dimJ),
                                  vec_zero(R, P.dimJp), Scalar::zero(R)});
  LieElement mimg = lie_minus(P, {Scalar::one(R), b, P.sharpJ(b), P.normJ(b)});
  CHECK(eb.apply(mlam) == mimg);

  // inverses come from negated parameters
  for (G2Root g : g2_roots()) {
    ExpParam p = random_param(P, g, rng);
    CHECK(auto_equal({B, B, exp_root(B, p).mat * exp_root(B, exp_param_negate(p)).mat},
                     lie_identity(B)));
  }

  // one-parameter additivity within each root group
  for (G2Root g : g2_roots()) {
    ExpParam p = random_param(P, g, rng), q = random_param(P, g, rng);
    ExpParam sum{g, p.s + q.s, p.v};
    if (!g2_is_long(g)) sum.v = p.v + q.v;
    CHECK(auto_equal({B, B, exp_root(B, p).mat * exp_root(B, q).mat},
                     exp_root(B, sum)));
  }

  // malformed parameters are rejected
  CHECK_THROWS_AS(exp_scalar_param({1, 0}, lam), std::invalid_argument);
  CHECK_THROWS_AS(exp_module_param(P, {2, 1}, b), std::invalid_argument);
  CHECK_THROWS_AS(exp_module_param(P, {0, 1}, vec_zero(R, P.dimJ + 1)),
                  std::invalid_argument);
}

TEST_CASE("every exponential is a Lie algebra automorphism") {
  auto B = basis_for("base", {1, 2, 3}, Ring::modular(101));
  const CubicNormPair& P = B->P;
  std::mt19937_64 rng(0xe2);
  for (G2Root g : g2_roots()) {
    LieAuto f = exp_root(B, random_param(P, g, rng));
    Report rep = is_automorphism(f, 120, 0xa0 + g2_height(g));
    INFO("root (", g.i, ",", g.j, "): ", rep.detail);
    CHECK(rep.ok);
  }
  // all-pairs bracket preservation on two representative roots
  for (G2Root g : {G2Root{1, 0}, G2Root{-2, -1}}) {
    Report rep = is_automorphism(exp_root(B, random_param(P, g, rng)), 0, 0);
    INFO(rep.detail);
    CHECK(rep.ok);
  }
  // a larger coordinate algebra, sampled
  auto Bq = basis_for("quat-split", {1, 1, 1}, Ring::modular(101));
  for (G2Root g : {G2Root{0, -1}, G2Root{1, 1}}) {
    Report rep = is_automorphism(exp_root(Bq, random_param(Bq->P, g, rng)), 40, 0xbb);
    INFO(rep.detail);
    CHECK(rep.ok);
  }
  // exactness over the rationals
  auto Bz = basis_for("dual", {1, 1, 1}, Ring::rationals());
  Report rz = is_automorphism(exp_root(Bz, random_param(Bz->P, {1, 0}, rng)), 60, 0xcc);
  INFO(rz.detail);
  CHECK(rz.ok);
}

TEST_CASE("homogeneous parts and the parametrization axioms") {
  auto B = basis_for("base", {1, 1, 1}, Ring::modular(101));
  const CubicNormPair& P = B->P;
  const RingPtr& R = B->ring;
  std::mt19937_64 rng(0xe3);
  Scalar c = Scalar::from_int(R, 5);
  for (G2Root g : g2_roots()) {
    ExpParam p = random_param(P, g, rng);
    LieAuto f = exp_root(B, p);
    // degree 0 is the identity, degree 1 the adjoint, nothing off-direction
    Report rep = verify_homogeneous_shape(*B, f, p);
    INFO("root (", g.i, ",", g.j, "): ", rep.detail);
    CHECK(rep.ok);
    // scaling: the degree-i part of exp(c a) is c^i times that of exp(a)
    auto parts = homogeneous_parts(*B, f.mat, g);
    auto scaled = homogeneous_parts(*B, exp_root(B, exp_param_scale(c, p)).mat, g);
    Scalar ci = Scalar::one(R);
    for (int i = 0; i <= 4; ++i) {
      CHECK(scaled[i] == parts[i].scaled(ci));
      ci = ci * c;
    }
    // degrees past 3 never occur, past 2 for long roots
    CHECK(parts[4].is_zero());
    if (g2_is_long(g)) CHECK(parts[3].is_zero());
  }
}

TEST_CASE("higher Leibniz rules for the degree parts") {
  auto B = basis_for("base", {1, 1, 1}, Ring::modular(101));
  const CubicNormPair& P = B->P;
  std::mt19937_64 rng(0xe4);
  // the short-root family e_{(0,b,0,0)_+}
  ExpParam pb = exp_module_param(P, {1, 0}, vec_random(B->ring, P.dimJ, rng));
  Report r1 = verify_higher_leibniz(B, pb, 5);
  INFO(r1.detail);
  CHECK(r1.ok);
  // the long-root family e_{rho x}
  ExpParam px = exp_scalar_param({-2, -1}, Scalar::random(B->ring, rng));
  Report r2 = verify_higher_leibniz(B, px, 5);
  INFO(r2.detail);
  CHECK(r2.ok);
}

TEST_CASE("commutator relations between positive root groups") {
  auto B = basis_for("base", {1, 1, 1}, Ring::modular(101));
  Report rep = verify_g2_commutators(B, 2, 0xe5);
  INFO(rep.detail);
  CHECK(rep.ok);
  // twisted diagonal, over the rationals
  auto Bq = basis_for("base", {1, -2, 3}, Ring::rationals());
  Report rq = verify_g2_commutators(Bq, 1, 0xe6);
  INFO(rq.detail);
  CHECK(rq.ok);
}

TEST_CASE("parameter extraction from a root group element") {
  auto B = basis_for("base", {2, 1, 1}, Ring::modular(101));
  const CubicNormPair& P = B->P;
  std::mt19937_64 rng(0xe7);
  for (G2Root g : g2_roots()) {
    ExpParam p = random_param(P, g, rng);
    auto back = extract_exp_param(B, exp_root(B, p).mat, g);
    REQUIRE(back);
    if (g2_is_long(g))
      CHECK(back->s == p.s);
    else
      CHECK(back->v == p.v);
  }
  // the identity extracts as the zero parameter, and a mismatched root fails
  auto id = extract_exp_param(B, Mat::identity(B->ring, B->dim), {1, 0});
  REQUIRE(id);
  CHECK(vec_is_zero(id->v));
  ExpParam p = random_param(P, {1, 0}, rng);
  CHECK_FALSE(extract_exp_param(B, exp_root(B, p).mat, {0, 1}));
}

TEST_CASE("Weyl elements: decompositions, conjugation, parity") {
  Her3 H = Her3::make("base", {1, 1, 1}, Ring::modular(101));
  auto B = build_basis(H.pair());
  Report rep = verify_g2_weyl(B, H.one(), 1, 0xe8);
  INFO(rep.detail);
  CHECK(rep.ok);
  // a base point with a nontrivial norm
  Her3 H2 = Her3::make("base", {1, 1, 1}, Ring::rationals());
  auto B2 = build_basis(H2.pair());
  Vec p = H2.one() + H2.e(0);  // diag(2,1,1), N(p) = 2
  Report r2 = verify_g2_weyl(B2, p, 0, 0xe9);
  INFO(r2.detail);
  CHECK(r2.ok);
}

TEST_CASE("parity conjugation for the squared reflections") {
  auto B = basis_for("base", {3, 1, 1}, Ring::modular(101));
  const CubicNormPair& P = B->P;
  std::mt19937_64 rng(0xea);
  // each inner reflection squares to a parity map; conjugating exp_g by it
  // rescales the parameter by the sign the parity map takes on L_g
  for (ReflectionKind kind : {ReflectionKind::Horizontal, ReflectionKind::Vertical,
                              ReflectionKind::Diagonal}) {
    LieEndo f = reflection(B, kind);
    Mat par = f.mat * f.mat;
    for (G2Root g : g2_roots()) {
      ExpParam q = random_param(P, g, rng);
      std::size_t idx = 0;
      while (!(B->labels[idx] == g)) ++idx;
      Scalar sign = par.at(idx, idx);
      CHECK((sign == Scalar::one(B->ring) || sign == -Scalar::one(B->ring)));
      Mat conj = try_inverse(par).value() * exp_root(B, q).mat * par;
      CHECK(conj == exp_root(B, exp_param_scale(sign, q)).mat);
    }
  }
}

TEST_CASE("unitriangularity of positive products") {
  auto B = basis_for("base", {1, 1, 1}, Ring::modular(101));
  Report rep = verify_triangularity(B, 3, 4, 0xeb);
  INFO(rep.detail);
  CHECK(rep.ok);
}
