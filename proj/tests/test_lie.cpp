#include <doctest.h>

#include "alg/jordan.hpp"
#include "alg/lie.hpp"

using namespace alg;

namespace {

std::shared_ptr<const LieBasis> basis_for(const char* conic, std::array<long long, 3> g,
                                          const RingPtr& ring) {
  return build_basis(Her3::make(conic, g, ring).pair());
}

}  // namespace

TEST_CASE("root combinatorics") {
  CHECK(g2_roots().size() == 12);
  int longs = 0, shorts = 0;
  for (G2Root b : g2_roots()) {
    CHECK(g2_is_root(b));
    (g2_is_long(b) ? longs : shorts)++;
    CHECK(g2_is_root(g2_reflect(b, {1, 0})));
    CHECK(g2_reflect(g2_reflect(b, {2, 1}), {2, 1}) == b);
  }
  CHECK(longs == 6);
  CHECK(shorts == 6);
  CHECK(g2_reflect(G2Root{1, -1}, {2, 1}) == G2Root{-1, -2});
  CHECK(g2_reflect(G2Root{-2, -1}, {-1, -1}) == G2Root{1, 2});
  CHECK(g2_height(G2Root{1, 2}) == -5);
  CHECK(g2_height(G2Root{-2, -1}) == 1);
}

TEST_CASE("dimensions across instances") {
  // the degenerate pair (0,0): only x, y, L_{+-1} scalars and xi, zeta survive
  auto B0 = build_basis(CubicNormPair::zero_pair(Ring::rationals()));
  CHECK(B0->dim == 8);
  CHECK(B0->zb.size() == 2);
  // Her3(k): dim L = 2 + 2*14 + 2*6 + dim Z with dim Z = 10
  auto B1 = basis_for("base", {1, 1, 1}, Ring::rationals());
  CHECK(B1->dim == 52);
  CHECK(B1->zb.size() == 10);
  // split octonions: the largest case, dim L = 248 with dim Z = 80
  auto B2 = basis_for("oct-split", {1, 1, 1}, Ring::modular(101));
  CHECK(B2->dim == 248);
  CHECK(B2->zb.size() == 80);
  // split quaternions give dim L = 133 with dim Z = 37; twisting by gamma
  // does not move the dimensions
  auto B3 = basis_for("quat-split", {1, -2, 3}, Ring::rationals());
  CHECK(B3->dim == 133);
  CHECK(B3->zb.size() == 37);
}

TEST_CASE("xi and zeta act by the two grading degrees") {
  auto B = basis_for("base", {1, 2, 3}, Ring::rationals());
  const CubicNormPair& P = B->P;
  LieElement xi = lie_z(P, z_xi(P)), zeta = lie_z(P, z_zeta(P));
  // [x, y] = xi
  CHECK(lie_bracket(P, lie_x(P, Scalar::one(P.ring)), lie_y(P, Scalar::one(P.ring))) == xi);
  for (std::size_t i = 0; i < B->dim; ++i) {
    LieElement e = B->element(i);
    G2Root g = B->labels[i];
    CHECK(lie_bracket(P, xi, e) == Scalar::from_int(P.ring, g.i) * e);
    CHECK(lie_bracket(P, zeta, e) == Scalar::from_int(P.ring, g.j) * e);
  }
}

TEST_CASE("bracket is alternating and bilinear") {
  auto B = basis_for("quat-split", {1, 2, -1}, Ring::modular(101));
  const CubicNormPair& P = B->P;
  std::mt19937_64 rng(11);
  for (int t = 0; t < 6; ++t) {
    LieElement u = B->from_coords(vec_random(P.ring, B->dim, rng));
    LieElement v = B->from_coords(vec_random(P.ring, B->dim, rng));
    LieElement w = B->from_coords(vec_random(P.ring, B->dim, rng));
    Scalar c = Scalar::random(P.ring, rng);
    CHECK(lie_bracket(P, u, u).is_zero());
    CHECK(lie_bracket(P, u, v) == -lie_bracket(P, v, u));
    CHECK(lie_bracket(P, u + c * v, w) ==
          lie_bracket(P, u, w) + c * lie_bracket(P, v, w));
  }
}

TEST_CASE("Jacobi identity, exhaustive on Her3(k) mod 101") {
  auto B = basis_for("base", {1, 1, 1}, Ring::modular(101));
  Report rep = verify_jacobi(*B, true, 0, 0);
  INFO(rep.detail);
  CHECK(rep.ok);
  CHECK(rep.checks == 52 * 51 * 50 / 6);
}

TEST_CASE("a sign flip in the bracket breaks Jacobi") {
  auto B = basis_for("base", {1, 1, 1}, Ring::modular(101));
  const CubicNormPair& P = B->P;
  auto wrong = [&](const LieElement& u, const LieElement& v) {
    LieElement r = lie_bracket(P, u, v);
    r.x = -r.x;  // flipped L_{-1} x L_{-1} -> kx cell
    return r;
  };
  bool broke = false;
  for (std::size_t i = 0; i < B->dim && !broke; ++i)
    for (std::size_t j = i + 1; j < B->dim && !broke; ++j)
      for (std::size_t k = j + 1; k < B->dim && !broke; ++k) {
        LieElement a = B->element(i), b = B->element(j), c = B->element(k);
        LieElement s = wrong(wrong(a, b), c) + wrong(wrong(b, c), a) +
                       wrong(wrong(c, a), b);
        if (!s.is_zero()) broke = true;
      }
  CHECK(broke);
}

TEST_CASE("Jacobi identity, sampled on the split octonion case") {
  auto B = basis_for("oct-split", {1, 1, 1}, Ring::modular(101));
  Report rep = verify_jacobi(*B, false, 200, 0xfeed);
  INFO(rep.detail);
  CHECK(rep.ok);
}

TEST_CASE("the bracket respects the G2 grading") {
  for (auto [conic, ring] : {std::pair{"base", "q"}, {"dual", "zmod:101"},
                             {"quat-split", "zmod:101"}}) {
    auto B = basis_for(conic, {1, 2, 3}, Ring::parse(ring));
    Report rep = verify_g2_grading(*B);
    INFO(conic, " over ", ring, ": ", rep.detail);
    CHECK(rep.ok);
  }
}

TEST_CASE("inner structure of Z and the projection onto the TKK algebra") {
  Her3 H = Her3::make("quat-split", {1, 1, 2}, Ring::rationals());
  CubicNormPair P = H.pair();
  auto B = build_basis(P);
  std::mt19937_64 rng(3);
  // xi is central in L_0 and dies in TKK
  auto [xj, xjp] = tkk_project(P, z_xi(P));
  CHECK(xj.is_zero());
  CHECK(xjp.is_zero());
  // zeta maps to (id, -id)
  auto [zj, zjp] = tkk_project(P, z_zeta(P));
  CHECK(zj == Mat::identity(P.ring, P.dimJ));
  CHECK(zjp == Mat::identity(P.ring, P.dimJp).scaled(Scalar::from_int(P.ring, -1)));
  for (int t = 0; t < 4; ++t) {
    Vec a = vec_random(P.ring, P.dimJ, rng);
    // d_{a,a#} = N(a)(2 zeta - xi) in Z
    Scalar n = P.normJ(a);
    ZElement lhs = z_d(P, a, P.sharpJ(a));
    ZElement rhs = Scalar::from_int(P.ring, 2) * (n * z_zeta(P)) - n * z_xi(P);
    CHECK(lhs == rhs);
    // and its TKK image is 2N(a)(id, -id)
    auto [dj, djp] = tkk_project(P, lhs);
    Scalar two_n = Scalar::from_int(P.ring, 2) * n;
    CHECK(dj == Mat::identity(P.ring, P.dimJ).scaled(two_n));
    CHECK(djp == Mat::identity(P.ring, P.dimJp).scaled(-two_n));
  }
}

TEST_CASE("the zero-combination criterion matches the operator form") {
  Her3 H = Her3::make("base", {1, 1, 1}, Ring::rationals());
  CubicNormPair P = H.pair();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 6; ++t) {
    Vec a = vec_random(P.ring, P.dimJ, rng);
    Scalar n = P.normJ(a);
    ZFormal f;
    f.dterms.push_back({Scalar::one(P.ring), a, P.sharpJ(a)});
    f.zeta = Scalar::from_int(P.ring, -2) * n;
    f.xi = n;
    CHECK(z_from_formal(P, f).is_zero());
    CHECK(z_formal_zero_conditions(P, f));
    // perturbing the xi coefficient breaks both
    f.xi += Scalar::one(P.ring);
    CHECK_FALSE(z_from_formal(P, f).is_zero());
    CHECK_FALSE(z_formal_zero_conditions(P, f));
  }
  // a random d is (generically) not a combination of xi and zeta alone
  ZFormal g;
  g.dterms.push_back(
      {Scalar::one(P.ring), vec_random(P.ring, P.dimJ, rng), vec_random(P.ring, P.dimJp, rng)});
  g.zeta = g.xi = Scalar::zero(P.ring);
  CHECK_FALSE(z_formal_zero_conditions(P, g));
}

TEST_CASE("coordinates round-trip through the tagged basis") {
  auto B = basis_for("dual", {2, 1, 1}, Ring::modular(101));
  std::mt19937_64 rng(17);
  for (int t = 0; t < 5; ++t) {
    Vec c = vec_random(B->ring, B->dim, rng);
    CHECK(B->coords(B->from_coords(c)) == c);
  }
  for (std::size_t i = 0; i < B->dim; ++i)
    CHECK(B->coords(B->element(i)) == vec_unit(B->ring, B->dim, i));
}

TEST_CASE("functoriality along homotopies") {
  Her3 H = Her3::make("base", {1, 1, 1}, Ring::rationals());
  CubicNormPair P = H.pair();
  auto B = build_basis(P);
  // the identity homotopy gives the identity map
  Homotopy id{Mat::identity(P.ring, P.dimJ), Mat::identity(P.ring, P.dimJp),
              Scalar::one(P.ring)};
  LieEndo fid = functor_map(B, B, id);
  CHECK(fid.mat == Mat::identity(B->ring, B->dim));
  // the isotopy attached to an invertible element gives an isomorphism onto
  // the isotope's algebra
  Vec p = H.one() + H.e(0);  // diag(2,1,1), N(p) = 2
  Isotope iso = isotope(P, p);
  auto Biso = build_basis(iso.structure);
  LieEndo f = functor_map(Biso, B, iso.isotopy);
  CHECK(f.is_bijective());
  Report rep = verify_endo_bracket(f, 0, 0);
  INFO(rep.detail);
  CHECK(rep.ok);
}

TEST_CASE("the four inner reflections and the swap") {
  Her3 H = Her3::make("base", {1, 1, 1}, Ring::rationals());
  CubicNormPair P = H.pair();
  auto B = build_basis(P);

  LieEndo fh = reflection(B, ReflectionKind::Horizontal);
  LieEndo fv = reflection(B, ReflectionKind::Vertical);
  LieEndo fd = reflection(B, ReflectionKind::Diagonal);
  for (auto [name, f, kind] :
       {std::tuple{"horizontal", &fh, ReflectionKind::Horizontal},
        {"vertical", &fv, ReflectionKind::Vertical},
        {"diagonal", &fd, ReflectionKind::Diagonal}}) {
    Report rep = verify_reflection(*f, kind, 150, 0xabcd);
    INFO(std::string(name), ": ", rep.detail);
    CHECK(rep.ok);
  }
  // the horizontal reflection squares to the parity of the first grading
  LieEndo fh2 = fh.compose(fh);
  for (std::size_t i = 0; i < B->dim; ++i) {
    int deg = B->labels[i].i;
    int sign = (deg % 2 == 0) ? 1 : -1;
    CHECK(fh2.mat.col(i) ==
          Scalar::from_int(B->ring, sign) * vec_unit(B->ring, B->dim, i));
  }
  // it exchanges the grading derivations as expected
  CHECK(fh.apply(lie_z(P, z_xi(P))) == lie_z(P, -z_xi(P)));
  CHECK(fd.apply(lie_z(P, z_xi(P))) == lie_z(P, z_zeta(P)));

  // the outer swap lands in L(J', J)
  auto Bsw = build_basis(P.swapped());
  LieEndo fs = reflection_swap(B, Bsw);
  Report rs = verify_reflection(fs, ReflectionKind::SwapDown, 150, 0xabce);
  INFO(rs.detail);
  CHECK(rs.ok);

  // the anti-diagonal reflection from the involution at the unit element
  Isotope iso = isotope(P, H.one());
  LieEndo fa = reflection_anti(B, iso.involution);
  Report ra = verify_reflection(fa, ReflectionKind::AntiDiagonal, 150, 0xabcf);
  INFO(ra.detail);
  CHECK(ra.ok);
}

TEST_CASE("extreme ideals and the center") {
  auto B = basis_for("base", {1, 1, 1}, Ring::modular(101));
  const RingPtr& R = B->ring;
  std::size_t dJ = B->lay.dJ, dJp = B->lay.dJp;

  auto whole = [&](std::size_t n) {
    std::vector<Vec> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(vec_unit(R, n, i));
    return Subspace::span(R, n, v);
  };
  IdealTriple zero{false, Subspace::span(R, dJ, {}), Subspace::span(R, dJp, {})};
  IdealTriple full{true, whole(dJ), whole(dJp)};
  CHECK(verify_ideal_triple(*B, zero).ok);
  CHECK(verify_ideal_triple(*B, full).ok);

  // L(0,0,0)_max = 0: the algebra has trivial radical here
  CHECK(ideal_max(*B, zero).dim() == 0);
  CHECK(ideal_min(*B, zero).dim() == 0);
  // L(k,J,J')_min = L
  CHECK(ideal_min(*B, full).dim() == B->dim);
  CHECK(ideal_max(*B, full).dim() == B->dim);
  // radical membership agrees with ideal_max on the Z block
  CHECK(radical_member(*B, z_zero(B->P), zero));
  CHECK_FALSE(radical_member(*B, z_xi(B->P), zero));
  CHECK(radical_member(*B, z_xi(B->P), full));
  // both extremes are bracket-closed
  CHECK(verify_ideal(*B, ideal_min(*B, full)).ok);
  CHECK(verify_ideal(*B, ideal_max(*B, zero)).ok);

  CHECK(center_rank(*B) == 0);
}
