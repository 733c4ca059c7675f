#pragma once
// Cubic norm pairs (J, J'): two modules with cross maps x: JxJ -> J',
// x': J'xJ' -> J, a pairing T: JxJ' -> k, norms N, N' and adjoints #, #'.
// Includes the axiom verifier (with strictness via polynomial scalar
// extension), the identity catalogue verifier, U/D operators, homotopy
// checking, and isotopes.

#include "alg/vecmat.hpp"

#include <functional>

namespace alg {

enum class Side { J, Jprime };

struct CubicNormPair {
  RingPtr ring;
  std::size_t dimJ = 0, dimJp = 0;

  // Linear structure (always present).
  std::function<Vec(const Vec&, const Vec&)> crossJ;   // J x J -> J'
  std::function<Vec(const Vec&, const Vec&)> crossJp;  // J' x J' -> J
  std::function<Scalar(const Vec&, const Vec&)> traceT;  // T: J x J' -> k

  // Degree-3 structure (absent for linear-only views).
  bool proper = true;
  std::function<Vec(const Vec&)> sharpJ;   // J -> J'
  std::function<Vec(const Vec&)> sharpJp;  // J' -> J
  std::function<Scalar(const Vec&)> normJ, normJp;

  // Rebuild the same pair over a scalar extension of the base ring
  // (used for strictness checks); optional.
  std::function<CubicNormPair(const RingPtr&)> rebase;

  Scalar T(const Vec& a, const Vec& ap) const { return traceT(a, ap); }
  Scalar Tp(const Vec& ap, const Vec& a) const { return traceT(a, ap); }

  // U_a: J' -> J,  U_a(a') = T(a,a') a - a# x' a'
  Vec u_op(const Vec& a, const Vec& ap) const {
    return T(a, ap) * a - crossJp(sharpJ(a), ap);
  }
  // U_{a'}: J -> J'
  Vec u_opP(const Vec& ap, const Vec& a) const {
    return T(a, ap) * ap - crossJ(sharpJp(ap), a);
  }
  // {a, a', b} = T(a,a')b + T(b,a')a - (a x b) x' a'   (in J)
  Vec d_op(const Vec& a, const Vec& ap, const Vec& b) const {
    return T(a, ap) * b + T(b, ap) * a - crossJp(crossJ(a, b), ap);
  }
  // {a', a, b'} (in J')
  Vec d_opP(const Vec& ap, const Vec& a, const Vec& bp) const {
    return T(a, ap) * bp + T(a, bp) * ap - crossJ(crossJp(ap, bp), a);
  }

  // The same pair with the roles of J and J' interchanged.
  CubicNormPair swapped() const {
    CubicNormPair s = *this;
    std::swap(s.dimJ, s.dimJp);
    std::swap(s.crossJ, s.crossJp);
    std::swap(s.sharpJ, s.sharpJp);
    std::swap(s.normJ, s.normJp);
    auto T0 = traceT;
    s.traceT = [T0](const Vec& ap, const Vec& a) { return T0(a, ap); };
    if (rebase) {
      auto rb = rebase;
      s.rebase = [rb](const RingPtr& r2) { return rb(r2).swapped(); };
    }
    return s;
  }

  // The degenerate pair J = J' = 0.
  static CubicNormPair zero_pair(const RingPtr& ring) {
    CubicNormPair P;
    P.ring = ring;
    P.dimJ = P.dimJp = 0;
    auto zvec = [ring](const Vec&, const Vec&) { return Vec{}; };
    auto zvec1 = [](const Vec&) { return Vec{}; };
    auto zscal2 = [ring](const Vec&, const Vec&) { return Scalar::zero(ring); };
    auto zscal1 = [ring](const Vec&) { return Scalar::zero(ring); };
    P.crossJ = P.crossJp = zvec;
    P.sharpJ = P.sharpJp = zvec1;
    P.traceT = zscal2;
    P.normJ = P.normJp = zscal1;
    P.rebase = [](const RingPtr& r2) { return zero_pair(r2); };
    return P;
  }
};

// ---- axiom verification ---------------------------------------------------

namespace detail {

// Run f over a pool of elements: all basis vectors plus `samples` random ones.
inline std::vector<Vec> element_pool(const RingPtr& r, std::size_t dim, int samples,
                                     std::mt19937_64& rng) {
  std::vector<Vec> pool;
  for (std::size_t i = 0; i < dim; ++i) pool.push_back(vec_unit(r, dim, i));
  for (int s = 0; s < samples; ++s) pool.push_back(vec_random(r, dim, rng));
  if (dim == 0) pool.push_back(Vec{});
  return pool;
}

}  // namespace detail

// Checks the defining axioms of a cubic norm pair on basis elements and
// seeded random elements, for both sides. Strict ("for all scalar
// extensions") axioms are additionally checked over k[s1, s2] on generic
// combinations s1 u + s2 v of pool vectors when a rebase hook is available.
inline Report verify_cnp_axioms(const CubicNormPair& P, int samples, std::uint64_t seed);

namespace detail {

inline void cnp_axioms_one_side(const CubicNormPair& P, int samples,
                                std::mt19937_64& rng, Report& rep) {
  const RingPtr& r = P.ring;
  auto chk = [&](bool c, const char* what) {
    ++rep.checks;
    if (!c) rep.fail(std::string("cubic norm pair axiom failed: ") + what);
  };
  auto pool = element_pool(r, P.dimJ, samples, rng);
  auto poolP = element_pool(r, P.dimJp, samples, rng);
  Scalar lam = Scalar::random(r, rng);

  for (const Vec& a : pool) {
    // quadratic #: (lambda a)# = lambda^2 a#
    chk(P.sharpJ(lam * a) == lam * lam * P.sharpJ(a), "(lam a)# = lam^2 a#");
    // cubic N: N(lambda a) = lambda^3 N(a)
    chk(P.normJ(lam * a) == lam * lam * lam * P.normJ(a), "N(lam a) = lam^3 N(a)");
    // Euler: T(a, a#) = 3 N(a)
    chk(P.T(a, P.sharpJ(a)) == Scalar::from_int(r, 3) * P.normJ(a), "T(a,a#) = 3N(a)");
    // adjoint identity
    chk(P.sharpJp(P.sharpJ(a)) == P.normJ(a) * a, "(a#)# = N(a)a");
    // N(a#) = N(a)^2
    chk(P.normJp(P.sharpJ(a)) == P.normJ(a) * P.normJ(a), "N'(a#) = N(a)^2");
    for (const Vec& b : pool) {
      // # linearizes to x
      chk(P.sharpJ(a + b) == P.sharpJ(a) + P.sharpJ(b) + P.crossJ(a, b),
          "(a+b)# = a# + b# + a x b");
      chk(P.crossJ(a, b) == P.crossJ(b, a), "x symmetric");
      // gradient identity
      chk(P.normJ(a + b) ==
              P.normJ(a) + P.Tp(P.sharpJ(a), b) + P.Tp(P.sharpJ(b), a) + P.normJ(b),
          "N(a+b) gradient identity");
      // linearizations of the adjoint identity
      chk(P.crossJp(P.sharpJ(a), P.crossJ(a, b)) ==
              P.normJ(a) * b + P.Tp(P.sharpJ(a), b) * a,
          "a# x (a x b) = N(a)b + T(a#,b)a");
      chk(P.crossJp(P.sharpJ(a), P.sharpJ(b)) + P.sharpJp(P.crossJ(a, b)) ==
              P.Tp(P.sharpJ(a), b) * b + P.T(a, P.sharpJ(b)) * a,
          "a# x b# + (a x b)# = T(a#,b)b + T(a,b#)a");
      // linearization of N(a#) = N(a)^2 of multidegree (3,3)
      chk(P.normJp(P.crossJ(a, b)) ==
              P.Tp(P.sharpJ(a), b) * P.T(a, P.sharpJ(b)) - P.normJ(a) * P.normJ(b),
          "N(a x b) = T(a#,b)T(a,b#) - N(a)N(b)");
    }
    for (const Vec& bp : poolP) {
      // axiom (6)
      chk(P.crossJ(a, P.crossJp(P.sharpJ(a), bp)) ==
              P.normJ(a) * bp + P.T(a, bp) * P.sharpJ(a),
          "a x (a# x b') = N(a)b' + T(a,b')a#");
    }
  }
  // bilinearity spot checks for x and T
  if (!pool.empty() && !poolP.empty()) {
    const Vec &a = pool.back(), &b = pool.front();
    const Vec& ap = poolP.back();
    chk(P.crossJ(lam * a + b, b) == lam * P.crossJ(a, b) + P.crossJ(b, b),
        "x bilinear");
    chk(P.T(lam * a + b, ap) == lam * P.T(a, ap) + P.T(b, ap), "T bilinear");
  }
}

}  // namespace detail

inline Report verify_cnp_axioms(const CubicNormPair& P, int samples, std::uint64_t seed) {
  Report rep;
  if (!P.proper) {
    rep.fail("verify_cnp_axioms requires a proper cubic norm pair");
    return rep;
  }
  std::mt19937_64 rng(seed);
  detail::cnp_axioms_one_side(P, samples, rng, rep);
  detail::cnp_axioms_one_side(P.swapped(), samples, rng, rep);

  // Strictness: rerun the strict axioms over k[s1,s2] on generic elements
  // s1 u + s2 v built from random base vectors.
  if (P.rebase && P.ring->kind != RingKind::Polynomial) {
    RingPtr ext = Ring::polynomial(P.ring, {"s1", "s2"});
    CubicNormPair PE = P.rebase(ext);
    Scalar s1 = Scalar::variable(ext, 0), s2 = Scalar::variable(ext, 1);
    auto lift = [&](const Vec& v) { return vec_map(v, ext); };
    auto chk = [&](bool c, const char* what) {
      ++rep.checks;
      if (!c) rep.fail(std::string("strict axiom failed over k[s1,s2]: ") + what);
    };
    int gen_samples = std::max(2, samples / 8);
    for (int it = 0; it < gen_samples; ++it) {
      Vec a = s1 * lift(vec_random(P.ring, P.dimJ, rng)) +
              s2 * lift(vec_random(P.ring, P.dimJ, rng));
      Vec bp = s1 * lift(vec_random(P.ring, P.dimJp, rng)) +
               s2 * lift(vec_random(P.ring, P.dimJp, rng));
      chk(PE.sharpJp(PE.sharpJ(a)) == PE.normJ(a) * a, "(a#)# = N(a)a");
      chk(PE.normJp(PE.sharpJ(a)) == PE.normJ(a) * PE.normJ(a), "N'(a#) = N(a)^2");
      chk(PE.crossJ(a, PE.crossJp(PE.sharpJ(a), bp)) ==
              PE.normJ(a) * bp + PE.T(a, bp) * PE.sharpJ(a),
          "a x (a# x b') = N(a)b' + T(a,b')a#");
      Vec ap = s1 * lift(vec_random(P.ring, P.dimJp, rng)) +
               s2 * lift(vec_random(P.ring, P.dimJp, rng));
      Vec b = s1 * lift(vec_random(P.ring, P.dimJ, rng)) +
              s2 * lift(vec_random(P.ring, P.dimJ, rng));
      chk(PE.sharpJ(PE.sharpJp(ap)) == PE.normJp(ap) * ap, "swapped (a#)# = N(a)a");
      chk(PE.normJ(PE.sharpJp(ap)) == PE.normJp(ap) * PE.normJp(ap),
          "swapped N(a#) = N(a)^2");
      chk(PE.crossJp(ap, PE.crossJ(PE.sharpJp(ap), b)) ==
              PE.normJp(ap) * b + PE.T(b, ap) * PE.sharpJp(ap),
          "swapped a x (a# x b') axiom");
    }
  }
  return rep;
}

// ---- identity catalogue ---------------------------------------------------

// The catalogue of derived identities: trace/cross symmetries, adjoint
// linearizations, U-operator identities, the triple-D identities, the
// auxiliary U/#-identities, and the Jordan-pair identities. Checked on both
// sides.
inline Report verify_identity_catalogue(const CubicNormPair& P, int samples,
                                        std::uint64_t seed);

namespace detail {

inline void catalogue_one_side(const CubicNormPair& P, int samples,
                               std::mt19937_64& rng, Report& rep) {
  const RingPtr& r = P.ring;
  auto chk = [&](bool c, const char* what) {
    ++rep.checks;
    if (!c) rep.fail(std::string("identity catalogue failed: ") + what);
  };
  Scalar two = Scalar::from_int(r, 2);
  auto pool = element_pool(r, P.dimJ, samples, rng);
  auto poolP = element_pool(r, P.dimJp, samples, rng);
  auto S = [&](const Vec& a) { return P.sharpJ(a); };
  auto Sp = [&](const Vec& ap) { return P.sharpJp(ap); };
  auto X = [&](const Vec& a, const Vec& b) { return P.crossJ(a, b); };
  auto Xp = [&](const Vec& ap, const Vec& bp) { return P.crossJp(ap, bp); };

  // Limit cubic/quartic loops: iterate over a bounded number of (a,b,c) combos.
  std::size_t nA = pool.size(), nP = poolP.size();
  auto pickJ = [&](std::size_t i) -> const Vec& { return pool[i % nA]; };
  auto pickP = [&](std::size_t i) -> const Vec& { return poolP[i % nP]; };

  for (std::size_t ia = 0; ia < nA; ++ia) {
    const Vec& a = pool[ia];
    for (std::size_t ib = 0; ib < nA; ++ib) {
      const Vec& b = pool[ib];
      const Vec& c = pickJ(ia + ib + 1);
      const Vec& d = pickJ(ia * 3 + ib + 2);
      const Vec& bp = pickP(ia + ib);
      const Vec& cp = pickP(ia + 2 * ib + 1);
      const Vec& dp = pickP(2 * ia + ib + 2);

      // (7) trace-cross association
      chk(P.Tp(X(a, b), c) == P.T(a, X(b, c)), "(7) T(a x b, c) = T(a, b x c)");
      // (8)
      chk(Xp(S(a), X(a, b)) == P.normJ(a) * b + P.Tp(S(a), b) * a,
          "(8) a# x (a x b) = N(a)b + T(a#,b)a");
      // (9)
      chk(Xp(X(a, b), X(a, c)) + Xp(S(a), X(b, c)) ==
              P.Tp(S(a), b) * c + P.Tp(S(a), c) * b + P.Tp(X(a, b), c) * a,
          "(9)");
      // (10)
      chk(Xp(S(a), S(b)) + P.sharpJp(X(a, b)) ==
              P.Tp(S(a), b) * b + P.T(a, S(b)) * a,
          "(10)");
      // (16) U_a(a x b) = T(a#,b)a - N(a)b
      chk(P.u_op(a, X(a, b)) == P.Tp(S(a), b) * a - P.normJ(a) * b, "(16)");
      // (17) {a, a#, b} = 2N(a)b
      chk(P.d_op(a, S(a), b) == two * P.normJ(a) * b, "(17)");
      // (20) (U_a b')# = U_{a#}(b'#)
      chk(P.sharpJ(P.u_op(a, bp)) == P.u_opP(S(a), Sp(bp)), "(20)");
      // (21) N(U_a b') = N(a)^2 N(b')
      chk(P.normJ(P.u_op(a, bp)) == P.normJ(a) * P.normJ(a) * P.normJp(bp), "(21)");
      // (25)
      chk(Xp(X(a, b), X(c, d)) + Xp(X(b, c), X(a, d)) + Xp(X(c, a), X(b, d)) ==
              P.Tp(X(a, b), c) * d + P.Tp(X(b, c), d) * a + P.T(a, X(c, d)) * b +
                  P.Tp(X(d, a), b) * c,
          "(25)");
      // (26)
      chk(X(a, Xp(bp, X(a, c))) == P.T(a, bp) * X(a, c) + P.Tp(S(a), c) * bp +
                                       P.T(c, bp) * S(a) - X(Xp(S(a), bp), c),
          "(26) first form");
      chk(X(a, Xp(bp, X(a, c))) ==
              X(P.u_op(a, bp), c) + P.Tp(S(a), c) * bp + P.T(c, bp) * S(a),
          "(26) second form");
      // (27)
      chk(X(a, Xp(bp, X(c, d))) + X(c, Xp(bp, X(d, a))) + X(d, Xp(bp, X(a, c))) ==
              P.T(a, bp) * X(c, d) + P.T(c, bp) * X(d, a) + P.T(d, bp) * X(a, c) +
                  P.Tp(X(a, c), d) * bp,
          "(27)");
      // (29)
      chk(P.normJp(X(a, b)) ==
              P.Tp(S(a), b) * P.T(a, S(b)) - P.normJ(a) * P.normJ(b),
          "(29)");
      // (30) T(U_a b', c') = T(b', U_a c')
      chk(P.T(P.u_op(a, bp), cp) == P.T(P.u_op(a, cp), bp), "(30)");
      // (31) T({a,b',c}, d') = T(c, {b',a,d'})
      chk(P.T(P.d_op(a, bp, c), dp) == P.T(c, P.d_opP(bp, a, dp)), "(31)");

      // triple-D identities (as endomorphism equalities, checked on c / cp)
      chk(P.d_op(a, S(a), c) == two * P.normJ(a) * c, "D_{a,a#} = 2N(a) id");
      chk(P.d_opP(S(a), a, cp) == two * P.normJ(a) * cp, "D_{a#,a} = 2N(a) id");
      chk(P.d_op(a, S(b), c) + P.d_op(b, X(a, b), c) == two * P.T(a, S(b)) * c,
          "D_{a,b#} + D_{b,a x b} = 2T(a,b#) id");
      chk(P.d_opP(S(a), b, cp) + P.d_opP(X(a, b), a, cp) == two * P.Tp(S(a), b) * cp,
          "D_{a#,b} + D_{a x b,a} = 2T(a#,b) id");
      chk(P.d_op(a, X(b, c), d) + P.d_op(b, X(c, a), d) + P.d_op(c, X(a, b), d) ==
              two * P.T(a, X(b, c)) * d,
          "cyclic D_{a,b x c} = 2T(a,b x c) id");
      chk(P.d_opP(X(a, b), c, dp) + P.d_opP(X(b, c), a, dp) + P.d_opP(X(c, a), b, dp) ==
              two * P.Tp(X(a, b), c) * dp,
          "cyclic D_{a x b,c} = 2T(a x b,c) id");

      // auxiliary identities
      chk(P.u_op(a, S(a)) == P.normJ(a) * a, "U_a(a#) = N(a)a");
      chk(P.T(P.u_op(a, cp), S(a)) == P.normJ(a) * P.T(a, cp),
          "T(U_a c', a#) = N(a)T(a,c')");
      chk(X(P.u_op(a, cp), a) == P.T(a, cp) * S(a) - P.normJ(a) * cp,
          "U_a(c') x a = T(a,c')a# - N(a)c'");
      chk(P.Tp(Xp(X(a, b), cp), S(a)) ==
              P.normJ(a) * P.T(b, cp) + P.T(b, S(a)) * P.T(a, cp),
          "T((a x b) x c', a#)");
      chk(P.T(P.sharpJp(X(a, b)), S(a)) ==
              P.normJ(a) * P.T(a, S(b)) + P.T(b, S(a)) * P.T(b, S(a)),
          "T((a x b)#, a#)");
      chk(X(P.sharpJp(X(a, b)), a) == P.T(a, S(b)) * S(a) + P.T(b, S(a)) * X(a, b) -
                                          P.normJ(a) * S(b),
          "(a x b)# x a");

      // Jordan-pair identities
      chk(P.d_op(a, bp, P.u_op(a, cp)) == P.u_op(a, P.d_opP(bp, a, cp)),
          "JP1: {a,b',U_a c'} = U_a {b',a,c'}");
      chk(P.d_op(P.u_op(a, bp), bp, c) == P.d_op(a, P.u_opP(bp, a), c),
          "JP2: {U_a b', b', c} = {a, U_b' a, c}");
      chk(P.u_op(P.u_op(a, bp), cp) == P.u_op(a, P.u_opP(bp, P.u_op(a, cp))),
          "JP3: U_{U_a b'} c' = U_a U_b' U_a c'");
    }
  }
}

}  // namespace detail

inline Report verify_identity_catalogue(const CubicNormPair& P, int samples,
                                        std::uint64_t seed) {
  Report rep;
  if (!P.proper) {
    rep.fail("verify_identity_catalogue requires a proper cubic norm pair");
    return rep;
  }
  std::mt19937_64 rng(seed);
  detail::catalogue_one_side(P, samples, rng, rep);
  detail::catalogue_one_side(P.swapped(), samples, rng, rep);
  return rep;
}

// ---- homotopies and isotopes ----------------------------------------------

// A pair of linear maps (phi: J1 -> J2, phi': J1' -> J2') plus the twist t.
struct Homotopy {
  Mat phi, phiP;
  Scalar t;
};

// Checks the defining equations of a t-homotopy plus the induced
// cross-compatibility, on basis elements and seeded random elements.
inline Report check_homotopy(const CubicNormPair& P1, const CubicNormPair& P2,
                             const Homotopy& h, int samples, std::uint64_t seed) {
  Report rep;
  auto chk = [&](bool c, const char* what) {
    ++rep.checks;
    if (!c) rep.fail(std::string("homotopy equation failed: ") + what);
  };
  Scalar tinv = h.t.invert();
  std::mt19937_64 rng(seed);
  auto pool = detail::element_pool(P1.ring, P1.dimJ, samples, rng);
  auto poolP = detail::element_pool(P1.ring, P1.dimJp, samples, rng);
  for (const Vec& a : pool) {
    Vec fa = h.phi.apply(a);
    chk(P2.normJ(fa) == h.t * P1.normJ(a), "N2(phi a) = t N1(a)");
    chk(P2.sharpJ(fa) == h.t * h.phiP.apply(P1.sharpJ(a)), "(phi a)# = t phi'(a#)");
    for (const Vec& ap : poolP)
      chk(P2.T(fa, h.phiP.apply(ap)) == P1.T(a, ap), "T2(phi a, phi' a') = T1(a,a')");
    for (const Vec& b : pool)
      chk(h.phiP.apply(P1.crossJ(a, b)) == tinv * P2.crossJ(fa, h.phi.apply(b)),
          "phi'(a x b) = t^-1 phi(a) x phi(b)");
  }
  for (const Vec& ap : poolP) {
    Vec fap = h.phiP.apply(ap);
    chk(P2.normJp(fap) == tinv * P1.normJp(ap), "N2'(phi' a') = t^-1 N1'(a')");
    chk(P2.sharpJp(fap) == tinv * h.phi.apply(P1.sharpJp(ap)),
        "(phi' a')# = t^-1 phi((a')#)");
    for (const Vec& bp : poolP)
      chk(h.phi.apply(P1.crossJp(ap, bp)) == h.t * P2.crossJp(fap, h.phiP.apply(bp)),
          "phi(a' x b') = t phi'(a') x phi'(b')");
  }
  return rep;
}

// The p-isotope of (J, J') for N(p) invertible: a cubic norm structure on the
// module J with base point p, together with the N(p)-isotopy
// (id, U_p^{-1}): (J^(p), J^(p)) -> (J, J') and the N(p)-involution
// (N(p) U_p^{-1}, N(p)^{-1} U_p): (J, J') -> (J', J).
struct Isotope {
  CubicNormPair structure;  // (J^(p), J^(p))
  Vec base_point;           // p, with sharp^(p)(p) = p and N^(p)(p) = 1
  Homotopy isotopy;         // (id, U_{p'}) : (J^(p), J^(p)) -> (J, J')
  Homotopy involution;      // (N(p) U_{p'}, N(p)^{-1} U_p) : (J, J') -> (J', J)
};

inline Isotope isotope(const CubicNormPair& P, const Vec& p) {
  Scalar Np = P.normJ(p);
  Scalar NpInv = Np.invert();
  Vec pp = NpInv * P.sharpJ(p);  // p' = N(p)^{-1} p#
  Scalar Npp = P.normJp(pp);     // = N(p)^{-1}
  Scalar NppInv = Npp.invert();

  // matrices of U_{p'}: J -> J' and U_p: J' -> J
  Mat Upp(P.ring, P.dimJp, P.dimJ), Up(P.ring, P.dimJ, P.dimJp);
  for (std::size_t j = 0; j < P.dimJ; ++j)
    Upp.set_col(j, P.u_opP(pp, vec_unit(P.ring, P.dimJ, j)));
  for (std::size_t j = 0; j < P.dimJp; ++j)
    Up.set_col(j, P.u_op(p, vec_unit(P.ring, P.dimJp, j)));

  CubicNormPair S;
  S.ring = P.ring;
  S.dimJ = S.dimJp = P.dimJ;
  S.proper = true;
  auto base = P;
  S.normJ = S.normJp = [base, Npp](const Vec& a) { return Npp * base.normJ(a); };
  S.sharpJ = S.sharpJp = [base, NppInv, Upp](const Vec& a) {
    return NppInv * base.sharpJp(Upp.apply(a));
  };
  S.traceT = [base, Upp](const Vec& a, const Vec& b) {
    return base.T(b, Upp.apply(a));
  };
  S.crossJ = S.crossJp = [base, Npp, Up](const Vec& a, const Vec& b) {
    return Npp * Up.apply(base.crossJ(a, b));
  };
  S.rebase = nullptr;

  Isotope iso;
  iso.structure = std::move(S);
  iso.base_point = p;
  iso.isotopy = Homotopy{Mat::identity(P.ring, P.dimJ), Upp, Np};
  iso.involution = Homotopy{Upp.scaled(Np), Up.scaled(NpInv), Np};
  return iso;
}

}  // namespace alg
