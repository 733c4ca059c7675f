#pragma once
// The Lie algebra L(J,J') of a cubic norm pair: the 5-graded module
// L = kx + L_{-1} + (J' + Z + J) + L_1 + ky with L_{+-1} = k + J + J' + k,
// the bracket table, the G2-grading by 12 roots plus zero, the TKK
// projection, functoriality along homotopies, the grading reflections, and
// the ideal machinery (L_min, L_max, radical membership, center).
//
// Elements of the (0,0)-part Z are kept in canonical operator form: their
// action on kx + L_{-1} + L_1 + ky, on which Z acts faithfully. The formal
// description as sums of d_{a,a'} plus multiples of xi and zeta is handled
// by ZFormal.

#include "alg/cnp.hpp"

#include <array>
#include <map>
#include <memory>
#include <stdexcept>

namespace alg {

// ---- G2 grading combinatorics ---------------------------------------------

struct G2Root {
  int i = 0, j = 0;
  auto operator<=>(const G2Root&) const = default;
  bool is_zero() const { return i == 0 && j == 0; }
};

// Twice the invariant symmetric form on the grading labels; long roots have
// squared length 3, short roots 1.
inline int g2_dot2(G2Root u, G2Root v) {
  return 2 * u.i * v.i + 2 * u.j * v.j - u.i * v.j - u.j * v.i;
}

inline const std::array<G2Root, 12>& g2_roots() {
  static const std::array<G2Root, 12> r = {{{2, 1},
                                            {-2, -1},
                                            {1, 2},
                                            {-1, -2},
                                            {1, -1},
                                            {-1, 1},
                                            {1, 0},
                                            {-1, 0},
                                            {0, 1},
                                            {0, -1},
                                            {1, 1},
                                            {-1, -1}}};
  return r;
}

inline bool g2_is_root(G2Root b) {
  int q = g2_dot2(b, b);
  return q == 2 || q == 6;
}
inline bool g2_is_long(G2Root b) { return g2_dot2(b, b) == 6; }

inline int g2_cartan(G2Root beta, G2Root alpha) {
  return 2 * g2_dot2(beta, alpha) / g2_dot2(alpha, alpha);
}

inline G2Root g2_reflect(G2Root beta, G2Root alpha) {
  int c = g2_cartan(beta, alpha);
  return {beta.i - c * alpha.i, beta.j - c * alpha.j};
}

// Height with respect to the simple system {(1,0), (-2,-1)}.
inline int g2_height(G2Root b) { return b.i - 3 * b.j; }

// ---- layout of the outer module kx + L_{-1} + L_1 + ky --------------------

struct LieLayout {
  std::size_t dJ = 0, dJp = 0;
  std::size_t s() const { return 2 + dJ + dJp; }  // rank of L_{+-1}
  std::size_t m() const { return 2 + 2 * s(); }   // rank of the outer module
  // offsets in the outer coordinate vector [x | (l,b,b',m)_- | (n,c,c',r)_+ | y]
  std::size_t ox() const { return 0; }
  std::size_t om() const { return 1; }
  std::size_t op() const { return 1 + s(); }
  std::size_t oy() const { return 1 + 2 * s(); }
};

inline LieLayout lie_layout(const CubicNormPair& P) { return {P.dimJ, P.dimJp}; }

// ---- Z: the (0,0)-part in operator form -----------------------------------

struct ZElement {
  Mat op;  // action on the outer module

  bool is_zero() const { return op.is_zero(); }
  bool operator==(const ZElement& o) const { return op == o.op; }
  ZElement operator+(const ZElement& o) const { return {op + o.op}; }
  ZElement operator-(const ZElement& o) const { return {op - o.op}; }
  ZElement operator-() const { return {op.scaled(Scalar::from_int(op.ring(), -1))}; }
};

inline ZElement operator*(const Scalar& c, const ZElement& z) { return {z.op.scaled(c)}; }

inline ZElement z_zero(const CubicNormPair& P) {
  LieLayout L = lie_layout(P);
  return {Mat(P.ring, L.m(), L.m())};
}

// xi acts on L_i as multiplication by i.
inline ZElement z_xi(const CubicNormPair& P) {
  LieLayout L = lie_layout(P);
  Mat op(P.ring, L.m(), L.m());
  Scalar one = Scalar::one(P.ring);
  op.at(L.ox(), L.ox()) = Scalar::from_int(P.ring, -2);
  for (std::size_t k = 0; k < L.s(); ++k) {
    op.at(L.om() + k, L.om() + k) = -one;
    op.at(L.op() + k, L.op() + k) = one;
  }
  op.at(L.oy(), L.oy()) = Scalar::from_int(P.ring, 2);
  return {op};
}

// zeta: x -> -x, (l,b,b',m)_- -> (-2l,-b,0,m)_-, (n,c,c',r)_+ -> (-n,0,c',2r)_+,
// y -> y.
inline ZElement z_zeta(const CubicNormPair& P) {
  LieLayout L = lie_layout(P);
  Mat op(P.ring, L.m(), L.m());
  Scalar one = Scalar::one(P.ring);
  op.at(L.ox(), L.ox()) = -one;
  op.at(L.om(), L.om()) = Scalar::from_int(P.ring, -2);
  for (std::size_t k = 0; k < L.dJ; ++k) op.at(L.om() + 1 + k, L.om() + 1 + k) = -one;
  op.at(L.om() + L.s() - 1, L.om() + L.s() - 1) = one;
  op.at(L.op(), L.op()) = -one;
  for (std::size_t k = 0; k < L.dJp; ++k)
    op.at(L.op() + 1 + L.dJ + k, L.op() + 1 + L.dJ + k) = one;
  op.at(L.op() + L.s() - 1, L.op() + L.s() - 1) = Scalar::from_int(P.ring, 2);
  op.at(L.oy(), L.oy()) = one;
  return {op};
}

// d_{a,a'} = [ad_{a'}, ad_a]: kills x and y, and on both L_{+-1} acts by
// (l,b,b',m) -> (-l T(a,a'), D_{a,a'}b - T(a,a')b, -D_{a',a}b' + T(a,a')b',
//                m T(a,a')).
inline ZElement z_d(const CubicNormPair& P, const Vec& a, const Vec& ap) {
  LieLayout L = lie_layout(P);
  Scalar t = P.T(a, ap);
  Mat D(P.ring, L.dJ, L.dJ), Dp(P.ring, L.dJp, L.dJp);
  for (std::size_t k = 0; k < L.dJ; ++k)
    D.set_col(k, P.d_op(a, ap, vec_unit(P.ring, L.dJ, k)));
  for (std::size_t k = 0; k < L.dJp; ++k)
    Dp.set_col(k, P.d_opP(ap, a, vec_unit(P.ring, L.dJp, k)));
  Mat op(P.ring, L.m(), L.m());
  for (std::size_t off : {L.om(), L.op()}) {
    op.at(off, off) = -t;
    for (std::size_t r = 0; r < L.dJ; ++r)
      for (std::size_t k = 0; k < L.dJ; ++k) {
        Scalar v = D.at(r, k);
        if (r == k) v = v - t;
        op.at(off + 1 + r, off + 1 + k) = v;
      }
    for (std::size_t r = 0; r < L.dJp; ++r)
      for (std::size_t k = 0; k < L.dJp; ++k) {
        Scalar v = -Dp.at(r, k);
        if (r == k) v = v + t;
        op.at(off + 1 + L.dJ + r, off + 1 + L.dJ + k) = v;
      }
    op.at(off + L.s() - 1, off + L.s() - 1) = t;
  }
  return {op};
}

// The action of z on J inside L_0: the c-block of the L_1 action shifted by
// the nu-coefficient. For z = sum d + l_zeta zeta + l_xi xi this recovers
// sum D_{a,a'} + l_zeta id.
inline Mat z_action_on_J(const LieLayout& L, const ZElement& z) {
  std::size_t o = L.op();
  Mat A(z.op.ring(), L.dJ, L.dJ);
  Scalar e2 = z.op.at(o, o);
  for (std::size_t r = 0; r < L.dJ; ++r)
    for (std::size_t k = 0; k < L.dJ; ++k) {
      Scalar v = z.op.at(o + 1 + r, o + 1 + k);
      if (r == k) v = v - e2;
      A.at(r, k) = v;
    }
  return A;
}

// The action of z on J' inside L_0: the c'-block shifted by the
// rho-coefficient; recovers -sum D_{a',a} - l_zeta id.
inline Mat z_action_on_Jp(const LieLayout& L, const ZElement& z) {
  std::size_t o = L.op();
  Mat A(z.op.ring(), L.dJp, L.dJp);
  Scalar e3 = z.op.at(o + L.s() - 1, o + L.s() - 1);
  for (std::size_t r = 0; r < L.dJp; ++r)
    for (std::size_t k = 0; k < L.dJp; ++k) {
      Scalar v = z.op.at(o + 1 + L.dJ + r, o + 1 + L.dJ + k);
      if (r == k) v = v - e3;
      A.at(r, k) = v;
    }
  return A;
}

// The central-extension epimorphism L_0 -> TKK(J,J'):
// sum l d_{a,a'} + l_zeta zeta + l_xi xi -> sum l delta_{a,a'} + l_zeta gamma
// with delta_{a,a'} = (D_{a,a'}, -D_{a',a}) and gamma = (id_J, -id_{J'}).
inline std::pair<Mat, Mat> tkk_project(const CubicNormPair& P, const ZElement& z) {
  LieLayout L = lie_layout(P);
  return {z_action_on_J(L, z), z_action_on_Jp(L, z)};
}

// Formal combinations sum l_i d_{a_i, a_i'} + l_zeta zeta + l_xi xi.
struct ZFormal {
  std::vector<std::tuple<Scalar, Vec, Vec>> dterms;
  Scalar zeta, xi;
};

inline ZElement z_from_formal(const CubicNormPair& P, const ZFormal& f) {
  ZElement z = z_zero(P);
  for (const auto& [c, a, ap] : f.dterms) z = z + c * z_d(P, a, ap);
  if (!f.zeta.is_zero()) z = z + f.zeta * z_zeta(P);
  if (!f.xi.is_zero()) z = z + f.xi * z_xi(P);
  return z;
}

// The linear-combination criterion: the formal sum is the zero operator iff
// l_zeta + 2 l_xi = 0, sum l T(a,a') = 3 l_xi, sum l D_{a,a'} = 2 l_xi id_J
// and sum l D_{a',a} = 2 l_xi id_{J'}.
inline bool z_formal_zero_conditions(const CubicNormPair& P, const ZFormal& f) {
  const RingPtr& r = P.ring;
  Scalar two = Scalar::from_int(r, 2), three = Scalar::from_int(r, 3);
  if (!(f.zeta + two * f.xi).is_zero()) return false;
  Scalar tsum = Scalar::zero(r);
  for (const auto& [c, a, ap] : f.dterms) tsum += c * P.T(a, ap);
  if (tsum != three * f.xi) return false;
  Scalar lam2 = two * f.xi;
  for (std::size_t k = 0; k < P.dimJ; ++k) {
    Vec e = vec_unit(r, P.dimJ, k);
    Vec img = vec_zero(r, P.dimJ);
    for (const auto& [c, a, ap] : f.dterms) img = img + c * P.d_op(a, ap, e);
    if (img != lam2 * e) return false;
  }
  for (std::size_t k = 0; k < P.dimJp; ++k) {
    Vec e = vec_unit(r, P.dimJp, k);
    Vec img = vec_zero(r, P.dimJp);
    for (const auto& [c, a, ap] : f.dterms) img = img + c * P.d_opP(ap, a, e);
    if (img != lam2 * e) return false;
  }
  return true;
}

// ---- elements of L --------------------------------------------------------

struct L1Tuple {
  Scalar lam;
  Vec b, bp;
  Scalar mu;

  bool is_zero() const {
    return lam.is_zero() && mu.is_zero() && vec_is_zero(b) && vec_is_zero(bp);
  }
  bool operator==(const L1Tuple& o) const {
    return lam == o.lam && b == o.b && bp == o.bp && mu == o.mu;
  }
  L1Tuple operator+(const L1Tuple& o) const {
    return {lam + o.lam, b + o.b, bp + o.bp, mu + o.mu};
  }
  L1Tuple operator-(const L1Tuple& o) const {
    return {lam - o.lam, b - o.b, bp - o.bp, mu - o.mu};
  }
  L1Tuple operator-() const { return {-lam, -b, -bp, -mu}; }
};

inline L1Tuple operator*(const Scalar& c, const L1Tuple& t) {
  return {c * t.lam, c * t.b, c * t.bp, c * t.mu};
}

inline L1Tuple tuple_zero(const CubicNormPair& P) {
  return {Scalar::zero(P.ring), vec_zero(P.ring, P.dimJ), vec_zero(P.ring, P.dimJp),
          Scalar::zero(P.ring)};
}

struct LieElement {
  Scalar x;        // L_{-2} = kx
  L1Tuple minus;   // L_{-1}
  Vec jp;          // J' in L_0
  ZElement z;      // L_{0,0}
  Vec j;           // J in L_0
  L1Tuple plus;    // L_1
  Scalar y;        // L_2 = ky

  bool is_zero() const {
    return x.is_zero() && y.is_zero() && minus.is_zero() && plus.is_zero() &&
           vec_is_zero(j) && vec_is_zero(jp) && z.is_zero();
  }
  bool operator==(const LieElement& o) const {
    return x == o.x && minus == o.minus && jp == o.jp && z == o.z && j == o.j &&
           plus == o.plus && y == o.y;
  }
  LieElement operator+(const LieElement& o) const {
    return {x + o.x, minus + o.minus, jp + o.jp, z + o.z,
            j + o.j, plus + o.plus, y + o.y};
  }
  LieElement operator-(const LieElement& o) const {
    return {x - o.x, minus - o.minus, jp - o.jp, z - o.z,
            j - o.j, plus - o.plus, y - o.y};
  }
  LieElement operator-() const { return {-x, -minus, -jp, -z, -j, -plus, -y}; }
};

inline LieElement operator*(const Scalar& c, const LieElement& u) {
  return {c * u.x, c * u.minus, c * u.jp, c * u.z, c * u.j, c * u.plus, c * u.y};
}

inline LieElement lie_zero(const CubicNormPair& P) {
  return {Scalar::zero(P.ring), tuple_zero(P), vec_zero(P.ring, P.dimJp),
          z_zero(P),            vec_zero(P.ring, P.dimJ), tuple_zero(P),
          Scalar::zero(P.ring)};
}

inline LieElement lie_x(const CubicNormPair& P, const Scalar& c) {
  LieElement u = lie_zero(P);
  u.x = c;
  return u;
}
inline LieElement lie_y(const CubicNormPair& P, const Scalar& c) {
  LieElement u = lie_zero(P);
  u.y = c;
  return u;
}
inline LieElement lie_minus(const CubicNormPair& P, const L1Tuple& t) {
  LieElement u = lie_zero(P);
  u.minus = t;
  return u;
}
inline LieElement lie_plus(const CubicNormPair& P, const L1Tuple& t) {
  LieElement u = lie_zero(P);
  u.plus = t;
  return u;
}
inline LieElement lie_j(const CubicNormPair& P, const Vec& a) {
  LieElement u = lie_zero(P);
  u.j = a;
  return u;
}
inline LieElement lie_jp(const CubicNormPair& P, const Vec& ap) {
  LieElement u = lie_zero(P);
  u.jp = ap;
  return u;
}
inline LieElement lie_z(const CubicNormPair& P, const ZElement& z) {
  LieElement u = lie_zero(P);
  u.z = z;
  return u;
}

// Outer coordinates [x | minus | plus | y] of an element (ignores L_0).
inline Vec lie_outer(const LieLayout& L, const LieElement& u) {
  Vec v = vec_zero(u.x.ring(), L.m());
  v[L.ox()] = u.x;
  v[L.om()] = u.minus.lam;
  for (std::size_t k = 0; k < L.dJ; ++k) v[L.om() + 1 + k] = u.minus.b[k];
  for (std::size_t k = 0; k < L.dJp; ++k) v[L.om() + 1 + L.dJ + k] = u.minus.bp[k];
  v[L.om() + L.s() - 1] = u.minus.mu;
  v[L.op()] = u.plus.lam;
  for (std::size_t k = 0; k < L.dJ; ++k) v[L.op() + 1 + k] = u.plus.b[k];
  for (std::size_t k = 0; k < L.dJp; ++k) v[L.op() + 1 + L.dJ + k] = u.plus.bp[k];
  v[L.op() + L.s() - 1] = u.plus.mu;
  v[L.oy()] = u.y;
  return v;
}

inline void lie_add_outer(const LieLayout& L, const Vec& v, int sign, LieElement& into) {
  auto acc = [&](Scalar& dst, std::size_t i) {
    if (sign > 0)
      dst += v[i];
    else
      dst = dst - v[i];
  };
  acc(into.x, L.ox());
  acc(into.minus.lam, L.om());
  for (std::size_t k = 0; k < L.dJ; ++k) acc(into.minus.b[k], L.om() + 1 + k);
  for (std::size_t k = 0; k < L.dJp; ++k) acc(into.minus.bp[k], L.om() + 1 + L.dJ + k);
  acc(into.minus.mu, L.om() + L.s() - 1);
  acc(into.plus.lam, L.op());
  for (std::size_t k = 0; k < L.dJ; ++k) acc(into.plus.b[k], L.op() + 1 + k);
  for (std::size_t k = 0; k < L.dJp; ++k) acc(into.plus.bp[k], L.op() + 1 + L.dJ + k);
  acc(into.plus.mu, L.op() + L.s() - 1);
  acc(into.y, L.oy());
}

// ---- the bracket ----------------------------------------------------------

namespace detail {

// [(l,b,b',m)_e, (n,c,c',r)_e] = (T(b,c') - T(c,b') + mn - lr) x resp. y.
inline Scalar lie_pair_form(const CubicNormPair& P, const L1Tuple& u, const L1Tuple& v) {
  return P.T(u.b, v.bp) - P.T(v.b, u.bp) + u.mu * v.lam - u.lam * v.mu;
}

// [a, (l,b,b',m)_e] = (0, la, a x b, T(a,b'))_e for a in J.
inline L1Tuple lie_j_act(const CubicNormPair& P, const Vec& a, const L1Tuple& t) {
  return {Scalar::zero(P.ring), t.lam * a, P.crossJ(a, t.b), P.T(a, t.bp)};
}

// [a', (l,b,b',m)_e] = -(T(b,a'), a' x b', ma', 0)_e for a' in J'.
inline L1Tuple lie_jp_act(const CubicNormPair& P, const Vec& ap, const L1Tuple& t) {
  return {-P.T(t.b, ap), -P.crossJp(ap, t.bp), -(t.mu * ap), Scalar::zero(P.ring)};
}

// sign * [(l,b,b',m)_-, (n,c,c',r)_+], accumulated into r0 (lands in L_0).
inline void lie_mp_accumulate(const CubicNormPair& P, const L1Tuple& mn,
                              const L1Tuple& pl, int sign, LieElement& r0) {
  Vec jp_part = P.crossJ(mn.b, pl.b) - mn.lam * pl.bp - pl.lam * mn.bp;
  Vec j_part = P.crossJp(mn.bp, pl.bp) - pl.mu * mn.b - mn.mu * pl.b;
  Scalar tbc = P.T(mn.b, pl.bp), tcb = P.T(pl.b, mn.bp);
  Scalar xi_c = tcb - mn.mu * pl.lam;
  Scalar zeta_c = mn.lam * pl.mu - tbc - xi_c;
  ZElement z = z_zero(P);
  if (!vec_is_zero(mn.b) && !vec_is_zero(pl.bp)) z = z + z_d(P, mn.b, pl.bp);
  if (!vec_is_zero(pl.b) && !vec_is_zero(mn.bp)) z = z + z_d(P, pl.b, mn.bp);
  if (!zeta_c.is_zero()) z = z + zeta_c * z_zeta(P);
  if (!xi_c.is_zero()) z = z + xi_c * z_xi(P);
  if (sign > 0) {
    r0.jp = r0.jp + jp_part;
    r0.j = r0.j + j_part;
    r0.z = r0.z + z;
  } else {
    r0.jp = r0.jp - jp_part;
    r0.j = r0.j - j_part;
    r0.z = r0.z - z;
  }
}

}  // namespace detail

inline LieElement lie_bracket(const CubicNormPair& P, const LieElement& u,
                              const LieElement& v) {
  LieLayout L = lie_layout(P);
  LieElement r = lie_zero(P);

  // [x, y] = xi
  Scalar xy = u.x * v.y - u.y * v.x;
  if (!xy.is_zero()) r.z = r.z + xy * z_xi(P);
  // [x, (n,c,c',r)_+] = -(n,c,c',r)_-
  if (!u.x.is_zero() && !v.plus.is_zero()) r.minus = r.minus - u.x * v.plus;
  if (!v.x.is_zero() && !u.plus.is_zero()) r.minus = r.minus + v.x * u.plus;
  // [y, (l,b,b',m)_-] = (l,b,b',m)_+
  if (!u.y.is_zero() && !v.minus.is_zero()) r.plus = r.plus + u.y * v.minus;
  if (!v.y.is_zero() && !u.minus.is_zero()) r.plus = r.plus - v.y * u.minus;
  // L_{-1} x L_{-1} -> kx and L_1 x L_1 -> ky
  if (!u.minus.is_zero() && !v.minus.is_zero())
    r.x += detail::lie_pair_form(P, u.minus, v.minus);
  if (!u.plus.is_zero() && !v.plus.is_zero())
    r.y += detail::lie_pair_form(P, u.plus, v.plus);
  // L_{-1} x L_1 -> L_0
  if (!u.minus.is_zero() && !v.plus.is_zero())
    detail::lie_mp_accumulate(P, u.minus, v.plus, +1, r);
  if (!u.plus.is_zero() && !v.minus.is_zero())
    detail::lie_mp_accumulate(P, v.minus, u.plus, -1, r);
  // J acting on L_{+-1}
  if (!vec_is_zero(u.j)) {
    if (!v.minus.is_zero()) r.minus = r.minus + detail::lie_j_act(P, u.j, v.minus);
    if (!v.plus.is_zero()) r.plus = r.plus + detail::lie_j_act(P, u.j, v.plus);
  }
  if (!vec_is_zero(v.j)) {
    if (!u.minus.is_zero()) r.minus = r.minus - detail::lie_j_act(P, v.j, u.minus);
    if (!u.plus.is_zero()) r.plus = r.plus - detail::lie_j_act(P, v.j, u.plus);
  }
  // J' acting on L_{+-1}
  if (!vec_is_zero(u.jp)) {
    if (!v.minus.is_zero()) r.minus = r.minus + detail::lie_jp_act(P, u.jp, v.minus);
    if (!v.plus.is_zero()) r.plus = r.plus + detail::lie_jp_act(P, u.jp, v.plus);
  }
  if (!vec_is_zero(v.jp)) {
    if (!u.minus.is_zero()) r.minus = r.minus - detail::lie_jp_act(P, v.jp, u.minus);
    if (!u.plus.is_zero()) r.plus = r.plus - detail::lie_jp_act(P, v.jp, u.plus);
  }
  // [a, a'] = -d_{a,a'} for a in J, a' in J'
  if (!vec_is_zero(u.j) && !vec_is_zero(v.jp)) r.z = r.z - z_d(P, u.j, v.jp);
  if (!vec_is_zero(u.jp) && !vec_is_zero(v.j)) r.z = r.z + z_d(P, v.j, u.jp);
  // Z acting
  if (!u.z.is_zero()) {
    Vec vo = lie_outer(L, v);
    if (!vec_is_zero(vo)) lie_add_outer(L, u.z.op.apply(vo), +1, r);
    if (!vec_is_zero(v.j)) r.j = r.j + z_action_on_J(L, u.z).apply(v.j);
    if (!vec_is_zero(v.jp)) r.jp = r.jp + z_action_on_Jp(L, u.z).apply(v.jp);
  }
  if (!v.z.is_zero()) {
    Vec uo = lie_outer(L, u);
    if (!vec_is_zero(uo)) lie_add_outer(L, v.z.op.apply(uo), -1, r);
    if (!vec_is_zero(u.j)) r.j = r.j - z_action_on_J(L, v.z).apply(u.j);
    if (!vec_is_zero(u.jp)) r.jp = r.jp - z_action_on_Jp(L, v.z).apply(u.jp);
  }
  if (!u.z.is_zero() && !v.z.is_zero())
    r.z = r.z + ZElement{u.z.op * v.z.op - v.z.op * u.z.op};
  return r;
}

// The component of u sitting at a given G2 label ((0,0) = Z).
inline LieElement lie_project(const CubicNormPair& P, const LieElement& u, G2Root g) {
  LieElement r = lie_zero(P);
  if (g == G2Root{-2, -1}) r.x = u.x;
  else if (g == G2Root{2, 1}) r.y = u.y;
  else if (g == G2Root{-1, -2}) r.minus.lam = u.minus.lam;
  else if (g == G2Root{-1, -1}) r.minus.b = u.minus.b;
  else if (g == G2Root{-1, 0}) r.minus.bp = u.minus.bp;
  else if (g == G2Root{-1, 1}) r.minus.mu = u.minus.mu;
  else if (g == G2Root{1, -1}) r.plus.lam = u.plus.lam;
  else if (g == G2Root{1, 0}) r.plus.b = u.plus.b;
  else if (g == G2Root{1, 1}) r.plus.bp = u.plus.bp;
  else if (g == G2Root{1, 2}) r.plus.mu = u.plus.mu;
  else if (g == G2Root{0, 1}) r.j = u.j;
  else if (g == G2Root{0, -1}) r.jp = u.jp;
  else if (g == G2Root{0, 0}) r.z = u.z;
  return r;
}

inline bool lie_component_zero(const LieElement& u, G2Root g) {
  if (g == G2Root{-2, -1}) return u.x.is_zero();
  if (g == G2Root{2, 1}) return u.y.is_zero();
  if (g == G2Root{-1, -2}) return u.minus.lam.is_zero();
  if (g == G2Root{-1, -1}) return vec_is_zero(u.minus.b);
  if (g == G2Root{-1, 0}) return vec_is_zero(u.minus.bp);
  if (g == G2Root{-1, 1}) return u.minus.mu.is_zero();
  if (g == G2Root{1, -1}) return u.plus.lam.is_zero();
  if (g == G2Root{1, 0}) return vec_is_zero(u.plus.b);
  if (g == G2Root{1, 1}) return vec_is_zero(u.plus.bp);
  if (g == G2Root{1, 2}) return u.plus.mu.is_zero();
  if (g == G2Root{0, 1}) return vec_is_zero(u.j);
  if (g == G2Root{0, -1}) return vec_is_zero(u.jp);
  return u.z.is_zero();
}

// ---- basis with G2 labels -------------------------------------------------

namespace detail {

// Incremental row space with coefficient tracking: each reduced row is
// remembered as a combination of the accepted generator rows.
struct TrackedSpan {
  RingPtr ring;
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
  std::vector<Vec> coefs;  // rows[r] = sum coefs[r][t] * gen_t
  std::size_t ngens = 0;

  explicit TrackedSpan(const RingPtr& r) : ring(r) {}

  // v - (combination of rows); also returns the coefficients of that
  // combination with respect to the accepted generators.
  std::pair<Vec, Vec> reduce(Vec v) const {
    Vec c = vec_zero(ring, ngens);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Scalar& f = v[pivots[r]];
      if (f.is_zero()) continue;
      Scalar fc = f;
      v = v - fc * rows[r];
      for (std::size_t t = 0; t < coefs[r].size(); ++t) c[t] += fc * coefs[r][t];
    }
    return {std::move(v), std::move(c)};
  }

  // Insert v as generator number ngens; returns false if dependent.
  bool insert(const Vec& v) {
    auto [rem, comb] = reduce(v);
    if (vec_is_zero(rem)) return false;
    std::size_t p = 0;
    while (rem[p].is_zero()) ++p;
    Scalar inv = rem[p].invert();
    Vec row = inv * rem;
    Vec coef = vec_zero(ring, ngens + 1);
    for (std::size_t t = 0; t < comb.size(); ++t) coef[t] = -inv * comb[t];
    coef[ngens] = inv;
    // keep full reduced form: eliminate the new pivot from older rows
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Scalar f = rows[r][p];
      if (f.is_zero()) continue;
      rows[r] = rows[r] - f * row;
      if (coefs[r].size() < coef.size()) coefs[r].resize(coef.size(), Scalar::zero(ring));
      for (std::size_t t = 0; t < coef.size(); ++t) coefs[r][t] = coefs[r][t] - f * coef[t];
    }
    rows.push_back(std::move(row));
    pivots.push_back(p);
    coefs.push_back(std::move(coef));
    ++ngens;
    return true;
  }
};

}  // namespace detail

struct ZTag {
  enum Kind { D, Xi, Zeta };
  Kind kind = Xi;
  std::size_t i = 0, jp = 0;  // D: d_{e_i, e'_jp}
};

struct LieBasis {
  CubicNormPair P;   // over the coordinate field
  RingPtr ring;      // coordinate field
  RingPtr base_ring; // the ring the pair was originally given over
  LieLayout lay;
  std::vector<G2Root> order;  // the 12 roots in canonical order
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // [begin,end) per root
  std::size_t zbegin = 0;
  std::vector<ZElement> zb;
  std::vector<ZTag> ztags;
  std::vector<G2Root> labels;  // per basis vector; (0,0) on the Z block
  std::size_t dim = 0;
  std::shared_ptr<detail::TrackedSpan> zspan;

  std::size_t root_rank(G2Root g) const {
    if (g2_is_long(g)) return 1;
    bool jtype = g == G2Root{0, 1} || g == G2Root{-1, -1} || g == G2Root{1, 0};
    return jtype ? lay.dJ : lay.dJp;
  }

  // Flattened faithful coordinates of a Z operator: the diagonal blocks of
  // its L_1 action, [nu | c-block | c'-block | rho].
  Vec z_flatten(const ZElement& z) const {
    std::size_t o = lay.op();
    Vec v;
    v.reserve(2 + lay.dJ * lay.dJ + lay.dJp * lay.dJp);
    v.push_back(z.op.at(o, o));
    for (std::size_t r = 0; r < lay.dJ; ++r)
      for (std::size_t k = 0; k < lay.dJ; ++k) v.push_back(z.op.at(o + 1 + r, o + 1 + k));
    for (std::size_t r = 0; r < lay.dJp; ++r)
      for (std::size_t k = 0; k < lay.dJp; ++k)
        v.push_back(z.op.at(o + 1 + lay.dJ + r, o + 1 + lay.dJ + k));
    v.push_back(z.op.at(o + lay.s() - 1, o + lay.s() - 1));
    return v;
  }

  std::optional<Vec> z_coords(const ZElement& z) const {
    auto [rem, c] = zspan->reduce(z_flatten(z));
    if (!vec_is_zero(rem)) return std::nullopt;
    if (c.size() < zb.size()) c.resize(zb.size(), Scalar::zero(ring));
    return c;
  }

  LieElement element(std::size_t idx) const {
    LieElement u = lie_zero(P);
    if (idx >= zbegin) {
      u.z = zb[idx - zbegin];
      return u;
    }
    for (std::size_t r = 0; r < order.size(); ++r) {
      auto [b, e] = ranges[r];
      if (idx < b || idx >= e) continue;
      std::size_t k = idx - b;
      G2Root g = order[r];
      Scalar one = Scalar::one(ring);
      if (g == G2Root{-2, -1}) u.x = one;
      else if (g == G2Root{2, 1}) u.y = one;
      else if (g == G2Root{-1, -2}) u.minus.lam = one;
      else if (g == G2Root{-1, -1}) u.minus.b[k] = one;
      else if (g == G2Root{-1, 0}) u.minus.bp[k] = one;
      else if (g == G2Root{-1, 1}) u.minus.mu = one;
      else if (g == G2Root{1, -1}) u.plus.lam = one;
      else if (g == G2Root{1, 0}) u.plus.b[k] = one;
      else if (g == G2Root{1, 1}) u.plus.bp[k] = one;
      else if (g == G2Root{1, 2}) u.plus.mu = one;
      else if (g == G2Root{0, 1}) u.j[k] = one;
      else if (g == G2Root{0, -1}) u.jp[k] = one;
      break;
    }
    return u;
  }

  Vec coords(const LieElement& u) const {
    Vec c = vec_zero(ring, dim);
    for (std::size_t r = 0; r < order.size(); ++r) {
      G2Root g = order[r];
      std::size_t b = ranges[r].first;
      if (g == G2Root{-2, -1}) c[b] = u.x;
      else if (g == G2Root{2, 1}) c[b] = u.y;
      else if (g == G2Root{-1, -2}) c[b] = u.minus.lam;
      else if (g == G2Root{-1, -1})
        for (std::size_t k = 0; k < lay.dJ; ++k) c[b + k] = u.minus.b[k];
      else if (g == G2Root{-1, 0})
        for (std::size_t k = 0; k < lay.dJp; ++k) c[b + k] = u.minus.bp[k];
      else if (g == G2Root{-1, 1}) c[b] = u.minus.mu;
      else if (g == G2Root{1, -1}) c[b] = u.plus.lam;
      else if (g == G2Root{1, 0})
        for (std::size_t k = 0; k < lay.dJ; ++k) c[b + k] = u.plus.b[k];
      else if (g == G2Root{1, 1})
        for (std::size_t k = 0; k < lay.dJp; ++k) c[b + k] = u.plus.bp[k];
      else if (g == G2Root{1, 2}) c[b] = u.plus.mu;
      else if (g == G2Root{0, 1})
        for (std::size_t k = 0; k < lay.dJ; ++k) c[b + k] = u.j[k];
      else if (g == G2Root{0, -1})
        for (std::size_t k = 0; k < lay.dJp; ++k) c[b + k] = u.jp[k];
    }
    if (!u.z.is_zero()) {
      auto zc = z_coords(u.z);
      if (!zc) throw std::runtime_error("LieBasis::coords: (0,0)-part outside Z");
      for (std::size_t t = 0; t < zb.size(); ++t) c[zbegin + t] = (*zc)[t];
    }
    return c;
  }

  LieElement from_coords(const Vec& c) const {
    LieElement u = lie_zero(P);
    for (std::size_t r = 0; r < order.size(); ++r) {
      G2Root g = order[r];
      std::size_t b = ranges[r].first;
      if (g == G2Root{-2, -1}) u.x = c[b];
      else if (g == G2Root{2, 1}) u.y = c[b];
      else if (g == G2Root{-1, -2}) u.minus.lam = c[b];
      else if (g == G2Root{-1, -1})
        for (std::size_t k = 0; k < lay.dJ; ++k) u.minus.b[k] = c[b + k];
      else if (g == G2Root{-1, 0})
        for (std::size_t k = 0; k < lay.dJp; ++k) u.minus.bp[k] = c[b + k];
      else if (g == G2Root{-1, 1}) u.minus.mu = c[b];
      else if (g == G2Root{1, -1}) u.plus.lam = c[b];
      else if (g == G2Root{1, 0})
        for (std::size_t k = 0; k < lay.dJ; ++k) u.plus.b[k] = c[b + k];
      else if (g == G2Root{1, 1})
        for (std::size_t k = 0; k < lay.dJp; ++k) u.plus.bp[k] = c[b + k];
      else if (g == G2Root{1, 2}) u.plus.mu = c[b];
      else if (g == G2Root{0, 1})
        for (std::size_t k = 0; k < lay.dJ; ++k) u.j[k] = c[b + k];
      else if (g == G2Root{0, -1})
        for (std::size_t k = 0; k < lay.dJp; ++k) u.jp[k] = c[b + k];
    }
    for (std::size_t t = 0; t < zb.size(); ++t)
      if (!c[zbegin + t].is_zero()) u.z = u.z + c[zbegin + t] * zb[t];
    return u;
  }
};

// Ordered basis of L: long roots by height (in the positive system with
// simple roots (1,0) and (-2,-1)), then short blocks by height, then a basis
// of Z computed by exact rank over the d_{e_i, e'_j} images plus xi, zeta.
inline std::shared_ptr<const LieBasis> build_basis(const CubicNormPair& Pin) {
  RingPtr fr = lin_field_ring(Pin.ring);
  CubicNormPair P = Pin;
  if (!Pin.ring->same(*fr)) {
    if (!Pin.rebase)
      throw std::domain_error("build_basis over the integers needs a rebase hook");
    P = Pin.rebase(fr);
  }
  auto B = std::make_shared<LieBasis>();
  B->P = P;
  B->ring = fr;
  B->base_ring = Pin.ring;
  B->lay = lie_layout(P);
  const LieLayout& lay = B->lay;

  std::vector<G2Root> longs, shorts;
  for (G2Root g : g2_roots()) (g2_is_long(g) ? longs : shorts).push_back(g);
  auto byheight = [](G2Root a, G2Root b) {
    if (g2_height(a) != g2_height(b)) return g2_height(a) < g2_height(b);
    return a < b;
  };
  std::sort(longs.begin(), longs.end(), byheight);
  std::sort(shorts.begin(), shorts.end(), byheight);
  B->order = longs;
  B->order.insert(B->order.end(), shorts.begin(), shorts.end());

  std::size_t pos = 0;
  for (G2Root g : B->order) {
    std::size_t rk = B->root_rank(g);
    B->ranges.push_back({pos, pos + rk});
    for (std::size_t k = 0; k < rk; ++k) B->labels.push_back(g);
    pos += rk;
  }
  B->zbegin = pos;

  // Z basis: insert xi, zeta, then the d_{e_i, e'_j}; generator rows are
  // assembled from precomputed structure tables.
  std::size_t dJ = lay.dJ, dJp = lay.dJp;
  std::size_t flat = 2 + dJ * dJ + dJp * dJp;
  B->zspan = std::make_shared<detail::TrackedSpan>(fr);

  auto consider = [&](const Vec& row, ZTag tag, const ZElement* known) {
    if (!B->zspan->insert(row)) return;
    B->zb.push_back(known ? *known : (tag.kind == ZTag::D
                                          ? z_d(P, vec_unit(fr, dJ, tag.i),
                                                vec_unit(fr, dJp, tag.jp))
                                          : z_zero(P)));
    B->ztags.push_back(tag);
    B->labels.push_back({0, 0});
  };

  {
    ZElement xi = z_xi(P), zeta = z_zeta(P);
    Vec vxi = B->z_flatten(xi), vzeta = B->z_flatten(zeta);
    consider(vxi, {ZTag::Xi, 0, 0}, &xi);
    consider(vzeta, {ZTag::Zeta, 0, 0}, &zeta);
  }

  if (dJ > 0 && dJp > 0) {
    std::vector<std::vector<Scalar>> Tm(dJ, std::vector<Scalar>(dJp, Scalar::zero(fr)));
    std::vector<std::vector<Vec>> C1(dJ, std::vector<Vec>(dJ));
    std::vector<std::vector<Vec>> C2(dJp, std::vector<Vec>(dJp));
    for (std::size_t i = 0; i < dJ; ++i)
      for (std::size_t j = 0; j < dJp; ++j)
        Tm[i][j] = P.T(vec_unit(fr, dJ, i), vec_unit(fr, dJp, j));
    for (std::size_t i = 0; i < dJ; ++i)
      for (std::size_t k = 0; k < dJ; ++k)
        C1[i][k] = P.crossJ(vec_unit(fr, dJ, i), vec_unit(fr, dJ, k));
    for (std::size_t p = 0; p < dJp; ++p)
      for (std::size_t q = 0; q < dJp; ++q)
        C2[p][q] = P.crossJp(vec_unit(fr, dJp, p), vec_unit(fr, dJp, q));

    for (std::size_t i = 0; i < dJ; ++i)
      for (std::size_t j = 0; j < dJp; ++j) {
        Vec row = vec_zero(fr, flat);
        row[0] = -Tm[i][j];
        row[flat - 1] = Tm[i][j];
        // c-block entry (r,k) of the L_1 action of d_{e_i, e'_j}
        for (std::size_t k = 0; k < dJ; ++k) {
          std::size_t base = 1;
          row[base + i * dJ + k] += Tm[k][j];
          const Vec& cik = C1[i][k];
          for (std::size_t p = 0; p < dJp; ++p) {
            if (cik[p].is_zero()) continue;
            const Vec& w = C2[p][j];
            for (std::size_t r = 0; r < dJ; ++r)
              if (!w[r].is_zero()) row[base + r * dJ + k] = row[base + r * dJ + k] - cik[p] * w[r];
          }
        }
        // c'-block entry (r,k)
        for (std::size_t k = 0; k < dJp; ++k) {
          std::size_t base = 1 + dJ * dJ;
          row[base + j * dJp + k] = row[base + j * dJp + k] - Tm[i][k];
          const Vec& cjk = C2[j][k];
          for (std::size_t q = 0; q < dJ; ++q) {
            if (cjk[q].is_zero()) continue;
            const Vec& w = C1[q][i];
            for (std::size_t r = 0; r < dJp; ++r)
              if (!w[r].is_zero()) row[base + r * dJp + k] += cjk[q] * w[r];
          }
        }
        consider(row, {ZTag::D, i, j}, nullptr);
      }
  }

  B->dim = B->zbegin + B->zb.size();
  return B;
}

// ---- linear maps between L's ----------------------------------------------

struct LieEndo {
  std::shared_ptr<const LieBasis> src, dst;
  Mat mat;  // dst coordinates of the images of the src basis

  LieElement apply(const LieElement& u) const {
    return dst->from_coords(mat.apply(src->coords(u)));
  }
  LieEndo compose(const LieEndo& inner) const {  // this after inner
    return {inner.src, dst, mat * inner.mat};
  }
  bool is_bijective() const { return mat.rows() == mat.cols() && rank(mat) == mat.rows(); }
};

inline LieEndo endo_from_images(std::shared_ptr<const LieBasis> src,
                                std::shared_ptr<const LieBasis> dst,
                                const std::vector<LieElement>& images) {
  Mat m(dst->ring, dst->dim, src->dim);
  for (std::size_t i = 0; i < images.size(); ++i) m.set_col(i, dst->coords(images[i]));
  return {std::move(src), std::move(dst), std::move(m)};
}

// Bracket preservation f([u,v]) = [f(u), f(v)] on basis pairs (all pairs if
// samples == 0, otherwise `samples` random pairs).
inline Report verify_endo_bracket(const LieEndo& f, int samples, std::uint64_t seed) {
  Report rep;
  const CubicNormPair& P1 = f.src->P;
  const CubicNormPair& P2 = f.dst->P;
  std::size_t n = f.src->dim;
  std::vector<LieElement> img;
  img.reserve(n);
  for (std::size_t i = 0; i < n; ++i) img.push_back(f.dst->from_coords(f.mat.col(i)));
  auto check_pair = [&](std::size_t i, std::size_t j) {
    LieElement lhs = f.apply(lie_bracket(P1, f.src->element(i), f.src->element(j)));
    LieElement rhs = lie_bracket(P2, img[i], img[j]);
    ++rep.checks;
    if (!(lhs == rhs))
      rep.fail("bracket not preserved on basis pair (" + std::to_string(i) + ", " +
               std::to_string(j) + ")");
  };
  if (samples <= 0) {
    for (std::size_t i = 0; i < n && rep.ok; ++i)
      for (std::size_t j = i + 1; j < n && rep.ok; ++j) check_pair(i, j);
  } else {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < samples && rep.ok; ++t)
      check_pair(rng() % n, rng() % n);
  }
  return rep;
}

// L(iota, iota', t) for a t-homotopy (iota, iota'): (J1,J1') -> (J2,J2').
inline LieEndo functor_map(std::shared_ptr<const LieBasis> src,
                           std::shared_ptr<const LieBasis> dst, const Homotopy& h) {
  Report hc = check_homotopy(src->P, dst->P, h, 3, 0x5eed);
  if (!hc.ok) throw std::invalid_argument("functor_map: not a homotopy: " + hc.detail);
  const CubicNormPair& P2 = dst->P;
  Scalar t = h.t, ti = t.invert();
  std::vector<LieElement> img;
  img.reserve(src->dim);
  for (std::size_t idx = 0; idx < src->dim; ++idx) {
    LieElement u = lie_zero(P2);
    G2Root g = src->labels[idx];
    if (g == G2Root{0, 0}) {
      const ZTag& tag = src->ztags[idx - src->zbegin];
      if (tag.kind == ZTag::Xi) u.z = z_xi(P2);
      else if (tag.kind == ZTag::Zeta) u.z = z_zeta(P2);
      else
        u.z = z_d(P2, h.phi.col(tag.i), h.phiP.col(tag.jp));
    } else {
      std::size_t k = idx - src->ranges[std::find(src->order.begin(), src->order.end(), g) -
                                        src->order.begin()].first;
      if (g == G2Root{-2, -1}) u.x = ti;
      else if (g == G2Root{2, 1}) u.y = t;
      else if (g == G2Root{-1, -2}) u.minus.lam = ti;
      else if (g == G2Root{-1, -1}) u.minus.b = ti * h.phi.col(k);
      else if (g == G2Root{-1, 0}) u.minus.bp = h.phiP.col(k);
      else if (g == G2Root{-1, 1}) u.minus.mu = Scalar::one(dst->ring);
      else if (g == G2Root{1, -1}) u.plus.lam = Scalar::one(dst->ring);
      else if (g == G2Root{1, 0}) u.plus.b = h.phi.col(k);
      else if (g == G2Root{1, 1}) u.plus.bp = t * h.phiP.col(k);
      else if (g == G2Root{1, 2}) u.plus.mu = t;
      else if (g == G2Root{0, 1}) u.j = h.phi.col(k);
      else if (g == G2Root{0, -1}) u.jp = h.phiP.col(k);
    }
    img.push_back(std::move(u));
  }
  return endo_from_images(std::move(src), std::move(dst), img);
}

// ---- grading reflections --------------------------------------------------

enum class ReflectionKind {
  Horizontal,   // swaps the top and bottom of the (i) grading
  Vertical,     // swaps the two sides of the second 5-grading
  Diagonal,     // exchanges xi and zeta
  SwapDown,     // L(J,J') -> L(J',J)
  AntiDiagonal  // built from a t-involution (iota, iota'): (J,J') -> (J',J)
};

inline G2Root reflection_axis(ReflectionKind k) {
  switch (k) {
    case ReflectionKind::Horizontal: return {2, 1};
    case ReflectionKind::Vertical: return {-1, -2};
    case ReflectionKind::Diagonal: return {-1, 1};
    default: return {-1, -1};
  }
}

namespace detail {

template <typename F>
inline LieEndo reflection_from(const std::shared_ptr<const LieBasis>& src,
                               const std::shared_ptr<const LieBasis>& dst, F&& image) {
  std::vector<LieElement> img;
  img.reserve(src->dim);
  for (std::size_t idx = 0; idx < src->dim; ++idx) {
    G2Root g = src->labels[idx];
    std::size_t k = 0;
    if (g != G2Root{0, 0}) {
      auto it = std::find(src->order.begin(), src->order.end(), g);
      k = idx - src->ranges[it - src->order.begin()].first;
    } else {
      k = idx - src->zbegin;
    }
    img.push_back(image(g, k));
  }
  return endo_from_images(src, dst, img);
}

}  // namespace detail

inline LieEndo reflection(const std::shared_ptr<const LieBasis>& B, ReflectionKind kind) {
  const CubicNormPair& P = B->P;
  const RingPtr& R = B->ring;
  Scalar one = Scalar::one(R);
  auto eJ = [&](std::size_t k) { return vec_unit(R, P.dimJ, k); };
  auto eJp = [&](std::size_t k) { return vec_unit(R, P.dimJp, k); };

  switch (kind) {
    case ReflectionKind::Horizontal:
      return detail::reflection_from(B, B, [&](G2Root g, std::size_t k) {
        LieElement u = lie_zero(P);
        if (g == G2Root{-2, -1}) u.y = one;
        else if (g == G2Root{2, 1}) u.x = one;
        else if (g == G2Root{-1, -2}) u.plus.lam = one;
        else if (g == G2Root{-1, -1}) u.plus.b = eJ(k);
        else if (g == G2Root{-1, 0}) u.plus.bp = eJp(k);
        else if (g == G2Root{-1, 1}) u.plus.mu = one;
        else if (g == G2Root{1, -1}) u.minus.lam = -one;
        else if (g == G2Root{1, 0}) u.minus.b = -eJ(k);
        else if (g == G2Root{1, 1}) u.minus.bp = -eJp(k);
        else if (g == G2Root{1, 2}) u.minus.mu = -one;
        else if (g == G2Root{0, 1}) u.j = eJ(k);
        else if (g == G2Root{0, -1}) u.jp = eJp(k);
        else {
          const ZTag& tag = B->ztags[k];
          if (tag.kind == ZTag::Xi) u.z = -z_xi(P);
          else if (tag.kind == ZTag::Zeta) u.z = z_zeta(P) - z_xi(P);
          else u.z = B->zb[k];
        }
        return u;
      });
    case ReflectionKind::Vertical:
      return detail::reflection_from(B, B, [&](G2Root g, std::size_t k) {
        LieElement u = lie_zero(P);
        if (g == G2Root{-2, -1}) u.minus.mu = one;                // x
        else if (g == G2Root{-1, -2}) u.plus.mu = one;            // (1,0,0,0)_-
        else if (g == G2Root{-1, -1}) u.j = eJ(k);
        else if (g == G2Root{-1, 0}) u.minus.bp = eJp(k);
        else if (g == G2Root{-1, 1}) u.x = -one;
        else if (g == G2Root{0, -1}) u.plus.bp = eJp(k);          // c'
        else if (g == G2Root{0, 1}) u.minus.b = -eJ(k);           // c
        else if (g == G2Root{1, -1}) u.y = one;                   // (1,0,0,0)_+
        else if (g == G2Root{1, 0}) u.plus.b = eJ(k);
        else if (g == G2Root{1, 1}) u.jp = -eJp(k);
        else if (g == G2Root{1, 2}) u.minus.lam = one;
        else if (g == G2Root{2, 1}) u.plus.lam = -one;            // y
        else {
          const ZTag& tag = B->ztags[k];
          if (tag.kind == ZTag::Xi) u.z = z_xi(P) - z_zeta(P);
          else if (tag.kind == ZTag::Zeta) u.z = -z_zeta(P);
          else
            u.z = B->zb[k] - P.T(eJ(tag.i), eJp(tag.jp)) * z_zeta(P);
        }
        return u;
      });
    case ReflectionKind::Diagonal:
      return detail::reflection_from(B, B, [&](G2Root g, std::size_t k) {
        LieElement u = lie_zero(P);
        if (g == G2Root{-2, -1}) u.minus.lam = one;               // x
        else if (g == G2Root{-1, -2}) u.x = -one;
        else if (g == G2Root{-1, -1}) u.minus.b = eJ(k);
        else if (g == G2Root{-1, 0}) u.jp = eJp(k);
        else if (g == G2Root{-1, 1}) u.plus.lam = -one;
        else if (g == G2Root{0, -1}) u.minus.bp = -eJp(k);        // c'
        else if (g == G2Root{0, 1}) u.plus.b = -eJ(k);            // c
        else if (g == G2Root{1, -1}) u.minus.mu = -one;
        else if (g == G2Root{1, 0}) u.j = eJ(k);
        else if (g == G2Root{1, 1}) u.plus.bp = eJp(k);
        else if (g == G2Root{1, 2}) u.y = -one;
        else if (g == G2Root{2, 1}) u.plus.mu = one;              // y
        else {
          const ZTag& tag = B->ztags[k];
          if (tag.kind == ZTag::Xi) u.z = z_zeta(P);
          else if (tag.kind == ZTag::Zeta) u.z = z_xi(P);
          else
            u.z = B->zb[k] + P.T(eJ(tag.i), eJp(tag.jp)) * (z_xi(P) - z_zeta(P));
        }
        return u;
      });
    default:
      throw std::invalid_argument("reflection: SwapDown/AntiDiagonal need their own entry points");
  }
}

// psi: L(J,J') -> L(J',J). The target basis must be built on P.swapped().
inline LieEndo reflection_swap(const std::shared_ptr<const LieBasis>& B,
                               const std::shared_ptr<const LieBasis>& Bsw) {
  const CubicNormPair& P = B->P;
  const CubicNormPair& Q = Bsw->P;  // (J', J)
  const RingPtr& R = B->ring;
  Scalar one = Scalar::one(R);
  auto eJ = [&](std::size_t k) { return vec_unit(R, P.dimJ, k); };
  auto eJp = [&](std::size_t k) { return vec_unit(R, P.dimJp, k); };
  return detail::reflection_from(B, Bsw, [&](G2Root g, std::size_t k) {
    LieElement u = lie_zero(Q);
    if (g == G2Root{-2, -1}) u.plus.mu = one;                     // x
    else if (g == G2Root{-1, -2}) u.y = -one;
    else if (g == G2Root{-1, -1}) u.plus.bp = -eJ(k);             // b in J = 2nd module of Q
    else if (g == G2Root{-1, 0}) u.j = eJp(k);                    // b' in J' = 1st module of Q
    else if (g == G2Root{-1, 1}) u.minus.mu = one;
    else if (g == G2Root{0, -1}) u.plus.b = -eJp(k);              // c'
    else if (g == G2Root{0, 1}) u.minus.bp = -eJ(k);              // c
    else if (g == G2Root{1, -1}) u.plus.lam = one;
    else if (g == G2Root{1, 0}) u.jp = eJ(k);
    else if (g == G2Root{1, 1}) u.minus.b = -eJp(k);
    else if (g == G2Root{1, 2}) u.x = -one;
    else if (g == G2Root{2, 1}) u.minus.lam = one;                // y
    else {
      const ZTag& tag = B->ztags[k];
      if (tag.kind == ZTag::Xi) u.z = -z_zeta(Q);
      else if (tag.kind == ZTag::Zeta) u.z = -z_xi(Q);
      else
        u.z = P.T(eJ(tag.i), eJp(tag.jp)) * (z_zeta(Q) - z_xi(Q)) -
              z_d(Q, eJp(tag.jp), eJ(tag.i));
    }
    return u;
  });
}

// The anti-diagonal reflection built from a t-involution
// (iota: J -> J', iota': J' -> J); an automorphism of L(J,J').
inline LieEndo reflection_anti(const std::shared_ptr<const LieBasis>& B,
                               const Homotopy& inv) {
  const CubicNormPair& P = B->P;
  Report hc = check_homotopy(P, P.swapped(), inv, 3, 0x5eed);
  if (!hc.ok)
    throw std::invalid_argument("reflection_anti: not an involution homotopy: " + hc.detail);
  const RingPtr& R = B->ring;
  Scalar one = Scalar::one(R);
  Scalar t = inv.t, ti = t.invert();
  auto eJ = [&](std::size_t k) { return vec_unit(R, P.dimJ, k); };
  auto eJp = [&](std::size_t k) { return vec_unit(R, P.dimJp, k); };
  auto io = [&](std::size_t k) { return inv.phi.col(k); };    // iota(e_k) in J'
  auto iop = [&](std::size_t k) { return inv.phiP.col(k); };  // iota'(e'_k) in J
  return detail::reflection_from(B, B, [&](G2Root g, std::size_t k) {
    LieElement u = lie_zero(P);
    if (g == G2Root{-2, -1}) u.plus.mu = ti;                      // x
    else if (g == G2Root{-1, -2}) u.y = -ti;
    else if (g == G2Root{-1, -1}) u.plus.bp = -(ti * io(k));
    else if (g == G2Root{-1, 0}) u.j = iop(k);
    else if (g == G2Root{-1, 1}) u.minus.mu = one;
    else if (g == G2Root{0, -1}) u.plus.b = -iop(k);              // c'
    else if (g == G2Root{0, 1}) u.minus.bp = -io(k);              // c
    else if (g == G2Root{1, -1}) u.plus.lam = one;
    else if (g == G2Root{1, 0}) u.jp = io(k);
    else if (g == G2Root{1, 1}) u.minus.b = -(t * iop(k));
    else if (g == G2Root{1, 2}) u.x = -t;
    else if (g == G2Root{2, 1}) u.minus.lam = t;                  // y
    else {
      const ZTag& tag = B->ztags[k];
      if (tag.kind == ZTag::Xi) u.z = -z_zeta(P);
      else if (tag.kind == ZTag::Zeta) u.z = -z_xi(P);
      else
        u.z = P.T(eJ(tag.i), eJp(tag.jp)) * (z_zeta(P) - z_xi(P)) -
              z_d(P, iop(tag.jp), io(tag.i));
    }
    return u;
  });
}

// Checks that f maps each root space L_beta into L_{s_alpha(beta)} for the
// reflection's axis alpha, and that it is a bijective bracket homomorphism.
inline Report verify_reflection(const LieEndo& f, ReflectionKind kind, int samples,
                                std::uint64_t seed) {
  Report rep;
  G2Root axis = reflection_axis(kind);
  for (std::size_t idx = 0; idx < f.src->dim; ++idx) {
    G2Root g = f.src->labels[idx];
    G2Root target = g.is_zero() ? g : g2_reflect(g, axis);
    LieElement img = f.dst->from_coords(f.mat.col(idx));
    for (G2Root h : g2_roots()) {
      ++rep.checks;
      if (h != target && !lie_component_zero(img, h))
        rep.fail("image leaks outside the reflected root space");
    }
    ++rep.checks;
    if (!target.is_zero() && !lie_component_zero(img, {0, 0}))
      rep.fail("image leaks into the (0,0) space");
  }
  ++rep.checks;
  if (!f.is_bijective()) rep.fail("reflection is not bijective");
  rep.merge(verify_endo_bracket(f, samples, seed));
  return rep;
}

// ---- verification suites --------------------------------------------------

inline Report verify_jacobi(const LieBasis& B, bool exhaustive, int samples,
                            std::uint64_t seed) {
  Report rep;
  const CubicNormPair& P = B.P;
  std::size_t n = B.dim;
  std::vector<LieElement> e;
  e.reserve(n);
  for (std::size_t i = 0; i < n; ++i) e.push_back(B.element(i));
  if (exhaustive) {
    std::vector<LieElement> w;
    w.reserve(n * (n - 1) / 2);
    auto at = [&](std::size_t i, std::size_t j) -> const LieElement& {
      // i < j; packed upper triangle
      return w[i * n - i * (i + 1) / 2 + (j - i - 1)];
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) w.push_back(lie_bracket(P, e[i], e[j]));
    for (std::size_t i = 0; i < n && rep.ok; ++i)
      for (std::size_t j = i + 1; j < n && rep.ok; ++j)
        for (std::size_t k = j + 1; k < n && rep.ok; ++k) {
          LieElement s = lie_bracket(P, at(i, j), e[k]) + lie_bracket(P, at(j, k), e[i]) -
                         lie_bracket(P, at(i, k), e[j]);
          ++rep.checks;
          if (!s.is_zero()) rep.fail("Jacobi identity failed on a basis triple");
        }
  } else {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < samples && rep.ok; ++t) {
      std::size_t i = rng() % n, j = rng() % n, k = rng() % n;
      LieElement s = lie_bracket(P, lie_bracket(P, e[i], e[j]), e[k]) +
                     lie_bracket(P, lie_bracket(P, e[j], e[k]), e[i]) +
                     lie_bracket(P, lie_bracket(P, e[k], e[i]), e[j]);
      ++rep.checks;
      if (!s.is_zero()) rep.fail("Jacobi identity failed on a sampled triple");
    }
  }
  return rep;
}

inline Report verify_g2_grading(const LieBasis& B) {
  Report rep;
  const CubicNormPair& P = B.P;
  std::size_t n = B.dim;
  for (std::size_t i = 0; i < n && rep.ok; ++i) {
    LieElement ei = B.element(i);
    for (std::size_t j = i; j < n && rep.ok; ++j) {
      G2Root a = B.labels[i], b = B.labels[j];
      G2Root sum{a.i + b.i, a.j + b.j};
      bool admissible = sum.is_zero() || g2_is_root(sum);
      LieElement w = lie_bracket(P, ei, B.element(j));
      for (G2Root h : g2_roots()) {
        ++rep.checks;
        if ((!admissible || h != sum) && !lie_component_zero(w, h))
          rep.fail("bracket leaks outside the grading target space");
      }
      ++rep.checks;
      if ((!admissible || !sum.is_zero()) && !lie_component_zero(w, {0, 0}))
        rep.fail("bracket leaks into the (0,0) space");
    }
  }
  return rep;
}

// ---- ideals ---------------------------------------------------------------

// An ideal triple (l, U, U') of (k, J, J') over a field: l is 0 or all of k.
struct IdealTriple {
  bool full_scalar = false;
  Subspace U, Up;
};

inline Report verify_ideal_triple(const LieBasis& B, const IdealTriple& I) {
  Report rep;
  const CubicNormPair& P = B.P;
  auto rows = [](const Subspace& S) {
    std::vector<Vec> r;
    for (std::size_t i = 0; i < S.basis.rows(); ++i) r.push_back(S.basis.row(i));
    return r;
  };
  if (I.full_scalar) {
    ++rep.checks;
    if (I.U.dim() != P.dimJ || I.Up.dim() != P.dimJp)
      rep.fail("l = k forces U = J and U' = J'");
  }
  for (const Vec& u : rows(I.U)) {
    for (std::size_t j = 0; j < P.dimJp; ++j) {
      ++rep.checks;
      if (!I.full_scalar && !P.T(u, vec_unit(B.ring, P.dimJp, j)).is_zero())
        rep.fail("T(U, J') not contained in l");
    }
    for (std::size_t i = 0; i < P.dimJ; ++i) {
      ++rep.checks;
      Vec w = P.crossJ(u, vec_unit(B.ring, P.dimJ, i));
      Vec wc = vec_map(w, I.Up.basis.ring());
      if (!I.Up.contains(wc)) rep.fail("U x J not contained in U'");
    }
  }
  for (std::size_t r = 0; r < I.Up.basis.rows(); ++r) {
    Vec up = I.Up.basis.row(r);
    for (std::size_t i = 0; i < P.dimJ; ++i) {
      ++rep.checks;
      if (!I.full_scalar && !P.T(vec_unit(B.ring, P.dimJ, i), up).is_zero())
        rep.fail("T(J, U') not contained in l");
    }
    for (std::size_t j = 0; j < P.dimJp; ++j) {
      ++rep.checks;
      Vec w = P.crossJp(up, vec_unit(B.ring, P.dimJp, j));
      if (!I.U.contains(vec_map(w, I.U.basis.ring()))) rep.fail("U' x J' not contained in U");
    }
  }
  return rep;
}

namespace detail {

// Remainder of v after reduction against the rref rows of S (linear in v).
inline Vec subspace_reduce(const Subspace& S, const Vec& v) {
  Vec w = vec_map(v, S.basis.ring());
  for (std::size_t r = 0; r < S.basis.rows(); ++r) {
    std::size_t p = 0;
    while (p < S.ambient && S.basis.at(r, p).is_zero()) ++p;
    if (p == S.ambient || w[p].is_zero()) continue;
    Scalar f = w[p];
    for (std::size_t c = 0; c < S.ambient; ++c) w[c] = w[c] - f * S.basis.at(r, c);
  }
  return w;
}

inline void ideal_root_part_gens(const LieBasis& B, const IdealTriple& I,
                                 std::vector<Vec>& gens) {
  const CubicNormPair& P = B.P;
  auto push = [&](const LieElement& u) { gens.push_back(B.coords(u)); };
  if (I.full_scalar) {
    for (G2Root g : g2_roots())
      if (g2_is_long(g)) push(B.element(B.ranges[std::find(B.order.begin(), B.order.end(), g) -
                                                 B.order.begin()].first));
  }
  for (std::size_t r = 0; r < I.U.basis.rows(); ++r) {
    Vec u = I.U.basis.row(r);
    push(lie_j(P, u));
    LieElement em = lie_zero(P), ep = lie_zero(P);
    em.minus.b = u;
    ep.plus.b = u;
    push(em);
    push(ep);
  }
  for (std::size_t r = 0; r < I.Up.basis.rows(); ++r) {
    Vec up = I.Up.basis.row(r);
    push(lie_jp(P, up));
    LieElement em = lie_zero(P), ep = lie_zero(P);
    em.minus.bp = up;
    ep.plus.bp = up;
    push(em);
    push(ep);
  }
}

}  // namespace detail

// L(l,U,U')_min: root parts plus l xi + l zeta + <d_{a,a'} : a in U or a' in U'>.
inline Subspace ideal_min(const LieBasis& B, const IdealTriple& I) {
  const CubicNormPair& P = B.P;
  std::vector<Vec> gens;
  detail::ideal_root_part_gens(B, I, gens);
  auto pushz = [&](const ZElement& z) {
    gens.push_back(B.coords(lie_z(P, z)));
  };
  if (I.full_scalar) {
    pushz(z_xi(P));
    pushz(z_zeta(P));
  }
  for (std::size_t r = 0; r < I.U.basis.rows(); ++r)
    for (std::size_t j = 0; j < P.dimJp; ++j)
      pushz(z_d(P, I.U.basis.row(r), vec_unit(B.ring, P.dimJp, j)));
  for (std::size_t r = 0; r < I.Up.basis.rows(); ++r)
    for (std::size_t i = 0; i < P.dimJ; ++i)
      pushz(z_d(P, vec_unit(B.ring, P.dimJ, i), I.Up.basis.row(r)));
  return Subspace::span(B.ring, B.dim, gens);
}

// Membership in the radical Rad(l,U,U'): the zero-test conditions taken
// modulo l, U and U'.
inline bool radical_member(const LieBasis& B, const ZElement& z, const IdealTriple& I) {
  const LieLayout& L = B.lay;
  std::size_t o = L.op();
  Scalar e2 = z.op.at(o, o), e3 = z.op.at(o + L.s() - 1, o + L.s() - 1);
  if (!I.full_scalar) {
    if (!(e2 + e3).is_zero()) return false;   // l_zeta + 2 l_xi in l
    if (!e2.is_zero() || !e3.is_zero()) return false;  // sum T - 3 l_xi in l
  }
  Scalar shift = e2 + e3;  // l_zeta + 2 l_xi
  Mat AJ = z_action_on_J(L, z), AJp = z_action_on_Jp(L, z);
  for (std::size_t k = 0; k < L.dJ; ++k) {
    Vec v = AJ.col(k);
    v[k] = v[k] - shift;  // (sum D - 2 l_xi)(e_k)
    if (!I.U.contains(v)) return false;
  }
  for (std::size_t k = 0; k < L.dJp; ++k) {
    Vec v = AJp.col(k);
    for (auto& c : v) c = -c;
    v[k] = v[k] - shift;  // (sum D' - 2 l_xi)(e'_k)
    if (!I.Up.contains(v)) return false;
  }
  return true;
}

// L(l,U,U')_max: root parts plus the full radical.
inline Subspace ideal_max(const LieBasis& B, const IdealTriple& I) {
  std::vector<Vec> gens;
  detail::ideal_root_part_gens(B, I, gens);
  // radical = kernel of the linear conditions on Z coordinates
  const LieLayout& L = B.lay;
  std::size_t o = L.op();
  std::size_t nz = B.zb.size();
  if (nz > 0) {
    std::vector<Vec> cond;  // each row: one scalar condition across the z basis
    std::size_t ncond = (I.full_scalar ? 0 : 2) + L.dJ * L.dJ + L.dJp * L.dJp;
    cond.assign(ncond, vec_zero(B.ring, nz));
    for (std::size_t t = 0; t < nz; ++t) {
      const ZElement& z = B.zb[t];
      Scalar e2 = z.op.at(o, o), e3 = z.op.at(o + L.s() - 1, o + L.s() - 1);
      std::size_t row = 0;
      if (!I.full_scalar) {
        cond[row++][t] = e2;
        cond[row++][t] = e3;
      }
      Scalar shift = e2 + e3;
      Mat AJ = z_action_on_J(L, z), AJp = z_action_on_Jp(L, z);
      for (std::size_t k = 0; k < L.dJ; ++k) {
        Vec v = AJ.col(k);
        v[k] = v[k] - shift;
        Vec red = detail::subspace_reduce(I.U, v);
        for (std::size_t r = 0; r < L.dJ; ++r) cond[row + k * L.dJ + r][t] = red[r];
      }
      row += L.dJ * L.dJ;
      for (std::size_t k = 0; k < L.dJp; ++k) {
        Vec v = AJp.col(k);
        for (auto& c : v) c = -c;
        v[k] = v[k] - shift;
        Vec red = detail::subspace_reduce(I.Up, v);
        for (std::size_t r = 0; r < L.dJp; ++r) cond[row + k * L.dJp + r][t] = red[r];
      }
    }
    Mat M = Mat::from_rows(B.ring, cond);
    for (const Vec& kvec : kernel_basis(M)) {
      Vec full = vec_zero(B.ring, B.dim);
      for (std::size_t t = 0; t < nz; ++t) full[B.zbegin + t] = kvec[t];
      gens.push_back(std::move(full));
    }
  }
  return Subspace::span(B.ring, B.dim, gens);
}

// Bracket-closure of a subspace against every basis element of L.
inline Report verify_ideal(const LieBasis& B, const Subspace& S) {
  Report rep;
  const CubicNormPair& P = B.P;
  for (std::size_t i = 0; i < B.dim && rep.ok; ++i) {
    LieElement ei = B.element(i);
    for (std::size_t r = 0; r < S.basis.rows() && rep.ok; ++r) {
      LieElement v = B.from_coords(S.basis.row(r));
      ++rep.checks;
      if (!S.contains(B.coords(lie_bracket(P, ei, v))))
        rep.fail("subspace not closed under bracketing with the basis");
    }
  }
  return rep;
}

// Rank of the center: intersection of the adjoint kernels, shrunk
// incrementally.
inline std::size_t center_rank(const LieBasis& B) {
  const CubicNormPair& P = B.P;
  Mat K = Mat::identity(B.ring, B.dim);  // rows span the candidate center
  for (std::size_t i = 0; i < B.dim && K.rows() > 0; ++i) {
    LieElement ei = B.element(i);
    Mat A(B.ring, B.dim, K.rows());
    for (std::size_t r = 0; r < K.rows(); ++r)
      A.set_col(r, B.coords(lie_bracket(P, ei, B.from_coords(K.row(r)))));
    std::vector<Vec> kb = kernel_basis(A);
    Mat K2(B.ring, kb.size(), B.dim);
    for (std::size_t r = 0; r < kb.size(); ++r) {
      Vec v = vec_zero(B.ring, B.dim);
      for (std::size_t t = 0; t < K.rows(); ++t) v = v + kb[r][t] * K.row(t);
      K2.set_row(r, v);
    }
    K = std::move(K2);
  }
  return K.rows();
}

}  // namespace alg
