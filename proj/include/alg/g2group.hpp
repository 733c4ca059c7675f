#pragma once
// Exponential automorphisms of L(J,J') and the G2 root groups in Aut(L):
// the explicit exponential formulas for every root space, homogeneous
// (degree) parts and the higher Leibniz rules, the commutator relations
// between positive root groups, Weyl elements (the horizontal reflection and
// the anti-diagonal reflection of an isotope involution) together with their
// product decompositions and conjugation action, and unitriangularity of
// positive products with respect to a height-ordered basis.

#include "alg/lie.hpp"

namespace alg {

using LieAuto = LieEndo;

// The parametrizing datum of a root group element: a scalar for long roots,
// a module element (in J or J' as dictated by the root) for short roots.
struct ExpParam {
  G2Root root;
  Scalar s;
  Vec v;
};

// Short roots parametrized by J; the other six short slots carry J'.
inline bool g2_param_is_J(G2Root g) {
  return g == G2Root{0, 1} || g == G2Root{-1, -1} || g == G2Root{1, 0};
}

inline ExpParam exp_scalar_param(G2Root g, const Scalar& s) {
  if (!g2_is_long(g)) throw std::invalid_argument("exp_scalar_param: short root");
  return {g, s, {}};
}

inline ExpParam exp_module_param(const CubicNormPair& P, G2Root g, const Vec& v) {
  if (!g2_is_root(g) || g2_is_long(g))
    throw std::invalid_argument("exp_module_param: not a short root");
  if (v.size() != (g2_param_is_J(g) ? P.dimJ : P.dimJp))
    throw std::invalid_argument("exp_module_param: parameter has the wrong rank");
  return {g, Scalar::zero(P.ring), v};
}

inline ExpParam exp_param_negate(const ExpParam& p) {
  ExpParam q = p;
  if (g2_is_long(p.root))
    q.s = -p.s;
  else
    q.v = -p.v;
  return q;
}

inline ExpParam exp_param_scale(const Scalar& c, const ExpParam& p) {
  ExpParam q = p;
  if (g2_is_long(p.root))
    q.s = c * p.s;
  else
    q.v = c * p.v;
  return q;
}

// The natural identification of the parameter space with the root space.
inline LieElement exp_param_element(const CubicNormPair& P, const ExpParam& p) {
  LieElement u = lie_zero(P);
  G2Root g = p.root;
  if (g == G2Root{-2, -1}) u.x = p.s;
  else if (g == G2Root{2, 1}) u.y = p.s;
  else if (g == G2Root{-1, -2}) u.minus.lam = p.s;
  else if (g == G2Root{-1, -1}) u.minus.b = p.v;
  else if (g == G2Root{-1, 0}) u.minus.bp = p.v;
  else if (g == G2Root{-1, 1}) u.minus.mu = p.s;
  else if (g == G2Root{1, -1}) u.plus.lam = p.s;
  else if (g == G2Root{1, 0}) u.plus.b = p.v;
  else if (g == G2Root{1, 1}) u.plus.bp = p.v;
  else if (g == G2Root{1, 2}) u.plus.mu = p.s;
  else if (g == G2Root{0, 1}) u.j = p.v;
  else if (g == G2Root{0, -1}) u.jp = p.v;
  else
    throw std::invalid_argument("exp_param_element: not a root");
  return u;
}

namespace detail {

// One basis generator of L, as seen by the exponential formulas: either a
// pure slot element or a Z basis element with its formal tag.
struct ExpGen {
  G2Root g;
  std::size_t k = 0;
  const ZTag* tag = nullptr;  // set iff g == (0,0)
};

// e_a for a = (lam, b, b', mu)_+ with at most one nonzero entry.
inline LieElement exp_plus_image(const CubicNormPair& P, const L1Tuple& A,
                                 const LieBasis& B, const ExpGen& gen) {
  const RingPtr& R = P.ring;
  Vec bs = P.sharpJ(A.b), bps = P.sharpJp(A.bp);
  Scalar Nb = P.normJ(A.b), Nbp = P.normJp(A.bp);
  Scalar one = Scalar::one(R);
  LieElement u = lie_zero(P);
  G2Root g = gen.g;
  std::size_t k = gen.k;

  if (g == G2Root{-2, -1}) {
    u.x = one;
    u.minus = A;
    u.jp = u.jp - bs;
    u.j = u.j - bps;
    u.plus.lam = -Nb;
    u.plus.mu = Nbp;
  } else if (g.i == -1) {
    L1Tuple C = tuple_zero(P);
    if (g == G2Root{-1, -2}) C.lam = one;
    else if (g == G2Root{-1, -1}) C.b[k] = one;
    else if (g == G2Root{-1, 0}) C.bp[k] = one;
    else C.mu = one;
    u.minus = C;
    u.jp = u.jp + A.lam * C.bp - P.crossJ(C.b, A.b) + C.lam * A.bp;
    if (!vec_is_zero(A.b) && !vec_is_zero(C.bp)) u.z = u.z - z_d(P, A.b, C.bp);
    if (!vec_is_zero(C.b) && !vec_is_zero(A.bp)) u.z = u.z - z_d(P, C.b, A.bp);
    Scalar sxz = C.mu * A.lam - P.T(A.b, C.bp);  // coefficient of xi - zeta
    Scalar sz = P.T(C.b, A.bp) - C.lam * A.mu;   // coefficient of zeta
    if (!sxz.is_zero()) u.z = u.z + sxz * (z_xi(P) - z_zeta(P));
    if (!sz.is_zero()) u.z = u.z + sz * z_zeta(P);
    u.j = u.j + C.mu * A.b - P.crossJp(C.bp, A.bp) + A.mu * C.b;
    u.plus = u.plus +
             L1Tuple{-C.mu * A.lam * A.lam - P.T(C.b, bs),
                     P.u_op(A.b, C.bp) + C.lam * bps,
                     -(C.mu * bs) - P.u_opP(A.bp, C.b),
                     P.T(bps, C.bp) + C.lam * A.mu * A.mu};
    u.y += -(C.mu * Nb) - C.lam * Nbp;
  } else if (g == G2Root{0, -1}) {
    Vec cp = vec_unit(R, P.dimJp, k);
    u.jp = cp;
    u.plus = u.plus + L1Tuple{P.T(A.b, cp), P.crossJp(cp, A.bp), A.mu * cp,
                              Scalar::zero(R)};
    u.y = u.y - P.T(bps, cp);
  } else if (g == G2Root{0, 1}) {
    Vec c = vec_unit(R, P.dimJ, k);
    u.j = c;
    u.plus = u.plus - L1Tuple{Scalar::zero(R), A.lam * c, P.crossJ(c, A.b), P.T(c, A.bp)};
    u.y = u.y - P.T(c, bs);
  } else if (g == G2Root{0, 0}) {
    const ZTag& tag = *gen.tag;
    if (tag.kind == ZTag::Xi) {
      u.z = z_xi(P);
      u.plus = u.plus - A;
    } else if (tag.kind == ZTag::Zeta) {
      u.z = z_zeta(P);
      u.plus = u.plus + L1Tuple{A.lam, vec_zero(R, P.dimJ), -A.bp,
                                Scalar::from_int(R, -2) * A.mu};
    } else {
      Vec c = vec_unit(R, P.dimJ, tag.i), cp = vec_unit(R, P.dimJp, tag.jp);
      Scalar t = P.T(c, cp);
      u.z = B.zb[k];
      u.plus = u.plus + L1Tuple{A.lam * t, t * A.b - P.d_op(c, cp, A.b),
                                P.d_opP(cp, c, A.bp) - t * A.bp, -(A.mu * t)};
    }
  } else if (g.i == 1) {
    L1Tuple C = tuple_zero(P);
    if (g == G2Root{1, -1}) C.lam = one;
    else if (g == G2Root{1, 0}) C.b[k] = one;
    else if (g == G2Root{1, 1}) C.bp[k] = one;
    else C.mu = one;
    u.plus = C;
    u.y += P.T(A.b, C.bp) - P.T(C.b, A.bp) + A.mu * C.lam - A.lam * C.mu;
  } else {  // y
    u.y = one;
  }
  return u;
}

// e_a for a = (lam, b, b', mu)_- with at most one nonzero entry.
inline LieElement exp_minus_image(const CubicNormPair& P, const L1Tuple& A,
                                  const LieBasis& B, const ExpGen& gen) {
  const RingPtr& R = P.ring;
  Vec bs = P.sharpJ(A.b), bps = P.sharpJp(A.bp);
  Scalar Nb = P.normJ(A.b), Nbp = P.normJp(A.bp);
  Scalar one = Scalar::one(R);
  LieElement u = lie_zero(P);
  G2Root g = gen.g;
  std::size_t k = gen.k;

  if (g == G2Root{-2, -1}) {
    u.x = one;
  } else if (g.i == -1) {
    L1Tuple C = tuple_zero(P);
    if (g == G2Root{-1, -2}) C.lam = one;
    else if (g == G2Root{-1, -1}) C.b[k] = one;
    else if (g == G2Root{-1, 0}) C.bp[k] = one;
    else C.mu = one;
    u.minus = C;
    u.x += P.T(A.b, C.bp) - P.T(C.b, A.bp) + A.mu * C.lam - A.lam * C.mu;
  } else if (g == G2Root{0, -1}) {
    Vec cp = vec_unit(R, P.dimJp, k);
    u.jp = cp;
    u.minus = u.minus + L1Tuple{P.T(A.b, cp), P.crossJp(cp, A.bp), A.mu * cp,
                                Scalar::zero(R)};
    u.x = u.x - P.T(bps, cp);
  } else if (g == G2Root{0, 1}) {
    Vec c = vec_unit(R, P.dimJ, k);
    u.j = c;
    u.minus = u.minus - L1Tuple{Scalar::zero(R), A.lam * c, P.crossJ(c, A.b), P.T(c, A.bp)};
    u.x = u.x - P.T(c, bs);
  } else if (g == G2Root{0, 0}) {
    const ZTag& tag = *gen.tag;
    if (tag.kind == ZTag::Xi) {
      u.z = z_xi(P);
      u.minus = u.minus + A;
    } else if (tag.kind == ZTag::Zeta) {
      u.z = z_zeta(P);
      u.minus = u.minus + L1Tuple{Scalar::from_int(R, 2) * A.lam, A.b,
                                  vec_zero(R, P.dimJp), -A.mu};
    } else {
      Vec c = vec_unit(R, P.dimJ, tag.i), cp = vec_unit(R, P.dimJp, tag.jp);
      Scalar t = P.T(c, cp);
      u.z = B.zb[k];
      u.minus = u.minus + L1Tuple{A.lam * t, t * A.b - P.d_op(c, cp, A.b),
                                  P.d_opP(cp, c, A.bp) - t * A.bp, -(A.mu * t)};
    }
  } else if (g.i == 1) {
    L1Tuple C = tuple_zero(P);
    if (g == G2Root{1, -1}) C.lam = one;
    else if (g == G2Root{1, 0}) C.b[k] = one;
    else if (g == G2Root{1, 1}) C.bp[k] = one;
    else C.mu = one;
    u.plus = C;
    u.jp = u.jp - A.lam * C.bp + P.crossJ(A.b, C.b) - C.lam * A.bp;
    if (!vec_is_zero(A.b) && !vec_is_zero(C.bp)) u.z = u.z + z_d(P, A.b, C.bp);
    if (!vec_is_zero(C.b) && !vec_is_zero(A.bp)) u.z = u.z + z_d(P, C.b, A.bp);
    Scalar sz = A.lam * C.mu - P.T(A.b, C.bp);  // coefficient of zeta
    Scalar sxz = P.T(C.b, A.bp) - A.mu * C.lam; // coefficient of xi - zeta
    if (!sz.is_zero()) u.z = u.z + sz * z_zeta(P);
    if (!sxz.is_zero()) u.z = u.z + sxz * (z_xi(P) - z_zeta(P));
    u.j = u.j - C.mu * A.b + P.crossJp(A.bp, C.bp) - A.mu * C.b;
    u.minus = u.minus +
              L1Tuple{C.mu * A.lam * A.lam + P.T(C.b, bs),
                      -P.u_op(A.b, C.bp) - C.lam * bps,
                      C.mu * bs + P.u_opP(A.bp, C.b),
                      -P.T(bps, C.bp) - A.mu * A.mu * C.lam};
    u.x += C.mu * Nb + C.lam * Nbp;
  } else {  // y
    u.y = one;
    u.plus = u.plus - A;
    u.jp = u.jp - bs;
    u.j = u.j - bps;
    u.minus.lam += -Nb;
    u.minus.mu += Nbp;
  }
  return u;
}

// e_b for b in J inside L_0.
inline LieElement exp_j_image(const CubicNormPair& P, const Vec& b, const LieBasis& B,
                              const ExpGen& gen) {
  const RingPtr& R = P.ring;
  Vec bs = P.sharpJ(b);
  Scalar Nb = P.normJ(b);
  Scalar one = Scalar::one(R);
  LieElement u = lie_zero(P);
  G2Root g = gen.g;
  std::size_t k = gen.k;

  if (g == G2Root{-2, -1}) u.x = one;
  else if (g == G2Root{2, 1}) u.y = one;
  else if (g == G2Root{0, 1}) u.j = vec_unit(R, P.dimJ, k);
  else if (g == G2Root{0, -1}) {
    Vec cp = vec_unit(R, P.dimJp, k);
    u.jp = cp;
    if (!vec_is_zero(b)) u.z = u.z - z_d(P, b, cp);
    u.j = u.j + P.u_op(b, cp);
  } else if (g == G2Root{0, 0}) {
    const ZTag& tag = *gen.tag;
    if (tag.kind == ZTag::Xi) u.z = z_xi(P);
    else if (tag.kind == ZTag::Zeta) {
      u.z = z_zeta(P);
      u.j = u.j - b;
    } else {
      Vec c = vec_unit(R, P.dimJ, tag.i), cp = vec_unit(R, P.dimJp, tag.jp);
      u.z = B.zb[k];
      u.j = u.j - P.d_op(c, cp, b);
    }
  } else {
    L1Tuple C = tuple_zero(P);
    if (g == G2Root{-1, -2} || g == G2Root{1, -1}) C.lam = one;
    else if (g == G2Root{-1, -1} || g == G2Root{1, 0}) C.b[k] = one;
    else if (g == G2Root{-1, 0} || g == G2Root{1, 1}) C.bp[k] = one;
    else C.mu = one;
    L1Tuple img{C.lam, C.b + C.lam * b, C.bp + P.crossJ(b, C.b) + C.lam * bs,
                C.mu + P.T(b, C.bp) + P.T(C.b, bs) + C.lam * Nb};
    if (g.i == -1) u.minus = img;
    else u.plus = img;
  }
  return u;
}

// e_{b'} for b' in J' inside L_0.
inline LieElement exp_jp_image(const CubicNormPair& P, const Vec& bp, const LieBasis& B,
                               const ExpGen& gen) {
  const RingPtr& R = P.ring;
  Vec bps = P.sharpJp(bp);
  Scalar Nbp = P.normJp(bp);
  Scalar one = Scalar::one(R);
  LieElement u = lie_zero(P);
  G2Root g = gen.g;
  std::size_t k = gen.k;

  if (g == G2Root{-2, -1}) u.x = one;
  else if (g == G2Root{2, 1}) u.y = one;
  else if (g == G2Root{0, -1}) u.jp = vec_unit(R, P.dimJp, k);
  else if (g == G2Root{0, 1}) {
    Vec c = vec_unit(R, P.dimJ, k);
    u.j = c;
    if (!vec_is_zero(bp)) u.z = u.z + z_d(P, c, bp);
    u.jp = u.jp + P.u_opP(bp, c);
  } else if (g == G2Root{0, 0}) {
    const ZTag& tag = *gen.tag;
    if (tag.kind == ZTag::Xi) u.z = z_xi(P);
    else if (tag.kind == ZTag::Zeta) {
      u.z = z_zeta(P);
      u.jp = u.jp + bp;
    } else {
      Vec c = vec_unit(R, P.dimJ, tag.i), cp = vec_unit(R, P.dimJp, tag.jp);
      u.z = B.zb[k];
      u.jp = u.jp + P.d_opP(cp, c, bp);
    }
  } else {
    L1Tuple C = tuple_zero(P);
    if (g == G2Root{-1, -2} || g == G2Root{1, -1}) C.lam = one;
    else if (g == G2Root{-1, -1} || g == G2Root{1, 0}) C.b[k] = one;
    else if (g == G2Root{-1, 0} || g == G2Root{1, 1}) C.bp[k] = one;
    else C.mu = one;
    L1Tuple img{C.lam - P.T(C.b, bp) + P.T(bps, C.bp) - C.mu * Nbp,
                C.b - P.crossJp(bp, C.bp) + C.mu * bps, C.bp - C.mu * bp, C.mu};
    if (g.i == -1) u.minus = img;
    else u.plus = img;
  }
  return u;
}

// e_{lam x} and e_{lam y}.
inline LieElement exp_xy_image(const CubicNormPair& P, const Scalar& lam, bool atx,
                               const LieBasis& B, const ExpGen& gen) {
  const RingPtr& R = P.ring;
  Scalar one = Scalar::one(R);
  LieElement u = lie_zero(P);
  G2Root g = gen.g;
  std::size_t k = gen.k;

  auto unit_tuple = [&](G2Root gg) {
    L1Tuple C = tuple_zero(P);
    if (gg.j == -2 || (gg.i == 1 && gg.j == -1)) C.lam = one;
    else if (gg == G2Root{-1, -1} || gg == G2Root{1, 0}) C.b[k] = one;
    else if (gg == G2Root{-1, 0} || gg == G2Root{1, 1}) C.bp[k] = one;
    else C.mu = one;
    return C;
  };

  if (g == G2Root{-2, -1}) {
    u.x = one;
    if (!atx) {
      u.z = u.z - lam * z_xi(P);
      u.y = lam * lam;
    }
  } else if (g == G2Root{2, 1}) {
    u.y = one;
    if (atx) {
      u.z = u.z + lam * z_xi(P);
      u.x = lam * lam;
    }
  } else if (g.i == -1) {
    L1Tuple C = unit_tuple(g);
    u.minus = C;
    if (!atx) u.plus = u.plus + lam * C;
  } else if (g.i == 1) {
    L1Tuple C = unit_tuple(g);
    u.plus = C;
    if (atx) u.minus = u.minus - lam * C;
  } else if (g == G2Root{0, 1}) {
    u.j = vec_unit(R, P.dimJ, k);
  } else if (g == G2Root{0, -1}) {
    u.jp = vec_unit(R, P.dimJp, k);
  } else {
    const ZTag& tag = *gen.tag;
    if (tag.kind == ZTag::Xi) {
      u.z = z_xi(P);
      if (atx)
        u.x = Scalar::from_int(R, 2) * lam;
      else
        u.y = Scalar::from_int(R, -2) * lam;
    } else if (tag.kind == ZTag::Zeta) {
      u.z = z_zeta(P);
      if (atx)
        u.x = lam;
      else
        u.y = -lam;
    } else {
      u.z = B.zb[k];
    }
  }
  return u;
}

}  // namespace detail

// The exponential automorphism attached to a root parameter, assembled as a
// full matrix on the ordered basis.
inline LieAuto exp_root(const std::shared_ptr<const LieBasis>& B, const ExpParam& p) {
  const CubicNormPair& P = B->P;
  if (!P.proper)
    throw std::domain_error("exp_root needs a proper cubic norm pair");
  G2Root g = p.root;
  L1Tuple A = tuple_zero(P);
  if (g == G2Root{1, -1} || g == G2Root{-1, -2}) A.lam = p.s;
  else if (g == G2Root{1, 0} || g == G2Root{-1, -1}) A.b = p.v;
  else if (g == G2Root{1, 1} || g == G2Root{-1, 0}) A.bp = p.v;
  else if (g == G2Root{1, 2} || g == G2Root{-1, 1}) A.mu = p.s;

  std::vector<LieElement> img;
  img.reserve(B->dim);
  for (std::size_t idx = 0; idx < B->dim; ++idx) {
    detail::ExpGen gen;
    gen.g = B->labels[idx];
    if (gen.g == G2Root{0, 0}) {
      gen.k = idx - B->zbegin;
      gen.tag = &B->ztags[gen.k];
    } else {
      auto it = std::find(B->order.begin(), B->order.end(), gen.g);
      gen.k = idx - B->ranges[it - B->order.begin()].first;
    }
    if (g == G2Root{-2, -1})
      img.push_back(detail::exp_xy_image(P, p.s, true, *B, gen));
    else if (g == G2Root{2, 1})
      img.push_back(detail::exp_xy_image(P, p.s, false, *B, gen));
    else if (g == G2Root{0, 1})
      img.push_back(detail::exp_j_image(P, p.v, *B, gen));
    else if (g == G2Root{0, -1})
      img.push_back(detail::exp_jp_image(P, p.v, *B, gen));
    else if (g.i == 1)
      img.push_back(detail::exp_plus_image(P, A, *B, gen));
    else
      img.push_back(detail::exp_minus_image(P, A, *B, gen));
  }
  return endo_from_images(B, B, img);
}

inline LieAuto lie_identity(const std::shared_ptr<const LieBasis>& B) {
  return {B, B, Mat::identity(B->ring, B->dim)};
}

inline LieAuto auto_inverse(const LieAuto& f) {
  auto inv = try_inverse(f.mat);
  if (!inv) throw std::invalid_argument("auto_inverse: singular matrix");
  return {f.dst, f.src, std::move(*inv)};
}

inline bool auto_equal(const LieAuto& f, const LieAuto& g) { return f.mat == g.mat; }

// Full-strength automorphism test: invertibility plus bracket preservation
// on every basis pair (or `samples` random pairs if samples > 0).
inline Report is_automorphism(const LieAuto& f, int samples = 0,
                              std::uint64_t seed = 0x6a5) {
  Report rep;
  ++rep.checks;
  if (!f.is_bijective()) rep.fail("not bijective");
  rep.merge(verify_endo_bracket(f, samples, seed));
  return rep;
}

// The conjugate f^-1 o g o f.
inline LieAuto auto_conjugate(const LieAuto& g, const LieAuto& f) {
  return {f.src, f.src, try_inverse(f.mat).value() * g.mat * f.mat};
}

// The group commutator [f, g] = f^-1 o g^-1 o f o g.
inline LieAuto auto_commutator(const LieAuto& f, const LieAuto& g) {
  return {f.src, f.src,
          try_inverse(f.mat).value() * try_inverse(g.mat).value() * f.mat * g.mat};
}

// ---- homogeneous parts ----------------------------------------------------

// Splits a matrix on the labelled basis into its degree components in the
// direction of alpha: part i keeps exactly the entries that move the label by
// i * alpha. Degrees 0..4 cover every possible shift in the root grid.
inline std::vector<Mat> homogeneous_parts(const LieBasis& B, const Mat& m, G2Root alpha) {
  std::vector<Mat> parts(5, Mat(B.ring, B.dim, B.dim));
  for (std::size_t r = 0; r < B.dim; ++r)
    for (std::size_t c = 0; c < B.dim; ++c) {
      const Scalar& v = m.at(r, c);
      if (v.is_zero()) continue;
      G2Root a = B.labels[r], b = B.labels[c];
      for (int i = 0; i <= 4; ++i)
        if (a.i == b.i + i * alpha.i && a.j == b.j + i * alpha.j) {
          parts[i].at(r, c) = v;
          break;
        }
    }
  return parts;
}

// Checks that the matrix is exactly the sum of its degree parts (no entry at
// a non-multiple shift), that part 0 is the identity and part 1 the adjoint
// of the parameter.
inline Report verify_homogeneous_shape(const LieBasis& B, const LieAuto& f,
                                       const ExpParam& p) {
  Report rep;
  auto parts = homogeneous_parts(B, f.mat, p.root);
  Mat sum = parts[0];
  for (int i = 1; i <= 4; ++i) sum = sum + parts[i];
  ++rep.checks;
  if (!(sum == f.mat)) rep.fail("matrix has entries outside the root direction");
  ++rep.checks;
  if (!(parts[0] == Mat::identity(B.ring, B.dim))) rep.fail("degree-0 part is not the identity");
  LieElement a = exp_param_element(B.P, p);
  Mat ad(B.ring, B.dim, B.dim);
  for (std::size_t c = 0; c < B.dim; ++c)
    ad.set_col(c, B.coords(lie_bracket(B.P, a, B.element(c))));
  ++rep.checks;
  if (!(parts[1] == ad)) rep.fail("degree-1 part is not the adjoint of the parameter");
  return rep;
}

// The higher Leibniz rules (*)_l for the degree parts of exp_root(p):
// delta_l([v,w]) = sum_{i+j=l} [delta_i v, delta_j w] on all basis pairs.
inline Report verify_higher_leibniz(const std::shared_ptr<const LieBasis>& B,
                                    const ExpParam& p, int ellMax) {
  Report rep;
  const CubicNormPair& P = B->P;
  LieAuto f = exp_root(B, p);
  auto parts = homogeneous_parts(*B, f.mat, p.root);
  int top = static_cast<int>(parts.size()) - 1;
  std::size_t n = B->dim;
  // delta_i applied to every basis element
  std::vector<std::vector<LieElement>> d(top + 1);
  for (int i = 0; i <= top; ++i) {
    d[i].reserve(n);
    for (std::size_t c = 0; c < n; ++c) d[i].push_back(B->from_coords(parts[i].col(c)));
  }
  for (std::size_t i = 0; i < n && rep.ok; ++i)
    for (std::size_t j = i + 1; j < n && rep.ok; ++j) {
      Vec br = B->coords(lie_bracket(P, d[0][i], d[0][j]));
      for (int l = 1; l <= ellMax && rep.ok; ++l) {
        LieElement lhs = l <= top ? B->from_coords(parts[l].apply(br)) : lie_zero(P);
        LieElement rhs = lie_zero(P);
        for (int q = 0; q <= l; ++q) {
          if (q > top || l - q > top) continue;
          rhs = rhs + lie_bracket(P, d[l - q][i], d[q][j]);
        }
        ++rep.checks;
        if (!(lhs == rhs))
          rep.fail("higher Leibniz rule (*)_" + std::to_string(l) +
                   " failed on basis pair (" + std::to_string(i) + ", " +
                   std::to_string(j) + ")");
      }
    }
  return rep;
}

// ---- commutator relations -------------------------------------------------

// The six positive roots in the numbering used for the commutator relations:
// alpha_1 = (1,0), alpha_2 = (1,-1), alpha_3 = (0,-1), alpha_4 = (-1,-2),
// alpha_5 = (-1,-1), alpha_6 = (-2,-1).
inline const std::array<G2Root, 6>& g2_positive_chain() {
  static const std::array<G2Root, 6> r = {
      {{1, 0}, {1, -1}, {0, -1}, {-1, -2}, {-1, -1}, {-2, -1}}};
  return r;
}

// Checks the five commutator relations between the positive root groups and
// trivial commutation for adjacent pairs, on basis parameters plus random
// samples.
inline Report verify_g2_commutators(const std::shared_ptr<const LieBasis>& B, int samples,
                                    std::uint64_t seed) {
  Report rep;
  const CubicNormPair& P = B->P;
  const RingPtr& R = B->ring;
  const auto& chain = g2_positive_chain();
  auto x1 = [&](const Vec& b) { return exp_root(B, exp_module_param(P, chain[0], b)); };
  auto x2 = [&](const Scalar& s) { return exp_root(B, exp_scalar_param(chain[1], s)); };
  auto x3 = [&](const Vec& bp) { return exp_root(B, exp_module_param(P, chain[2], bp)); };
  auto x4 = [&](const Scalar& s) { return exp_root(B, exp_scalar_param(chain[3], s)); };
  auto x5 = [&](const Vec& b) { return exp_root(B, exp_module_param(P, chain[4], b)); };
  auto x6 = [&](const Scalar& s) { return exp_root(B, exp_scalar_param(chain[5], s)); };

  std::mt19937_64 rng(seed);
  auto run = [&](const Vec& b, const Vec& d, const Vec& bp, const Scalar& lam,
                 const Scalar& mu) {
    Vec bs = P.sharpJ(b), ds = P.sharpJ(d);
    Scalar Nb = P.normJ(b);
    ++rep.checks;
    if (!auto_equal(auto_commutator(x1(b), x3(bp)), x2(P.T(b, bp))))
      rep.fail("[x1(b), x3(b')] != x2(T(b,b'))");
    ++rep.checks;
    if (!auto_equal(auto_commutator(x3(bp), x5(b)), x4(-P.T(b, bp))))
      rep.fail("[x3(b'), x5(b)] != x4(-T(b,b'))");
    ++rep.checks;
    if (!auto_equal(auto_commutator(x2(lam), x6(mu)), x4(lam * mu)))
      rep.fail("[x2(lam), x6(mu)] != x4(lam mu)");
    ++rep.checks;
    LieAuto rhs4 = {B, B, x2(P.T(d, bs)).mat * x3(-P.crossJ(b, d)).mat * x4(P.T(b, ds)).mat};
    if (!auto_equal(auto_commutator(x1(b), x5(d)), rhs4))
      rep.fail("[x1(b), x5(d)] != x2(T(d,b#)) x3(-b x d) x4(T(b,d#))");
    ++rep.checks;
    LieAuto rhs5 = {B, B, x2(-(lam * Nb)).mat * x3(lam * bs).mat *
                              x4(lam * lam * Nb).mat * x5(lam * b).mat};
    if (!auto_equal(auto_commutator(x1(b), x6(lam)), rhs5))
      rep.fail("[x1(b), x6(lam)] != x2(-lam N(b)) x3(lam b#) x4(lam^2 N(b)) x5(lam b)");
  };

  // basis parameters, paired up diagonally
  Scalar one = Scalar::one(R);
  for (std::size_t t = 0; t < std::max(P.dimJ, P.dimJp) && rep.ok; ++t)
    run(vec_unit(R, P.dimJ, t % P.dimJ), vec_unit(R, P.dimJ, (t + 1) % P.dimJ),
        vec_unit(R, P.dimJp, t % P.dimJp), one, one);
  // random parameters
  for (int t = 0; t < samples && rep.ok; ++t)
    run(vec_random(R, P.dimJ, rng), vec_random(R, P.dimJ, rng),
        vec_random(R, P.dimJp, rng), Scalar::random(R, rng), Scalar::random(R, rng));

  // adjacent positive pairs commute
  auto exp_at = [&](G2Root g, std::mt19937_64& r2) {
    if (g2_is_long(g)) return exp_root(B, exp_scalar_param(g, Scalar::random(R, r2)));
    std::size_t n = g2_param_is_J(g) ? P.dimJ : P.dimJp;
    return exp_root(B, exp_module_param(P, g, vec_random(R, n, r2)));
  };
  for (std::size_t i = 0; i < chain.size() && rep.ok; ++i)
    for (std::size_t j = i + 1; j < chain.size() && rep.ok; ++j) {
      // adjacency: no positive integer combination of the two is a root
      bool adjacent = true;
      for (int s = 1; s <= 4 && adjacent; ++s)
        for (int t = 1; t <= 4 && adjacent; ++t)
          if (g2_is_root({s * chain[i].i + t * chain[j].i, s * chain[i].j + t * chain[j].j}))
            adjacent = false;
      if (!adjacent) continue;
      for (int t = 0; t < 2 && rep.ok; ++t) {
        ++rep.checks;
        if (!auto_equal(auto_commutator(exp_at(chain[i], rng), exp_at(chain[j], rng)),
                        lie_identity(B)))
          rep.fail("adjacent positive root groups do not commute");
      }
    }
  return rep;
}

// ---- Weyl elements --------------------------------------------------------

struct WeylElements {
  LieAuto w_long;   // the horizontal reflection, axis (2,1)
  LieAuto w_short;  // the anti-diagonal reflection of the p-involution, axis (-1,-1)
  Isotope iso;
};

inline WeylElements weyl_elements(const std::shared_ptr<const LieBasis>& B, const Vec& p) {
  WeylElements w{reflection(B, ReflectionKind::Horizontal), lie_identity(B), {}};
  w.iso = isotope(B->P, p);
  w.w_short = reflection_anti(B, w.iso.involution);
  return w;
}

// Recovers the root parameter of an automorphism known to lie in the root
// group of rho: the degree-1 part must be the adjoint of an element of
// L_rho, the parameter is solved for linearly and the full matrix is then
// required to coincide with its exponential.
inline std::optional<ExpParam> extract_exp_param(const std::shared_ptr<const LieBasis>& B,
                                                 const Mat& g, G2Root rho) {
  const CubicNormPair& P = B->P;
  auto parts = homogeneous_parts(*B, g, rho);
  std::size_t pdim = g2_is_long(rho) ? 1 : (g2_param_is_J(rho) ? P.dimJ : P.dimJp);
  std::size_t n = B->dim;
  // stack the adjoint matrices of the parameter-space basis as columns
  Mat M(B->ring, n * n, pdim);
  for (std::size_t t = 0; t < pdim; ++t) {
    ExpParam unit{rho, Scalar::one(B->ring), vec_unit(B->ring, pdim, t)};
    if (g2_is_long(rho)) unit.v.clear();
    LieElement a = exp_param_element(P, unit);
    for (std::size_t c = 0; c < n; ++c) {
      Vec col = B->coords(lie_bracket(P, a, B->element(c)));
      for (std::size_t r = 0; r < n; ++r) M.at(c * n + r, t) = col[r];
    }
  }
  Vec target = vec_zero(B->ring, n * n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) target[c * n + r] = parts[1].at(r, c);
  auto sol = solve(M, target);
  if (!sol) return std::nullopt;
  ExpParam p{rho, Scalar::zero(B->ring), {}};
  if (g2_is_long(rho))
    p.s = (*sol)[0];
  else
    p.v = *sol;
  if (!(exp_root(B, p).mat == g)) return std::nullopt;
  return p;
}

// Conjugation by a Weyl element with the given axis maps each root group
// onto the root group of the reflected root.
inline Report verify_weyl_conjugation(const std::shared_ptr<const LieBasis>& B,
                                      const LieAuto& w, G2Root axis, int samples,
                                      std::uint64_t seed) {
  Report rep;
  const CubicNormPair& P = B->P;
  const RingPtr& R = B->ring;
  std::mt19937_64 rng(seed);
  Mat winv = try_inverse(w.mat).value();
  for (G2Root beta : g2_roots()) {
    if (!rep.ok) break;
    G2Root target = g2_reflect(beta, axis);
    std::size_t pdim = g2_is_long(beta) ? 1 : (g2_param_is_J(beta) ? P.dimJ : P.dimJp);
    std::vector<ExpParam> params;
    for (std::size_t t = 0; t < pdim; ++t) {
      if (g2_is_long(beta))
        params.push_back(exp_scalar_param(beta, Scalar::one(R)));
      else
        params.push_back(exp_module_param(P, beta, vec_unit(R, pdim, t)));
    }
    for (int t = 0; t < samples; ++t) {
      if (g2_is_long(beta))
        params.push_back(exp_scalar_param(beta, Scalar::random(R, rng)));
      else
        params.push_back(exp_module_param(P, beta, vec_random(R, pdim, rng)));
    }
    for (const ExpParam& p : params) {
      if (!rep.ok) break;
      Mat conj = winv * exp_root(B, p).mat * w.mat;
      ++rep.checks;
      if (!extract_exp_param(B, conj, target))
        rep.fail("conjugate does not land in the reflected root group");
    }
  }
  return rep;
}

// Product decompositions of the two Weyl elements, their conjugation action,
// and the parity-conjugation rule for the squared long Weyl element.
inline Report verify_g2_weyl(const std::shared_ptr<const LieBasis>& B, const Vec& p,
                             int samples, std::uint64_t seed) {
  Report rep;
  const CubicNormPair& P = B->P;
  const RingPtr& R = B->ring;
  Scalar one = Scalar::one(R);
  WeylElements w = weyl_elements(B, p);

  // w_long = e_y o e_x o e_y = e_x o e_y o e_x with unit parameters
  Mat ex = exp_root(B, exp_scalar_param({-2, -1}, one)).mat;
  Mat ey = exp_root(B, exp_scalar_param({2, 1}, one)).mat;
  ++rep.checks;
  if (!(w.w_long.mat == ey * ex * ey)) rep.fail("w_long != e_y e_x e_y");
  ++rep.checks;
  if (!(w.w_long.mat == ex * ey * ex)) rep.fail("w_long != e_x e_y e_x");

  // w_short^-1 = e_{(0,0,-p',0)_+} o e_{(0,p,0,0)_-} o e_{(0,0,-p',0)_+}
  Scalar Np = P.normJ(p);
  Vec pp = Np.invert() * P.sharpJ(p);
  Mat f1 = exp_root(B, exp_module_param(P, {1, 1}, -pp)).mat;
  Mat f2 = exp_root(B, exp_module_param(P, {-1, -1}, p)).mat;
  ++rep.checks;
  if (!(try_inverse(w.w_short.mat).value() == f1 * f2 * f1))
    rep.fail("w_short^-1 != e_{(0,0,-p',0)+} e_{(0,p,0,0)-} e_{(0,0,-p',0)+}");

  rep.merge(verify_weyl_conjugation(B, w.w_long, {2, 1}, samples, seed));
  rep.merge(verify_weyl_conjugation(B, w.w_short, {-1, -1}, samples, seed ^ 0x9e37));

  // parity conjugation: w_long^2 acts as (-1)^i on L_i and conjugating an
  // exponential by it negates parameters of odd-degree roots
  Mat par = w.w_long.mat * w.w_long.mat;
  std::mt19937_64 rng(seed);
  for (G2Root g : g2_roots()) {
    ExpParam q = g2_is_long(g)
                     ? exp_scalar_param(g, Scalar::random(R, rng))
                     : exp_module_param(P, g,
                                        vec_random(R, g2_param_is_J(g) ? P.dimJ : P.dimJp, rng));
    ExpParam qc = (g.i % 2 != 0) ? exp_param_negate(q) : q;
    ++rep.checks;
    if (!(try_inverse(par).value() * exp_root(B, q).mat * par == exp_root(B, qc).mat))
      rep.fail("parity conjugation rule failed");
  }
  return rep;
}

// ---- triangularity --------------------------------------------------------

// Basis indices sorted by the height of their root label (Z sits at height
// zero); ties keep the canonical order.
inline std::vector<std::size_t> height_order(const LieBasis& B) {
  std::vector<std::size_t> idx(B.dim);
  for (std::size_t i = 0; i < B.dim; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return g2_height(B.labels[a]) < g2_height(B.labels[b]);
  });
  return idx;
}

// Products of positive-root exponentials are unitriangular with respect to
// the height order (entries only strictly below the diagonal blocks), and
// negative products are anti-unitriangular; hence U+ and U- intersect
// trivially.
inline Report verify_triangularity(const std::shared_ptr<const LieBasis>& B, int products,
                                   int factors, std::uint64_t seed) {
  Report rep;
  const CubicNormPair& P = B->P;
  const RingPtr& R = B->ring;
  std::vector<std::size_t> ord = height_order(*B);
  auto check_tri = [&](const Mat& m, int sign, const char* what) {
    ++rep.checks;
    for (std::size_t a = 0; a < B->dim; ++a)
      for (std::size_t b = 0; b < B->dim; ++b) {
        int hr = g2_height(B->labels[ord[a]]), hc = g2_height(B->labels[ord[b]]);
        const Scalar& v = m.at(ord[a], ord[b]);
        if (ord[a] == ord[b]) {
          if (!(v == Scalar::one(R))) {
            rep.fail(std::string(what) + ": diagonal entry is not one");
            return;
          }
        } else if (!v.is_zero() && !(sign > 0 ? hr > hc : hr < hc)) {
          rep.fail(std::string(what) + ": entry outside the triangular profile");
          return;
        }
      }
  };

  std::vector<G2Root> pos, neg;
  for (G2Root g : g2_roots()) (g2_height(g) > 0 ? pos : neg).push_back(g);
  std::mt19937_64 rng(seed);
  auto random_exp = [&](const std::vector<G2Root>& roots) {
    G2Root g = roots[rng() % roots.size()];
    if (g2_is_long(g)) return exp_root(B, exp_scalar_param(g, Scalar::random(R, rng)));
    std::size_t n = g2_param_is_J(g) ? P.dimJ : P.dimJp;
    return exp_root(B, exp_module_param(P, g, vec_random(R, n, rng)));
  };

  check_tri(Mat::identity(R, B->dim), +1, "empty product");
  check_tri(exp_root(B, exp_scalar_param({-2, -1}, Scalar::random(R, rng))).mat, +1,
            "single exponential");
  for (int t = 0; t < products && rep.ok; ++t) {
    Mat mp = Mat::identity(R, B->dim), mn = Mat::identity(R, B->dim);
    for (int f = 0; f < factors; ++f) {
      mp = mp * random_exp(pos).mat;
      mn = mn * random_exp(neg).mat;
    }
    check_tri(mp, +1, "positive product");
    check_tri(mn, -1, "negative product");
  }
  return rep;
}

}  // namespace alg
