#pragma once
// The F4 refinement of the G2-graded Lie algebra L(J, J') when J = Her3(C, G):
// the subspaces Z_{i->j} of the middle component and their conic
// parametrization, the three 5-gradings attached to the hyperbolic pairs
// (e_i, e_i'), the 48 root spaces as exact intersections of the four
// gradings, the d-operator relations that drive the decomposition, and the
// Chevalley-type basis with integer structure constants independent of the
// diagonal twist G.

#include "alg/jordan.hpp"
#include "alg/lie.hpp"
#include "alg/roots.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace alg {

struct F4Lie {
  Her3 H;  // rebased to the basis ring
  std::shared_ptr<const LieBasis> B;
  std::array<Subspace, 5> grade1;                 // original L_p, index p + 2
  std::array<std::array<Subspace, 5>, 3> grade5;  // grade5[i][p + 2]
};

// ---- Z_{i -> j} -----------------------------------------------------------

// All indices are 0-based; (i, j, l) cyclic means j = kCyc[i], l = kCyc[j].

inline std::vector<Vec> peirce_basis(const Her3& H, int p, int q) {
  std::vector<Vec> out;
  if (p == q) {
    out.push_back(H.e(p));
  } else {
    for (std::size_t t = 0; t < H.C.dim; ++t) out.push_back(H.off(p, q, H.C.basis(t)));
  }
  return out;
}

// Generators d_{a, a'} with a in J_{il}, a' in J'_{lj}, over l = 1, 2, 3.
inline std::vector<ZElement> z_itoj_gens(const F4Lie& F, int i, int j) {
  const CubicNormPair& P = F.B->P;
  std::vector<ZElement> out;
  for (int l = 0; l < 3; ++l)
    for (const Vec& a : peirce_basis(F.H, i, l))
      for (const Vec& ap : peirce_basis(F.H, l, j)) out.push_back(z_d(P, a, ap));
  return out;
}

// The conic parametrization a -> d_{e_i, a[ij]'} of Z_{i->j} for i != j.
inline std::vector<ZElement> z_itoj_basis(const F4Lie& F, int i, int j) {
  if (i == j) throw std::invalid_argument("z_itoj_basis: needs distinct indices");
  const CubicNormPair& P = F.B->P;
  std::vector<ZElement> out;
  for (std::size_t t = 0; t < F.H.C.dim; ++t)
    out.push_back(z_d(P, F.H.e(i), F.H.off(i, j, F.H.C.basis(t))));
  return out;
}

namespace detail {

inline Subspace span_of(const F4Lie& F, const std::vector<LieElement>& gens) {
  std::vector<Vec> rows;
  rows.reserve(gens.size());
  for (const LieElement& u : gens) rows.push_back(F.B->coords(u));
  return Subspace::span(F.B->ring, F.B->dim, rows);
}

inline Subspace z_span(const F4Lie& F, const std::vector<ZElement>& zs) {
  std::vector<LieElement> gens;
  for (const ZElement& z : zs) gens.push_back(lie_z(F.B->P, z));
  return span_of(F, gens);
}

}  // namespace detail

inline Subspace z_itoj_span(const F4Lie& F, int i, int j) {
  return detail::z_span(F, z_itoj_gens(F, i, j));
}

// ---- the three new 5-gradings ---------------------------------------------

namespace detail {

// Generating elements of L^{(i)}_p per the definition of the three gradings.
inline std::vector<LieElement> grading_gens(const F4Lie& F, int i, int p) {
  const CubicNormPair& P = F.B->P;
  const Her3& H = F.H;
  const RingPtr& R = F.B->ring;
  int j = kCyc[i], l = kCyc[j];
  std::vector<LieElement> out;
  Scalar one = Scalar::one(R);

  auto jvecs = [&](std::initializer_list<std::pair<int, int>> blocks) {
    std::vector<Vec> v;
    for (auto [p1, q1] : blocks)
      for (const Vec& b : peirce_basis(H, p1, q1)) v.push_back(b);
    return v;
  };
  auto tuples = [&](const std::vector<Vec>& bs, const std::vector<Vec>& bps, bool lam,
                    bool mu) {
    for (int side = 0; side < 2; ++side) {
      auto mk = [&](const L1Tuple& t) {
        out.push_back(side == 0 ? lie_minus(P, t) : lie_plus(P, t));
      };
      if (lam) mk({one, vec_zero(R, P.dimJ), vec_zero(R, P.dimJp), Scalar::zero(R)});
      for (const Vec& b : bs)
        mk({Scalar::zero(R), b, vec_zero(R, P.dimJp), Scalar::zero(R)});
      for (const Vec& bp : bps)
        mk({Scalar::zero(R), vec_zero(R, P.dimJ), bp, Scalar::zero(R)});
      if (mu) mk({Scalar::zero(R), vec_zero(R, P.dimJ), vec_zero(R, P.dimJp), one});
    }
  };
  auto zparts = [&](std::initializer_list<std::pair<int, int>> arrows) {
    for (auto [s, t] : arrows)
      for (const ZElement& z : z_itoj_gens(F, s, t)) out.push_back(lie_z(P, z));
  };

  if (p == -2) {
    out.push_back(lie_jp(P, H.e(i)));
  } else if (p == 2) {
    out.push_back(lie_j(P, H.e(i)));
  } else if (p == -1) {
    tuples(jvecs({{j, j}, {l, l}, {j, l}}), {H.e(i)}, true, false);
    for (const Vec& v : jvecs({{i, j}, {l, i}})) out.push_back(lie_jp(P, v));
    zparts({{j, i}, {l, i}});
  } else if (p == 1) {
    tuples({H.e(i)}, jvecs({{j, j}, {l, l}, {j, l}}), false, true);
    for (const Vec& v : jvecs({{i, j}, {l, i}})) out.push_back(lie_j(P, v));
    zparts({{i, j}, {i, l}});
  } else {
    out.push_back(lie_x(P, one));
    out.push_back(lie_y(P, one));
    tuples(jvecs({{i, j}, {l, i}}), jvecs({{i, j}, {l, i}}), false, false);
    for (const Vec& v : jvecs({{j, j}, {l, l}, {j, l}})) {
      out.push_back(lie_j(P, v));
      out.push_back(lie_jp(P, v));
    }
    zparts({{i, i}, {j, j}, {l, l}, {j, l}, {l, j}});
    out.push_back(lie_z(P, z_xi(P)));
    out.push_back(lie_z(P, z_zeta(P)));
  }
  return out;
}

}  // namespace detail

inline std::array<Subspace, 5> five_grading(const F4Lie& F, int i) {
  std::array<Subspace, 5> g{Subspace::span(F.B->ring, F.B->dim, {}),
                            Subspace::span(F.B->ring, F.B->dim, {}),
                            Subspace::span(F.B->ring, F.B->dim, {}),
                            Subspace::span(F.B->ring, F.B->dim, {}),
                            Subspace::span(F.B->ring, F.B->dim, {})};
  for (int p = -2; p <= 2; ++p)
    g[p + 2] = detail::span_of(F, detail::grading_gens(F, i, p));
  return g;
}

inline F4Lie f4_make(const Her3& Hin) {
  if (!Hin.gamma_invertible())
    throw std::domain_error("f4_make: the diagonal twist must be invertible");
  F4Lie F;
  F.B = build_basis(Hin.pair());
  F.H = Hin.rebase(F.B->ring);
  for (int p = -2; p <= 2; ++p) {
    std::vector<Vec> rows;
    for (std::size_t idx = 0; idx < F.B->dim; ++idx)
      if (F.B->labels[idx].i == p) rows.push_back(vec_unit(F.B->ring, F.B->dim, idx));
    F.grade1[p + 2] = Subspace::span(F.B->ring, F.B->dim, rows);
  }
  for (int i = 0; i < 3; ++i) F.grade5[i] = five_grading(F, i);
  return F;
}

// Checks that L = (+)_p L^(i)_p and that the bracket adds degrees.
inline Report verify_five_grading(const F4Lie& F, int i) {
  Report rep;
  const CubicNormPair& P = F.B->P;
  const auto& g = F.grade5[i];
  std::size_t total = 0;
  Subspace sum = Subspace::span(F.B->ring, F.B->dim, {});
  for (int p = -2; p <= 2; ++p) {
    total += g[p + 2].dim();
    sum = sum.sum(g[p + 2]);
  }
  ++rep.checks;
  if (total != F.B->dim || sum.dim() != F.B->dim)
    rep.fail("the five pieces do not decompose L directly");
  ++rep.checks;
  if (!(g[0].dim() == 1 && g[0].contains(F.B->coords(lie_jp(P, F.H.e(i))))))
    rep.fail("L^(i)_{-2} is not the line through e_i'");
  ++rep.checks;
  if (!(g[4].dim() == 1 && g[4].contains(F.B->coords(lie_j(P, F.H.e(i))))))
    rep.fail("L^(i)_{2} is not the line through e_i");
  for (int p = -2; p <= 2 && rep.ok; ++p)
    for (int q = p; q <= 2 && rep.ok; ++q) {
      int t = p + q;
      const Subspace* target = (t >= -2 && t <= 2) ? &g[t + 2] : nullptr;
      for (std::size_t r = 0; r < g[p + 2].dim() && rep.ok; ++r)
        for (std::size_t s = 0; s < g[q + 2].dim() && rep.ok; ++s) {
          LieElement u = F.B->from_coords(g[p + 2].basis.row(r));
          LieElement v = F.B->from_coords(g[q + 2].basis.row(s));
          Vec w = F.B->coords(lie_bracket(P, u, v));
          ++rep.checks;
          bool good = target ? target->contains(w) : vec_is_zero(w);
          if (!good)
            rep.fail("bracket leaves the grading at degrees (" + std::to_string(p) +
                     ", " + std::to_string(q) + ")");
        }
    }
  return rep;
}

// ---- F4 root spaces -------------------------------------------------------

struct F4RootSpace {
  F4Root root;
  Subspace space;
  bool long_root = false;
};

inline Subspace f4_space_at(const F4Lie& F, int p, int i, int j, int l) {
  Subspace s = F.grade1[p + 2].intersect(F.grade5[0][i + 2]);
  s = s.intersect(F.grade5[1][j + 2]);
  return s.intersect(F.grade5[2][l + 2]);
}

inline F4RootSpace f4_root_space(const F4Lie& F, F4Root a) {
  if (!f4_is_root(a) && !a.is_zero())
    throw std::invalid_argument("f4_root_space: not a root");
  return {a, f4_space_at(F, a.p, a.i, a.j, a.l), f4_is_long(a)};
}

// Verifies the full F4-grading: the nonzero intersections are exactly the 48
// roots plus zero, ranks are 1 / rank(C) / the complement, the sum is direct,
// the bracket adds labels, and the coarsening along pi recovers the G2
// grading.
inline Report verify_f4_grading(const F4Lie& F, bool exhaustive_scan = true) {
  Report rep;
  const CubicNormPair& P = F.B->P;
  const RingPtr& R = F.B->ring;
  std::map<std::array<int, 4>, Subspace> spaces;
  for (F4Root a : f4_roots()) spaces.emplace(a.coords(), f4_space_at(F, a.p, a.i, a.j, a.l));
  Subspace zero_space = f4_space_at(F, 0, 0, 0, 0);

  std::size_t total = zero_space.dim();
  Subspace sum = zero_space;
  for (F4Root a : f4_roots()) {
    const Subspace& s = spaces.at(a.coords());
    ++rep.checks;
    std::size_t want = f4_is_long(a) ? 1 : F.H.C.dim;
    if (s.dim() != want) rep.fail("root space has the wrong rank");
    total += s.dim();
    sum = sum.sum(s);
  }
  ++rep.checks;
  if (total != F.B->dim || sum.dim() != F.B->dim)
    rep.fail("the 49 pieces do not decompose L directly");

  if (exhaustive_scan) {
    ++rep.checks;
    for (int p = -2; p <= 2 && rep.ok; ++p)
      for (int i = -2; i <= 2 && rep.ok; ++i)
        for (int j = -2; j <= 2 && rep.ok; ++j)
          for (int l = -2; l <= 2 && rep.ok; ++l) {
            F4Root a{p, i, j, l};
            bool expect = a.is_zero() || f4_is_root(a);
            if (f4_space_at(F, p, i, j, l).dim() != 0u && !expect)
              rep.fail("nonzero intersection at a non-root label");
            if (expect) {
              std::size_t want =
                  a.is_zero() ? zero_space.dim() : (f4_is_long(a) ? 1 : F.H.C.dim);
              if (f4_space_at(F, p, i, j, l).dim() != want)
                rep.fail("wrong rank at a grid label");
            }
          }
  }

  // bracket law over all 49 x 49 pairs of basis vectors
  auto space_of = [&](const std::array<int, 4>& c) -> const Subspace& {
    auto it = spaces.find(c);
    return it != spaces.end() ? it->second : zero_space;
  };
  std::vector<std::array<int, 4>> labels{{0, 0, 0, 0}};
  for (F4Root a : f4_roots()) labels.push_back(a.coords());
  for (const auto& la : labels) {
    if (!rep.ok) break;
    for (const auto& lb : labels) {
      if (!rep.ok) break;
      std::array<int, 4> lt{la[0] + lb[0], la[1] + lb[1], la[2] + lb[2], la[3] + lb[3]};
      F4Root t{lt[0], lt[1], lt[2], lt[3]};
      bool target_exists = t.is_zero() || f4_is_root(t);
      const Subspace& A = space_of(la);
      const Subspace& Bsp = space_of(lb);
      for (std::size_t r = 0; r < A.dim() && rep.ok; ++r)
        for (std::size_t s = 0; s < Bsp.dim() && rep.ok; ++s) {
          Vec w = F.B->coords(lie_bracket(P, F.B->from_coords(A.basis.row(r)),
                                          F.B->from_coords(Bsp.basis.row(s))));
          ++rep.checks;
          bool good = target_exists ? space_of(lt).contains(w) : vec_is_zero(w);
          if (!good) rep.fail("bracket leaves the F4 grading");
        }
    }
  }

  // pi-coarsening returns the original G2 grading
  std::map<F4Root, Subspace> fine;
  for (F4Root a : f4_roots()) fine.emplace(a, spaces.at(a.coords()));
  auto coarse = g2_grading_from_f4(fine);
  for (G2Root g : g2_roots()) {
    std::vector<Vec> rows;
    for (std::size_t idx = 0; idx < F.B->dim; ++idx)
      if (F.B->labels[idx] == g) rows.push_back(vec_unit(R, F.B->dim, idx));
    ++rep.checks;
    if (!(coarse.at(g) == Subspace::span(R, F.B->dim, rows)))
      rep.fail("coarsened root space differs from the G2 grading");
  }
  {
    std::vector<Vec> rows;
    for (std::size_t idx = F.B->zbegin; idx < F.B->dim; ++idx)
      rows.push_back(vec_unit(R, F.B->dim, idx));
    ++rep.checks;
    if (!(coarse.at(G2Root{0, 0}).sum(zero_space) == Subspace::span(R, F.B->dim, rows)))
      rep.fail("zero-fiber coarsening plus the zero space differs from Z");
  }
  return rep;
}

// Checks that Z = Z^(i)_{-1} + Z^(i)_0 + Z^(i)_1 directly and that the conic
// parametrization of Z_{i->j} is bijective onto it.
inline Report verify_z_decomposition(const F4Lie& F) {
  Report rep;
  const RingPtr& R = F.B->ring;
  for (int i = 0; i < 3 && rep.ok; ++i) {
    int j = kCyc[i], l = kCyc[j];
    Subspace zm = z_itoj_span(F, j, i).sum(z_itoj_span(F, l, i));
    Subspace z0 = z_itoj_span(F, i, i).sum(z_itoj_span(F, j, j)).sum(z_itoj_span(F, l, l));
    z0 = z0.sum(z_itoj_span(F, j, l)).sum(z_itoj_span(F, l, j));
    z0 = z0.sum(detail::z_span(F, {z_xi(F.B->P), z_zeta(F.B->P)}));
    Subspace zp = z_itoj_span(F, i, j).sum(z_itoj_span(F, i, l));
    std::vector<Vec> zrows;
    for (std::size_t idx = F.B->zbegin; idx < F.B->dim; ++idx)
      zrows.push_back(vec_unit(R, F.B->dim, idx));
    Subspace whole = Subspace::span(R, F.B->dim, zrows);
    ++rep.checks;
    if (zm.dim() + z0.dim() + zp.dim() != whole.dim() ||
        !(zm.sum(z0).sum(zp) == whole))
      rep.fail("Z does not decompose directly along the hyperbolic pair " +
               std::to_string(i + 1));
  }
  for (int i = 0; i < 3 && rep.ok; ++i)
    for (int j = 0; j < 3 && rep.ok; ++j) {
      if (i == j) continue;
      Subspace span = z_itoj_span(F, i, j);
      Subspace param = detail::z_span(F, z_itoj_basis(F, i, j));
      ++rep.checks;
      if (!(span == param) || param.dim() != F.H.C.dim)
        rep.fail("the conic parametrization of Z_{i->j} is not bijective");
    }
  // Z_{ij,lm} = 0 when the index sets are disjoint
  for (int i = 0; i < 3 && rep.ok; ++i)
    for (int j = 0; j < 3 && rep.ok; ++j)
      for (int l = 0; l < 3 && rep.ok; ++l)
        for (int m = 0; m < 3 && rep.ok; ++m) {
          if (i == l || i == m || j == l || j == m) continue;
          for (const Vec& a : peirce_basis(F.H, i, j))
            for (const Vec& ap : peirce_basis(F.H, l, m)) {
              ++rep.checks;
              if (!z_d(F.B->P, a, ap).op.is_zero())
                rep.fail("Z_{ij,lm} nonzero for disjoint index sets");
            }
        }
  return rep;
}

// ---- d-operator relations -------------------------------------------------

inline Report verify_dd_relations(const F4Lie& F, int samples, std::uint64_t seed) {
  Report rep;
  const CubicNormPair& P = F.B->P;
  const Her3& H = F.H;
  const ConicAlgebra& C = H.C;
  const RingPtr& R = F.B->ring;
  std::mt19937_64 rng(seed);
  Scalar two = Scalar::from_int(R, 2);
  auto chk = [&](bool c, const std::string& what) {
    ++rep.checks;
    if (!c) rep.fail("d-relation failed: " + what);
  };

  // (1) sum of the hyperbolic d's
  {
    ZElement lhs = z_d(P, H.e(0), H.e(0)) + z_d(P, H.e(1), H.e(1)) + z_d(P, H.e(2), H.e(2));
    chk(lhs == two * z_zeta(P) - z_xi(P), "d_{e1,e1'} + d_{e2,e2'} + d_{e3,e3'} = 2 zeta - xi");
  }

  std::vector<Vec> pool;
  for (std::size_t t = 0; t < C.dim; ++t) pool.push_back(C.basis(t));
  for (int t = 0; t < std::max(1, samples); ++t) pool.push_back(vec_random(R, C.dim, rng));

  for (int i = 0; i < 3 && rep.ok; ++i) {
    int j = kCyc[i], l = kCyc[j];
    for (const Vec& a : pool) {
      if (!rep.ok) break;
      // (2) d(e_j, a[ji]') = d(a[ji], e_i')
      chk(z_d(P, H.e(j), H.off(j, i, a)) == z_d(P, H.off(j, i, a), H.e(i)),
          "d(e_j, a[ji]') = d(a[ji], e_i')");
      // shift identity: d(a[ij], 1[ji]') = d(1[ij], a[ji]')
      chk(z_d(P, H.off(i, j, a), H.off(j, i, C.unit)) ==
              z_d(P, H.off(i, j, C.unit), H.off(j, i, a)),
          "d(a[ij], 1[ji]') = d(1[ij], a[ji]')");
      for (const Vec& b : pool) {
        // (3) the four expressions for d(a[jl], b[li]')
        ZElement base = z_d(P, H.off(j, l, a), H.off(l, i, b));
        Vec ab = C.mul(a, b);
        chk(base == z_d(P, H.off(j, l, C.unit), H.off(l, i, ab)),
            "d(a[jl], b[li]') = d(1[jl], ab[li]')");
        chk(base == z_d(P, H.off(j, l, ab), H.off(l, i, C.unit)),
            "d(a[jl], b[li]') = d(ab[jl], 1[li]')");
        chk(base == H.gamma[l] * z_d(P, H.e(j), H.off(j, i, ab)),
            "d(a[jl], b[li]') = gamma_l d(e_j, ab[ji]')");
        // (5) trace linearization
        ZElement dsum = z_d(P, H.e(i), H.e(i)) + z_d(P, H.e(j), H.e(j));
        chk(z_d(P, H.off(i, j, a), H.off(j, i, C.conj(b))) +
                    z_d(P, H.off(i, j, b), H.off(j, i, C.conj(a))) ==
                (H.gamma[i] * H.gamma[j] * C.trace(C.mul(a, C.conj(b)))) * dsum,
            "trace form of the norm relation");
      }
      // (4) norm relation
      ZElement dsum = z_d(P, H.e(i), H.e(i)) + z_d(P, H.e(j), H.e(j));
      chk(z_d(P, H.off(i, j, a), H.off(j, i, C.conj(a))) ==
              (H.gamma[i] * H.gamma[j] * C.norm(a)) * dsum,
          "d(a[ij], conj(a)[ji]') = gamma_i gamma_j n(a) (d_i + d_j)");
    }
  }

  // cyclic sum identity
  Scalar g123 = H.gamma[0] * H.gamma[1] * H.gamma[2];
  for (int t = 0; t < std::max(1, samples) && rep.ok; ++t) {
    std::array<Vec, 3> a{pool[rng() % pool.size()], pool[rng() % pool.size()],
                         pool[rng() % pool.size()]};
    ZElement lhs{Mat(R, z_xi(P).op.rows(), z_xi(P).op.cols())};
    for (int i = 0; i < 3; ++i) {
      int j = kCyc[i], l = kCyc[j];
      lhs = lhs + H.gamma[i] * z_d(P, H.off(j, l, a[i]),
                                   H.off(j, l, C.mul(C.conj(a[l]), C.conj(a[j]))));
    }
    Scalar tr = g123 * C.trace(C.mul(C.mul(a[0], a[1]), a[2]));
    chk(lhs == tr * (two * z_zeta(P) - z_xi(P)),
        "cyclic sum = gamma1 gamma2 gamma3 t(a1 a2 a3) (2 zeta - xi)");
  }
  return rep;
}

// ---- Chevalley-type basis -------------------------------------------------

inline std::size_t f4_param_dim(const F4Lie& F, F4Root a) {
  return f4_is_long(a) ? 1 : F.H.C.dim;
}

namespace detail {

// Membership in the sign set S of the root homomorphism definition.
inline bool f4_sign_flip(F4Root a) {
  if (f4_is_long(a)) {
    static const std::array<std::array<int, 4>, 8> flip{{{2, 0, 0, 0},
                                                         {0, 2, 0, 0},
                                                         {0, 0, -2, 0},
                                                         {0, 0, 0, 2},
                                                         {1, 1, 1, 1},
                                                         {1, -1, -1, 1},
                                                         {-1, -1, 1, 1},
                                                         {-1, 1, -1, 1}}};
    for (const auto& c : flip)
      if (a.coords() == c) return true;
    return false;
  }
  static const std::array<std::array<int, 4>, 6> flip{{{1, 0, -1, 0},
                                                       {0, 1, 0, 1},
                                                       {0, 0, 1, 1},
                                                       {0, -1, -1, 0},
                                                       {-1, 1, 0, 0},
                                                       {-1, 0, 0, 1}}};
  for (const auto& c : flip)
    if (a.coords() == c) return true;
  return false;
}

// The twist constants lambda_{ij} (0-based indices).
inline Scalar f4_lambda(const F4Lie& F, int i, int j) {
  const auto& g = F.H.gamma;
  auto inv = [](const Scalar& s) { return s.invert(); };
  if (i == 0 && j == 1) return inv(g[0]) * inv(g[1]) * g[2];
  if (i == 0 && j == 2) return inv(g[1]);
  if (i == 1 && j == 2) return g[0] * inv(g[1]) * inv(g[2]);
  if (i == 1 && j == 0) return inv(g[2]);
  if (i == 2 && j == 0) return inv(g[0]) * g[1] * inv(g[2]);
  return inv(g[0]);  // (i, j) = (2, 1)
}

}  // namespace detail

// The root homomorphism into L at an F4 root; the parameter is a length-1
// vector for long roots and a conic element for short roots.
inline LieElement f4_rhom(const F4Lie& F, F4Root al, const Vec& par) {
  if (!f4_is_root(al)) throw std::invalid_argument("f4_rhom: not a root");
  if (par.size() != f4_param_dim(F, al))
    throw std::invalid_argument("f4_rhom: parameter has the wrong rank");
  const CubicNormPair& P = F.B->P;
  const Her3& H = F.H;
  bool lng = f4_is_long(al);
  Vec a = detail::f4_sign_flip(al) ? -par : par;
  std::array<int, 3> pr{al.i, al.j, al.l};
  G2Root g = pi(al);
  auto inv = [](const Scalar& s) { return s.invert(); };

  // theta_l / theta'_l with (i, j, l) cyclic, in both the k- and C-variants
  auto cyc_from_l = [&](int l) {
    int i = kCyc[l], j = kCyc[i];
    return std::pair<int, int>{i, j};
  };
  auto into_J = [&](int l) {
    auto [i, j] = cyc_from_l(l);
    return lng ? H.diag(l, inv(H.gamma[i]) * H.gamma[j] * a[0])
               : H.off(i, j, inv(H.gamma[j]) * a);
  };
  auto into_Jp = [&](int l) {
    auto [i, j] = cyc_from_l(l);
    return lng ? H.diag(l, H.gamma[i] * inv(H.gamma[j]) * a[0])
               : H.off(i, j, inv(H.gamma[i]) * a);
  };

  if (g == G2Root{-2, -1}) return lie_x(P, a[0]);
  if (g == G2Root{2, 1}) return lie_y(P, a[0]);
  if (g.i == 1 || g.i == -1) {
    int s = pr[0] + pr[1] + pr[2];
    L1Tuple t = tuple_zero(P);
    if (s == -3) t.lam = a[0];
    else if (s == 3) t.mu = a[0];
    else {
      int l = 0;
      while (!(pr[kCyc[l]] == pr[kCyc[kCyc[l]]] && pr[l] != pr[kCyc[l]])) ++l;
      if (s == -1) t.b = into_J(l);
      else t.bp = into_Jp(l);
    }
    return g.i == 1 ? lie_plus(P, t) : lie_minus(P, t);
  }
  if (g == G2Root{0, 1} || g == G2Root{0, -1}) {
    int l = 0;
    while (!(lng ? (pr[l] == 2 || pr[l] == -2) : pr[l] == 0)) ++l;
    return g.j == 1 ? lie_j(P, into_J(l)) : lie_jp(P, into_Jp(l));
  }
  // pi(al) = (0,0): the Z_{i->j} part
  int i = 0, j = 0;
  while (pr[i] != 1) ++i;
  while (pr[j] != -1) ++j;
  Vec arg = (i < j) ? a : H.C.conj(a);
  return lie_z(P, detail::f4_lambda(F, i, j) * z_d(P, H.e(i), H.off(i, j, arg)));
}

inline Vec f4_unit_param(const F4Lie& F, F4Root a) {
  return f4_is_long(a) ? Vec{Scalar::one(F.B->ring)} : F.H.C.unit;
}

struct Twist {
  bool conj_a = false, conj_b = false, conj_out = false;
};

struct ChevConstant {
  int c = 0;
  Twist tw;
  bool trace_form = false;  // short + short -> long: value (c/2) t(a^* b)
};

struct ChevalleyData {
  std::vector<LieElement> x;  // per f4_roots() index
  std::vector<LieElement> h;  // h_alpha = [x_alpha, x_{-alpha}]
  std::map<std::pair<std::array<int, 4>, std::array<int, 4>>, ChevConstant> c;
};

// Only the integer constants, extracted from the unit brackets.  Cheap enough
// to run on large coordinate algebras, where the full twist discovery and
// Cartan sweep of verify_chevalley would be expensive.
inline std::map<std::pair<std::array<int, 4>, std::array<int, 4>>, int>
chevalley_constants(const F4Lie& F) {
  const CubicNormPair& P = F.B->P;
  const RingPtr& R = F.B->ring;
  const auto& roots = f4_roots();
  std::vector<LieElement> x;
  for (F4Root a : roots) x.push_back(f4_rhom(F, a, f4_unit_param(F, a)));
  std::map<std::pair<std::array<int, 4>, std::array<int, 4>>, int> out;
  for (std::size_t ia = 0; ia < roots.size(); ++ia)
    for (std::size_t ib = 0; ib < roots.size(); ++ib) {
      F4Root su = roots[ia] + roots[ib];
      if (!f4_is_root(su)) continue;
      LieElement br = lie_bracket(P, x[ia], x[ib]);
      int cval = 100;
      for (int c = -2; c <= 2 && cval == 100; ++c)
        if (br == f4_rhom(F, su, Scalar::from_int(R, c) * f4_unit_param(F, su)))
          cval = c;
      out[{roots[ia].coords(), roots[ib].coords()}] = cval;  // 100 marks failure
    }
  return out;
}

// Extracts the structure constants and twists and verifies the Chevalley
// properties; any pair without a consistent (c, twist) choice is a failure.
inline Report verify_chevalley(const F4Lie& F, ChevalleyData* out, int samples,
                               std::uint64_t seed) {
  Report rep;
  const CubicNormPair& P = F.B->P;
  const ConicAlgebra& C = F.H.C;
  const RingPtr& R = F.B->ring;
  const auto& roots = f4_roots();
  std::mt19937_64 rng(seed);
  auto index_of = [&](F4Root a) {
    return std::find(roots.begin(), roots.end(), a) - roots.begin();
  };

  ChevalleyData data;
  for (F4Root a : roots) data.x.push_back(f4_rhom(F, a, f4_unit_param(F, a)));

  // parameter pools per length
  std::vector<Vec> cpool{C.unit};
  for (std::size_t t = 0; t < C.dim; ++t) cpool.push_back(C.basis(t));
  for (int t = 0; t < samples; ++t) cpool.push_back(vec_random(R, C.dim, rng));
  std::vector<Vec> kpool{{Scalar::one(R)}, {Scalar::from_int(R, 2)}};
  for (int t = 0; t < samples; ++t) kpool.push_back({Scalar::random(R, rng)});

  for (std::size_t ia = 0; ia < roots.size() && rep.ok; ++ia)
    for (std::size_t ib = 0; ib < roots.size() && rep.ok; ++ib) {
      F4Root al = roots[ia], be = roots[ib], su = al + be;
      if (!f4_is_root(su)) continue;
      bool trace_form = !f4_is_long(al) && !f4_is_long(be) && f4_is_long(su);
      // the integer constant from the unit bracket
      LieElement unit_br = lie_bracket(P, data.x[ia], data.x[ib]);
      int cval = 100;
      for (int c = -2; c <= 2; ++c) {
        Vec par = Scalar::from_int(R, c) * f4_unit_param(F, su);
        if (unit_br == f4_rhom(F, su, par)) {
          cval = c;
          break;
        }
      }
      ++rep.checks;
      if (cval == 100) {
        rep.fail("[x_a, x_b] is not an integer multiple of x_{a+b}");
        break;
      }
      if (trace_form && cval % 2 != 0) {
        rep.fail("odd constant on a short+short -> long pair");
        break;
      }
      // discover the twists
      const std::vector<Vec>& apool = f4_is_long(al) ? kpool : cpool;
      const std::vector<Vec>& bpool = f4_is_long(be) ? kpool : cpool;
      auto mulp = [&](const Vec& u, const Vec& v) {
        if (!f4_is_long(al) && !f4_is_long(be)) return C.mul(u, v);
        if (f4_is_long(al) && f4_is_long(be)) return Vec{u[0] * v[0]};
        return f4_is_long(al) ? u[0] * v : v[0] * u;
      };
      bool found = false;
      Twist best;
      for (int ta = 0; ta < (f4_is_long(al) ? 1 : 2) && !found; ++ta)
        for (int tb = 0; tb < (f4_is_long(be) ? 1 : 2) && !found; ++tb)
          for (int ts = 0; ts < ((f4_is_long(su) || trace_form) ? 1 : 2) && !found; ++ts) {
            bool ok = true;
            for (const Vec& u : apool) {
              if (!ok) break;
              for (const Vec& v : bpool) {
                Vec ut = ta ? C.conj(u) : u;
                Vec vt = tb ? C.conj(v) : v;
                Vec expect;
                if (trace_form)
                  expect = {Scalar::from_int(R, cval / 2) * C.trace(C.mul(ut, vt))};
                else {
                  expect = Scalar::from_int(R, cval) * mulp(ut, vt);
                  if (ts) expect = C.conj(expect);
                }
                if (!(lie_bracket(P, f4_rhom(F, al, u), f4_rhom(F, be, v)) ==
                      f4_rhom(F, su, expect))) {
                  ok = false;
                  break;
                }
              }
            }
            if (ok) {
              found = true;
              best = {ta == 1, tb == 1, ts == 1};
            }
          }
      ++rep.checks;
      if (!found) {
        rep.fail("no consistent twist for a summable pair");
        break;
      }
      data.c[{al.coords(), be.coords()}] = {cval, best, trace_form};
    }

  // antisymmetry of the constants under negation
  for (const auto& [key, cc] : data.c) {
    F4Root al{key.first[0], key.first[1], key.first[2], key.first[3]};
    F4Root be{key.second[0], key.second[1], key.second[2], key.second[3]};
    auto it = data.c.find({(-al).coords(), (-be).coords()});
    ++rep.checks;
    if (it == data.c.end() || it->second.c != -cc.c)
      rep.fail("c_{a,b} != -c_{-a,-b}");
    if (!rep.ok) break;
  }

  // h_alpha and the Cartan integer action
  for (std::size_t ia = 0; ia < roots.size() && rep.ok; ++ia) {
    F4Root al = roots[ia];
    LieElement h = lie_bracket(P, data.x[ia], data.x[index_of(-al)]);
    data.h.push_back(h);
    ++rep.checks;
    if (!(h.x.is_zero() && h.y.is_zero() && vec_is_zero(h.minus.b) &&
          vec_is_zero(h.minus.bp) && h.minus.lam.is_zero() && h.minus.mu.is_zero() &&
          vec_is_zero(h.plus.b) && vec_is_zero(h.plus.bp) && h.plus.lam.is_zero() &&
          h.plus.mu.is_zero()))
      rep.fail("h_alpha does not lie in L_0");
    for (F4Root be : roots) {
      if (!rep.ok) break;
      Scalar n = Scalar::from_int(R, f4_cartan(be, al));
      for (std::size_t t = 0; t < f4_param_dim(F, be); ++t) {
        LieElement yb = f4_rhom(F, be, f4_is_long(be) ? Vec{Scalar::one(R)}
                                                      : C.basis(t));
        ++rep.checks;
        if (!(lie_bracket(P, h, yb) == n * yb)) {
          rep.fail("[h_alpha, y_beta] != <beta, alpha> y_beta");
          break;
        }
      }
    }
  }

  if (out) *out = std::move(data);
  return rep;
}

}  // namespace alg
