#pragma once
// Cubic Jordan matrix algebras Her3(C, Gamma): twisted 3x3 hermitian matrices
// over a conic algebra C, with the explicit adjoint, norm, cross and trace
// maps. Elements live in k^3 (+) C^3 with coordinate layout
//   [ xi_1, xi_2, xi_3 | u_1 (dim C) | u_2 | u_3 ]
// where u_i sits in the off-diagonal slot [jl] for (i j l) cyclic, i.e.
// u_1 <-> [23], u_2 <-> [31], u_3 <-> [12], and c[lj] := conj(c)[jl].
//
// Her3 is a cubic norm structure (base point 1 = e_1 + e_2 + e_3); the induced
// cubic norm pair (J, J') has J' an identical copy of J.

#include "alg/cnp.hpp"
#include "alg/conic.hpp"

#include <array>

namespace alg {

// cyclic successors: (i, j, l) cyclic means j = CYC[i], l = CYC[j]
inline constexpr int kCyc[3] = {1, 2, 0};

struct Her3 {
  ConicAlgebra C;
  std::array<Scalar, 3> gamma;
  RingPtr ring;
  std::size_t dim = 0;  // 3 + 3 dim C

  static Her3 make(const std::string& conic_kind, const std::array<long long, 3>& g,
                   const RingPtr& ring) {
    Her3 H;
    H.C = conic_make_checked(conic_kind, ring);
    H.ring = ring;
    H.dim = 3 + 3 * H.C.dim;
    for (int i = 0; i < 3; ++i) H.gamma[i] = Scalar::from_int(ring, g[i]);
    return H;
  }

  bool gamma_invertible() const {
    for (int i = 0; i < 3; ++i)
      if (!gamma[i].try_invert()) return false;
    return true;
  }

  Vec zero() const { return vec_zero(ring, dim); }

  const Scalar& xi(const Vec& x, int i) const { return x[i]; }

  Vec ublock(const Vec& x, int i) const {
    Vec u(x.begin() + 3 + i * (long)C.dim, x.begin() + 3 + (i + 1) * (long)C.dim);
    return u;
  }
  void add_ublock(Vec& x, int i, const Vec& u) const {
    for (std::size_t k = 0; k < C.dim; ++k) x[3 + i * C.dim + k] += u[k];
  }

  Vec diag(int i, const Scalar& s) const {
    Vec x = zero();
    x[i] = s;
    return x;
  }
  Vec e(int i) const { return diag(i, Scalar::one(ring)); }
  Vec one() const { return e(0) + e(1) + e(2); }

  static int third(int i, int j) { return 3 - i - j; }

  // c[pq] for p != q. Slot [jl] with (i j l) cyclic is the natural storage
  // orientation of u_i; the reversed orientation stores the conjugate:
  // c[lj] = conj(c)[jl].
  Vec off(int p, int q, const Vec& c) const {
    Vec x = zero();
    int i = third(p, q);
    if (q == kCyc[p]) add_ublock(x, i, c);  // [p q] is the natural slot of u_i
    else add_ublock(x, i, C.conj(c));
    return x;
  }

  // Coefficient c with x's (p,q)-block equal to c[pq].
  Vec get_off(const Vec& x, int p, int q) const {
    int i = third(p, q);
    Vec u = ublock(x, i);
    return (q == kCyc[p]) ? u : C.conj(u);
  }

  Vec sharp(const Vec& x) const {
    Vec out = zero();
    for (int i = 0; i < 3; ++i) {
      int j = kCyc[i], l = kCyc[j];
      Vec ui = ublock(x, i), uj = ublock(x, j), ul = ublock(x, l);
      out[i] = xi(x, j) * xi(x, l) - gamma[j] * gamma[l] * C.norm(ui);
      add_ublock(out, i, (-xi(x, i)) * ui + gamma[i] * C.conj(C.mul(uj, ul)));
    }
    return out;
  }

  Scalar norm(const Vec& x) const {
    Scalar out = xi(x, 0) * xi(x, 1) * xi(x, 2);
    for (int i = 0; i < 3; ++i) {
      int j = kCyc[i], l = kCyc[j];
      out -= gamma[j] * gamma[l] * xi(x, i) * C.norm(ublock(x, i));
    }
    out += gamma[0] * gamma[1] * gamma[2] *
           C.trace(C.mul(C.mul(ublock(x, 0), ublock(x, 1)), ublock(x, 2)));
    return out;
  }

  Vec cross(const Vec& x, const Vec& y) const {
    Vec out = zero();
    for (int i = 0; i < 3; ++i) {
      int j = kCyc[i], l = kCyc[j];
      Vec ui = ublock(x, i), vi = ublock(y, i);
      out[i] = xi(x, j) * xi(y, l) + xi(y, j) * xi(x, l) -
               gamma[j] * gamma[l] * C.norm_polar(ui, vi);
      Vec w = (-xi(x, i)) * vi + (-xi(y, i)) * ui;
      w = w + gamma[i] * C.conj(C.mul(ublock(x, j), ublock(y, l)) +
                                C.mul(ublock(y, j), ublock(x, l)));
      add_ublock(out, i, w);
    }
    return out;
  }

  Scalar traceT(const Vec& x, const Vec& y) const {
    Scalar out = Scalar::zero(ring);
    for (int i = 0; i < 3; ++i) {
      int j = kCyc[i], l = kCyc[j];
      out += xi(x, i) * xi(y, i) +
             gamma[j] * gamma[l] * C.norm_polar(ublock(x, i), ublock(y, i));
    }
    return out;
  }

  // Keep only the (p, q) Peirce block (p == q: diagonal slot; p != q: C-slot).
  Vec peirce_project(const Vec& x, int p, int q) const {
    Vec out = zero();
    if (p == q) {
      out[p] = x[p];
    } else {
      int i = third(p, q);
      add_ublock(out, i, ublock(x, i));
    }
    return out;
  }

  CubicNormPair pair() const {
    CubicNormPair P;
    P.ring = ring;
    P.dimJ = P.dimJp = dim;
    P.proper = true;
    Her3 self = *this;
    P.crossJ = P.crossJp = [self](const Vec& a, const Vec& b) { return self.cross(a, b); };
    P.sharpJ = P.sharpJp = [self](const Vec& a) { return self.sharp(a); };
    P.normJ = P.normJp = [self](const Vec& a) { return self.norm(a); };
    P.traceT = [self](const Vec& a, const Vec& b) { return self.traceT(a, b); };
    P.rebase = [self](const RingPtr& r2) { return self.rebase(r2).pair(); };
    return P;
  }

  Her3 rebase(const RingPtr& r2) const {
    Her3 H;
    H.C = C.rebase(r2);
    H.ring = r2;
    H.dim = dim;
    for (int i = 0; i < 3; ++i) H.gamma[i] = gamma[i].map_into(r2);
    return H;
  }
};

// ---- block-formula verification -------------------------------------------

namespace detail {

// All six Peirce blocks as unordered index pairs.
inline const std::array<std::pair<int, int>, 6>& peirce_blocks() {
  static const std::array<std::pair<int, int>, 6> b{
      {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}}};
  return b;
}

// Targets of the Peirce triple rule {J_B1, J_B2', J_B3} (subset of) sum of
// J_{im} over all chain decompositions B1={i,j}, B2={j,l}, B3={l,m}.
inline std::vector<std::pair<int, int>> peirce_targets(std::pair<int, int> B1,
                                                       std::pair<int, int> B2,
                                                       std::pair<int, int> B3) {
  std::vector<std::pair<int, int>> out;
  auto opts = [](std::pair<int, int> B) {
    std::vector<std::pair<int, int>> o{{B.first, B.second}};
    if (B.first != B.second) o.push_back({B.second, B.first});
    return o;
  };
  for (auto [i, j] : opts(B1))
    for (auto [j2, l] : opts(B2)) {
      if (j2 != j) continue;
      for (auto [l2, m] : opts(B3)) {
        if (l2 != l) continue;
        std::pair<int, int> t{std::min(i, m), std::max(i, m)};
        bool seen = false;
        for (auto& u : out) seen = seen || u == t;
        if (!seen) out.push_back(t);
      }
    }
  return out;
}

}  // namespace detail

// Checks the explicit T/cross/D block formulas and the Peirce selection rules
// of Her3(C, Gamma) against the raw definitions of #, N, x, T.
inline Report verify_block_formulas(const Her3& H, int samples, std::uint64_t seed) {
  Report rep;
  const RingPtr& r = H.ring;
  const ConicAlgebra& C = H.C;
  CubicNormPair P = H.pair();
  std::mt19937_64 rng(seed);
  auto chk = [&](bool c, const std::string& what) {
    ++rep.checks;
    if (!c) rep.fail("block formula failed: " + what);
  };

  // pools of conic elements and scalars
  std::vector<Vec> cs;
  for (std::size_t i = 0; i < C.dim; ++i) cs.push_back(C.basis(i));
  for (int s = 0; s < std::max(1, samples / 8); ++s)
    cs.push_back(vec_random(r, C.dim, rng));
  std::vector<Scalar> ss{Scalar::one(r), Scalar::from_int(r, 2), Scalar::random(r, rng)};

  auto full_elem = [&](std::mt19937_64& g) {
    Vec a = H.zero();
    for (int i = 0; i < 3; ++i) a[i] = Scalar::random(r, g);
    for (int i = 0; i < 3; ++i) H.add_ublock(a, i, vec_random(r, C.dim, g));
    return a;
  };

  const Scalar g123 = H.gamma[0] * H.gamma[1] * H.gamma[2];

  for (int reps = 0; reps < std::max(1, samples / 4); ++reps) {
    Vec a = full_elem(rng);
    std::array<Scalar, 3> axi{a[0], a[1], a[2]};
    std::array<Vec, 3> ac{H.ublock(a, 0), H.ublock(a, 1), H.ublock(a, 2)};
    // c_{ij} := the block of a in slot [ij]
    auto cblk = [&](int i, int j) { return H.peirce_project(a, i, j); };

    // T formulas, for every permutation (i j l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        chk(H.traceT(a, H.e(i)) == axi[i], "T(a, e_i') = xi_i");
        for (const Vec& d : cs) {
          Vec dij = H.off(i, j, d);
          Scalar expect = H.gamma[i] * H.gamma[j] *
                          C.trace(C.mul(C.conj(H.get_off(a, i, j)), d));
          chk(H.traceT(a, dij) == expect, "T(a, d[ij]') = gamma_i gamma_j t(conj(c) d)");
          chk(H.traceT(cblk(i, j), dij) == expect, "T(c[ij], d[ij]')");
        }
      }
    // Peirce T-orthogonality
    for (auto B1 : detail::peirce_blocks())
      for (auto B2 : detail::peirce_blocks()) {
        if (B1 == B2) continue;
        Vec b1 = H.peirce_project(a, B1.first, B1.second);
        Vec b2 = H.peirce_project(full_elem(rng), B2.first, B2.second);
        chk(H.traceT(b1, b2).is_zero(), "Peirce blocks are T-orthogonal");
      }

    // times formulas (1): a x e_i = xi_l e_j' + xi_j e_l' - c_i[jl]'
    for (int i = 0; i < 3; ++i) {
      int j = kCyc[i], l = kCyc[j];
      Vec expect = H.diag(j, axi[l]) + H.diag(l, axi[j]) - H.off(j, l, ac[i]);
      chk(H.cross(a, H.e(i)) == expect, "a x e_i");
    }
    // e_i x e_j = e_l' for any i != j
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        chk(H.cross(H.e(i), H.e(j)) == H.e(Her3::third(i, j)), "e_i x e_j = e_l'");
      }
    // c[jl] x e_i = -c[jl]' whenever i is not an index of the block
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        int l = Her3::third(i, j);
        for (const Vec& c : cs)
          chk(H.cross(H.off(j, l, c), H.e(i)) == -H.off(j, l, c), "c[jl] x e_i = -c[jl]'");
      }
    // times formulas (2): c[ij] x d[jl] = (gamma_j c d)[il], all permutations
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        int l = Her3::third(i, j);
        for (const Vec& c : cs)
          for (const Vec& d : cs)
            chk(H.cross(H.off(i, j, c), H.off(j, l, d)) ==
                    H.off(i, l, H.gamma[j] * C.mul(c, d)),
                "c[ij] x d[jl] = (gamma_j c d)[il]");
      }
    // times formulas (3): a x d_ij = -T(c_ij, d_ij) e_l' - xi_l d_ij' + c_li x d_ij + d_ij x c_jl
    for (int i = 0; i < 3; ++i) {
      int j = kCyc[i], l = kCyc[j];
      for (const Vec& d : cs) {
        Vec dij = H.off(i, j, d);
        Vec expect = H.diag(l, -H.traceT(H.peirce_project(a, i, j), dij)) -
                     axi[l] * dij + H.cross(H.peirce_project(a, l, i), dij) +
                     H.cross(dij, H.peirce_project(a, j, l));
        chk(H.cross(a, dij) == expect, "a x d[ij] expansion");
      }
    }
    // times blocks
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        int l = Her3::third(i, j);
        const Vec& c = cs[reps % cs.size()];
        const Vec& d = cs[(reps + 1) % cs.size()];
        Vec w = H.cross(H.off(i, j, c), H.off(i, j, d));
        chk(w == H.peirce_project(w, l, l), "J_ij x J_ij in J_ll'");
        w = H.cross(H.off(i, j, c), H.diag(l, ss[reps % ss.size()]));
        chk(w == H.peirce_project(w, i, j), "J_ij x J_ll in J_ij'");
        chk(vec_is_zero(H.cross(H.off(i, j, c), H.diag(j, ss[0]))), "J_ij x J_jj = 0");
        chk(vec_is_zero(H.cross(H.diag(j, ss[1]), H.diag(j, ss[2]))), "J_jj x J_jj = 0");
      }
  }

  // D-formulas: all five families, for every choice of pairwise distinct i,j,l.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      int l = Her3::third(i, j);
      for (std::size_t pa = 0; pa < cs.size(); ++pa)
        for (std::size_t pb = 0; pb < cs.size(); ++pb) {
          const Vec& a1 = cs[pa];
          const Vec& a2 = cs[pb];
          const Vec& a3 = cs[(pa + pb + 1) % cs.size()];
          const Scalar& s1 = ss[pa % ss.size()];
          const Scalar& s2 = ss[pb % ss.size()];
          const Scalar& s3 = ss[(pa + pb) % ss.size()];
          auto D = [&](const Vec& u, const Vec& v, const Vec& w) {
            return P.d_op(u, v, w);
          };
          // (1) D(a1[jl], a2[li]')
          Vec x1 = H.off(j, l, a1), x2 = H.off(l, i, a2);
          chk(D(x1, x2, H.off(i, j, a3)) ==
                  H.diag(j, g123 * C.trace(C.mul(C.mul(a1, a2), a3))),
              "D1 on a3[ij]");
          chk(D(x1, x2, H.off(i, l, a3)) ==
                  H.off(j, l, H.gamma[i] * H.gamma[l] * C.mul(C.mul(a1, a2), a3)),
              "D1 on a3[il]");
          chk(D(x1, x2, H.diag(i, s3)) ==
                  H.off(j, i, H.gamma[l] * s3 * C.mul(a1, a2)),
              "D1 on s3 e_i");
          // (2) D(s1 e_j, a2[ji]')
          chk(D(H.diag(j, s1), H.off(j, i, a2), H.off(i, j, a3)) ==
                  H.diag(j, H.gamma[i] * H.gamma[j] * s1 * C.trace(C.mul(a2, a3))),
              "D2 on a3[ij]");
          chk(D(H.diag(j, s1), H.off(j, i, a2), H.off(i, l, a3)) ==
                  H.off(j, l, H.gamma[i] * s1 * C.mul(a2, a3)),
              "D2 on a3[il]");
          chk(D(H.diag(j, s1), H.off(j, i, a2), H.diag(i, s3)) ==
                  H.off(j, i, s1 * s3 * a2),
              "D2 on s3 e_i");
          // (3) D(a1[ji], s2 e_i')
          chk(D(H.off(j, i, a1), H.diag(i, s2), H.off(i, j, a3)) ==
                  H.diag(j, H.gamma[i] * H.gamma[j] * s2 * C.trace(C.mul(a1, a3))),
              "D3 on a3[ij]");
          chk(D(H.off(j, i, a1), H.diag(i, s2), H.off(i, l, a3)) ==
                  H.off(j, l, H.gamma[i] * s2 * C.mul(a1, a3)),
              "D3 on a3[il]");
          chk(D(H.off(j, i, a1), H.diag(i, s2), H.diag(i, s3)) ==
                  H.off(j, i, s2 * s3 * a1),
              "D3 on s3 e_i");
          // (4) D(s1 e_i, s2 e_i')
          chk(D(H.diag(i, s1), H.diag(i, s2), H.diag(i, s3)) ==
                  H.diag(i, Scalar::from_int(r, 2) * s1 * s2 * s3),
              "D4 on s3 e_i");
          chk(D(H.diag(i, s1), H.diag(i, s2), H.off(i, j, a3)) ==
                  H.off(i, j, s1 * s2 * a3),
              "D4 on a3[ij]");
          // (5) D(a1[ij], a2[ji]')
          Vec y1 = H.off(i, j, a1), y2 = H.off(j, i, a2);
          chk(D(y1, y2, H.diag(i, s3)) ==
                  H.diag(i, H.gamma[i] * H.gamma[j] * s3 * C.trace(C.mul(a1, a2))),
              "D5 on s3 e_i");
          chk(D(y1, y2, H.off(i, j, a3)) ==
                  H.off(i, j,
                        H.gamma[i] * H.gamma[j] *
                            (C.trace(C.mul(a2, a3)) * a1 + C.trace(C.mul(a1, a2)) * a3 -
                             C.trace(C.mul(a1, C.conj(a3))) * C.conj(a2))),
              "D5 on a3[ij]");
          chk(D(y1, y2, H.off(i, l, a3)) ==
                  H.off(i, l, H.gamma[i] * H.gamma[j] * C.mul(a1, C.mul(a2, a3))),
              "D5 on a3[il]");
        }
    }

  // Peirce triple selection rules on basis blocks
  std::mt19937_64 rng2(seed ^ 0x9e3779b97f4a7c15ull);
  for (auto B1 : detail::peirce_blocks())
    for (auto B2 : detail::peirce_blocks())
      for (auto B3 : detail::peirce_blocks()) {
        Vec b1 = H.peirce_project(full_elem(rng2), B1.first, B1.second);
        Vec b2 = H.peirce_project(full_elem(rng2), B2.first, B2.second);
        Vec b3 = H.peirce_project(full_elem(rng2), B3.first, B3.second);
        Vec d = P.d_op(b1, b2, b3);
        auto targets = detail::peirce_targets(B1, B2, B3);
        Vec allowed = H.zero();
        for (auto t : targets) allowed = allowed + H.peirce_project(d, t.first, t.second);
        chk(d == allowed, "Peirce triple selection rule");
      }

  return rep;
}

}  // namespace alg
