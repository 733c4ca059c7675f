#pragma once
// Root-system combinatorics for G2 in Z^2 and F4 in Z^4, the projection
// pi: F4 -> G2 underlying the Tits index F4 -> G2, its fibers, and the
// induced embedding of Weyl groups. Everything is exact integer arithmetic.

#include "alg/lie.hpp"

#include <initializer_list>
#include <map>

namespace alg {

inline G2Root operator+(G2Root a, G2Root b) { return {a.i + b.i, a.j + b.j}; }
inline G2Root operator-(G2Root a) { return {-a.i, -a.j}; }
inline G2Root operator*(int c, G2Root a) { return {c * a.i, c * a.j}; }

// ---- F4 in Z^4 ------------------------------------------------------------

// Phi = {+-2e_i} u {+-e_i +- e_j} u {(+-1,+-1,+-1,+-1)}: 8 + 24 + 16 = 48.
struct F4Root {
  int p = 0, i = 0, j = 0, l = 0;
  auto operator<=>(const F4Root&) const = default;
  bool is_zero() const { return p == 0 && i == 0 && j == 0 && l == 0; }
  std::array<int, 4> coords() const { return {p, i, j, l}; }
};

inline F4Root operator+(F4Root a, F4Root b) {
  return {a.p + b.p, a.i + b.i, a.j + b.j, a.l + b.l};
}
inline F4Root operator-(F4Root a) { return {-a.p, -a.i, -a.j, -a.l}; }
inline F4Root operator*(int c, F4Root a) { return {c * a.p, c * a.i, c * a.j, c * a.l}; }

inline int f4_dot(F4Root a, F4Root b) {
  return a.p * b.p + a.i * b.i + a.j * b.j + a.l * b.l;
}

inline bool f4_is_root(F4Root a) {
  int q = f4_dot(a, a);
  if (q == 2) return true;  // e_i +- e_j
  if (q != 4) return false;
  int odd = std::abs(a.p * a.i * a.j * a.l);
  return odd == 1 || odd == 0;  // (+-1,+-1,+-1,+-1) or +-2e_i
}

inline bool f4_is_long(F4Root a) { return f4_dot(a, a) == 4; }

inline int f4_cartan(F4Root beta, F4Root alpha) {
  return 2 * f4_dot(beta, alpha) / f4_dot(alpha, alpha);
}

inline F4Root f4_reflect(F4Root beta, F4Root alpha) {
  int c = f4_cartan(beta, alpha);
  return beta + (-c) * alpha;
}

// The standard simple system (f1, f2, f3, f4): long, long, short, short with
// subsystems A2, B2, A2.
inline const std::array<F4Root, 4>& f4_simple() {
  static const std::array<F4Root, 4> s = {
      {{1, 1, -1, -1}, {-2, 0, 0, 0}, {1, -1, 0, 0}, {0, 1, 1, 0}}};
  return s;
}

inline const std::array<G2Root, 2>& g2_simple() {
  static const std::array<G2Root, 2> s = {{{1, 0}, {-2, -1}}};
  return s;
}

// A standard simple system adapted to the projection pi below: the first two
// roots project onto the long and short simple root of g2_pi_simple() and
// the last two span the zero fiber. (The system f4_simple() does not have
// this property; its third root projects onto a short root.)
inline const std::array<F4Root, 4>& f4_pi_system() {
  static const std::array<F4Root, 4> s = {
      {{-2, 0, 0, 0}, {1, -1, 1, 1}, {0, 1, -1, 0}, {0, 0, 1, -1}}};
  return s;
}

inline const std::array<G2Root, 2>& g2_pi_simple() {
  static const std::array<G2Root, 2> s = {{{1, 1}, {-2, -1}}};
  return s;
}

// Coefficients of a lattice vector with respect to four given roots (Cramer
// over Z); nullopt if the vector is not an integral combination.
inline std::optional<std::array<int, 4>> f4_coeffs(F4Root v,
                                                   const std::array<F4Root, 4>& basis) {
  long long m[4][4];
  for (int c = 0; c < 4; ++c) {
    auto bc = basis[c].coords();
    for (int r = 0; r < 4; ++r) m[r][c] = bc[r];
  }
  auto det4 = [](long long a[4][4]) {
    long long d = 0;
    // expansion along the first row with 3x3 minors
    auto det3 = [&](int c0) {
      int cols[3], n = 0;
      for (int c = 0; c < 4; ++c)
        if (c != c0) cols[n++] = c;
      return a[1][cols[0]] * (a[2][cols[1]] * a[3][cols[2]] - a[2][cols[2]] * a[3][cols[1]]) -
             a[1][cols[1]] * (a[2][cols[0]] * a[3][cols[2]] - a[2][cols[2]] * a[3][cols[0]]) +
             a[1][cols[2]] * (a[2][cols[0]] * a[3][cols[1]] - a[2][cols[1]] * a[3][cols[0]]);
    };
    for (int c = 0; c < 4; ++c) d += (c % 2 ? -1 : 1) * a[0][c] * det3(c);
    return d;
  };
  long long d = det4(m);
  if (d == 0) return std::nullopt;
  std::array<int, 4> out{};
  auto vc = v.coords();
  for (int c = 0; c < 4; ++c) {
    long long mc[4][4];
    for (int r = 0; r < 4; ++r)
      for (int cc = 0; cc < 4; ++cc) mc[r][cc] = (cc == c) ? vc[r] : m[r][cc];
    long long num = det4(mc);
    if (num % d != 0) return std::nullopt;
    out[c] = static_cast<int>(num / d);
  }
  return out;
}

inline int f4_height(F4Root a, const std::array<F4Root, 4>& simple = f4_simple()) {
  auto c = f4_coeffs(a, simple);
  if (!c) throw std::invalid_argument("f4_height: not in the root lattice of the basis");
  return (*c)[0] + (*c)[1] + (*c)[2] + (*c)[3];
}

// All 48 roots, ordered by height in the standard positive system, ties
// broken lexicographically.
inline const std::vector<F4Root>& f4_roots() {
  static const std::vector<F4Root> roots = [] {
    std::vector<F4Root> v;
    for (int p = -2; p <= 2; ++p)
      for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
          for (int l = -2; l <= 2; ++l)
            if (F4Root r{p, i, j, l}; f4_is_root(r)) v.push_back(r);
    std::sort(v.begin(), v.end(), [](F4Root a, F4Root b) {
      int ha = f4_height(a), hb = f4_height(b);
      if (ha != hb) return ha < hb;
      return a < b;
    });
    return v;
  }();
  return roots;
}

// ---- the projection pi and its fibers -------------------------------------

// pi(p,i,j,l) = (p, (p+i+j+l)/2): the unique linear map sending f1 -> (1,0),
// f2 -> (-2,-1) and killing f3, f4.
inline G2Root pi(F4Root a) { return {a.p, (a.p + a.i + a.j + a.l) / 2}; }

// Preimage of a G2 label: one long root for a long label, three long plus
// three short (a C3 1-part) for a short label, and the six roots in
// <f3, f4> plus zero for the zero label.
inline std::vector<F4Root> fiber(G2Root beta) {
  std::vector<F4Root> out;
  if (beta.is_zero()) out.push_back({0, 0, 0, 0});
  for (F4Root a : f4_roots())
    if (pi(a) == beta) out.push_back(a);
  return out;
}

// ---- intervals, adjacency, positive systems -------------------------------

namespace detail {

template <typename Root, typename IsRoot>
std::vector<Root> interval_impl(Root alpha, Root beta, IsRoot&& is_root) {
  std::vector<Root> out;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      if (Root s = i * alpha + j * beta; is_root(s)) out.push_back(s);
  return out;
}

}  // namespace detail

inline bool g2_proportional(G2Root a, G2Root b) { return a.i * b.j == a.j * b.i; }
inline bool f4_proportional(F4Root a, F4Root b) {
  // roots are proportional iff b = +-a
  return b == a || b == -a;
}

inline std::vector<G2Root> root_interval(G2Root alpha, G2Root beta) {
  if (g2_proportional(alpha, beta))
    throw std::invalid_argument("root_interval: proportional roots");
  return detail::interval_impl(alpha, beta, [](G2Root r) { return g2_is_root(r); });
}

inline std::vector<F4Root> root_interval(F4Root alpha, F4Root beta) {
  if (f4_proportional(alpha, beta))
    throw std::invalid_argument("root_interval: proportional roots");
  return detail::interval_impl(alpha, beta, [](F4Root r) { return f4_is_root(r); });
}

inline bool is_adjacent(G2Root alpha, G2Root beta) {
  return !g2_proportional(alpha, beta) && root_interval(alpha, beta).empty();
}
inline bool is_adjacent(F4Root alpha, F4Root beta) {
  return !f4_proportional(alpha, beta) && root_interval(alpha, beta).empty();
}

inline std::optional<std::array<int, 2>> g2_coeffs(G2Root v,
                                                   const std::array<G2Root, 2>& basis) {
  long long d = static_cast<long long>(basis[0].i) * basis[1].j -
                static_cast<long long>(basis[0].j) * basis[1].i;
  if (d == 0) return std::nullopt;
  long long n0 = static_cast<long long>(v.i) * basis[1].j -
                 static_cast<long long>(v.j) * basis[1].i;
  long long n1 = static_cast<long long>(basis[0].i) * v.j -
                 static_cast<long long>(basis[0].j) * v.i;
  if (n0 % d != 0 || n1 % d != 0) return std::nullopt;
  return std::array<int, 2>{static_cast<int>(n0 / d), static_cast<int>(n1 / d)};
}

inline int g2_height_in(G2Root a, const std::array<G2Root, 2>& simple) {
  auto c = g2_coeffs(a, simple);
  if (!c) throw std::invalid_argument("g2_height_in: not in the lattice of the basis");
  return (*c)[0] + (*c)[1];
}

inline std::vector<G2Root> positive_system(const std::array<G2Root, 2>& simple) {
  std::vector<G2Root> out;
  for (G2Root b : g2_roots())
    if (auto c = g2_coeffs(b, simple); c && (*c)[0] >= 0 && (*c)[1] >= 0) out.push_back(b);
  std::sort(out.begin(), out.end(), [&](G2Root a, G2Root b) {
    int ha = g2_height_in(a, simple), hb = g2_height_in(b, simple);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return out;
}

inline std::vector<F4Root> positive_system(const std::array<F4Root, 4>& simple) {
  std::vector<F4Root> out;
  for (F4Root b : f4_roots())
    if (auto c = f4_coeffs(b, simple);
        c && (*c)[0] >= 0 && (*c)[1] >= 0 && (*c)[2] >= 0 && (*c)[3] >= 0)
      out.push_back(b);
  std::sort(out.begin(), out.end(), [&](F4Root a, F4Root b) {
    int ha = f4_height(a, simple), hb = f4_height(b, simple);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return out;
}

// ---- Weyl words and the embedding W(G2) -> W(F4) --------------------------

using G2Word = std::vector<G2Root>;  // a product of reflections, applied left first
using F4Word = std::vector<F4Root>;

inline G2Root word_apply(G2Root beta, const G2Word& w) {
  for (G2Root a : w) beta = g2_reflect(beta, a);
  return beta;
}
inline F4Root word_apply(F4Root beta, const F4Word& w) {
  for (F4Root a : w) beta = f4_reflect(beta, a);
  return beta;
}

// u(s_beta): the product of the reflections at the long roots of the fiber,
// followed (for short beta) by the longest element s_{a} s_{b} s_{a} of the
// zero-fiber A2, where {a, b} are the last two roots of f4_pi_system().
inline F4Word weyl_embed_reflection(G2Root beta) {
  F4Word w;
  for (F4Root a : fiber(beta))
    if (!a.is_zero() && f4_is_long(a)) w.push_back(a);
  if (!g2_is_long(beta)) {
    w.push_back(f4_pi_system()[2]);
    w.push_back(f4_pi_system()[3]);
    w.push_back(f4_pi_system()[2]);
  }
  return w;
}

inline F4Word weyl_embed(const G2Word& w) {
  F4Word out;
  for (G2Root b : w) {
    F4Word part = weyl_embed_reflection(b);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---- coarsening an F4-indexed family to a G2-indexed one ------------------

// L'_beta = sum of L_alpha over alpha in the fiber of beta. Missing entries
// count as zero; the zero label of F4 is the key (0,0,0,0).
inline std::map<G2Root, Subspace> g2_grading_from_f4(const std::map<F4Root, Subspace>& sp) {
  std::map<G2Root, Subspace> out;
  for (const auto& [alpha, space] : sp) {
    G2Root b = alpha.is_zero() ? G2Root{0, 0} : pi(alpha);
    auto it = out.find(b);
    if (it == out.end())
      out.emplace(b, space);
    else
      it->second = it->second.sum(space);
  }
  return out;
}

}  // namespace alg
