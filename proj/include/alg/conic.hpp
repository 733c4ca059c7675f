#pragma once
// Conic (degree-2) algebras with norm, trace, and involution, given by
// structure constants over a fixed documented basis. Catalogue:
//   base        k itself                        (dim 1)
//   dual        dual numbers k[eps], eps^2 = 0  (dim 2: 1, eps)
//   quat-split  2x2 matrices over k             (dim 4: E11, E12, E21, E22;
//               norm = det, trace = matrix trace)
//   oct-split   Zorn vector matrices            (dim 8: E1, E2, u1..u3, v1..v3)
//
// Conjugation is conj(a) = t(a) 1 - a throughout. Each constructor
// self-validates the full identity suite over the integers.

#include "alg/vecmat.hpp"

#include <array>
#include <string>

namespace alg {

struct ConicAlgebra {
  RingPtr ring;
  std::string kind;
  std::size_t dim = 0;
  std::vector<std::vector<Vec>> mul_table;  // mul_table[i][j] = coords of b_i * b_j
  Vec unit;
  Mat conj_mat;
  Vec trace_vec;                 // t(b_i)
  std::vector<Scalar> norm_diag; // n(b_i)
  Mat norm_polar_mat;            // n(b_i, b_j); diagonal = 2 n(b_i)

  Vec zero() const { return vec_zero(ring, dim); }
  Vec basis(std::size_t i) const { return vec_unit(ring, dim, i); }
  Vec scal(long long n) const {
    Vec v = zero();
    for (std::size_t i = 0; i < dim; ++i) v[i] = Scalar::from_int(ring, n) * unit[i];
    return v;
  }
  Vec embed_scalar(const Scalar& s) const {
    Vec v = zero();
    for (std::size_t i = 0; i < dim; ++i) v[i] = s * unit[i];
    return v;
  }

  Vec mul(const Vec& x, const Vec& y) const {
    Vec out = zero();
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (y[j].is_zero()) continue;
        Scalar c = x[i] * y[j];
        const Vec& t = mul_table[i][j];
        for (std::size_t k = 0; k < dim; ++k)
          if (!t[k].is_zero()) out[k] += c * t[k];
      }
    }
    return out;
  }

  Vec conj(const Vec& x) const { return conj_mat.apply(x); }

  Scalar trace(const Vec& x) const {
    Scalar s = Scalar::zero(ring);
    for (std::size_t i = 0; i < dim; ++i) s += trace_vec[i] * x[i];
    return s;
  }

  Scalar norm(const Vec& x) const {
    Scalar s = Scalar::zero(ring);
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      s += norm_diag[i] * x[i] * x[i];
      for (std::size_t j = i + 1; j < dim; ++j)
        if (!x[j].is_zero()) s += norm_polar_mat.at(i, j) * x[i] * x[j];
    }
    return s;
  }

  Scalar norm_polar(const Vec& x, const Vec& y) const {
    Scalar s = Scalar::zero(ring);
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j)
        if (!y[j].is_zero()) s += norm_polar_mat.at(i, j) * x[i] * y[j];
    }
    return s;
  }

  // t(x, y) := n(x, conj(y))
  Scalar bilinear_trace(const Vec& x, const Vec& y) const {
    return norm_polar(x, conj(y));
  }

  ConicAlgebra rebase(const RingPtr& r2) const;

  static ConicAlgebra make(const std::string& kind, const RingPtr& ring);
};

namespace detail {

struct ConicBlueprint {
  std::size_t dim;
  // integer structure data
  std::vector<std::vector<std::vector<int>>> mul;  // [i][j][k]
  std::vector<int> unit, trace, norm_diag;
  std::vector<std::vector<int>> norm_polar;        // full symmetric matrix
};

inline ConicBlueprint blueprint(const std::string& kind) {
  auto zeros = [](std::size_t d) {
    return std::vector<std::vector<std::vector<int>>>(
        d, std::vector<std::vector<int>>(d, std::vector<int>(d, 0)));
  };
  if (kind == "base") {
    ConicBlueprint b;
    b.dim = 1;
    b.mul = zeros(1);
    b.mul[0][0][0] = 1;
    b.unit = {1};
    b.trace = {2};
    b.norm_diag = {1};
    b.norm_polar = {{2}};
    return b;
  }
  if (kind == "dual") {
    ConicBlueprint b;
    b.dim = 2;
    b.mul = zeros(2);
    b.mul[0][0][0] = 1;
    b.mul[0][1][1] = 1;
    b.mul[1][0][1] = 1;  // eps^2 = 0
    b.unit = {1, 0};
    b.trace = {2, 0};
    b.norm_diag = {1, 0};
    b.norm_polar = {{2, 0}, {0, 0}};
    return b;
  }
  if (kind == "quat-split") {
    // basis E11, E12, E21, E22; Eab * Ecd = [b==c] Ead
    ConicBlueprint b;
    b.dim = 4;
    b.mul = zeros(4);
    auto idx = [](int a, int c) { return 2 * a + c; };  // a,c in {0,1}
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e)
          for (int f = 0; f < 2; ++f)
            if (c == e) b.mul[idx(a, c)][idx(e, f)][idx(a, f)] = 1;
    b.unit = {1, 0, 0, 1};
    b.trace = {1, 0, 0, 1};
    b.norm_diag = {0, 0, 0, 0};  // det
    b.norm_polar = {{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}};
    return b;
  }
  if (kind == "oct-split") {
    // Zorn vector matrices (a, v; w, b), v,w in k^3.
    // basis: 0:E1=(1,0;0,0)  1:E2=(0,0;0,1)  2..4: u_i=(0,e_i;0,0)  5..7: v_i=(0,0;e_i,0)
    // product: (a1,v1;w1,b1)(a2,v2;w2,b2) =
    //   (a1a2 + v1.w2, a1v2 + b2v1 - w1xw2; a2w1 + b1w2 + v1xv2, b1b2 + w1.v2)
    ConicBlueprint b;
    b.dim = 8;
    b.mul = zeros(8);
    int E1 = 0, E2 = 1;
    auto U = [](int i) { return 2 + i; };
    auto V = [](int i) { return 5 + i; };
    b.mul[E1][E1][E1] = 1;
    b.mul[E2][E2][E2] = 1;
    for (int i = 0; i < 3; ++i) {
      b.mul[E1][U(i)][U(i)] = 1;   // E1 u = u
      b.mul[U(i)][E2][U(i)] = 1;   // u E2 = u
      b.mul[E2][V(i)][V(i)] = 1;   // E2 v = v
      b.mul[V(i)][E1][V(i)] = 1;   // v E1 = v
      b.mul[U(i)][V(i)][E1] = 1;   // u_i v_i = E1
      b.mul[V(i)][U(i)][E2] = 1;   // v_i u_i = E2
    }
    int eps[3][3][3] = {};
    eps[0][1][2] = eps[1][2][0] = eps[2][0][1] = 1;
    eps[0][2][1] = eps[2][1][0] = eps[1][0][2] = -1;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          if (eps[i][j][k] == 0) continue;
          b.mul[U(i)][U(j)][V(k)] = eps[i][j][k];   // u_i u_j = e_i x e_j (w slot)
          b.mul[V(i)][V(j)][U(k)] = -eps[i][j][k];  // v_i v_j = -(e_i x e_j) (v slot)
        }
    b.unit = {1, 1, 0, 0, 0, 0, 0, 0};
    b.trace = {1, 1, 0, 0, 0, 0, 0, 0};
    b.norm_diag = std::vector<int>(8, 0);  // n = ab - v.w
    b.norm_polar = std::vector<std::vector<int>>(8, std::vector<int>(8, 0));
    b.norm_polar[E1][E2] = b.norm_polar[E2][E1] = 1;
    for (int i = 0; i < 3; ++i) {
      b.norm_polar[U(i)][V(i)] = -1;
      b.norm_polar[V(i)][U(i)] = -1;
    }
    return b;
  }
  throw std::invalid_argument("unknown conic algebra kind: " + kind);
}

}  // namespace detail

inline ConicAlgebra ConicAlgebra::make(const std::string& kind, const RingPtr& ring) {
  detail::ConicBlueprint bp = detail::blueprint(kind);
  ConicAlgebra C;
  C.ring = ring;
  C.kind = kind;
  C.dim = bp.dim;
  C.mul_table.assign(bp.dim, std::vector<Vec>(bp.dim, vec_zero(ring, bp.dim)));
  for (std::size_t i = 0; i < bp.dim; ++i)
    for (std::size_t j = 0; j < bp.dim; ++j)
      for (std::size_t k = 0; k < bp.dim; ++k)
        C.mul_table[i][j][k] = Scalar::from_int(ring, bp.mul[i][j][k]);
  C.unit = vec_zero(ring, bp.dim);
  C.trace_vec = vec_zero(ring, bp.dim);
  C.norm_diag.assign(bp.dim, Scalar::zero(ring));
  C.norm_polar_mat = Mat(ring, bp.dim, bp.dim);
  for (std::size_t i = 0; i < bp.dim; ++i) {
    C.unit[i] = Scalar::from_int(ring, bp.unit[i]);
    C.trace_vec[i] = Scalar::from_int(ring, bp.trace[i]);
    C.norm_diag[i] = Scalar::from_int(ring, bp.norm_diag[i]);
    for (std::size_t j = 0; j < bp.dim; ++j) {
      int v = (i == j) ? 2 * bp.norm_diag[i] : bp.norm_polar[i][j];
      C.norm_polar_mat.at(i, j) = Scalar::from_int(ring, v);
    }
  }
  // conj(a) = t(a) 1 - a
  C.conj_mat = Mat(ring, bp.dim, bp.dim);
  for (std::size_t j = 0; j < bp.dim; ++j)
    for (std::size_t i = 0; i < bp.dim; ++i) {
      Scalar v = C.trace_vec[j] * C.unit[i];
      if (i == j) v -= Scalar::one(ring);
      C.conj_mat.at(i, j) = v;
    }
  return C;
}

inline ConicAlgebra ConicAlgebra::rebase(const RingPtr& r2) const {
  return ConicAlgebra::make(kind, r2);
}

// ---- identity suite -------------------------------------------------------

// The eight identity families satisfied by every multiplicative conic
// alternative algebra, checked on one triple (x, y, z).
inline void conic_identity_triple(const ConicAlgebra& C, const Vec& x, const Vec& y,
                                  const Vec& z, Report& rep) {
  auto s1 = [&](const Scalar& s) { return C.embed_scalar(s); };
  const Vec cx = C.conj(x), cy = C.conj(y), cz = C.conj(z);

  auto chk = [&](bool cond, const char* name) {
    ++rep.checks;
    if (!cond) rep.fail(std::string("conic identity failed: ") + name);
  };

  // (1) involution: conj(xy) = conj(y) conj(x); conj is an involution
  chk(C.conj(C.mul(x, y)) == C.mul(cy, cx), "conj(xy) = conj(y)conj(x)");
  chk(C.conj(cx) == x, "conj involutive");
  // (2) scalar equations: x conj(x) = n(x) 1 = conj(x) x; x + conj(x) = t(x) 1;
  //     rank-2 equation; unit norm; multiplicativity
  chk(C.mul(x, cx) == s1(C.norm(x)), "x conj(x) = n(x) 1");
  chk(C.mul(cx, x) == s1(C.norm(x)), "conj(x) x = n(x) 1");
  chk(x + cx == s1(C.trace(x)), "x + conj(x) = t(x) 1");
  chk(C.mul(x, x) - C.trace(x) * x + s1(C.norm(x)) == C.zero(), "x^2 - t(x)x + n(x)1 = 0");
  chk(C.norm(C.unit) == Scalar::one(C.ring), "n(1) = 1");
  chk(C.norm(C.mul(x, y)) == C.norm(x) * C.norm(y), "n(xy) = n(x)n(y)");
  // (3) invariance of n and t under conjugation
  chk(C.norm(cx) == C.norm(x), "n(conj x) = n(x)");
  chk(C.trace(cx) == C.trace(x), "t(conj x) = t(x)");
  // (4) Kirmse and its linearization
  chk(C.mul(x, C.mul(cx, y)) == C.norm(x) * y, "x(conj(x)y) = n(x)y");
  chk(C.mul(C.mul(y, cx), x) == C.norm(x) * y, "(y conj(x))x = n(x)y");
  chk(C.mul(x, C.mul(cz, y)) + C.mul(z, C.mul(cx, y)) == C.norm_polar(x, z) * y,
      "x(conj(z)y) + z(conj(x)y) = n(x,z)y");
  chk(C.mul(C.mul(y, cz), x) + C.mul(C.mul(y, cx), z) == C.norm_polar(x, z) * y,
      "(y conj(z))x + (y conj(x))z = n(x,z)y");
  // (5) t(x^2) = t(x)^2 - 2 n(x)
  chk(C.trace(C.mul(x, x)) ==
          C.trace(x) * C.trace(x) - (Scalar::from_int(C.ring, 2) * C.norm(x)),
      "t(x^2) = t(x)^2 - 2n(x)");
  // (6) n(x, conj y) = t(x)t(y) - n(x,y)
  chk(C.norm_polar(x, cy) == C.trace(x) * C.trace(y) - C.norm_polar(x, y),
      "n(x, conj y) = t(x)t(y) - n(x,y)");
  // (7) norm associativity
  chk(C.norm_polar(x, C.mul(y, x)) == C.trace(y) * C.norm(x), "n(x, yx) = t(y)n(x)");
  chk(C.norm_polar(C.mul(x, y), z) == C.norm_polar(x, C.mul(z, cy)),
      "n(xy, z) = n(x, z conj(y))");
  chk(C.norm_polar(C.mul(x, y), z) == C.norm_polar(y, C.mul(cx, z)),
      "n(xy, z) = n(y, conj(x)z)");
  chk(C.bilinear_trace(x, y) == C.norm_polar(x, cy), "t(x,y) = n(x, conj y)");
  // (8) trace associativity/commutativity
  chk(C.trace(C.mul(x, y)) == C.trace(C.mul(y, x)), "t(xy) = t(yx)");
  chk(C.trace(C.mul(C.mul(x, y), z)) == C.trace(C.mul(x, C.mul(y, z))),
      "t((xy)z) = t(x(yz))");
  // alternativity (the algebras are alternative): x(xy) = (xx)y, (yx)x = y(xx)
  chk(C.mul(x, C.mul(x, y)) == C.mul(C.mul(x, x), y), "left alternative");
  chk(C.mul(C.mul(y, x), x) == C.mul(y, C.mul(x, x)), "right alternative");
}

inline Report verify_conic_identities(const ConicAlgebra& C, int samples,
                                      std::uint64_t seed) {
  Report rep;
  // exhaustive on basis triples
  for (std::size_t i = 0; i < C.dim; ++i)
    for (std::size_t j = 0; j < C.dim; ++j)
      for (std::size_t k = 0; k < C.dim; ++k)
        conic_identity_triple(C, C.basis(i), C.basis(j), C.basis(k), rep);
  // seeded random triples
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    Vec x = vec_random(C.ring, C.dim, rng);
    Vec y = vec_random(C.ring, C.dim, rng);
    Vec z = vec_random(C.ring, C.dim, rng);
    conic_identity_triple(C, x, y, z, rep);
  }
  return rep;
}

// Catalogue constructor that self-validates each algebra kind once (over the
// integers, where every catalogue instance is defined with integer structure
// constants) before handing out instances.
inline ConicAlgebra conic_make_checked(const std::string& kind, const RingPtr& ring) {
  static std::vector<std::string> validated;
  bool seen = false;
  for (const auto& k : validated) seen = seen || (k == kind);
  if (!seen) {
    validated.push_back(kind);
    ConicAlgebra CZ = ConicAlgebra::make(kind, Ring::integers());
    Report rep = verify_conic_identities(CZ, 8, /*seed=*/1);
    if (!rep.ok)
      throw std::logic_error("conic catalogue self-check failed for " + kind + ": " +
                             rep.detail);
  }
  return ConicAlgebra::make(kind, ring);
}

}  // namespace alg
