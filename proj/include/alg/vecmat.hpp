#pragma once
// Dense exact vectors and matrices over a Ring, plus field linear algebra
// (rref, rank, kernel, solve, inverse) and subspace utilities. Over the
// integers, rank-type computations embed into the rationals first.

#include "alg/ring.hpp"

#include <cassert>
#include <functional>

namespace alg {

using Vec = std::vector<Scalar>;

inline Vec vec_zero(const RingPtr& r, std::size_t n) { return Vec(n, Scalar::zero(r)); }

inline Vec vec_unit(const RingPtr& r, std::size_t n, std::size_t i) {
  Vec v = vec_zero(r, n);
  v[i] = Scalar::one(r);
  return v;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vec operator-(const Vec& a) {
  Vec out(a);
  for (auto& x : out) x = -x;
  return out;
}

inline Vec operator*(const Scalar& c, const Vec& a) {
  Vec out(a);
  for (auto& x : out) x = c * x;
  return out;
}

inline bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

inline bool operator==(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

inline Vec vec_random(const RingPtr& r, std::size_t n, std::mt19937_64& rng) {
  Vec v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(Scalar::random(r, rng));
  return v;
}

inline Vec vec_map(const Vec& a, const RingPtr& target) {
  Vec out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x.map_into(target));
  return out;
}

// Row-major dense matrix.
class Mat {
 public:
  Mat() = default;
  Mat(const RingPtr& r, std::size_t rows, std::size_t cols)
      : ring_(r), rows_(rows), cols_(cols), d_(rows * cols, Scalar::zero(r)) {}

  static Mat identity(const RingPtr& r, std::size_t n) {
    Mat m(r, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(r);
    return m;
  }

  static Mat from_rows(const RingPtr& r, const std::vector<Vec>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows[0].size();
    Mat m(r, rows.size(), nc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].size() == nc);
      for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  Vec row(std::size_t i) const {
    Vec v(d_.begin() + (long)(i * cols_), d_.begin() + (long)((i + 1) * cols_));
    return v;
  }
  Vec col(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
  }
  void set_row(std::size_t i, const Vec& v) {
    assert(v.size() == cols_);
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
  }
  void set_col(std::size_t j, const Vec& v) {
    assert(v.size() == rows_);
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
  }

  bool operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < d_.size(); ++k)
      if (d_[k] != o.d_[k]) return false;
    return true;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : d_)
      if (!x.is_zero()) return false;
    return true;
  }

  Mat operator+(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat m(*this);
    for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k] + o.d_[k];
    return m;
  }
  Mat operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat m(*this);
    for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k] - o.d_[k];
    return m;
  }
  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat m(ring_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& a = at(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Scalar& b = o.at(k, j);
          if (b.is_zero()) continue;
          m.at(i, j) += a * b;
        }
      }
    return m;
  }
  Mat scaled(const Scalar& c) const {
    Mat m(*this);
    for (auto& x : m.d_) x = c * x;
    return m;
  }

  Vec apply(const Vec& v) const {
    assert(v.size() == cols_);
    Vec out = vec_zero(ring_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Scalar& a = at(i, j);
        if (!a.is_zero() && !v[j].is_zero()) out[i] += a * v[j];
      }
    return out;
  }

  Mat transposed() const {
    Mat m(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  Mat map_into(const RingPtr& target) const {
    Mat m(target, rows_, cols_);
    for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k].map_into(target);
    return m;
  }

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> d_;
};

// ---- field linear algebra -------------------------------------------------
//
// All routines below require a field; callers over the integers should map
// into the rationals first (lin_field_view does this automatically).

inline RingPtr lin_field_ring(const RingPtr& r) {
  if (r->kind == RingKind::Integer) return Ring::rationals();
  if (r->is_field()) return r;
  throw std::domain_error("linear algebra needs a field (or int embedded in q): " + r->name());
}

struct Rref {
  Mat m;                         // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank = 0;
};

inline Rref rref(const Mat& input) {
  RingPtr fr = lin_field_ring(input.ring());
  Mat m = input.ring()->same(*fr) ? input : input.map_into(fr);
  Rref out;
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    Scalar inv = m.at(r, c).invert();
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = inv * m.at(r, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  out.m = std::move(m);
  out.pivots = std::move(pivots);
  out.rank = r;
  return out;
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

// Basis of the right kernel {v : m v = 0}, as vectors over the field view.
inline std::vector<Vec> kernel_basis(const Mat& m) {
  Rref R = rref(m);
  const RingPtr& fr = R.m.ring();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : R.pivots) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec v = vec_zero(fr, m.cols());
    v[c] = Scalar::one(fr);
    for (std::size_t r = 0; r < R.pivots.size(); ++r) v[R.pivots[r]] = -R.m.at(r, c);
    out.push_back(std::move(v));
  }
  return out;
}

// Solve m x = b over the field view; nullopt if inconsistent.
inline std::optional<Vec> solve(const Mat& m, const Vec& b) {
  RingPtr fr = lin_field_ring(m.ring());
  Mat aug(fr, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j).map_into(fr);
    aug.at(i, m.cols()) = b[i].map_into(fr);
  }
  Rref R = rref(aug);
  for (auto c : R.pivots)
    if (c == m.cols()) return std::nullopt;
  Vec x = vec_zero(fr, m.cols());
  for (std::size_t r = 0; r < R.pivots.size(); ++r) x[R.pivots[r]] = R.m.at(r, m.cols());
  return x;
}

inline std::optional<Mat> try_inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  RingPtr fr = lin_field_ring(m.ring());
  std::size_t n = m.rows();
  Mat aug(fr, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j).map_into(fr);
    aug.at(i, n + i) = Scalar::one(fr);
  }
  Rref R = rref(aug);
  if (R.rank != n) return std::nullopt;
  Mat inv(fr, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = R.m.at(i, n + j);
  return inv;
}

// ---- subspaces ------------------------------------------------------------

// A subspace of k^n represented by an rref row basis (canonical form, so
// equality of subspaces is equality of representations).
struct Subspace {
  Mat basis;  // rref rows, possibly 0 x n
  std::size_t ambient = 0;

  std::size_t dim() const { return basis.rows(); }

  static Subspace span(const RingPtr& ring, std::size_t ambient,
                       const std::vector<Vec>& gens) {
    RingPtr fr = lin_field_ring(ring);
    Subspace s;
    s.ambient = ambient;
    if (gens.empty()) {
      s.basis = Mat(fr, 0, ambient);
      return s;
    }
    Rref R = rref(Mat::from_rows(ring, gens));
    Mat b(fr, R.rank, ambient);
    for (std::size_t i = 0; i < R.rank; ++i)
      for (std::size_t j = 0; j < ambient; ++j) b.at(i, j) = R.m.at(i, j);
    s.basis = std::move(b);
    return s;
  }

  bool contains(const Vec& v) const {
    Vec w = vec_map(v, basis.ring());
    // reduce against rref rows
    for (std::size_t r = 0; r < basis.rows(); ++r) {
      std::size_t p = 0;
      while (p < ambient && basis.at(r, p).is_zero()) ++p;
      if (p == ambient) continue;
      if (!w[p].is_zero()) {
        Scalar f = w[p];
        for (std::size_t j = 0; j < ambient; ++j) w[j] = w[j] - f * basis.at(r, j);
      }
    }
    return vec_is_zero(w);
  }

  bool operator==(const Subspace& o) const {
    return ambient == o.ambient && basis == o.basis;
  }

  Subspace sum(const Subspace& o) const {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < basis.rows(); ++i) gens.push_back(basis.row(i));
    for (std::size_t i = 0; i < o.basis.rows(); ++i) gens.push_back(o.basis.row(i));
    return span(basis.ring(), ambient, gens);
  }

  // Intersection via kernel of [B1^T | B2^T] coefficient stacking.
  Subspace intersect(const Subspace& o) const {
    const RingPtr& fr = basis.ring();
    std::size_t d1 = basis.rows(), d2 = o.basis.rows();
    if (d1 == 0 || d2 == 0) return span(fr, ambient, {});
    Mat stacked(fr, ambient, d1 + d2);
    for (std::size_t j = 0; j < d1; ++j) stacked.set_col(j, basis.row(j));
    for (std::size_t j = 0; j < d2; ++j) {
      Vec r = o.basis.row(j);
      for (std::size_t i = 0; i < ambient; ++i) stacked.at(i, d1 + j) = -r[i];
    }
    std::vector<Vec> gens;
    for (const Vec& k : kernel_basis(stacked)) {
      Vec v = vec_zero(fr, ambient);
      for (std::size_t j = 0; j < d1; ++j) v = v + k[j] * basis.row(j);
      gens.push_back(std::move(v));
    }
    return span(fr, ambient, gens);
  }
};

// Accumulated pass/fail result of a verification routine.
struct Report {
  bool ok = true;
  long long checks = 0;
  std::string detail;  // first failure description

  void fail(const std::string& what) {
    if (ok) {
      ok = false;
      detail = what;
    }
  }
  void merge(const Report& o) {
    checks += o.checks;
    if (!o.ok) fail(o.detail);
  }
};

}  // namespace alg
