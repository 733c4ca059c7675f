#pragma once
// Exact scalar arithmetic over the supported base rings:
//   - arbitrary-precision integers
//   - rationals (always reduced, positive denominator)
//   - integers mod p, p >= 2 (residues stored in [0, p))
//   - multivariate polynomials over one of the above (sorted monomials,
//     no zero coefficients)
//
// Ring descriptors parse from the textual forms "int", "q", "zmod:<p>",
// "poly:<base>:<v1,v2,...>".

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace alg {

// Expression templates disabled so results assign cleanly into std::variant.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using BigRat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

enum class RingKind { Integer, Rational, Modular, Polynomial };

struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct Ring {
  RingKind kind = RingKind::Integer;
  std::uint64_t p = 0;                  // Modular only
  RingPtr base;                         // Polynomial only
  std::vector<std::string> vars;        // Polynomial only

  static RingPtr integers() {
    static RingPtr r = std::make_shared<Ring>(Ring{RingKind::Integer, 0, nullptr, {}});
    return r;
  }
  static RingPtr rationals() {
    static RingPtr r = std::make_shared<Ring>(Ring{RingKind::Rational, 0, nullptr, {}});
    return r;
  }
  static RingPtr modular(std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("modulus must be >= 2");
    return std::make_shared<Ring>(Ring{RingKind::Modular, p, nullptr, {}});
  }
  static RingPtr polynomial(RingPtr base, std::vector<std::string> vars) {
    if (!base || base->kind == RingKind::Polynomial)
      throw std::invalid_argument("polynomial base ring must be int, q, or zmod");
    if (vars.empty()) throw std::invalid_argument("polynomial ring needs variables");
    return std::make_shared<Ring>(Ring{RingKind::Polynomial, 0, std::move(base), std::move(vars)});
  }

  // "int" | "q" | "zmod:<p>" | "poly:<base>:<v1,v2,...>"
  static RingPtr parse(const std::string& spec) {
    if (spec == "int") return integers();
    if (spec == "q") return rationals();
    if (spec.rfind("zmod:", 0) == 0) {
      return modular(std::stoull(spec.substr(5)));
    }
    if (spec.rfind("poly:", 0) == 0) {
      auto rest = spec.substr(5);
      // base spec may itself contain a colon (zmod:<p>); vars never do,
      // so the last colon is the separator
      auto colon = rest.rfind(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("poly spec needs poly:<base>:<vars>");
      RingPtr base = parse(rest.substr(0, colon));
      std::vector<std::string> vars;
      std::stringstream ss(rest.substr(colon + 1));
      std::string v;
      while (std::getline(ss, v, ',')) {
        if (!v.empty()) vars.push_back(v);
      }
      return polynomial(base, std::move(vars));
    }
    throw std::invalid_argument("unknown ring spec: " + spec);
  }

  bool same(const Ring& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case RingKind::Integer:
      case RingKind::Rational: return true;
      case RingKind::Modular: return p == o.p;
      case RingKind::Polynomial: return base->same(*o.base) && vars == o.vars;
    }
    return false;
  }

  // "Field" here means every nonzero element is invertible; for zmod that
  // requires a prime modulus.
  bool is_field() const {
    switch (kind) {
      case RingKind::Rational: return true;
      case RingKind::Modular: {
        if (p < 2) return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
          if (p % d == 0) return false;
        return true;
      }
      default: return false;
    }
  }

  std::string name() const {
    switch (kind) {
      case RingKind::Integer: return "int";
      case RingKind::Rational: return "q";
      case RingKind::Modular: return "zmod:" + std::to_string(p);
      case RingKind::Polynomial: {
        std::string s = "poly:" + base->name() + ":";
        for (std::size_t i = 0; i < vars.size(); ++i) {
          if (i) s += ",";
          s += vars[i];
        }
        return s;
      }
    }
    return "?";
  }
};

class Scalar;
using Monomial = std::vector<std::int32_t>;  // exponent vector, one slot per ring var

struct PolyData {
  // Sorted by monomial (lexicographic); no zero coefficients.
  std::vector<std::pair<Monomial, Scalar>> terms;
  bool operator==(const PolyData&) const;
};

class Scalar {
 public:
  Scalar() : ring_(Ring::integers()), v_(BigInt(0)) {}

  static Scalar zero(const RingPtr& r) { return from_int(r, 0); }
  static Scalar one(const RingPtr& r) { return from_int(r, 1); }

  static Scalar from_int(const RingPtr& r, long long n) { return from_bigint(r, BigInt(n)); }

  static Scalar from_bigint(const RingPtr& r, const BigInt& n) {
    Scalar s;
    s.ring_ = r;
    switch (r->kind) {
      case RingKind::Integer: s.v_ = n; break;
      case RingKind::Rational: s.v_ = BigRat(n); break;
      case RingKind::Modular: s.v_ = mod_reduce(n, r->p); break;
      case RingKind::Polynomial: {
        PolyData pd;
        Scalar c = from_bigint(r->base, n);
        if (!c.is_zero()) pd.terms.emplace_back(Monomial(r->vars.size(), 0), c);
        s.v_ = std::move(pd);
        break;
      }
    }
    return s;
  }

  static Scalar from_rational(const RingPtr& r, const BigRat& q) {
    if (r->kind == RingKind::Rational) {
      Scalar s;
      s.ring_ = r;
      s.v_ = q;
      return s;
    }
    if (boost::multiprecision::denominator(q) == 1)
      return from_bigint(r, boost::multiprecision::numerator(q));
    throw std::invalid_argument("non-integral rational into non-rational ring");
  }

  // The i-th ring variable as a polynomial scalar.
  static Scalar variable(const RingPtr& r, std::size_t i) {
    if (r->kind != RingKind::Polynomial || i >= r->vars.size())
      throw std::invalid_argument("variable: not a polynomial ring / index out of range");
    Scalar s;
    s.ring_ = r;
    PolyData pd;
    Monomial m(r->vars.size(), 0);
    m[i] = 1;
    pd.terms.emplace_back(std::move(m), Scalar::one(r->base));
    s.v_ = std::move(pd);
    return s;
  }

  const RingPtr& ring() const { return ring_; }

  bool is_zero() const {
    switch (ring_->kind) {
      case RingKind::Integer: return std::get<BigInt>(v_) == 0;
      case RingKind::Rational: return std::get<BigRat>(v_) == 0;
      case RingKind::Modular: return std::get<std::uint64_t>(v_) == 0;
      case RingKind::Polynomial: return std::get<PolyData>(v_).terms.empty();
    }
    return true;
  }

  bool is_one() const { return *this == Scalar::one(ring_); }

  bool operator==(const Scalar& o) const {
    if (!ring_->same(*o.ring_)) return false;
    return v_ == o.v_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar operator+(const Scalar& o) const {
    check_same(o);
    Scalar r;
    r.ring_ = ring_;
    switch (ring_->kind) {
      case RingKind::Integer: r.v_ = std::get<BigInt>(v_) + std::get<BigInt>(o.v_); break;
      case RingKind::Rational: r.v_ = std::get<BigRat>(v_) + std::get<BigRat>(o.v_); break;
      case RingKind::Modular: {
        std::uint64_t s = std::get<std::uint64_t>(v_) + std::get<std::uint64_t>(o.v_);
        if (s >= ring_->p) s -= ring_->p;
        r.v_ = s;
        break;
      }
      case RingKind::Polynomial: r.v_ = poly_add(std::get<PolyData>(v_), std::get<PolyData>(o.v_)); break;
    }
    return r;
  }

  Scalar operator-() const {
    Scalar r;
    r.ring_ = ring_;
    switch (ring_->kind) {
      case RingKind::Integer: r.v_ = BigInt(-std::get<BigInt>(v_)); break;
      case RingKind::Rational: r.v_ = BigRat(-std::get<BigRat>(v_)); break;
      case RingKind::Modular: {
        std::uint64_t a = std::get<std::uint64_t>(v_);
        r.v_ = a == 0 ? 0 : ring_->p - a;
        break;
      }
      case RingKind::Polynomial: {
        PolyData pd = std::get<PolyData>(v_);
        for (auto& t : pd.terms) t.second = -t.second;
        r.v_ = std::move(pd);
        break;
      }
    }
    return r;
  }

  Scalar operator-(const Scalar& o) const { return *this + (-o); }

  Scalar operator*(const Scalar& o) const {
    check_same(o);
    Scalar r;
    r.ring_ = ring_;
    switch (ring_->kind) {
      case RingKind::Integer: r.v_ = std::get<BigInt>(v_) * std::get<BigInt>(o.v_); break;
      case RingKind::Rational: r.v_ = std::get<BigRat>(v_) * std::get<BigRat>(o.v_); break;
      case RingKind::Modular: {
        unsigned __int128 prod = (unsigned __int128)std::get<std::uint64_t>(v_) *
                                 std::get<std::uint64_t>(o.v_);
        r.v_ = (std::uint64_t)(prod % ring_->p);
        break;
      }
      case RingKind::Polynomial: r.v_ = poly_mul(std::get<PolyData>(v_), std::get<PolyData>(o.v_)); break;
    }
    return r;
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  std::optional<Scalar> try_invert() const {
    Scalar r;
    r.ring_ = ring_;
    switch (ring_->kind) {
      case RingKind::Integer: {
        const BigInt& a = std::get<BigInt>(v_);
        if (a == 1 || a == -1) {
          r.v_ = a;
          return r;
        }
        return std::nullopt;
      }
      case RingKind::Rational: {
        const BigRat& a = std::get<BigRat>(v_);
        if (a == 0) return std::nullopt;
        r.v_ = BigRat(1) / a;
        return r;
      }
      case RingKind::Modular: {
        std::uint64_t a = std::get<std::uint64_t>(v_);
        if (a == 0) return std::nullopt;
        // extended Euclid over signed 128-bit
        __int128 t = 0, newt = 1, rr = (__int128)ring_->p, newr = (__int128)a;
        while (newr != 0) {
          __int128 q = rr / newr;
          std::swap(t -= q * newt, newt);
          std::swap(rr -= q * newr, newr);
        }
        if (rr != 1) return std::nullopt;
        if (t < 0) t += ring_->p;
        r.v_ = (std::uint64_t)t;
        return r;
      }
      case RingKind::Polynomial: {
        // only constants invertible in the base ring
        const PolyData& pd = std::get<PolyData>(v_);
        if (pd.terms.size() != 1) return std::nullopt;
        for (auto e : pd.terms[0].first)
          if (e != 0) return std::nullopt;
        auto ci = pd.terms[0].second.try_invert();
        if (!ci) return std::nullopt;
        PolyData out;
        out.terms.emplace_back(pd.terms[0].first, *ci);
        r.v_ = std::move(out);
        return r;
      }
    }
    return std::nullopt;
  }

  Scalar invert() const {
    auto r = try_invert();
    if (!r) throw std::domain_error("scalar not invertible in " + ring_->name());
    return *r;
  }

  // Uniform-ish small random element (seeded externally); used by sampling suites.
  static Scalar random(const RingPtr& r, std::mt19937_64& rng) {
    switch (r->kind) {
      case RingKind::Integer: {
        std::uniform_int_distribution<int> d(-9, 9);
        return from_int(r, d(rng));
      }
      case RingKind::Rational: {
        std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
        return from_rational(r, BigRat(num(rng), den(rng)));
      }
      case RingKind::Modular: {
        std::uniform_int_distribution<std::uint64_t> d(0, r->p - 1);
        return from_int(r, (long long)d(rng));
      }
      case RingKind::Polynomial: {
        // random degree <= 1 polynomial
        Scalar s = from_int(r, 0);
        Scalar c = random(r->base, rng);
        s = s + lift_constant(r, c);
        std::uniform_int_distribution<int> pick(0, (int)r->vars.size());
        int which = pick(rng);
        if (which < (int)r->vars.size())
          s = s + variable(r, which) * lift_constant(r, random(r->base, rng));
        return s;
      }
    }
    return zero(r);
  }

  // Embed a base-ring constant into the polynomial ring r.
  static Scalar lift_constant(const RingPtr& r, const Scalar& c) {
    if (r->kind != RingKind::Polynomial) throw std::invalid_argument("lift_constant: not poly");
    if (!c.ring()->same(*r->base)) throw std::invalid_argument("lift_constant: wrong base");
    Scalar s;
    s.ring_ = r;
    PolyData pd;
    if (!c.is_zero()) pd.terms.emplace_back(Monomial(r->vars.size(), 0), c);
    s.v_ = std::move(pd);
    return s;
  }

  // Polynomial evaluation: substitute vals[i] (in the base ring) for var i.
  Scalar evaluate(const std::vector<Scalar>& vals) const {
    if (ring_->kind != RingKind::Polynomial) throw std::invalid_argument("evaluate: not poly");
    if (vals.size() != ring_->vars.size()) throw std::invalid_argument("evaluate: arity");
    Scalar acc = Scalar::zero(ring_->base);
    for (const auto& [mono, coef] : std::get<PolyData>(v_).terms) {
      Scalar term = coef;
      for (std::size_t i = 0; i < mono.size(); ++i)
        for (std::int32_t e = 0; e < mono[i]; ++e) term = term * vals[i];
      acc = acc + term;
    }
    return acc;
  }

  // Access for rank computations: rationals only.
  const BigRat& as_rational() const {
    if (ring_->kind != RingKind::Rational) throw std::domain_error("as_rational");
    return std::get<BigRat>(v_);
  }
  const BigInt& as_integer() const {
    if (ring_->kind != RingKind::Integer) throw std::domain_error("as_integer");
    return std::get<BigInt>(v_);
  }
  std::uint64_t as_modular() const {
    if (ring_->kind != RingKind::Modular) throw std::domain_error("as_modular");
    return std::get<std::uint64_t>(v_);
  }
  const PolyData& as_poly() const {
    if (ring_->kind != RingKind::Polynomial) throw std::domain_error("as_poly");
    return std::get<PolyData>(v_);
  }

  // Map this scalar into another ring where a canonical map exists:
  // int -> anything; q -> q; zmod:p -> zmod:p; base -> poly over base.
  Scalar map_into(const RingPtr& target) const {
    if (ring_->same(*target)) return *this;
    if (ring_->kind == RingKind::Integer) {
      return from_bigint(target, std::get<BigInt>(v_));
    }
    if (target->kind == RingKind::Polynomial && ring_->same(*target->base)) {
      return lift_constant(target, *this);
    }
    throw std::invalid_argument("no canonical map " + ring_->name() + " -> " + target->name());
  }

  std::string str() const {
    switch (ring_->kind) {
      case RingKind::Integer: return std::get<BigInt>(v_).str();
      case RingKind::Rational: {
        const BigRat& q = std::get<BigRat>(v_);
        std::string s = boost::multiprecision::numerator(q).str();
        if (boost::multiprecision::denominator(q) != 1)
          s += "/" + boost::multiprecision::denominator(q).str();
        return s;
      }
      case RingKind::Modular: return std::to_string(std::get<std::uint64_t>(v_));
      case RingKind::Polynomial: {
        const PolyData& pd = std::get<PolyData>(v_);
        if (pd.terms.empty()) return "0";
        std::string s;
        for (std::size_t k = 0; k < pd.terms.size(); ++k) {
          if (k) s += " + ";
          const auto& [mono, coef] = pd.terms[k];
          std::string ms;
          for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0) continue;
            if (!ms.empty()) ms += "*";
            ms += ring_->vars[i];
            if (mono[i] > 1) ms += "^" + std::to_string(mono[i]);
          }
          std::string cs = coef.str();
          if (ms.empty()) s += cs;
          else if (cs == "1") s += ms;
          else s += "(" + cs + ")*" + ms;
        }
        return s;
      }
    }
    return "?";
  }

 private:
  RingPtr ring_;
  std::variant<BigInt, BigRat, std::uint64_t, PolyData> v_;

  void check_same(const Scalar& o) const {
    if (!ring_->same(*o.ring_))
      throw std::invalid_argument("ring mismatch: " + ring_->name() + " vs " + o.ring_->name());
  }

  static std::uint64_t mod_reduce(const BigInt& n, std::uint64_t p) {
    BigInt r = n % (BigInt)p;
    if (r < 0) r += p;
    return (std::uint64_t)r;
  }

  static PolyData poly_add(const PolyData& a, const PolyData& b) {
    PolyData out;
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
      if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
        out.terms.push_back(a.terms[i++]);
      } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
        out.terms.push_back(b.terms[j++]);
      } else {
        Scalar c = a.terms[i].second + b.terms[j].second;
        if (!c.is_zero()) out.terms.emplace_back(a.terms[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }

  static PolyData poly_mul(const PolyData& a, const PolyData& b) {
    std::vector<std::pair<Monomial, Scalar>> raw;
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) {
        Monomial m(ma.size());
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
        raw.emplace_back(std::move(m), ca * cb);
      }
    std::sort(raw.begin(), raw.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    PolyData out;
    for (auto& [m, c] : raw) {
      if (!out.terms.empty() && out.terms.back().first == m) {
        out.terms.back().second = out.terms.back().second + c;
        if (out.terms.back().second.is_zero()) out.terms.pop_back();
      } else if (!c.is_zero()) {
        out.terms.emplace_back(std::move(m), std::move(c));
      }
    }
    return out;
  }
};

inline bool PolyData::operator==(const PolyData& o) const { return terms == o.terms; }

}  // namespace alg
