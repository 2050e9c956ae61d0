#pragma once

// Exact arithmetic in the real subfield of the cyclotomic field Q(zeta_N),
// N = 4n, which contains cos(k pi / n) and sin(k pi / n) for every k.
//
// Elements are stored over the power basis 1, zeta, ..., zeta^(deg-1) with
// a common positive denominator, always reduced modulo the N-th cyclotomic
// polynomial and with gcd(numerators, denominator) = 1, so the
// representation is canonical and equality is coefficient equality.
// The embedding used for signs sends zeta to exp(2 pi i / N).

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ward/error.hpp"

namespace ward {

class FieldElement;

namespace detail {

struct FieldData {
  int n = 0;
  int conductor = 0;
  int degree = 0;
  // Phi_N, lowest degree first, monic.
  std::vector<mpz_class> cyclotomic;
  // powers[k] = zeta^k reduced, k in [0, N).
  std::vector<std::vector<mpz_class>> powers;
  // cos(2 pi j / N) for j < degree.
  std::vector<double> cos_table;
};

inline std::vector<std::int64_t> divide_monic(const std::vector<std::int64_t>& num,
                                              const std::vector<std::int64_t>& den) {
  std::vector<std::int64_t> rem = num;
  const std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const std::int64_t c = rem[k];
    if (c == 0) continue;
    quot[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) rem[k - dn + j] -= c * den[j];
  }
  return quot;
}

inline std::vector<std::int64_t> cyclotomic_polynomial(int m) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
  }
  return p;
}

inline std::unique_ptr<FieldData> build_field(int n) {
  auto f = std::make_unique<FieldData>();
  f->n = n;
  f->conductor = 4 * n;
  const auto phi = cyclotomic_polynomial(f->conductor);
  f->degree = static_cast<int>(phi.size()) - 1;
  for (auto c : phi) f->cyclotomic.emplace_back(static_cast<long>(c));

  const auto deg = static_cast<std::size_t>(f->degree);
  std::vector<mpz_class> cur(deg, 0);
  cur[0] = 1;
  for (int k = 0; k < f->conductor; ++k) {
    f->powers.push_back(cur);
    // multiply by x and reduce
    mpz_class top = cur[deg - 1];
    for (std::size_t j = deg - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t j = 0; j < deg; ++j) cur[j] -= top * f->cyclotomic[j];
    }
  }
  for (int j = 0; j < f->degree; ++j) {
    f->cos_table.push_back(std::cos(2.0 * M_PI * j / f->conductor));
  }
  return f;
}

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace detail

/// Handle to an immutable, interned field descriptor.
class Context {
 public:
  Context() = default;

  bool valid() const { return data_ != nullptr; }
  int n() const { return data_->n; }
  int conductor() const { return data_->conductor; }
  int degree() const { return data_->degree; }
  const std::vector<mpz_class>& minimal_polynomial() const { return data_->cyclotomic; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement integer(long v) const;
  FieldElement rational(const mpq_class& q) const;
  /// Builds an element from power-basis coordinates; rejects non-real values.
  FieldElement from_coefficients(const std::vector<mpq_class>& coeffs) const;

  const detail::FieldData* data() const { return data_; }

  friend bool operator==(const Context& a, const Context& b) { return a.data_ == b.data_; }

 private:
  explicit Context(const detail::FieldData* d) : data_(d) {}
  friend Context make_context(int n);

  const detail::FieldData* data_ = nullptr;
};

/// Contexts are interned per n and live for the lifetime of the process.
inline Context make_context(int n) {
  if (n < 3) throw InvalidParameter("field context requires n >= 3, got " + std::to_string(n));
  static std::mutex mu;
  static std::map<int, std::unique_ptr<detail::FieldData>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[n];
  if (!slot) slot = detail::build_field(n);
  return Context(slot.get());
}

class FieldElement {
 public:
  FieldElement() = default;

  const Context& context() const { return ctx_; }
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  std::vector<mpq_class> coefficients() const {
    std::vector<mpq_class> out;
    out.reserve(num_.size());
    for (const auto& c : num_) {
      mpq_class q(c, den_);
      q.canonicalize();
      out.push_back(q);
    }
    return out;
  }

  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return c == 0; });
  }

  bool is_rational() const {
    return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return c == 0; });
  }

  std::optional<mpq_class> as_rational() const {
    if (!is_rational()) return std::nullopt;
    mpq_class q(num_[0], den_);
    q.canonicalize();
    return q;
  }

  /// Sign of the real embedding. Exact.
  int sign() const;

  /// Double approximation of the real embedding (not certified).
  double approx() const {
    if (num_.empty()) return 0.0;
    long de = 0;
    const double dm = mpz_get_d_2exp(&de, den_.get_mpz_t());
    double acc = 0.0;
    const auto& cs = ctx_.data()->cos_table;
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] == 0) continue;
      long e = 0;
      const double m = mpz_get_d_2exp(&e, num_[j].get_mpz_t());
      acc += std::ldexp(m, static_cast<int>(e - de)) * cs[j];
    }
    return acc / dm;
  }

  /// Double approximation together with an absolute error bound.
  std::pair<double, double> enclosure() const {
    if (num_.empty()) return {0.0, 0.0};
    long de = 0;
    const double dm = mpz_get_d_2exp(&de, den_.get_mpz_t());
    double acc = 0.0;
    double mag = 0.0;
    const auto& cs = ctx_.data()->cos_table;
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] == 0) continue;
      long e = 0;
      const double m = mpz_get_d_2exp(&e, num_[j].get_mpz_t());
      const double t = std::ldexp(m, static_cast<int>(e - de));
      acc += t * cs[j];
      mag += std::fabs(t);
    }
    const double err = (mag / std::fabs(dm)) * (2.0 * static_cast<double>(num_.size()) + 10.0) * 0x1p-52 + 0x1p-1000;
    return {acc / dm, err};
  }

  FieldElement operator-() const {
    FieldElement r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
  }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return combine(a, b, false);
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return combine(a, b, true);
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
  }

  friend FieldElement operator*(const FieldElement& a, const mpq_class& q) { return a.scaled(q); }
  friend FieldElement operator*(const mpq_class& q, const FieldElement& a) { return a.scaled(q); }
  friend FieldElement operator*(const FieldElement& a, long q) { return a.scaled(mpq_class(q)); }
  friend FieldElement operator*(long q, const FieldElement& a) { return a.scaled(mpq_class(q)); }
  friend FieldElement operator/(const FieldElement& a, const mpq_class& q) {
    if (q == 0) throw InvalidParameter("division by zero");
    return a.scaled(1 / q);
  }
  friend FieldElement operator/(const FieldElement& a, long q) { return a / mpq_class(q); }
  friend FieldElement operator+(const FieldElement& a, const mpq_class& q) {
    return a + a.ctx_.rational(q);
  }
  friend FieldElement operator-(const FieldElement& a, const mpq_class& q) {
    return a - a.ctx_.rational(q);
  }
  friend FieldElement operator+(const mpq_class& q, const FieldElement& a) { return a + q; }
  friend FieldElement operator-(const mpq_class& q, const FieldElement& a) {
    return a.ctx_.rational(q) - a;
  }

  FieldElement inverse() const;

  /// Complex conjugate in the ambient cyclotomic field.
  FieldElement conjugate() const {
    const auto* f = ctx_.data();
    std::vector<mpz_class> acc(num_.size(), 0);
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] == 0) continue;
      const auto& p = f->powers[static_cast<std::size_t>((f->conductor - static_cast<int>(j)) % f->conductor)];
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (p[i] != 0) acc[i] += num_[j] * p[i];
      }
    }
    return FieldElement(ctx_, std::move(acc), den_);
  }

  bool is_real() const { return conjugate() == *this; }

  /// Returns r with *this == r * other when r is rational; other must be nonzero.
  std::optional<mpq_class> rational_ratio(const FieldElement& other) const {
    check_same(*this, other);
    std::size_t pivot = num_.size();
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (other.num_[j] != 0) {
        pivot = j;
        break;
      }
    }
    if (pivot == num_.size()) throw InvalidParameter("ratio with zero element");
    mpq_class r(num_[pivot] * other.den_, other.num_[pivot] * den_);
    r.canonicalize();
    // this.num/this.den == r * other.num/other.den  <=>  this.num * other.den * r.den == r.num * other.num * this.den
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] * other.den_ * r.get_den() != r.get_num() * other.num_[j] * den_) return std::nullopt;
    }
    return r;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.ctx_ == b.ctx_ && a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  // Order of the real embedding.
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; }
  friend bool operator>(const FieldElement& a, const FieldElement& b) { return compare(a, b) > 0; }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const FieldElement& a, const FieldElement& b) { return compare(a, b) >= 0; }

  friend int compare(const FieldElement& a, const FieldElement& b) {
    if (a == b) return 0;
    return (a - b).sign();
  }

  /// Total order on representations, for use as a container key.
  friend bool canonical_less(const FieldElement& a, const FieldElement& b) {
    if (a.den_ != b.den_) return a.den_ < b.den_;
    return a.num_ < b.num_;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<long>{}(static_cast<long>(mpz_get_si(den_.get_mpz_t())));
    for (const auto& c : num_) {
      const auto limb = mpz_size(c.get_mpz_t()) ? mpz_getlimbn(c.get_mpz_t(), 0) : 0;
      h ^= std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(limb) ^
                                      (static_cast<std::uint64_t>(mpz_sgn(c.get_mpz_t()) + 1) << 62)) +
           0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    const auto cs = coefficients();
    for (std::size_t j = 0; j < cs.size(); ++j) os << (j ? ", " : "") << cs[j].get_str();
    os << ']';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
    return os << x.approx() << ' ' << x.to_string();
  }

 private:
  friend class Context;

  FieldElement(Context ctx, std::vector<mpz_class> num, mpz_class den)
      : ctx_(ctx), num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!a.ctx_.valid() || !(a.ctx_ == b.ctx_)) {
      throw ContextMismatch("field elements from different contexts");
    }
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : num_) c = -c;
    }
    if (is_zero()) {
      den_ = 1;
      return;
    }
    if (den_ == 1) return;
    mpz_class g = den_;
    for (const auto& c : num_) {
      if (c == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) return;
    }
    if (g != 1) {
      den_ /= g;
      for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
  }

  static FieldElement combine(const FieldElement& a, const FieldElement& b, bool subtract) {
    check_same(a, b);
    std::vector<mpz_class> out(a.num_.size());
    if (a.den_ == b.den_) {
      for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = subtract ? mpz_class(a.num_[j] - b.num_[j]) : mpz_class(a.num_[j] + b.num_[j]);
      }
      return FieldElement(a.ctx_, std::move(out), a.den_);
    }
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = subtract ? mpz_class(a.num_[j] * b.den_ - b.num_[j] * a.den_)
                      : mpz_class(a.num_[j] * b.den_ + b.num_[j] * a.den_);
    }
    return FieldElement(a.ctx_, std::move(out), a.den_ * b.den_);
  }

  FieldElement scaled(const mpq_class& q) const {
    std::vector<mpz_class> out(num_.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = num_[j] * q.get_num();
    return FieldElement(ctx_, std::move(out), den_ * q.get_den());
  }

  Context ctx_;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  FieldElement::check_same(a, b);
  if (a.is_rational()) return b.scaled(mpq_class(a.num_[0], a.den_));
  if (b.is_rational()) return a.scaled(mpq_class(b.num_[0], b.den_));
  const auto* f = a.ctx_.data();
  const std::size_t deg = a.num_.size();
  std::vector<mpz_class> prod(2 * deg - 1, 0);
  for (std::size_t i = 0; i < deg; ++i) {
    if (a.num_[i] == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) {
      if (b.num_[j] == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  std::vector<mpz_class> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(deg));
  for (std::size_t k = deg; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    const auto& p = f->powers[k];
    for (std::size_t i = 0; i < deg; ++i) {
      if (p[i] != 0) mpz_addmul(out[i].get_mpz_t(), prod[k].get_mpz_t(), p[i].get_mpz_t());
    }
  }
  return FieldElement(a.ctx_, std::move(out), a.den_ * b.den_);
}

inline FieldElement FieldElement::inverse() const {
  if (!ctx_.valid()) throw ContextMismatch("uninitialised field element");
  if (is_zero()) throw InvalidParameter("inverse of zero");
  if (is_rational()) {
    mpq_class q(den_, num_[0]);
    q.canonicalize();
    return ctx_.rational(q);
  }
  // Solve (num * y) = 1 via the multiplication matrix; then this^-1 = den * y.
  const auto* f = ctx_.data();
  const std::size_t deg = num_.size();
  std::vector<std::vector<mpq_class>> m(deg, std::vector<mpq_class>(deg + 1, 0));
  std::vector<mpz_class> col = num_;
  for (std::size_t j = 0; j < deg; ++j) {
    for (std::size_t i = 0; i < deg; ++i) m[i][j] = col[i];
    mpz_class top = col[deg - 1];
    for (std::size_t i = deg - 1; i > 0; --i) col[i] = col[i - 1];
    col[0] = 0;
    if (top != 0) {
      for (std::size_t i = 0; i < deg; ++i) col[i] -= top * f->cyclotomic[i];
    }
  }
  m[0][deg] = 1;
  for (std::size_t c = 0; c < deg; ++c) {
    std::size_t piv = c;
    while (piv < deg && m[piv][c] == 0) ++piv;
    if (piv == deg) throw InvalidParameter("singular multiplication matrix");
    std::swap(m[c], m[piv]);
    const mpq_class inv = 1 / m[c][c];
    for (std::size_t k = c; k <= deg; ++k) m[c][k] *= inv;
    for (std::size_t r = 0; r < deg; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const mpq_class factor = m[r][c];
      for (std::size_t k = c; k <= deg; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  std::vector<mpq_class> y(deg);
  for (std::size_t i = 0; i < deg; ++i) y[i] = m[i][deg] * den_;
  mpz_class common = 1;
  for (const auto& q : y) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> out(deg);
  for (std::size_t i = 0; i < deg; ++i) out[i] = y[i].get_num() * (common / y[i].get_den());
  return FieldElement(ctx_, std::move(out), common);
}

inline int FieldElement::sign() const {
  if (!ctx_.valid()) throw ContextMismatch("uninitialised field element");
  // Fast path: scaled double evaluation with a forward error bound.
  const auto& cs = ctx_.data()->cos_table;
  long emax = LONG_MIN;
  bool any = false;
  for (const auto& c : num_) {
    if (c == 0) continue;
    any = true;
    long e = 0;
    mpz_get_d_2exp(&e, c.get_mpz_t());
    emax = std::max(emax, e);
  }
  if (!any) return 0;
  double acc = 0.0;
  double mag = 0.0;
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    long e = 0;
    const double m = mpz_get_d_2exp(&e, num_[j].get_mpz_t());
    const double t = std::ldexp(m, static_cast<int>(e - emax));
    acc += t * cs[j];
    mag += std::fabs(t);
  }
  const double bound = mag * (2.0 * static_cast<double>(num_.size()) + 8.0) * 0x1p-52 + 0x1p-1000;
  if (acc > bound) return 1;
  if (acc < -bound) return -1;

  // Slow path: MPFR with doubling precision. Terminates because the
  // embedding is injective and the element is nonzero.
  const auto* f = ctx_.data();
  for (mpfr_prec_t prec = 128;; prec *= 2) {
    detail::Mpfr pi(prec), angle(prec), c(prec), term(prec), sum(prec), absum(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    mpfr_set_ui(sum.get(), 0, MPFR_RNDN);
    mpfr_set_ui(absum.get(), 0, MPFR_RNDN);
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] == 0) continue;
      mpfr_mul_ui(angle.get(), pi.get(), 2 * static_cast<unsigned long>(j), MPFR_RNDN);
      mpfr_div_ui(angle.get(), angle.get(), static_cast<unsigned long>(f->conductor), MPFR_RNDN);
      mpfr_cos(c.get(), angle.get(), MPFR_RNDN);
      mpfr_mul_z(term.get(), c.get(), num_[j].get_mpz_t(), MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
      mpfr_set_z(term.get(), num_[j].get_mpz_t(), MPFR_RNDU);
      mpfr_abs(term.get(), term.get(), MPFR_RNDU);
      mpfr_add(absum.get(), absum.get(), term.get(), MPFR_RNDU);
    }
    // |error| <= absum * (deg + 32) * 2^(6 - prec)
    mpfr_mul_ui(absum.get(), absum.get(), static_cast<unsigned long>(num_.size() + 32), MPFR_RNDU);
    mpfr_mul_2si(absum.get(), absum.get(), 6 - static_cast<long>(prec), MPFR_RNDU);
    mpfr_abs(term.get(), sum.get(), MPFR_RNDN);
    if (mpfr_greater_p(term.get(), absum.get())) return mpfr_sgn(sum.get()) > 0 ? 1 : -1;
    if (prec > (1 << 20)) throw Error("sign determination did not converge");
  }
}

inline FieldElement Context::zero() const { return integer(0); }
inline FieldElement Context::one() const { return integer(1); }
inline FieldElement Context::integer(long v) const { return rational(mpq_class(v)); }

inline FieldElement Context::rational(const mpq_class& q) const {
  if (!valid()) throw ContextMismatch("uninitialised context");
  std::vector<mpz_class> num(static_cast<std::size_t>(degree()), 0);
  num[0] = q.get_num();
  return FieldElement(*this, std::move(num), q.get_den());
}

inline FieldElement Context::from_coefficients(const std::vector<mpq_class>& coeffs) const {
  if (!valid()) throw ContextMismatch("uninitialised context");
  if (coeffs.size() != static_cast<std::size_t>(degree())) {
    throw InvalidInput("expected " + std::to_string(degree()) + " coefficients, got " +
                       std::to_string(coeffs.size()));
  }
  mpz_class common = 1;
  for (const auto& q : coeffs) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> num(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) num[j] = coeffs[j].get_num() * (common / coeffs[j].get_den());
  FieldElement x(*this, std::move(num), common);
  if (!x.is_real()) throw InvalidInput("coefficient vector does not describe a real element");
  return x;
}

namespace detail {

inline FieldElement zeta_combination(const Context& ctx, long e1, long e2, long sign2) {
  const auto* f = ctx.data();
  const long nn = f->conductor;
  const auto& p1 = f->powers[static_cast<std::size_t>(((e1 % nn) + nn) % nn)];
  const auto& p2 = f->powers[static_cast<std::size_t>(((e2 % nn) + nn) % nn)];
  std::vector<mpq_class> c(static_cast<std::size_t>(f->degree));
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = mpq_class(mpz_class(p1[i] + sign2 * p2[i]), mpz_class(2));
    c[i].canonicalize();
  }
  return ctx.from_coefficients(c);
}

inline long trig_exponent(const Context& ctx, long k, long d) {
  if (d <= 0) throw InvalidParameter("trig denominator must be positive");
  const long two_n = 2L * ctx.n();
  if (two_n % d != 0) {
    throw RepresentabilityError("cos/sin(k pi / " + std::to_string(d) + ") requires d | " +
                                std::to_string(two_n));
  }
  // k pi / d = 2 pi m / N with N = 4n  =>  m = 2 n k / d
  return k * (two_n / d);
}

}  // namespace detail

/// cos(k pi / d); d must divide 2n.
inline FieldElement trig_cos(const Context& ctx, long k, long d) {
  const long m = detail::trig_exponent(ctx, k, d);
  return detail::zeta_combination(ctx, m, -m, 1);
}

/// sin(k pi / d); d must divide 2n.
inline FieldElement trig_sin(const Context& ctx, long k, long d) {
  const long m = detail::trig_exponent(ctx, k, d);
  // (zeta^m - zeta^-m) / (2i), 1/i = zeta^(3N/4) = zeta^(3n)
  const long shift = 3L * ctx.n();
  return detail::zeta_combination(ctx, m + shift, -m + shift, -1);
}

inline int sign(const FieldElement& x) { return x.sign(); }
inline bool is_rational(const FieldElement& x) { return x.is_rational(); }
inline std::optional<mpq_class> as_rational(const FieldElement& x) { return x.as_rational(); }

inline FieldElement abs(const FieldElement& x) { return x.sign() < 0 ? -x : x; }

struct FieldElementHash {
  std::size_t operator()(const FieldElement& x) const { return x.hash(); }
};

/// Planar vector with field coordinates.
struct Vec2 {
  FieldElement x;
  FieldElement y;

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  friend Vec2 operator*(const FieldElement& k, const Vec2& v) { return {k * v.x, k * v.y}; }
  friend Vec2 operator*(const mpq_class& k, const Vec2& v) { return {v.x * k, v.y * k}; }
  friend Vec2 operator/(const Vec2& v, long k) { return {v.x / k, v.y / k}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }

  bool is_zero() const { return x.is_zero() && y.is_zero(); }

  friend bool canonical_less(const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return canonical_less(a.x, b.x);
    return canonical_less(a.y, b.y);
  }
};

inline FieldElement cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline FieldElement dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

}  // namespace ward
