// Exact scalar arithmetic: rational numbers and complex rational polynomials in pi.
// Coefficients of kernel terms and hbar-series stay exact; floats enter only
// through quadrature.

#ifndef CHIRAL_EXACT_HPP
#define CHIRAL_EXACT_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace chiral {

/// Normalized rational with 64-bit numerator/denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d);

  static Rational parse(const std::string& s);  // "num/den" or "num"

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return double(num_) / double(den_); }
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

  static Rational factorial(int n);
  static Rational binomial(int n, int k);
  /// n(n-1)...(n-k+1)
  static Rational falling(int n, int k);

 private:
  void normalize();
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Sparse polynomial in pi with rational coefficients (pi powers may be negative).
class PiPoly {
 public:
  PiPoly() = default;
  PiPoly(const Rational& q, int pi_pow = 0) {
    if (!q.is_zero()) c_[pi_pow] = q;
  }

  bool is_zero() const { return c_.empty(); }
  const std::map<int, Rational>& terms() const { return c_; }

  PiPoly operator-() const;
  PiPoly& operator+=(const PiPoly& o);
  PiPoly& operator-=(const PiPoly& o) { return *this += -o; }
  friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
  friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
  friend PiPoly operator*(const PiPoly& a, const PiPoly& b);
  friend bool operator==(const PiPoly& a, const PiPoly& b) { return a.c_ == b.c_; }

  double to_double() const;
  std::string str() const;

 private:
  void prune();
  std::map<int, Rational> c_;
};

/// Exact complex scalar: (re + i*im) with re, im rational polynomials in pi.
/// Represents every coefficient the engine produces (q * pi^p * i^m sums).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(std::int64_t n) : re_(Rational(n)) {}
  ExactScalar(const Rational& q) : re_(q) {}
  ExactScalar(PiPoly re, PiPoly im) : re_(std::move(re)), im_(std::move(im)) {}

  /// q * pi^piPow * i^iPow with iPow taken mod 4.
  static ExactScalar monomial(const Rational& q, int pi_pow, int i_pow);
  static ExactScalar i() { return monomial(1, 0, 1); }
  static ExactScalar pi(int pow = 1) { return monomial(1, pow, 0); }

  const PiPoly& re() const { return re_; }
  const PiPoly& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  ExactScalar operator-() const { return ExactScalar(-re_, -im_); }
  ExactScalar conj() const { return ExactScalar(re_, -im_); }
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o) { return *this += -o; }
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  ExactScalar pow(int k) const;

  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string str() const;

  /// True when the scalar is a single monomial q*pi^p*i^m; fills the parts.
  bool as_monomial(Rational& q, int& pi_pow, int& i_pow) const;

 private:
  PiPoly re_, im_;
};

}  // namespace chiral

#endif
