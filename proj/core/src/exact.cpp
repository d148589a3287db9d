#include "chiral/exact.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace chiral {

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

void Rational::normalize() {
  if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num_;
  if (den_ != 1) os << '/' << den_;
  return os.str();
}

Rational& Rational::operator+=(const Rational& o) {
  std::int64_t g = std::gcd(den_, o.den_);
  std::int64_t lhs_scale = o.den_ / g;
  num_ = num_ * lhs_scale + o.num_ * (den_ / g);
  den_ = den_ * lhs_scale;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  // Cross-cancel before multiplying to keep magnitudes small.
  std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
  std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
  num_ = (num_ / g1) * (o.num_ / g2);
  den_ = (den_ / g2) * (o.den_ / g1);
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
  return *this *= Rational(o.den_, o.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return double(a.num_) * double(b.den_) < double(b.num_) * double(a.den_);
}

Rational Rational::factorial(int n) {
  std::int64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

Rational Rational::binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  std::int64_t b = 1;
  for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return Rational(b);
}

Rational Rational::falling(int n, int k) {
  std::int64_t f = 1;
  for (int j = 0; j < k; ++j) f *= (n - j);
  return Rational(f);
}

void PiPoly::prune() {
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->second.is_zero())
      it = c_.erase(it);
    else
      ++it;
  }
}

PiPoly PiPoly::operator-() const {
  PiPoly r;
  for (const auto& [p, q] : c_) r.c_[p] = -q;
  return r;
}

PiPoly& PiPoly::operator+=(const PiPoly& o) {
  for (const auto& [p, q] : o.c_) {
    auto it = c_.find(p);
    if (it == c_.end())
      c_[p] = q;
    else
      it->second += q;
  }
  prune();
  return *this;
}

PiPoly operator*(const PiPoly& a, const PiPoly& b) {
  PiPoly r;
  for (const auto& [pa, qa] : a.c_)
    for (const auto& [pb, qb] : b.c_) {
      auto it = r.c_.find(pa + pb);
      if (it == r.c_.end())
        r.c_[pa + pb] = qa * qb;
      else
        it->second += qa * qb;
    }
  r.prune();
  return r;
}

double PiPoly::to_double() const {
  double v = 0;
  for (const auto& [p, q] : c_) v += q.to_double() * std::pow(M_PI, p);
  return v;
}

std::string PiPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, q] : c_) {
    if (!first) os << " + ";
    os << q.str();
    if (p != 0) os << "*pi^" << p;
    first = false;
  }
  return os.str();
}

ExactScalar ExactScalar::monomial(const Rational& q, int pi_pow, int i_pow) {
  int m = ((i_pow % 4) + 4) % 4;
  Rational qq = (m == 2 || m == 3) ? -q : q;
  PiPoly poly(qq, pi_pow);
  if (m == 1 || m == 3) return ExactScalar(PiPoly(), poly);
  return ExactScalar(poly, PiPoly());
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  return ExactScalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

ExactScalar ExactScalar::pow(int k) const {
  ExactScalar r(1);
  for (int j = 0; j < k; ++j) r = r * (*this);
  return r;
}

std::string ExactScalar::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  if (!re_.is_zero()) os << re_.str();
  if (!im_.is_zero()) {
    if (!re_.is_zero()) os << " + ";
    os << "i*(" << im_.str() << ")";
  }
  return os.str();
}

bool ExactScalar::as_monomial(Rational& q, int& pi_pow, int& i_pow) const {
  if (re_.is_zero() && im_.is_zero()) {
    q = Rational(0);
    pi_pow = 0;
    i_pow = 0;
    return true;
  }
  if (!re_.is_zero() && im_.is_zero() && re_.terms().size() == 1) {
    q = re_.terms().begin()->second;
    pi_pow = re_.terms().begin()->first;
    i_pow = 0;
    return true;
  }
  if (re_.is_zero() && im_.terms().size() == 1) {
    q = im_.terms().begin()->second;
    pi_pow = im_.terms().begin()->first;
    i_pow = 1;
    return true;
  }
  return false;
}

}  // namespace chiral
