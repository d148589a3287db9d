// Fifth-order jets: a value together with derivatives 1..5 at a point.
// All smooth-function plumbing propagates derivatives through these, so
// surface weights, test functions and configurations expose the derivative
// orders the kernel pairings need without numerical differentiation.

#ifndef CHIRAL_JETS_HPP
#define CHIRAL_JETS_HPP

#include <array>
#include <cmath>
#include <stdexcept>

namespace chiral {

inline constexpr int kJetOrder = 5;

struct Jet {
  // d[0] is the value, d[k] the k-th derivative.
  std::array<double, kJetOrder + 1> d{};

  static Jet constant(double c) {
    Jet j;
    j.d[0] = c;
    return j;
  }
  static Jet variable(double x) {
    Jet j;
    j.d[0] = x;
    j.d[1] = 1.0;
    return j;
  }

  double value() const { return d[0]; }
  double deriv(int k) const { return d[k]; }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k <= kJetOrder; ++k) r.d[k] = -d[k];
    return r;
  }
  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= kJetOrder; ++k) r.d[k] = a.d[k] + b.d[k];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= kJetOrder; ++k) r.d[k] = a.d[k] - b.d[k];
    return r;
  }
  friend Jet operator*(const Jet& a, double c) {
    Jet r;
    for (int k = 0; k <= kJetOrder; ++k) r.d[k] = a.d[k] * c;
    return r;
  }
  friend Jet operator*(double c, const Jet& a) { return a * c; }

  // Leibniz product.
  friend Jet operator*(const Jet& a, const Jet& b) {
    static constexpr int binom[6][6] = {{1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},
                                        {1, 2, 1, 0, 0, 0},  {1, 3, 3, 1, 0, 0},
                                        {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1}};
    Jet r;
    for (int n = 0; n <= kJetOrder; ++n) {
      double s = 0;
      for (int k = 0; k <= n; ++k) s += binom[n][k] * a.d[k] * b.d[n - k];
      r.d[n] = s;
    }
    return r;
  }

  Jet reciprocal() const {
    if (d[0] == 0.0) throw std::domain_error("Jet: reciprocal of zero");
    static constexpr int binom[6][6] = {{1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},
                                        {1, 2, 1, 0, 0, 0},  {1, 3, 3, 1, 0, 0},
                                        {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1}};
    Jet r;
    r.d[0] = 1.0 / d[0];
    for (int n = 1; n <= kJetOrder; ++n) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += binom[n][k] * r.d[k] * d[n - k];
      r.d[n] = -s / d[0];
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

  /// Jet of the k-th derivative function (shifts slots down; top orders zero-fill,
  /// so a shifted jet is trustworthy only up to order kJetOrder - k).
  Jet shift_derivative(int k = 1) const {
    Jet r;
    for (int n = 0; n + k <= kJetOrder; ++n) r.d[n] = d[n + k];
    return r;
  }
};

/// Faa di Bruno to order 5: outer holds derivatives of f at inner.value().
inline Jet compose(const Jet& outer, const Jet& inner) {
  const auto& f = outer.d;
  const double g1 = inner.d[1], g2 = inner.d[2], g3 = inner.d[3], g4 = inner.d[4],
               g5 = inner.d[5];
  Jet r;
  r.d[0] = f[0];
  r.d[1] = f[1] * g1;
  r.d[2] = f[2] * g1 * g1 + f[1] * g2;
  r.d[3] = f[3] * g1 * g1 * g1 + 3 * f[2] * g1 * g2 + f[1] * g3;
  r.d[4] = f[4] * g1 * g1 * g1 * g1 + 6 * f[3] * g1 * g1 * g2 +
           f[2] * (3 * g2 * g2 + 4 * g1 * g3) + f[1] * g4;
  r.d[5] = f[5] * std::pow(g1, 5) + 10 * f[4] * g1 * g1 * g1 * g2 +
           f[3] * (15 * g1 * g2 * g2 + 10 * g1 * g1 * g3) +
           f[2] * (10 * g2 * g3 + 5 * g1 * g4) + f[1] * g5;
  return r;
}

// Elementary outer jets at a point x.
inline Jet exp_jet_at(double x) {
  Jet j;
  double e = std::exp(x);
  for (int k = 0; k <= kJetOrder; ++k) j.d[k] = e;
  return j;
}
inline Jet log_jet_at(double x) {
  if (x <= 0) throw std::domain_error("log jet: nonpositive argument");
  Jet j;
  j.d[0] = std::log(x);
  double p = 1.0 / x;
  j.d[1] = p;
  j.d[2] = -p * p;
  j.d[3] = 2 * p * p * p;
  j.d[4] = -6 * p * p * p * p;
  j.d[5] = 24 * p * p * p * p * p;
  return j;
}
inline Jet sin_jet_at(double x) {
  Jet j;
  double s = std::sin(x), c = std::cos(x);
  j.d = {s, c, -s, -c, s, c};
  return j;
}
inline Jet cos_jet_at(double x) {
  Jet j;
  double s = std::sin(x), c = std::cos(x);
  j.d = {c, -s, -c, s, c, -s};
  return j;
}
inline Jet pow_jet_at(double x, double mu) {
  if (x <= 0) throw std::domain_error("pow jet: nonpositive base");
  Jet j;
  double f = std::pow(x, mu);
  double coeff = 1.0;
  for (int k = 0; k <= kJetOrder; ++k) {
    j.d[k] = coeff * f * std::pow(x, -k);
    coeff *= (mu - k);
  }
  return j;
}

inline Jet exp_of(const Jet& a) { return compose(exp_jet_at(a.d[0]), a); }
inline Jet log_of(const Jet& a) { return compose(log_jet_at(a.d[0]), a); }
inline Jet sin_of(const Jet& a) { return compose(sin_jet_at(a.d[0]), a); }
inline Jet cos_of(const Jet& a) { return compose(cos_jet_at(a.d[0]), a); }
inline Jet pow_of(const Jet& a, double mu) { return compose(pow_jet_at(a.d[0], mu), a); }

}  // namespace chiral

#endif
