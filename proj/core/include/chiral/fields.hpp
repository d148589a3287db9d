// Test functions, chiral and bulk configurations, the chiral derivative and
// its inverse, weighted pullbacks, pushforwards and the eta averaging map.

#ifndef CHIRAL_FIELDS_HPP
#define CHIRAL_FIELDS_HPP

#include <functional>

#include "chiral/geometry.hpp"
#include "chiral/kernels.hpp"

namespace chiral {

/// Compactly supported smooth test function on a surface parameter line.
class TestFunction {
 public:
  TestFunction() = default;
  TestFunction(SmoothFn fn, double lo, double hi, std::string name = "f");

  /// exp(-1/(1-y^2)) bump, y = (x-center)/halfwidth.
  static TestFunction bump(double center, double halfwidth, double amplitude = 1.0,
                           std::string name = "bump");
  /// Gaussian times polynomial, support truncated where the tail is < 1e-16.
  static TestFunction gaussian_poly(double center, double sigma, std::vector<double> poly,
                                    std::string name = "gausspoly");

  const SmoothFn& fn() const { return fn_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::string& name() const { return name_; }
  std::uint64_t id() const { return fn_.id(); }
  bool valid() const { return fn_.valid(); }

  double operator()(double x) const { return fn_(x); }
  Jet jet(double x) const { return fn_.jet(x); }
  CompactFn compact() const { return CompactFn(fn_, lo_, hi_); }

  TestFunction derivative() const;
  /// Pointwise product; support intersects (empty -> invalid TestFunction).
  TestFunction times(const TestFunction& other) const;
  TestFunction times_smooth(const SmoothFn& m, std::string name = "f*m") const;

 private:
  SmoothFn fn_;
  double lo_ = 0, hi_ = 0;
  std::string name_;
};

/// Smooth chiral configuration psi on a surface (2pi-periodic on cylinders).
struct ChiralConfiguration {
  SmoothFn psi;
  bool periodic = false;

  double operator()(double s) const { return psi(s); }
  Jet jet(double s) const { return psi.jet(s); }
};

/// Bulk configuration: either d'Alembert data (phi_l, phi_r, p) or a general
/// handle exposing mixed partial derivatives.
class BulkConfiguration {
 public:
  /// phi(u,v) = phi_l(u) + phi_r(v) + (p/2pi)(u+v); phi_l/r periodic on cylinders.
  static BulkConfiguration dalembert(SmoothFn phi_l, SmoothFn phi_r, double p = 0.0,
                                     bool periodic = false);
  /// partial(u, v, du, dv) returns the mixed partial of order (du, dv) <= (5, 5).
  static BulkConfiguration general(std::function<double(double, double, int, int)> partial);

  double value(double u, double v) const { return partial(u, v, 0, 0); }
  double partial(double u, double v, int du, int dv) const;
  bool is_dalembert() const { return dalembert_; }
  double zero_mode() const { return p_; }
  const SmoothFn& left_part() const { return phi_l_; }
  const SmoothFn& right_part() const { return phi_r_; }

 private:
  bool dalembert_ = false;
  bool periodic_ = false;
  SmoothFn phi_l_, phi_r_;
  double p_ = 0.0;
  std::function<double(double, double, int, int)> partial_;
};

/// Jet of s -> P(u(s), v(s)) from mixed partials of P and curve jets,
/// via the truncated bivariate Taylor composition (exact to order 5).
Jet compose_bivariate(const std::function<double(int, int)>& partial_at_point,
                      const Jet& u_of_s, const Jet& v_of_s);

/// (del_Sigma phi)(s) = gamma'(s)^(-1/2) (d_u phi)(-s, gamma(s)).
ChiralConfiguration chiral_derivative(const CauchySurface& surface,
                                      const BulkConfiguration& phi);
/// Mirrored map: gamma'(s)^(+1/2) (d_v phi)(-s, gamma(s)), no extra sign.
ChiralConfiguration anti_chiral_derivative(const CauchySurface& surface,
                                           const BulkConfiguration& phi);

/// Solution phi with chiral_derivative(surface, phi) = psi. Planar surfaces
/// integrate the left-mover directly; cylinders split off the zero mode.
BulkConfiguration solve_from_chiral_data(const CauchySurface& surface,
                                         const ChiralConfiguration& psi);

/// rho*_(mu) psi = omega^mu (psi o rho).
ChiralConfiguration weighted_pullback(const Diffeo& rho, const SmoothFn& omega, double mu,
                                      const ChiralConfiguration& psi);
/// Pullback along an embedding's surface map with omega = rho'.
ChiralConfiguration weighted_pullback(const ConformalEmbedding& emb, double mu,
                                      const ChiralConfiguration& psi);

/// (omega_l^(mu-1) f) o rho^-1 with support mapped through rho.
TestFunction field_pushforward(const Diffeo& rho, double mu, const TestFunction& f);

/// chi^* phi for a d'Alembert solution: the embedding is separable in null
/// coordinates, so the pullback is again d'Alembert (exact jets, no finite
/// differences).
BulkConfiguration pullback_solution(const ConformalEmbedding& emb,
                                    const BulkConfiguration& phi);

/// Compactly supported bulk test function with mixed-partial access.
struct BulkTestFn {
  std::function<double(double, double, int, int)> partial;
  double u_lo = 0, u_hi = 0, v_lo = 0, v_hi = 0;
  double operator()(double u, double v) const { return partial(u, v, 0, 0); }
  /// Product a(u) b(v) of two compactly supported factors.
  static BulkTestFn separable(const TestFunction& a, const TestFunction& b);
};

/// (eta h)(s) = Int h(-s, v) dv; on cylinders one period of the invariant lift.
TestFunction eta_average(const CauchySurface& surface, const BulkTestFn& h);

}  // namespace chiral

#endif
