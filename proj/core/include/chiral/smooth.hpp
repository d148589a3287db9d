// Smooth one-variable functions with jet evaluation, the building block for
// surface graphs, diffeomorphisms, test functions and configurations.

#ifndef CHIRAL_SMOOTH_HPP
#define CHIRAL_SMOOTH_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "chiral/jets.hpp"

namespace chiral {

/// Immutable smooth function handle. Copies share the underlying evaluator.
class SmoothFn {
 public:
  SmoothFn() = default;
  explicit SmoothFn(std::function<Jet(double)> eval, std::string label = "fn");

  bool valid() const { return bool(node_); }
  Jet jet(double x) const;
  double operator()(double x) const { return jet(x).value(); }
  double deriv(double x, int k) const { return jet(x).deriv(k); }
  const std::string& label() const;
  std::uint64_t id() const;

  // Factories.
  static SmoothFn constant(double c);
  static SmoothFn identity();
  static SmoothFn affine(double a, double b);  // a*x + b
  static SmoothFn sine(double amplitude, double frequency = 1.0, double phase = 0.0);
  /// x + amplitude*sin(frequency x); requires |amplitude*frequency| < 1.
  static SmoothFn sine_perturbed_identity(double amplitude, double frequency = 1.0);
  static SmoothFn gaussian(double center, double sigma, double amplitude = 1.0);
  static SmoothFn polynomial(std::vector<double> coeffs);  // sum c_k x^k
  /// amplitude * exp(-1/(1-y^2)), y = (x-center)/halfwidth, zero outside.
  static SmoothFn bump(double center, double halfwidth, double amplitude = 1.0);
  /// Natural cubic spline through (x_i, y_i); derivatives come from the spline.
  static SmoothFn cubic_spline(const std::vector<double>& xs, const std::vector<double>& ys);

  // Combinators.
  friend SmoothFn operator+(const SmoothFn& a, const SmoothFn& b);
  friend SmoothFn operator-(const SmoothFn& a, const SmoothFn& b);
  friend SmoothFn operator*(const SmoothFn& a, const SmoothFn& b);
  friend SmoothFn operator*(double c, const SmoothFn& a);
  SmoothFn compose_with(const SmoothFn& inner) const;  // this(inner(x))
  SmoothFn derivative(int k = 1) const;                // trustworthy to order 5-k
  SmoothFn power(double mu) const;                     // this(x)^mu, positive base
  SmoothFn reciprocal() const;
  SmoothFn shifted(double h) const;  // x -> this(x + h)

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

/// Strictly monotone root solve f(x) = y on [lo, hi]: bracketed bisection
/// refined by Newton, tolerance 1e-12, at most 200 iterations.
double solve_monotone(const SmoothFn& f, double y, double lo, double hi,
                      double tol = 1e-12, int max_iter = 200);

/// Strictly increasing smooth map with domain and a lazily built inverse.
class Diffeo {
 public:
  Diffeo() = default;
  Diffeo(SmoothFn fwd, double lo, double hi, std::string label = "rho");

  const SmoothFn& fn() const { return fwd_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::string& label() const { return label_; }

  Jet jet(double x) const { return fwd_.jet(x); }
  double operator()(double x) const { return fwd_(x); }
  double deriv(double x, int k = 1) const { return fwd_.deriv(x, k); }
  double inverse(double y) const;
  /// Jet of the inverse map at y (derivatives of rho^-1 up to order 5).
  Jet inverse_jet(double y) const;
  /// Inverse as a SmoothFn handle.
  SmoothFn inverse_fn() const;

  /// Checks rho' > 0 on a sample grid; throws std::invalid_argument otherwise.
  void require_increasing(int grid = 257) const;

 private:
  SmoothFn fwd_;
  double lo_ = -1e18, hi_ = 1e18;
  std::string label_;
};

/// Cumulative integral x -> integral_0^x g, with jets (d/dx = g). Values are
/// cached at unit breakpoints so repeated evaluation stays cheap.
SmoothFn primitive(const SmoothFn& g, std::string label = "primitive");

}  // namespace chiral

#endif
