// Two-dimensional spacetimes in null coordinates, Cauchy surfaces as graphs,
// null projections, causal diamonds and explicit conformal embeddings.

#ifndef CHIRAL_GEOMETRY_HPP
#define CHIRAL_GEOMETRY_HPP

#include <memory>
#include <optional>

#include "chiral/smooth.hpp"

namespace chiral {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Event in null coordinates (u, v) = (t - x, t + x).
struct Point {
  double u = 0, v = 0;
  double t() const { return 0.5 * (u + v); }
  double x() const { return 0.5 * (v - u); }
  static Point from_tx(double t, double x) { return {t - x, t + x}; }
};

class Spacetime;
using SpacetimePtr = std::shared_ptr<const Spacetime>;

/// Minkowski plane, Einstein cylinder, or an open subset of a parent cut out
/// by two spacelike boundary graphs t_-(x) < t_+(x).
class Spacetime {
 public:
  enum class Kind { Minkowski, EinsteinCylinder, Subset };

  static SpacetimePtr minkowski();
  static SpacetimePtr cylinder();
  /// Boundary graphs are given in (t, x); spacelikeness |t'| < 1 and the
  /// ordering lower < upper are checked on `grid` sample nodes.
  static SpacetimePtr subset(SpacetimePtr parent, SmoothFn lower, SmoothFn upper,
                             double x_lo = -20.0, double x_hi = 20.0, int grid = 1024);

  Kind kind() const { return kind_; }
  bool periodic() const;
  const SpacetimePtr& parent() const { return parent_; }
  const SmoothFn& lower_boundary() const { return lower_; }
  const SmoothFn& upper_boundary() const { return upper_; }

  /// Canonical representative on the cylinder: x in [0, 2pi).
  Point canonical(Point p) const;
  bool contains(Point p, double margin = 0.0) const;

 private:
  Spacetime(Kind k) : kind_(k) {}
  Kind kind_;
  SpacetimePtr parent_;
  SmoothFn lower_, upper_;
  double x_lo_ = 0, x_hi_ = 0;
};

enum class Side { Left, Right };

/// Cauchy surface as the graph {(-s, gamma(s))} of a strictly increasing gamma.
class CauchySurface {
 public:
  /// Planar surface over [s_lo, s_hi] (use wide bounds for all of R).
  CauchySurface(SpacetimePtr host, SmoothFn gamma, double s_lo = -1e18, double s_hi = 1e18);
  /// Cylinder surface: gamma must satisfy gamma(s + 2pi) = gamma(s) + 2pi.
  static CauchySurface cylinder_surface(SpacetimePtr host, SmoothFn gamma);
  /// The t = 0 surface gamma = id of the host.
  static CauchySurface sigma0(SpacetimePtr host);

  const SpacetimePtr& host() const { return host_; }
  const SmoothFn& gamma() const { return gamma_; }
  double s_lo() const { return s_lo_; }
  double s_hi() const { return s_hi_; }
  bool periodic() const { return periodic_; }

  Point point_at(double s) const { return {-s, gamma_(s)}; }
  Jet gamma_jet(double s) const { return gamma_.jet(s); }
  /// sqrt(gamma'(s))^p as a smooth function handle.
  SmoothFn weight(double p) const;

  /// Surface parameter of the null projection of p onto the surface.
  /// Left fixes u (solves -s = u); right solves gamma(s) = v monotonically.
  double null_project(Point p, Side side) const;

 private:
  CauchySurface(SmoothFn gamma, SpacetimePtr host);  // periodic-lift path
  void validate() const;
  SpacetimePtr host_;
  SmoothFn gamma_;
  double s_lo_, s_hi_;
  bool periodic_ = false;
  struct WeightCache;
  std::shared_ptr<WeightCache> weights_;  // shared across copies
};

/// Surface diffeomorphism rho together with the induced spacetime map
///   chi(u, v) = (-rho(-u), gamma_dst(rho(gamma_src^-1(v))))
/// and its conformal factors.
class ConformalEmbedding {
 public:
  ConformalEmbedding(Diffeo rho, CauchySurface src, CauchySurface dst);

  const Diffeo& rho() const { return rho_; }
  const CauchySurface& source() const { return src_; }
  const CauchySurface& target() const { return dst_; }

  Point apply(Point p) const;
  /// omega_l(u) = rho'(-u)
  Jet omega_l(double u) const;
  /// omega_r(v) = gamma_dst'(rho(gamma_src^-1 v)) rho'(gamma_src^-1 v) / gamma_src'(gamma_src^-1 v)
  Jet omega_r(double v) const;
  /// Conformal factor restricted to the source surface: omega_l(-s) = rho'(s).
  Jet omega_on_surface(double s) const { return rho_.jet(s).shift_derivative(1); }

  /// Max over sample nodes of |chi(surface point) - (-rho(s), gamma_dst(rho(s)))|.
  double square_defect(int samples = 64) const;
  /// True when chi maps every grid point of the source host into the target host.
  bool image_contained(double u_lo, double u_hi, double v_lo, double v_hi,
                       int grid = 32) const;

 private:
  Diffeo rho_;
  CauchySurface src_, dst_;
};

/// chi, omega_l, omega_r per the explicit chart formulas. Throws on
/// non-monotone rho or when rho does not map the source domain into the
/// target domain.
ConformalEmbedding extend_diffeo(const Diffeo& rho, const CauchySurface& src,
                                 const CauchySurface& dst);

/// rho(x) = 2 * integral_0^x (1/t_+ + 1/t_-) dx'. Requires t_pm > 0 and
/// |t_pm'| < 1 on the sample grid; guarantees rho(x + t) - rho(x - t) > 2.
Diffeo dilation_diffeo(const SmoothFn& t_plus, const SmoothFn& t_minus,
                       double x_lo = -20.0, double x_hi = 20.0, int grid = 1024);

/// rho(x + t(x)) - rho(x - t(x)) evaluated in the substitution form
/// 2 t Int_{-1}^{1} g(x + t y) dy, stable when t(x) underflows additively.
double dilation_margin(const SmoothFn& t_plus, const SmoothFn& t_minus,
                       const SmoothFn& t_at, double x);

/// Open null-coordinate box produced by Cauchy development of a subinterval.
struct CausalDiamond {
  double u_lo, u_hi, v_lo, v_hi;
  bool periodic = false;
};

/// Diamond {-b < u < -a, gamma(a) < v < gamma(b)} of a surface subinterval.
CausalDiamond cauchy_development(const CauchySurface& surface, double a, double b);

/// True when no causal curve connects the two boxes (cylinder images included).
bool causally_disjoint(const CausalDiamond& A, const CausalDiamond& B);

}  // namespace chiral

#endif
