// Full-spacetime kernels and the chiral-vs-bulk comparison maps: Pauli-Jordan
// and Hadamard two-point kernels, the mollified chiral derivative, embeddings
// of chiral observables and the consistency checks between the two routes.

#ifndef CHIRAL_BULK_HPP
#define CHIRAL_BULK_HPP

#include "chiral/algebra.hpp"

namespace chiral {

/// Antisymmetric commutator kernel E(x, x') = -1/4 (sgn du + sgn dv);
/// on the cylinder a finite image sum, exact once the images clear the span.
struct PauliJordanKernel {
  SpacetimePtr host;
  double operator()(Point x, Point y) const;
  /// ceil((|du| + |dv|) / 2pi) + 1, the exact truncation count.
  int image_count(Point x, Point y) const;
};

/// W(x, x') = -(1/4pi) ln((-du dv + i eps dt)/Lambda^2), principal branch.
struct HadamardBulkKernel {
  double epsilon = 1e-6;
  double lambda_scale = 1.0;
  std::complex<double> operator()(Point x, Point y) const;
  /// d^2 W / du dv' entering the chiral-derivative oracle.
  std::complex<double> d_u_d_uprime(Point x, Point y) const;
};

/// Mollified chiral derivative on a t = 0 surface:
///   (D phi)(s) = 1/2 Int (d_u phi)(-s, v) delta_eps((v - s)/2) dv,
/// with a compactly supported unit-mass bump; equals the sharp derivative on
/// solutions for every width.
class MollifiedChiralDerivative {
 public:
  MollifiedChiralDerivative(CauchySurface surface, double width);

  const CauchySurface& surface() const { return surface_; }
  double width() const { return width_; }

  ChiralConfiguration apply(const BulkConfiguration& phi) const;
  /// Value without building a configuration handle.
  double value(const BulkConfiguration& phi, double s) const;

  /// <(D x D) E, f x g> by nested quadrature against the sign kernel.
  double smeared_pauli_jordan(const PauliJordanKernel& E, const TestFunction& f,
                              const TestFunction& g) const;
  /// <(D x D) W_eps, f x g> by tensor Gauss quadrature; combine with an
  /// epsilon ladder for the extrapolated oracle.
  std::complex<double> smeared_hadamard(const HadamardBulkKernel& W, const TestFunction& f,
                                        const TestFunction& g, int outer_nodes = 32,
                                        int inner_nodes = 20) const;

 private:
  CauchySurface surface_;
  double width_;
  SmoothFn bump_;       // normalized nascent delta
  double bump_mass_;
};

/// Chiral observable pulled back to bulk configurations: phi -> F[D phi].
class EmbeddedObservable {
 public:
  EmbeddedObservable(Observable F, MollifiedChiralDerivative D)
      : functional_(std::move(F)), mollifier_(std::move(D)) {}
  std::complex<double> operator()(const BulkConfiguration& phi) const {
    return functional_.evaluate(mollifier_.apply(phi));
  }
  const Observable& functional() const { return functional_; }

 private:
  Observable functional_;
  MollifiedChiralDerivative mollifier_;
};

struct ConsistencyReport {
  std::complex<double> bulk_value;
  std::complex<double> chiral_value;
  double abs_error = 0;
  bool pass = false;
};

/// Compares <(D x D) E, f x g> with pair(E_Sigma, f, g).
ConsistencyReport commutator_consistency(const MollifiedChiralDerivative& D,
                                         const PauliJordanKernel& E, const TestFunction& f,
                                         const TestFunction& g, double tol = 1e-8);

/// Compares the canonical equal-time value 1/4 (Int f'g - Int g'f) with the
/// chiral bracket of two bosons.
ConsistencyReport canonical_bracket_check(const CauchySurface& surface,
                                          const TestFunction& f, const TestFunction& g,
                                          double tol = 1e-10);

/// Richardson-extrapolated <(D x D) W_eps, f x g> over an epsilon ladder.
std::complex<double> hadamard_chiral_oracle(const MollifiedChiralDerivative& D,
                                            const std::vector<double>& eps_ladder,
                                            const TestFunction& f, const TestFunction& g,
                                            double lambda_scale = 1.0);

/// CSV rows (u, v, u', v', ReE, ReW, ImW) on a tensor grid.
std::string propagator_table_csv(const PauliJordanKernel& E, const HadamardBulkKernel& W,
                                 const std::vector<double>& us,
                                 const std::vector<double>& vs, Point reference);

}  // namespace chiral

#endif
