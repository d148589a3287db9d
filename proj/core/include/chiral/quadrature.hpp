// Adaptive Gauss-Kronrod quadrature and fixed Gauss-Legendre rules.

#ifndef CHIRAL_QUADRATURE_HPP
#define CHIRAL_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace chiral {

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 48;
};

/// Adaptive G7-K15 on [a, b]. Throws std::runtime_error when the tolerance
/// cannot be met within the depth budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, const QuadOptions& opt = {});

/// Fixed-order Gauss-Legendre nodes/weights on [-1, 1] (cached per order).
const std::vector<double>& gauss_nodes(int n);
const std::vector<double>& gauss_weights(int n);

/// Fixed-order Gauss-Legendre on [a, b]; deterministic, no adaptivity.
double integrate_fixed(const std::function<double(double)>& f, double a, double b, int n);
std::complex<double> integrate_fixed_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b, int n);

}  // namespace chiral

#endif
