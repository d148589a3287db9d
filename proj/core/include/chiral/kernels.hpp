// Exact algebra of 1D distributional kernels on a surface: delta derivatives,
// canonical finite-part powers, boundary values and separable smooth kernels,
// with analytic pairings, scaling degrees, homogeneous extensions and their
// Fourier-side classification.
//
// Conventions (single variable x; on a surface square x = s - s'):
//   FinitePart(n)      the canonical homogeneous extension of 1/x^n,
//                      ((-1)^(n-1)/(n-1)!) d^(n-1)/dx^(n-1) PV(1/x)
//   Boundary(n, +i0)   1/(x+i0)^n = FinitePart(n) - i pi (-1)^(n-1)/(n-1)! delta^(n-1)
//   Boundary(n, -i0)   1/(x-i0)^n = FinitePart(n) + i pi (-1)^(n-1)/(n-1)! delta^(n-1)
//   pairing            <K(s-s') c(s,s'), f x g> = Int K(s-s') c(s,s') f(s) g(s') ds ds'

#ifndef CHIRAL_KERNELS_HPP
#define CHIRAL_KERNELS_HPP

#include <complex>
#include <optional>
#include <vector>

#include "chiral/exact.hpp"
#include "chiral/quadrature.hpp"
#include "chiral/smooth.hpp"
#include "vendor_json_fwd.hpp"

namespace chiral {

/// Compactly supported smooth function: handle plus support interval.
struct CompactFn {
  SmoothFn fn;
  double lo = 0, hi = 0;
  CompactFn() = default;
  CompactFn(SmoothFn f, double a, double b) : fn(std::move(f)), lo(a), hi(b) {}
  bool empty() const { return !(lo < hi); }
  /// Pointwise product with a smooth factor; support unchanged.
  CompactFn times(const SmoothFn& m) const { return CompactFn(fn * m, lo, hi); }
  /// probe(x/lambda)/lambda
  CompactFn rescaled(double lambda) const;
};

enum class BoundarySide { PlusI0, MinusI0 };
inline BoundarySide opposite(BoundarySide s) {
  return s == BoundarySide::PlusI0 ? BoundarySide::MinusI0 : BoundarySide::PlusI0;
}

struct KernelShape {
  enum class Kind { Delta, FinitePart, Boundary, Smooth };
  Kind kind = Kind::Smooth;
  int order = 0;  // delta derivative order k, or power n
  BoundarySide side = BoundarySide::PlusI0;
  SmoothFn smooth_left, smooth_right;  // Smooth kind: a(s) b(s')

  static KernelShape delta(int k);
  static KernelShape finite_part(int n);
  static KernelShape boundary(int n, BoundarySide side);
  static KernelShape smooth(SmoothFn left, SmoothFn right);
  static KernelShape smooth_const() {
    return smooth(SmoothFn::constant(1.0), SmoothFn::constant(1.0));
  }

  bool singular() const { return kind == Kind::FinitePart || kind == Kind::Boundary; }
};

/// One tagged kernel term: exact coefficient * shape * separable prefactor.
struct KernelTerm {
  KernelShape shape;
  ExactScalar coeff = ExactScalar(1);
  SmoothFn pre_left, pre_right;  // optional c(s,s') = pre_left(s) pre_right(s')

  bool has_prefactor() const { return pre_left.valid() || pre_right.valid(); }
};

/// Finite sum of kernel terms; the empty sum is the zero kernel.
class KernelExpr {
 public:
  KernelExpr() = default;
  explicit KernelExpr(KernelTerm t) { terms_.push_back(std::move(t)); }
  static KernelExpr zero() { return {}; }

  const std::vector<KernelTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(KernelTerm t);

  KernelExpr operator-() const;
  friend KernelExpr operator+(const KernelExpr& a, const KernelExpr& b);
  friend KernelExpr operator-(const KernelExpr& a, const KernelExpr& b);
  KernelExpr scaled(const ExactScalar& c) const;

  /// Merge like shapes with identical prefactors, drop zero coefficients.
  KernelExpr canonical() const;
  /// Expand every boundary value into finite part + delta (exact Plemelj).
  KernelExpr plemelj_expanded() const;
  /// Recombine matching finite-part/delta pairs back into boundary values.
  KernelExpr plemelj_recombined() const;
  /// Kernel of x -> -x: flips odd shapes, swaps boundary sides and prefactors.
  KernelExpr argument_flipped() const;

 private:
  std::vector<KernelTerm> terms_;
};

/// Product of two kernels in the same variable. Same-side boundary powers
/// combine, smooth factors fold into prefactors; delta products and
/// mixed-side boundary products throw (unsupported composite shape).
KernelExpr multiply_same_argument(const KernelExpr& a, const KernelExpr& b);

/// x^r * expr for the OPE expansion. Singular powers lower by r, deltas
/// integrate against x^r; terms that become regular are dropped.
KernelExpr argument_power_multiply(const KernelExpr& expr, int r);

struct PairOptions {
  QuadOptions quad;
  int max_jet_order = 4;  // highest derivative drawn from test functions
};

/// <expr, h> for a kernel in one variable (prefactors must be absent).
std::complex<double> pair1(const KernelExpr& expr, const CompactFn& h,
                           const PairOptions& opt = {});

/// <expr(s - s') c(s, s'), f x g> on the surface square.
std::complex<double> pair2(const KernelExpr& expr, const CompactFn& f, const CompactFn& g,
                           const PairOptions& opt = {});

/// Independent cross-check path: singular shapes evaluated at finite i*eps
/// on an eps ladder with Richardson extrapolation.
std::complex<double> pair2_ieps(const KernelExpr& expr, const CompactFn& f,
                                const CompactFn& g, const std::vector<double>& eps_ladder = {
                                                       1e-2, 3.16e-3, 1e-3, 3.16e-4, 1e-4});

/// Tagged scaling degree: delta^(k) -> k+1, FP/BV of power n -> n, smooth -> 0;
/// nullopt is the -infinity sentinel of the zero kernel.
std::optional<Rational> scaling_degree(const KernelExpr& expr);

/// Least-squares slope of log|<u, probe_lambda>| against log lambda over
/// lambda = 2^0 .. 2^-10. Throws when the pairing is identically zero.
double numeric_scaling_degree(const KernelExpr& expr, const CompactFn& probe);

/// Asymmetric default probe (bump times (1 + x)) for the degree estimator.
CompactFn default_scaling_probe();

/// ((-1)^n / n!) d^n/dx^n [alpha delta + PV(1/x)]: the homogeneous-degree
/// n+1 extensions of 1/x^(n+1).
KernelExpr extend_homogeneous(int n, const ExactScalar& alpha);

/// Recognizes an extend_homogeneous output; returns (n, alpha).
std::optional<std::pair<int, ExactScalar>> match_homogeneous_extension(const KernelExpr& e);

/// Closed-form Fourier transform ((-i xi)^n / n!)(alpha - i pi sgn xi) of the
/// homogeneous extension; exact zeros when alpha = -/+ i pi on the
/// negative/positive half-axis.
std::complex<double> fourier_symbol(const KernelExpr& extension, double xi);

enum class WavefrontAxis { NegativeAxis, PositiveAxis, BothAxes };
WavefrontAxis classify_wavefront(const ExactScalar& alpha);

// JSON form: list of {shape, order, side?, coefficient: [monomials], prefactor}.
nlohmann::json kernel_to_json(const KernelExpr& expr);
KernelExpr kernel_from_json(const nlohmann::json& j);

}  // namespace chiral

#endif
