// Classical chiral Poisson bracket, hbar-truncated star products, commutators,
// Gaussian states, Hadamard reparametrization intertwiners, OPE extraction and
// the homogeneous-scaling constraint fit.

#ifndef CHIRAL_ALGEBRA_HPP
#define CHIRAL_ALGEBRA_HPP

#include <map>

#include "chiral/observable.hpp"

namespace chiral {

/// Chiral commutator kernel E_Sigma. The sign is fixed so that the bracket of
/// two chiral bosons reproduces the geometric value -1/2 Int f dg:
///   E_Sigma = -1/2 (gamma'(s) gamma'(s'))^(-1/2) delta'(s - s').
struct ChiralCommutator {
  CauchySurface surface;
  KernelExpr kernel() const;
  static const ExactScalar& coefficient();  // -1/2
};

/// Chiral Hadamard kernel
///   W_Sigma = (-1/4pi) (gamma'(s) gamma'(s'))^(-1/2) / ((s-s') + i0)^2,
/// the chiral derivative of the Minkowski Hadamard logarithm. Its
/// antisymmetric part equals (i/2) E_Sigma exactly.
struct HadamardChiralKernel {
  CauchySurface surface;
  double lambda_scale = 1.0;  // bulk normalization scale; drops out chirally
  BoundarySide side = BoundarySide::PlusI0;
  KernelExpr kernel() const;
  KernelExpr antisymmetric_part() const;
  static const ExactScalar& coefficient();  // -1/(4 pi)
};

/// Poisson bracket of two polynomial functionals (sums of one-vertex
/// monomial terms on a common surface), reduced back to monomial form.
Observable poisson_bracket(const Observable& F, const Observable& G);

/// The same bracket as an unreduced contraction through the E_Sigma edge;
/// equal to poisson_bracket as a distribution, convenient for exact
/// term-level comparison with the commutator's hbar coefficient.
Observable poisson_contraction(const Observable& F, const Observable& G);

/// F star G = sum_k (hbar^k / k!) <W^(x k), F^(k) x G^(k)>, truncated.
ObservableSeries star_product(const ObservableSeries& F, const ObservableSeries& G,
                              const HadamardChiralKernel& W, int order);
ObservableSeries star_product(const Observable& F, const Observable& G,
                              const HadamardChiralKernel& W, int order);

/// star(F, G) - star(G, F); finite-part edges cancel exactly, leaving
/// delta-diagonal edges only.
ObservableSeries commutator(const ObservableSeries& F, const ObservableSeries& G,
                            const HadamardChiralKernel& W, int order);
ObservableSeries commutator(const Observable& F, const Observable& G,
                            const HadamardChiralKernel& W, int order);

ObservableSeries to_series(const Observable& F, int order);

/// Gaussian state: evaluation of every hbar coefficient at a configuration.
struct GaussianState {
  HadamardChiralKernel hadamard;
  ChiralConfiguration psi;
  ScalarSeries operator()(const ObservableSeries& A, const PairOptions& opt = {}) const;
};

/// Symmetric smooth two-point kernel sum_k a_k(s) b_k(s') used as a Hadamard
/// difference H' - H. Components must come in symmetric pairs.
class SymmetricSmoothKernel {
 public:
  struct Component {
    SmoothFn left, right;
    SmoothFn diagonal;  // left * right, shared so canonical forms compare
  };

  SymmetricSmoothKernel() = default;  // the zero kernel
  static SymmetricSmoothKernel constant(double c);
  /// a(s)a(s') with a single factor (manifestly symmetric).
  static SymmetricSmoothKernel rank_one(const SmoothFn& a);
  /// a(s)b(s') + b(s)a(s').
  static SymmetricSmoothKernel symmetrized(const SmoothFn& a, const SmoothFn& b);

  const std::vector<Component>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

 private:
  std::vector<Component> comps_;
};

/// beta_{H'-H} F = sum_n hbar^n/(2^n n!) <(H'-H)^(x n), F^(2n)>. The identity
/// at deltaH = 0; intertwines the star products of the two Hadamard kernels.
ObservableSeries beta_transform(const ObservableSeries& F,
                                const SymmetricSmoothKernel& deltaH);

/// Star product of the shifted Hadamard kernel W + deltaH: contractions run
/// through the singular W edge or any smooth deltaH component.
ObservableSeries star_product_shifted(const ObservableSeries& F, const ObservableSeries& G,
                                      const HadamardChiralKernel& W,
                                      const SymmetricSmoothKernel& deltaH, int order);

/// Monomial in the jet variables psi, psi', ..., psi'''' at a point, with
/// exact coefficients; the attached-field algebra of the OPE table.
class JetPolynomial {
 public:
  using Monomial = std::array<int, kJetOrder>;  // exponents of psi^(r)
  JetPolynomial() = default;
  static JetPolynomial one() { return monomial({}, ExactScalar(1)); }
  static JetPolynomial psi_power(int n, const ExactScalar& c = ExactScalar(1));
  static JetPolynomial monomial(Monomial m, const ExactScalar& c);

  const std::map<Monomial, ExactScalar>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  JetPolynomial operator*(const JetPolynomial& o) const;
  JetPolynomial operator+(const JetPolynomial& o) const;
  JetPolynomial scaled(const ExactScalar& c) const;
  /// d/ds via the jet chain psi^(r) -> psi^(r+1).
  JetPolynomial derivative() const;
  bool operator==(const JetPolynomial& o) const { return t_ == o.t_; }

  std::complex<double> evaluate(const ChiralConfiguration& psi, double s) const;
  std::string str() const;

 private:
  void prune();
  std::map<Monomial, ExactScalar> t_;
};

struct OpeRow {
  int power = 0;      // singular power of 1/(s - s')
  int hbar_pow = 0;
  ExactScalar coeff;  // exact scalar multiplying the attached field
  JetPolynomial attached;  // field at s' (jet polynomial in psi)
};

/// OPE rows sorted by strictly decreasing singular power; powers <= 0 dropped.
struct OpeTable {
  std::vector<OpeRow> rows;
  nlohmann::json to_json() const;
};

/// Singular expansion of the state-evaluated product Fi(s) star Fj(s') on a
/// t = 0 surface of Minkowski: Taylor-expands the smooth psi-factors about s'
/// and collects powers of the separation.
OpeTable ope_extract(const LocalField& Fi, const LocalField& Fj,
                     const HadamardChiralKernel& W, int order = 4);

struct ScalingFit {
  int delta_order = 0;           // mu_i + mu_j - 1
  int hbar_pow = 0;              // hbar power carrying the fitted kernel
  std::complex<double> a = 0.0;  // fitted coefficient of delta^(order)
  double residual = 0.0;         // relative least-squares residual
};

/// Fits the psi = 0 expectation of the commutator kernel of two monomial
/// fields against a single delta derivative, pairing both sides with a basis
/// of test-function pairs.
ScalingFit scaling_constraint_fit(const LocalField& Fi, const LocalField& Fj,
                                  const HadamardChiralKernel& W,
                                  int basis_pairs = 6, int order = 4);

/// F -> F o rho*_(1): every monomial smearing moves by the weighted
/// pushforward of its own weight.
Observable diffeo_action_on_functional(const Diffeo& rho, const Observable& F);

nlohmann::json observable_to_json(const Observable& F);
nlohmann::json series_to_json(const ObservableSeries& F);

}  // namespace chiral

#endif
