// Polynomial observables on a Cauchy surface in a closed symbolic form:
// sums of multi-vertex terms, each an integral of test functions times
// psi-powers times surface weights, joined by tagged singular edge kernels.
// Wick contractions, functional derivatives and state evaluation act on
// this representation exactly; floats appear only when a term is evaluated.

#ifndef CHIRAL_OBSERVABLE_HPP
#define CHIRAL_OBSERVABLE_HPP

#include <vector>

#include "chiral/fields.hpp"

namespace chiral {

/// One integration variable: f(s) psi(s)^a gamma'(s)^w times smooth extras.
struct Vertex {
  TestFunction f;
  int psi_pow = 0;
  Rational weight_pow = Rational(0);
  std::vector<SmoothFn> extra;
};

/// Unit-coefficient singular kernel joining vertices a < b in x = s_a - s_b.
struct Edge {
  int a = 0, b = 1;
  KernelShape::Kind kind = KernelShape::Kind::Delta;
  int order = 0;
  BoundarySide side = BoundarySide::PlusI0;

  KernelExpr kernel() const;
};

struct Term {
  ExactScalar coeff = ExactScalar(1);
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

/// Finite sum of terms bound to a surface. The canonical form sorts vertices
/// and edges, expands boundary-value edges into finite-part and delta edges,
/// drops delta edges with causally disjoint smearings, and merges like terms
/// with exact coefficient arithmetic.
class Observable {
 public:
  Observable() = default;
  explicit Observable(CauchySurface surface) : surface_(std::move(surface)) {}

  const CauchySurface& surface() const;
  bool has_surface() const { return bool(surface_); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Term t);
  Observable scaled(const ExactScalar& c) const;
  friend Observable operator+(const Observable& x, const Observable& y);
  friend Observable operator-(const Observable& x, const Observable& y);

  Observable canonical() const;
  /// All psi-powers zero (the observable is a constant functional).
  bool is_constant() const;

  std::complex<double> evaluate(const ChiralConfiguration& psi,
                                const PairOptions& opt = {}) const;

 private:
  std::optional<CauchySurface> surface_;
  std::vector<Term> terms_;
};

/// Monomial field descriptor: smearing-linear map f -> coeff * Psi^n(f),
/// Psi^n(f)[psi] = Int f psi^n gamma'^(n/2) ds. Weight equals the power.
struct LocalField {
  int power = 1;
  ExactScalar coeff = ExactScalar(1);
  int weight() const { return power; }
};

inline LocalField chiral_boson_field() { return {1, ExactScalar(1)}; }
inline LocalField stress_tensor_field() { return {2, ExactScalar(Rational(1, 2))}; }
inline LocalField unit_field() { return {0, ExactScalar(1)}; }

/// coeff * Int f psi^n gamma'^(n/2) ds as a one-vertex observable.
Observable smear(const CauchySurface& surface, const LocalField& field,
                 const TestFunction& f);

/// Formal power series in hbar truncated at `order` (inclusive).
template <typename T>
class HbarSeries {
 public:
  HbarSeries() = default;
  explicit HbarSeries(int order) : coeffs_(order + 1) {}
  HbarSeries(int order, T zeroth) : coeffs_(order + 1) { coeffs_[0] = std::move(zeroth); }

  int order() const { return int(coeffs_.size()) - 1; }
  const T& operator[](int k) const { return coeffs_.at(k); }
  T& operator[](int k) { return coeffs_.at(k); }

  HbarSeries& operator+=(const HbarSeries& o) {
    for (int k = 0; k <= std::min(order(), o.order()); ++k) coeffs_[k] = coeffs_[k] + o[k];
    return *this;
  }
  HbarSeries operator-() const {
    HbarSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

 private:
  std::vector<T> coeffs_;
};

using ObservableSeries = HbarSeries<Observable>;
using ScalarSeries = HbarSeries<std::complex<double>>;

}  // namespace chiral

#endif
