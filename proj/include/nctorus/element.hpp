#ifndef NCTORUS_ELEMENT_HPP
#define NCTORUS_ELEMENT_HPP

#include <complex>
#include <compare>
#include <map>

#include "nctorus/errors.hpp"

namespace nct {

using Complex = std::complex<double>;

// Fourier mode (m, n) of u1^m u2^n.
struct ModeKey {
  int m = 0;
  int n = 0;
  friend auto operator<=>(const ModeKey&, const ModeKey&) = default;
};

// Coefficients with modulus below this are treated as exact zeros; guards
// against denormal growth in long iteration pipelines.
inline constexpr double kDenormalGuard = 1e-300;

// A finitely supported twisted Fourier series sum c_{m,n} u1^m u2^n in
// normal order, with u1 u2 = e^{2 pi i theta} u2 u1. Immutable value type:
// all operations are pure functions returning new elements.
class TorusElement {
 public:
  TorusElement() = default;  // zero element at theta 0; assign before use
  explicit TorusElement(double theta) : theta_(theta) {}

  static TorusElement zero(double theta) { return TorusElement(theta); }
  static TorusElement unit(double theta, Complex c = 1.0) {
    return monomial(theta, 0, 0, c);
  }
  static TorusElement monomial(double theta, int m, int n, Complex c = 1.0) {
    TorusElement e(theta);
    e.set_coeff(m, n, c);
    return e;
  }

  double theta() const { return theta_; }
  const std::map<ModeKey, Complex>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t nnz() const { return coeffs_.size(); }

  Complex coeff(int m, int n) const {
    auto it = coeffs_.find({m, n});
    return it == coeffs_.end() ? Complex(0.0) : it->second;
  }

  // Canonical sparse form: exact zeros (and denormals) are never stored.
  void set_coeff(int m, int n, Complex c) {
    if (std::abs(c) < kDenormalGuard) {
      coeffs_.erase({m, n});
    } else {
      coeffs_[{m, n}] = c;
    }
  }

  void add_coeff(int m, int n, Complex c) { set_coeff(m, n, coeff(m, n) + c); }

  // Largest max(|m|, |n|) over the support; 0 for the zero element.
  int support_radius() const;

 private:
  double theta_ = 0.0;
  std::map<ModeKey, Complex> coeffs_;
};

// Box truncation state: keeps modes with max(|m|,|n|) <= radius and
// accumulates the l1 mass of everything discarded.
struct TruncationPolicy {
  int radius = 0;
  double tail_mass = 0.0;
};

void check_same_theta(const TorusElement& a, const TorusElement& b);

TorusElement add(const TorusElement& a, const TorusElement& b);
TorusElement sub(const TorusElement& a, const TorusElement& b);
TorusElement scale(Complex z, const TorusElement& a);

// Twisted convolution: (u1^m u2^n)(u1^m' u2^n') =
// e^{-2 pi i theta n m'} u1^{m+m'} u2^{n+n'}. Exact (no truncation).
TorusElement mul(const TorusElement& a, const TorusElement& b);

// Involution: c_{m,n} contributes conj(c) e^{-2 pi i theta m n} at (-m,-n).
TorusElement star(const TorusElement& a);

// Canonical derivations: scales c_{m,n} by 2 pi i m (j=1) or 2 pi i n (j=2).
TorusElement derive(int j, const TorusElement& a);

// The unique invariant tracial state: the (0,0) coefficient.
Complex trace(const TorusElement& a);

// Sum of |c_{m,n}|; submultiplicative upper bound for the C*-norm.
double norm_l1(const TorusElement& a);

TorusElement truncate(const TorusElement& a, TruncationPolicy& policy);

double l1_distance(const TorusElement& a, const TorusElement& b);

// a == a* up to coefficientwise tolerance.
bool is_self_adjoint(const TorusElement& a, double tol = 1e-12);

inline TorusElement operator+(const TorusElement& a, const TorusElement& b) {
  return add(a, b);
}
inline TorusElement operator-(const TorusElement& a, const TorusElement& b) {
  return sub(a, b);
}
inline TorusElement operator*(const TorusElement& a, const TorusElement& b) {
  return mul(a, b);
}
inline TorusElement operator*(Complex z, const TorusElement& a) {
  return scale(z, a);
}
inline TorusElement operator-(const TorusElement& a) { return scale(-1.0, a); }

}  // namespace nct

#endif
