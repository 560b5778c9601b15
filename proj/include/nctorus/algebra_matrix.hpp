#ifndef NCTORUS_ALGEBRA_MATRIX_HPP
#define NCTORUS_ALGEBRA_MATRIX_HPP

#include <array>

#include "nctorus/element.hpp"

namespace nct {

// 2x2 matrix over the torus algebra; houses metrics, mu-values and
// endomorphisms of the rank-2 free module.
class AlgebraMatrix {
 public:
  explicit AlgebraMatrix(double theta)
      : entries_{TorusElement(theta), TorusElement(theta),
                 TorusElement(theta), TorusElement(theta)} {}

  AlgebraMatrix(TorusElement e11, TorusElement e12, TorusElement e21,
                TorusElement e22)
      : entries_{std::move(e11), std::move(e12), std::move(e21),
                 std::move(e22)} {}

  static AlgebraMatrix identity(double theta, Complex c = 1.0) {
    AlgebraMatrix out(theta);
    out.at(0, 0) = TorusElement::unit(theta, c);
    out.at(1, 1) = TorusElement::unit(theta, c);
    return out;
  }
  static AlgebraMatrix diagonal(TorusElement a1, TorusElement a2) {
    const double theta = a1.theta();
    AlgebraMatrix out(theta);
    out.at(0, 0) = std::move(a1);
    out.at(1, 1) = std::move(a2);
    return out;
  }

  double theta() const { return entries_[0].theta(); }
  TorusElement& at(int r, int c) { return entries_[2 * r + c]; }
  const TorusElement& at(int r, int c) const { return entries_[2 * r + c]; }

 private:
  std::array<TorusElement, 4> entries_;
};

AlgebraMatrix add(const AlgebraMatrix& a, const AlgebraMatrix& b);
AlgebraMatrix sub(const AlgebraMatrix& a, const AlgebraMatrix& b);
AlgebraMatrix scale(Complex z, const AlgebraMatrix& a);
AlgebraMatrix mul(const AlgebraMatrix& a, const AlgebraMatrix& b);
// Left/right multiplication by an algebra element, entrywise.
AlgebraMatrix mul(const TorusElement& a, const AlgebraMatrix& m);
AlgebraMatrix mul(const AlgebraMatrix& m, const TorusElement& a);

// Conjugate transpose with the element involution.
AlgebraMatrix star(const AlgebraMatrix& a);

AlgebraMatrix derive(int j, const AlgebraMatrix& a);

AlgebraMatrix commutator(const AlgebraMatrix& a, const AlgebraMatrix& b);

AlgebraMatrix truncate(const AlgebraMatrix& a, TruncationPolicy& policy);

// Max column sum of entry l1 norms; submultiplicative.
double norm_l1(const AlgebraMatrix& a);

inline AlgebraMatrix operator+(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  return add(a, b);
}
inline AlgebraMatrix operator-(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  return sub(a, b);
}
inline AlgebraMatrix operator*(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  return mul(a, b);
}
inline AlgebraMatrix operator*(Complex z, const AlgebraMatrix& a) {
  return scale(z, a);
}

}  // namespace nct

#endif
