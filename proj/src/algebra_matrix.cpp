#include "nctorus/algebra_matrix.hpp"

#include <algorithm>

namespace nct {

AlgebraMatrix add(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  AlgebraMatrix out(a.theta());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = add(a.at(r, c), b.at(r, c));
  return out;
}

AlgebraMatrix sub(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  AlgebraMatrix out(a.theta());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = sub(a.at(r, c), b.at(r, c));
  return out;
}

AlgebraMatrix scale(Complex z, const AlgebraMatrix& a) {
  AlgebraMatrix out(a.theta());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = scale(z, a.at(r, c));
  return out;
}

AlgebraMatrix mul(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  AlgebraMatrix out(a.theta());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out.at(r, c) =
          add(mul(a.at(r, 0), b.at(0, c)), mul(a.at(r, 1), b.at(1, c)));
  return out;
}

AlgebraMatrix mul(const TorusElement& a, const AlgebraMatrix& m) {
  AlgebraMatrix out(m.theta());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = mul(a, m.at(r, c));
  return out;
}

AlgebraMatrix mul(const AlgebraMatrix& m, const TorusElement& a) {
  AlgebraMatrix out(m.theta());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = mul(m.at(r, c), a);
  return out;
}

AlgebraMatrix star(const AlgebraMatrix& a) {
  AlgebraMatrix out(a.theta());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = star(a.at(c, r));
  return out;
}

AlgebraMatrix derive(int j, const AlgebraMatrix& a) {
  AlgebraMatrix out(a.theta());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = derive(j, a.at(r, c));
  return out;
}

AlgebraMatrix commutator(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  return sub(mul(a, b), mul(b, a));
}

AlgebraMatrix truncate(const AlgebraMatrix& a, TruncationPolicy& policy) {
  AlgebraMatrix out(a.theta());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = truncate(a.at(r, c), policy);
  return out;
}

double norm_l1(const AlgebraMatrix& a) {
  double c0 = norm_l1(a.at(0, 0)) + norm_l1(a.at(1, 0));
  double c1 = norm_l1(a.at(0, 1)) + norm_l1(a.at(1, 1));
  return std::max(c0, c1);
}

}  // namespace nct
