#include "nctorus/connection_space.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <set>
#include <string>

namespace nct {

InnerDerivation normalize_inner(const TorusElement& a) {
  // a + a* must be a scalar multiple of 1
  TorusElement sum = add(a, star(a));
  TorusElement off = sum;
  off.set_coeff(0, 0, 0.0);
  if (norm_l1(off) > 1e-12 * std::max(1.0, norm_l1(a)) ||
      std::abs(std::imag(sum.coeff(0, 0))) > 1e-12) {
    throw Error("normalize_inner: a is not skew-adjoint modulo scalars");
  }
  TorusElement tilde = sub(a, TorusElement::unit(a.theta(), trace(a)));
  return {tilde};
}

TorusElement ad_apply(const InnerDerivation& d, const TorusElement& b) {
  return sub(mul(d.a_tilde, b), mul(b, d.a_tilde));
}

KernelCheck mu_kernel_check(const AlgebraMatrix& nu, const Metric& metric,
                            double tol, TruncationPolicy& policy,
                            int oracle_q) {
  AlgebraMatrix ginv = metric_inverse(metric, tol, policy, oracle_q);
  AlgebraMatrix lhs = add(star(nu), mul(mul(ginv, nu), metric.g));
  double residual = norm_l1(lhs);
  return {residual <= tol, residual};
}

AlgebraMatrix make_commutant_mu(const std::vector<double>& poly_coeffs,
                                const Metric& metric,
                                TruncationPolicy& policy) {
  const double theta = metric.theta();
  AlgebraMatrix acc(theta);
  // Horner, highest coefficient first
  for (auto it = poly_coeffs.rbegin(); it != poly_coeffs.rend(); ++it) {
    acc = truncate(mul(acc, metric.g), policy);
    acc = add(acc, AlgebraMatrix::identity(theta, *it));
  }
  return scale(Complex(0.0, 1.0), acc);
}

void MuMap::add(InnerDerivation basis, AlgebraMatrix value) {
  basis_.push_back(std::move(basis));
  values_.push_back(std::move(value));
}

std::optional<std::vector<double>> MuMap::decompose(const InnerDerivation& d,
                                                    double tol) const {
  if (basis_.empty()) return std::nullopt;
  // union support -> real least squares over the basis coordinates
  std::set<ModeKey> modes;
  for (const auto& b : basis_) {
    for (const auto& [key, c] : b.a_tilde.coeffs()) modes.insert(key);
  }
  for (const auto& [key, c] : d.a_tilde.coeffs()) modes.insert(key);
  const std::size_t rows = 2 * modes.size();
  Eigen::MatrixXd mat(rows, static_cast<Eigen::Index>(basis_.size()));
  Eigen::VectorXd rhs(rows);
  std::size_t r = 0;
  for (const ModeKey& key : modes) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      Complex c = basis_[i].a_tilde.coeff(key.m, key.n);
      mat(r, static_cast<Eigen::Index>(i)) = std::real(c);
      mat(r + 1, static_cast<Eigen::Index>(i)) = std::imag(c);
    }
    Complex c = d.a_tilde.coeff(key.m, key.n);
    rhs(r) = std::real(c);
    rhs(r + 1) = std::imag(c);
    r += 2;
  }
  Eigen::VectorXd sol = mat.colPivHouseholderQr().solve(rhs);
  double residual = (mat * sol - rhs).lpNorm<1>();
  if (residual > tol * std::max(1.0, rhs.lpNorm<1>())) return std::nullopt;
  return std::vector<double>(sol.data(), sol.data() + sol.size());
}

AlgebraMatrix MuMap::apply(const InnerDerivation& d) const {
  auto coords = decompose(d);
  if (!coords) {
    throw SpanError(
        "MuMap: derivation is outside the span of the probe basis; supply an "
        "explicit value instead of relying on zero-extension");
  }
  AlgebraMatrix out(d.theta());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if ((*coords)[i] == 0.0) continue;
    out = out + scale(Complex((*coords)[i]), values_[i]);
  }
  return out;
}

double perturbed_compatibility_check(const Metric& metric, const MuMap& mu,
                                     const InnerDerivation& d,
                                     const ModuleVector& x,
                                     const ModuleVector& y,
                                     TruncationPolicy& policy) {
  AlgebraMatrix mu_d = mu.apply(d);
  TorusElement lhs = ad_apply(d, inner_product(x, y, metric, policy));
  ModuleVector nx = add(left_mul(d.a_tilde, x), apply_endomorphism(x, mu_d));
  ModuleVector ny = add(left_mul(d.a_tilde, y), apply_endomorphism(y, mu_d));
  TorusElement rhs = add(inner_product(nx, y, metric, policy),
                         inner_product(x, ny, metric, policy));
  return l1_distance(lhs, rhs);
}

AlgebraMatrix inner_curvature(const Metric& metric, const MuMap& mu,
                              const InnerDerivation& a_t,
                              const InnerDerivation& b_t) {
  (void)metric;
  AlgebraMatrix mu_a = mu.apply(a_t);
  AlgebraMatrix mu_b = mu.apply(b_t);
  InnerDerivation bracket{ad_apply(b_t, a_t.a_tilde)};
  AlgebraMatrix mu_br = mu.apply(bracket);
  return sub(commutator(mu_a, mu_b), mu_br);
}

AlgebraMatrix inner_curvature_operational(const Metric& metric,
                                          const MuMap& mu,
                                          const InnerDerivation& a_t,
                                          const InnerDerivation& b_t,
                                          TruncationPolicy& policy) {
  (void)policy;
  const double theta = metric.theta();
  AlgebraMatrix mu_a = mu.apply(a_t);
  AlgebraMatrix mu_b = mu.apply(b_t);
  InnerDerivation bracket{ad_apply(b_t, a_t.a_tilde)};
  AlgebraMatrix mu_br = mu.apply(bracket);
  // nabla_X = left mult by b_tilde + right mult by mu(b); evaluate
  // [nabla_X, mu(a)] - mu([b, a]) on the basis rows.
  auto nabla_x = [&](const ModuleVector& v) {
    return add(left_mul(b_t.a_tilde, v), apply_endomorphism(v, mu_b));
  };
  AlgebraMatrix out(theta);
  for (int k = 1; k <= 2; ++k) {
    ModuleVector ek = basis_vector(theta, k);
    ModuleVector row =
        sub(sub(nabla_x(apply_endomorphism(ek, mu_a)),
                apply_endomorphism(nabla_x(ek), mu_a)),
            apply_endomorphism(ek, mu_br));
    out.at(k - 1, 0) = row.x1;
    out.at(k - 1, 1) = row.x2;
  }
  return out;
}

AlgebraMatrix general_inner_curvature(const Metric& metric, const MuMap& mu,
                                      const InnerDerivation& a_t, int j,
                                      double tol, TruncationPolicy& policy,
                                      int oracle_q) {
  if (j != 1 && j != 2) {
    throw Error("general_inner_curvature: j must be 1 or 2");
  }
  const double theta = metric.theta();
  AlgebraMatrix mu_a = mu.apply(a_t);
  InnerDerivation da{derive(j, a_t.a_tilde)};
  AlgebraMatrix mu_da = mu.apply(da);
  Connection conn = connection_coeffs(metric, tol, policy, oracle_q);
  AlgebraMatrix out(theta);
  for (int k = 1; k <= 2; ++k) {
    ModuleVector ek = basis_vector(theta, k);
    ModuleVector row =
        sub(sub(nabla_apply(conn, j, apply_endomorphism(ek, mu_a), policy),
                apply_endomorphism(nabla_apply(conn, j, ek, policy), mu_a)),
            apply_endomorphism(ek, mu_da));
    out.at(k - 1, 0) = row.x1;
    out.at(k - 1, 1) = row.x2;
  }
  return out;
}

}  // namespace nct
