#ifndef NCTORUS_GEOMETRY_HPP
#define NCTORUS_GEOMETRY_HPP

#include <array>
#include <optional>
#include <vector>

#include "nctorus/algebra_matrix.hpp"
#include "nctorus/element.hpp"
#include "nctorus/matrix_rep.hpp"

namespace nct {

enum class MetricKind { flat, conformal, diagonal, general };

// Riemannian metric gamma = (g_jk) on the rank-2 free module, with
// self-adjoint entries. Positivity is certified through the finite model
// before any connection is built.
struct Metric {
  MetricKind kind = MetricKind::flat;
  AlgebraMatrix g;
  std::optional<TorusElement> conformal_h;

  double theta() const { return g.theta(); }
};

Metric flat_metric(double theta);
Metric diagonal_metric(const TorusElement& a1, const TorusElement& a2);
// gamma = e^h I2 for self-adjoint h.
Metric conformal_metric(const TorusElement& h, double tol,
                        TruncationPolicy& policy);
Metric general_metric(const AlgebraMatrix& g);

// Throws PositivityError when the oracle certificate fails (lambda_min at or
// below 1e-6 is rejected, never regularized).
std::vector<SpectralCertificate> certify_metric(const Metric& metric,
                                                int oracle_q = 101);

// gamma^{-1} in M2(A) with residual norm_l1(gamma X - I) <= tol. Diagonal
// metrics additionally cross-check the entrywise-inverse closed form against
// the block Newton path.
AlgebraMatrix metric_inverse(const Metric& metric, double tol,
                             TruncationPolicy& policy, int oracle_q = 101);

// x1 d1 + x2 d2, stored as the row (x1, x2); endomorphisms act on the right.
struct ModuleVector {
  TorusElement x1, x2;

  double theta() const { return x1.theta(); }
  const TorusElement& component(int k) const { return k == 1 ? x1 : x2; }
};

ModuleVector basis_vector(double theta, int k);
ModuleVector apply_endomorphism(const ModuleVector& x, const AlgebraMatrix& nu);
ModuleVector left_mul(const TorusElement& a, const ModuleVector& x);
ModuleVector add(const ModuleVector& a, const ModuleVector& b);
ModuleVector sub(const ModuleVector& a, const ModuleVector& b);

// <X,Y> = sum_{j,k} x_j g_jk (y_k)^*; left-linear, right-conjugate-linear.
TorusElement inner_product(const ModuleVector& x, const ModuleVector& y,
                           const Metric& metric, TruncationPolicy& policy);

// <nabla_j d_k, d_l> = (d_j g_kl + d_k g_jl - d_l g_jk) / 2,
// indexed [j-1][k-1][l-1].
using ChristoffelInner = std::array<std::array<std::array<TorusElement, 2>, 2>, 2>;
ChristoffelInner christoffel_inner(const Metric& metric);

struct Connection {
  Metric metric;
  AlgebraMatrix metric_inv;
  // Gamma^l_{jk}, indexed [j-1][k-1][l-1].
  std::array<std::array<std::array<TorusElement, 2>, 2>, 2> gamma;
  double inverse_residual = 0.0;

  // (Gamma_j)_{kl} = Gamma^l_{jk}: nabla_j acts as componentwise d_j plus
  // right multiplication by this matrix.
  AlgebraMatrix gamma_matrix(int j) const;
};

Connection connection_coeffs(const Metric& metric, double tol,
                             TruncationPolicy& policy, int oracle_q = 101);

// (nabla_j Y)_l = d_j y_l + sum_k y_k Gamma^l_{jk}.
ModuleVector nabla_apply(const Connection& conn, int j, const ModuleVector& y,
                         TruncationPolicy& policy);

// <(nabla_2 nabla_1 - nabla_1 nabla_2) d_1, d_2>; on diagonal metrics the
// closed form is evaluated as well and disagreement beyond 10*tol is a
// diagnostic error.
TorusElement curvature_1212(const Connection& conn, double tol,
                            TruncationPolicy& policy);

struct GbResult {
  Complex value;
  double max_residual = 0.0;
  std::vector<SpectralCertificate> certificates;
};

// tau(a1^{-1/2} R_1212 a2^{-1/2}) for a certified diagonal metric.
GbResult gauss_bonnet_diagonal(const TorusElement& a1, const TorusElement& a2,
                               double tol, TruncationPolicy& policy,
                               int oracle_q = 101);

// tau(R_1212 e^{-h}) for the conformal metric e^h I2.
GbResult gauss_bonnet_conformal(const TorusElement& h, double tol,
                                TruncationPolicy& policy, int oracle_q = 101);

}  // namespace nct

#endif
