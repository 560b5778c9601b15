#include "nctorus/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "nctorus/functional.hpp"

namespace nct {

namespace {

std::string fmt_residual(double r) {
  std::ostringstream os;
  os << std::scientific << r;
  return os.str();
}

}  // namespace

Metric flat_metric(double theta) {
  return {MetricKind::flat, AlgebraMatrix::identity(theta), std::nullopt};
}

Metric diagonal_metric(const TorusElement& a1, const TorusElement& a2) {
  check_same_theta(a1, a2);
  return {MetricKind::diagonal, AlgebraMatrix::diagonal(a1, a2), std::nullopt};
}

Metric conformal_metric(const TorusElement& h, double tol,
                        TruncationPolicy& policy) {
  if (!h.is_zero() && !is_self_adjoint(h, 1e-10)) {
    throw Error("conformal_metric: h is not self-adjoint");
  }
  TorusElement eh = exp_series(h, tol, policy).value;
  return {MetricKind::conformal, AlgebraMatrix::diagonal(eh, eh), h};
}

Metric general_metric(const AlgebraMatrix& g) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (!g.at(r, c).is_zero() && !is_self_adjoint(g.at(r, c), 1e-10)) {
        throw Error("general_metric: entries must be self-adjoint");
      }
    }
  }
  if (l1_distance(g.at(0, 1), g.at(1, 0)) > 1e-10) {
    throw Error("general_metric: g must be symmetric");
  }
  return {MetricKind::general, g, std::nullopt};
}

std::vector<SpectralCertificate> certify_metric(const Metric& metric,
                                                int oracle_q) {
  std::vector<SpectralCertificate> certs;
  switch (metric.kind) {
    case MetricKind::flat:
      certs.push_back({1.0, 1.0, 0, oracle_q, true});
      return certs;
    case MetricKind::conformal:
      // positive by construction (exponential of a self-adjoint element)
      certs.push_back(certify_positive(metric.g.at(0, 0), oracle_q));
      return certs;
    case MetricKind::diagonal: {
      for (int k = 0; k < 2; ++k) {
        SpectralCertificate c = certify_positive(metric.g.at(k, k), oracle_q);
        if (c.lambda_min <= kMinCertifiedLambda) {
          throw PositivityError("certify_metric: diagonal entry " +
                                std::to_string(k + 1) +
                                " failed, lambda_min = " +
                                std::to_string(c.lambda_min));
        }
        certs.push_back(c);
      }
      return certs;
    }
    case MetricKind::general: {
      // 2q x 2q block representation of the matrix over A.
      int radius = 0;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          radius = std::max(radius, metric.g.at(r, c).support_radius());
      int q = (2 * radius >= oracle_q) ? 2 * radius + 3 : oracle_q;
      Eigen::MatrixXcd block(2 * q, 2 * q);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          block.block(r * q, c * q, q, q) =
              represent_nearest(metric.g.at(r, c), q).data;
        }
      }
      block = 0.5 * (block + block.adjoint().eval());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
          block, Eigen::EigenvaluesOnly);
      SpectralCertificate cert{solver.eigenvalues().minCoeff(),
                               solver.eigenvalues().maxCoeff(),
                               static_cast<int>(std::lround(metric.theta() * q)),
                               q, false};
      if (cert.lambda_min <= kMinCertifiedLambda) {
        throw PositivityError(
            "certify_metric: matrix positivity failed, lambda_min = " +
            std::to_string(cert.lambda_min));
      }
      certs.push_back(cert);
      return certs;
    }
  }
  throw Error("certify_metric: unknown metric kind");
}

namespace {

// Block Newton-Hotelling X <- X(2I - gX) with X0 = g / rho^2.
AlgebraMatrix block_newton_inverse(const AlgebraMatrix& g, double tol,
                                   TruncationPolicy& policy,
                                   double* out_residual) {
  const double theta = g.theta();
  const AlgebraMatrix one = AlgebraMatrix::identity(theta);
  const double rho = norm_l1(g);
  AlgebraMatrix x = scale(1.0 / (rho * rho), g);
  double residual = 0.0, best = 1e308;
  int stalled = 0;
  for (int it = 1; it <= kMaxFcIterations; ++it) {
    AlgebraMatrix gx = mul(g, x);
    residual = norm_l1(sub(gx, one));
    if (residual <= tol) {
      if (out_residual) *out_residual = residual;
      return x;
    }
    if (!std::isfinite(residual) || residual > 1e6) break;  // diverged
    if (residual < 0.9 * best) {
      best = residual;
      stalled = 0;
    } else if (residual < 0.5 && ++stalled >= 5) {
      break;
    }
    x = truncate(mul(x, sub(scale(2.0, one), gx)), policy);
  }
  throw ConvergenceError(
      "metric_inverse: block Newton did not reach tol, last residual = " +
          fmt_residual(residual),
      residual);
}

}  // namespace

AlgebraMatrix metric_inverse(const Metric& metric, double tol,
                             TruncationPolicy& policy, int oracle_q) {
  const double theta = metric.theta();
  if (metric.kind == MetricKind::flat) {
    return AlgebraMatrix::identity(theta);
  }
  certify_metric(metric, oracle_q);
  double newton_residual = 0.0;
  AlgebraMatrix general_path =
      block_newton_inverse(metric.g, tol, policy, &newton_residual);
  if (metric.kind == MetricKind::diagonal ||
      metric.kind == MetricKind::conformal) {
    AlgebraMatrix closed = AlgebraMatrix::diagonal(
        invert(metric.g.at(0, 0), tol, policy, oracle_q).value,
        invert(metric.g.at(1, 1), tol, policy, oracle_q).value);
    double gap = norm_l1(sub(closed, general_path));
    if (gap > 10.0 * tol) {
      throw ConvergenceError(
          "metric_inverse: entrywise and block Newton paths disagree: " +
              fmt_residual(gap),
          gap);
    }
    return closed;
  }
  return general_path;
}

ModuleVector basis_vector(double theta, int k) {
  if (k != 1 && k != 2) throw Error("basis_vector: k must be 1 or 2");
  TorusElement one = TorusElement::unit(theta);
  TorusElement zero = TorusElement::zero(theta);
  return k == 1 ? ModuleVector{one, zero} : ModuleVector{zero, one};
}

ModuleVector apply_endomorphism(const ModuleVector& x,
                                const AlgebraMatrix& nu) {
  return {add(mul(x.x1, nu.at(0, 0)), mul(x.x2, nu.at(1, 0))),
          add(mul(x.x1, nu.at(0, 1)), mul(x.x2, nu.at(1, 1)))};
}

ModuleVector left_mul(const TorusElement& a, const ModuleVector& x) {
  return {mul(a, x.x1), mul(a, x.x2)};
}

ModuleVector add(const ModuleVector& a, const ModuleVector& b) {
  return {add(a.x1, b.x1), add(a.x2, b.x2)};
}

ModuleVector sub(const ModuleVector& a, const ModuleVector& b) {
  return {sub(a.x1, b.x1), sub(a.x2, b.x2)};
}

TorusElement inner_product(const ModuleVector& x, const ModuleVector& y,
                           const Metric& metric, TruncationPolicy& policy) {
  TorusElement acc = TorusElement::zero(metric.theta());
  const TorusElement ys[2] = {star(y.x1), star(y.x2)};
  const TorusElement xs[2] = {x.x1, x.x2};
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      if (xs[j].is_zero() || metric.g.at(j, k).is_zero() || ys[k].is_zero())
        continue;
      acc = add(acc, mul(mul(xs[j], metric.g.at(j, k)), ys[k]));
    }
  }
  return truncate(acc, policy);
}

ChristoffelInner christoffel_inner(const Metric& metric) {
  ChristoffelInner out;
  for (int j = 1; j <= 2; ++j) {
    for (int k = 1; k <= 2; ++k) {
      for (int l = 1; l <= 2; ++l) {
        TorusElement t = sub(add(derive(j, metric.g.at(k - 1, l - 1)),
                                 derive(k, metric.g.at(j - 1, l - 1))),
                             derive(l, metric.g.at(j - 1, k - 1)));
        out[j - 1][k - 1][l - 1] = scale(0.5, t);
      }
    }
  }
  return out;
}

AlgebraMatrix Connection::gamma_matrix(int j) const {
  AlgebraMatrix out(metric.theta());
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) out.at(k, l) = gamma[j - 1][k][l];
  return out;
}

Connection connection_coeffs(const Metric& metric, double tol,
                             TruncationPolicy& policy, int oracle_q) {
  Connection conn{metric, AlgebraMatrix(metric.theta()), {}, 0.0};
  ChristoffelInner inner = christoffel_inner(metric);
  conn.metric_inv = metric_inverse(metric, tol, policy, oracle_q);
  conn.inverse_residual =
      norm_l1(sub(mul(metric.g, conn.metric_inv),
                  AlgebraMatrix::identity(metric.theta())));
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) {
        TorusElement g1 = mul(inner[j][k][0], conn.metric_inv.at(0, l));
        TorusElement g2 = mul(inner[j][k][1], conn.metric_inv.at(1, l));
        conn.gamma[j][k][l] = truncate(add(g1, g2), policy);
      }
    }
  }
  // torsion-freeness is structural; make it bit-exact
  for (int l = 0; l < 2; ++l) conn.gamma[1][0][l] = conn.gamma[0][1][l];
  return conn;
}

ModuleVector nabla_apply(const Connection& conn, int j, const ModuleVector& y,
                         TruncationPolicy& policy) {
  ModuleVector out{TorusElement(y.theta()), TorusElement(y.theta())};
  const TorusElement ys[2] = {y.x1, y.x2};
  TorusElement comp[2] = {TorusElement(y.theta()), TorusElement(y.theta())};
  for (int l = 0; l < 2; ++l) {
    TorusElement t = derive(j, ys[l]);
    for (int k = 0; k < 2; ++k) {
      if (ys[k].is_zero() || conn.gamma[j - 1][k][l].is_zero()) continue;
      t = add(t, mul(ys[k], conn.gamma[j - 1][k][l]));
    }
    comp[l] = truncate(t, policy);
  }
  out.x1 = comp[0];
  out.x2 = comp[1];
  return out;
}

TorusElement curvature_1212(const Connection& conn, double tol,
                            TruncationPolicy& policy) {
  const double theta = conn.metric.theta();
  ModuleVector d1 = basis_vector(theta, 1);
  ModuleVector d2 = basis_vector(theta, 2);
  ModuleVector r = sub(nabla_apply(conn, 2, nabla_apply(conn, 1, d1, policy),
                                   policy),
                       nabla_apply(conn, 1, nabla_apply(conn, 2, d1, policy),
                                   policy));
  TorusElement operational = inner_product(r, d2, conn.metric, policy);

  if (conn.metric.kind == MetricKind::diagonal) {
    const TorusElement& a1 = conn.metric.g.at(0, 0);
    const TorusElement& a2 = conn.metric.g.at(1, 1);
    const TorusElement& a1i = conn.metric_inv.at(0, 0);
    const TorusElement& a2i = conn.metric_inv.at(1, 1);
    TorusElement d1a1 = derive(1, a1), d2a1 = derive(2, a1);
    TorusElement d1a2 = derive(1, a2), d2a2 = derive(2, a2);
    TorusElement closed = add(
        add(truncate(mul(mul(d1a1, a1i), d1a2), policy),
            truncate(mul(mul(d2a1, a2i), d2a2), policy)),
        add(truncate(mul(mul(d2a1, a1i), d2a1), policy),
            truncate(mul(mul(d1a2, a2i), d1a2), policy)));
    closed = sub(closed,
                 scale(2.0, add(derive(1, d1a2), derive(2, d2a1))));
    closed = scale(0.25, closed);
    double gap = l1_distance(operational, closed);
    // The operational path derives the connection coefficients, which carry
    // the Newton inverse residual; a mode-m error picks up a factor 2*pi*m,
    // so the agreement gate scales with the truncation radius.
    double gate = tol * 2.0 * std::numbers::pi * std::max(10, policy.radius);
    if (gap > gate) {
      throw ConvergenceError(
          "curvature_1212: operational and closed-form paths disagree: " +
              fmt_residual(gap),
          gap);
    }
  }
  return operational;
}

GbResult gauss_bonnet_diagonal(const TorusElement& a1, const TorusElement& a2,
                               double tol, TruncationPolicy& policy,
                               int oracle_q) {
  GbResult out;
  Metric metric = diagonal_metric(a1, a2);
  out.certificates = certify_metric(metric, oracle_q);
  Connection conn = connection_coeffs(metric, tol, policy, oracle_q);
  TorusElement r = curvature_1212(conn, tol, policy);
  FcResult s1 = inv_sqrt(a1, tol, policy, oracle_q);
  FcResult s2 = inv_sqrt(a2, tol, policy, oracle_q);
  out.max_residual = std::max({conn.inverse_residual, s1.residual,
                               s2.residual});
  out.value = trace(mul(truncate(mul(s1.value, r), policy), s2.value));
  return out;
}

GbResult gauss_bonnet_conformal(const TorusElement& h, double tol,
                                TruncationPolicy& policy, int oracle_q) {
  GbResult out;
  Metric metric = conformal_metric(h, tol, policy);
  out.certificates = certify_metric(metric, oracle_q);
  Connection conn = connection_coeffs(metric, tol, policy, oracle_q);
  TorusElement r = curvature_1212(conn, tol, policy);
  FcResult emh = exp_series(scale(-1.0, h), tol, policy);
  out.max_residual = std::max(conn.inverse_residual, emh.residual);
  out.value = trace(truncate(mul(r, emh.value), policy));
  return out;
}

}  // namespace nct
