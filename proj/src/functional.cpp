#include "nctorus/functional.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace nct {

namespace {

std::string fmt_residual(double r) {
  std::ostringstream os;
  os << std::scientific << r;
  return os.str();
}

SpectralCertificate require_positive(const TorusElement& a, int oracle_q,
                                     const char* who) {
  if (!is_self_adjoint(a, 1e-10)) {
    throw PositivityError(std::string(who) + ": element is not self-adjoint");
  }
  SpectralCertificate cert = certify_positive(a, oracle_q);
  if (cert.lambda_min <= kMinCertifiedLambda) {
    throw PositivityError(std::string(who) +
                          ": positivity certificate failed, lambda_min = " +
                          std::to_string(cert.lambda_min));
  }
  return cert;
}

}  // namespace

FcResult invert(const TorusElement& a, double tol, TruncationPolicy& policy,
                int oracle_q) {
  if (tol <= 0) throw Error("invert: tol must be positive");
  require_positive(a, oracle_q, "invert");

  const double rho = norm_l1(a);
  const TorusElement one = TorusElement::unit(a.theta());
  TorusElement x = TorusElement::unit(a.theta(), 1.0 / rho);
  double residual = norm_l1(sub(mul(a, x), one));
  double best = residual;
  int stalled = 0;
  for (int it = 1; it <= kMaxFcIterations; ++it) {
    TorusElement ax = mul(a, x);
    residual = norm_l1(sub(ax, one));
    if (residual <= tol) return {x, residual, it};
    if (!std::isfinite(residual) || residual > 1e6) break;  // diverged
    // Stalls only count once the l1 residual is genuinely contracting;
    // ill-conditioned inputs hover near their spectral plateau for many
    // iterations before the quadratic phase kicks in.
    if (residual < 0.9 * best) {
      best = residual;
      stalled = 0;
    } else if (residual < 0.5 && ++stalled >= 5) {
      break;  // truncation floor reached above tol
    }
    x = truncate(mul(x, sub(scale(2.0, one), ax)), policy);
  }
  throw ConvergenceError("invert: did not reach tol, last residual = " +
                             fmt_residual(residual),
                         residual);
}

FcResult inv_sqrt(const TorusElement& a, double tol, TruncationPolicy& policy,
                  int oracle_q) {
  if (tol <= 0) throw Error("inv_sqrt: tol must be positive");
  SpectralCertificate cert = require_positive(a, oracle_q, "inv_sqrt");

  const TorusElement one = TorusElement::unit(a.theta());
  // Scaling guard: Newton-Schulz contracts when norm(1 - s^2 a) < 1. The l1
  // bound certifies that directly; when it cannot (2 tr(a) <= norm_l1(a) makes
  // it >= 1 for every s), fall back to the oracle's spectral range, which
  // certifies spectrum(1 - s^2 a) inside (-1, 1).
  double s = 1.0 / std::sqrt(norm_l1(a));
  if (norm_l1(sub(one, scale(s * s, a))) >= 1.0) {
    s = 1.0 / std::sqrt(1.05 * cert.lambda_max);
  }

  TorusElement y = TorusElement::unit(a.theta(), s);
  double residual = 0.0, best = 1e308;
  int stalled = 0;
  for (int it = 1; it <= kMaxFcIterations; ++it) {
    TorusElement y2 = truncate(mul(y, y), policy);
    residual = norm_l1(sub(mul(y2, a), one));
    if (residual <= tol) return {y, residual, it};
    if (!std::isfinite(residual) || residual > 1e6) break;
    if (residual < 0.9 * best) {
      best = residual;
      stalled = 0;
    } else if (residual < 0.5 && ++stalled >= 5) {
      break;
    }
    TorusElement ay2 = truncate(mul(a, y2), policy);
    y = truncate(mul(y, sub(scale(1.5, one), scale(0.5, ay2))), policy);
  }
  throw ConvergenceError("inv_sqrt: did not reach tol, last residual = " +
                             fmt_residual(residual),
                         residual);
}

FcResult exp_series(const TorusElement& h, double tol,
                    TruncationPolicy& policy) {
  if (tol <= 0) throw Error("exp_series: tol must be positive");
  if (!h.is_zero() && !is_self_adjoint(h, 1e-10)) {
    throw Error("exp_series: element is not self-adjoint");
  }
  const double nrm = norm_l1(h);
  int squarings = 0;
  if (nrm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm))) + 1;
  }
  TorusElement hs = scale(std::ldexp(1.0, -squarings), h);
  const TorusElement one = TorusElement::unit(h.theta());
  TorusElement term = one;
  TorusElement acc = one;
  // Growth after squaring is bounded by the running norm; keep the series
  // tail well below the requested tol.
  const double term_tol = tol * std::ldexp(1.0, -squarings - 2) /
                          std::max(1.0, std::exp(nrm));
  int it = 0;
  for (int k = 1; k <= 64; ++k) {
    term = truncate(scale(1.0 / k, mul(term, hs)), policy);
    acc = add(acc, term);
    ++it;
    if (norm_l1(term) < term_tol) break;
  }
  for (int k = 0; k < squarings; ++k) {
    acc = truncate(mul(acc, acc), policy);
    ++it;
  }
  TorusElement neg = scale(-1.0, h);
  // consistency residual exp(h) exp(-h) ~ 1, reported but not recomputed
  // against tol here; callers assert on it
  double residual = 0.0;
  {
    TorusElement hs2 = scale(std::ldexp(1.0, -squarings), neg);
    TorusElement t = one, a2 = one;
    for (int k = 1; k <= 64; ++k) {
      t = truncate(scale(1.0 / k, mul(t, hs2)), policy);
      a2 = add(a2, t);
      if (norm_l1(t) < term_tol) break;
    }
    for (int k = 0; k < squarings; ++k) a2 = truncate(mul(a2, a2), policy);
    residual = norm_l1(sub(mul(acc, a2), one));
  }
  return {acc, residual, it};
}

TorusElement circle_function(double theta,
                             const std::vector<double>& samples_of_f, int j,
                             int bandwidth) {
  if (j != 1 && j != 2) throw Error("circle_function: j must be 1 or 2");
  const int grid = static_cast<int>(samples_of_f.size());
  if (grid < 2 * bandwidth + 1) {
    throw Error("circle_function: grid size must be >= 2K+1");
  }
  for (double v : samples_of_f) {
    if (!(v > 0.0)) {
      throw PositivityError("circle_function: samples must be positive");
    }
  }
  TorusElement out(theta);
  const double step = 2.0 * std::numbers::pi / grid;
  for (int k = -bandwidth; k <= bandwidth; ++k) {
    Complex fhat(0.0);
    for (int g = 0; g < grid; ++g) {
      fhat += samples_of_f[g] * std::polar(1.0, -step * k * g);
    }
    fhat /= static_cast<double>(grid);
    if (std::abs(fhat) < 1e-15) continue;
    if (j == 1) {
      out.add_coeff(k, 0, fhat);
    } else {
      out.add_coeff(0, k, fhat);
    }
  }
  return out;
}

}  // namespace nct
