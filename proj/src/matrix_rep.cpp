#include "nctorus/matrix_rep.hpp"

#include <cmath>
#include <numbers>

namespace nct {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

MatrixRep build(const TorusElement& a, int p, int q) {
  MatrixRep rep{q, p, Eigen::MatrixXcd::Zero(q, q)};
  const double w = kTwoPi * static_cast<double>(p) / static_cast<double>(q);
  // u1^m u2^n maps e_c -> w^{m (c+n)} e_{c+n}; fill row r = c+n directly.
  for (const auto& [key, c] : a.coeffs()) {
    for (int r = 0; r < q; ++r) {
      int col = ((r - key.n) % q + q) % q;
      rep.data(r, col) += c * std::polar(1.0, w * key.m * r);
    }
  }
  return rep;
}

}  // namespace

MatrixRep represent(const TorusElement& a, int q) {
  if (q <= 0) throw Error("represent: q must be positive");
  const double pq = a.theta() * q;
  const int p = static_cast<int>(std::lround(pq));
  if (std::abs(pq - p) > 1e-9) {
    throw Error("represent: theta is not p/q for the requested q");
  }
  if (2 * a.support_radius() >= q) {
    throw Error("represent: support too large for q (trace would alias)");
  }
  return build(a, p, q);
}

MatrixRep represent_nearest(const TorusElement& a, int q) {
  if (q <= 0) throw Error("represent_nearest: q must be positive");
  if (2 * a.support_radius() >= q) {
    throw Error("represent_nearest: support too large for q");
  }
  const int p = static_cast<int>(std::lround(a.theta() * q));
  return build(a, p, q);
}

std::pair<double, double> spectral_bounds(const MatrixRep& rep) {
  const double defect = (rep.data - rep.data.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    throw Error("spectral_bounds: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      rep.data, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

SpectralCertificate certify_positive(const TorusElement& a, int q) {
  int radius = a.support_radius();
  if (2 * radius >= q) q = 2 * radius + 3;
  const double pq = a.theta() * q;
  const int p = static_cast<int>(std::lround(pq));
  const bool exact = std::abs(pq - p) <= 1e-9;
  MatrixRep rep = build(a, p, q);
  // At the nearest p/q a self-adjoint element need not map to an exactly
  // Hermitian matrix; certify on the Hermitian part.
  if (!exact) rep.data = 0.5 * (rep.data + rep.data.adjoint().eval());
  auto [lo, hi] = spectral_bounds(rep);
  return {lo, hi, p, q, exact};
}

}  // namespace nct
