#ifndef NCTORUS_MATRIX_REP_HPP
#define NCTORUS_MATRIX_REP_HPP

#include <Eigen/Dense>
#include <utility>

#include "nctorus/element.hpp"

namespace nct {

// Clock-and-shift image of a TorusElement at rational theta = p/q.
// U1 = diag(w^0, ..., w^{q-1}), U2 = cyclic shift, w = e^{2 pi i p / q},
// so U1 U2 = w U2 U1.
struct MatrixRep {
  int q = 0;
  int p = 0;
  Eigen::MatrixXcd data;
};

// Positivity certificate from the finite model. For irrational theta the
// nearest p/q is used and `exact` is false (heuristic certificate).
struct SpectralCertificate {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int p = 0;
  int q = 0;
  bool exact = false;
};

// Requires a.theta = p/q exactly (up to rounding 1e-9) and support
// max(|m|,|n|) < q/2 so the normalized matrix trace matches the trace.
MatrixRep represent(const TorusElement& a, int q);

// Same construction with the phases taken from the nearest p/q regardless
// of a.theta; the heuristic path behind certify_positive.
MatrixRep represent_nearest(const TorusElement& a, int q);

// Eigenvalue range of a Hermitian representative; rejects inputs that are
// not Hermitian to 1e-10.
std::pair<double, double> spectral_bounds(const MatrixRep& rep);

// Certifies lambda_min > 0 for a self-adjoint element via the finite model.
// q is bumped automatically if the support does not fit.
SpectralCertificate certify_positive(const TorusElement& a, int q = 101);

}  // namespace nct

#endif
