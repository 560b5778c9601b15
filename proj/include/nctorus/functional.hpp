#ifndef NCTORUS_FUNCTIONAL_HPP
#define NCTORUS_FUNCTIONAL_HPP

#include <vector>

#include "nctorus/element.hpp"
#include "nctorus/matrix_rep.hpp"

namespace nct {

// Value plus the certificate of what the iteration actually achieved.
struct FcResult {
  TorusElement value;
  double residual = 0.0;
  int iterations = 0;
};

inline constexpr double kDefaultFcTol = 1e-12;
inline constexpr int kMaxFcIterations = 200;
// Metrics whose oracle lambda_min falls at or below this are rejected.
inline constexpr double kMinCertifiedLambda = 1e-6;

// Newton-Hotelling inverse x <- x(2 - a x) for positive invertible a.
// Residual certificate: norm_l1(a * value - 1) <= tol.
FcResult invert(const TorusElement& a, double tol, TruncationPolicy& policy,
                int oracle_q = 101);

// Newton-Schulz inverse square root y <- y(3 - a y^2)/2.
// Residual certificate: norm_l1(value^2 * a - 1) <= tol.
FcResult inv_sqrt(const TorusElement& a, double tol, TruncationPolicy& policy,
                  int oracle_q = 101);

// Scaling-and-squaring exponential of a self-adjoint element.
FcResult exp_series(const TorusElement& h, double tol,
                    TruncationPolicy& policy);

// Sum_{|k|<=K} fhat(k) u_j^k from strictly positive samples of f on a
// uniform circle grid; self-adjoint for real samples.
TorusElement circle_function(double theta,
                             const std::vector<double>& samples_of_f, int j,
                             int bandwidth);

}  // namespace nct

#endif
