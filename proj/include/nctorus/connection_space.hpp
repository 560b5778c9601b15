#ifndef NCTORUS_CONNECTION_SPACE_HPP
#define NCTORUS_CONNECTION_SPACE_HPP

#include <optional>
#include <vector>

#include "nctorus/algebra_matrix.hpp"
#include "nctorus/element.hpp"
#include "nctorus/geometry.hpp"

namespace nct {

// Skew-adjoint trace-zero representative of an inner *-derivation ad_a.
struct InnerDerivation {
  TorusElement a_tilde;

  double theta() const { return a_tilde.theta(); }
};

// a must be skew-adjoint modulo scalars (a + a* in C); returns the unique
// trace-zero representative a - tau(a).
InnerDerivation normalize_inner(const TorusElement& a);

// ad(b) = [a_tilde, b].
TorusElement ad_apply(const InnerDerivation& d, const TorusElement& b);

struct KernelCheck {
  bool ok = false;
  double residual = 0.0;
};

// Membership residual for ker(* + Ad_gamma^{-1}): norm of nu* + g^{-1} nu g.
KernelCheck mu_kernel_check(const AlgebraMatrix& nu, const Metric& metric,
                            double tol, TruncationPolicy& policy,
                            int oracle_q = 101);

// i f(gamma) for a real polynomial f (coefficients low to high); lies in the
// kernel above by construction.
AlgebraMatrix make_commutant_mu(const std::vector<double>& poly_coeffs,
                                const Metric& metric,
                                TruncationPolicy& policy);

// R-linear map on the span of a finite family of inner derivations, with
// values in M2(A). Elements outside the span are rejected, never
// zero-extended.
class MuMap {
 public:
  void add(InnerDerivation basis, AlgebraMatrix value);
  std::size_t size() const { return basis_.size(); }
  const InnerDerivation& basis(std::size_t i) const { return basis_[i]; }
  const AlgebraMatrix& value(std::size_t i) const { return values_[i]; }

  // Real coordinates of d in the span, or nullopt when the least-squares
  // residual exceeds tol.
  std::optional<std::vector<double>> decompose(const InnerDerivation& d,
                                               double tol = 1e-9) const;

  // Throws SpanError when d is outside the span.
  AlgebraMatrix apply(const InnerDerivation& d) const;

 private:
  std::vector<InnerDerivation> basis_;
  std::vector<AlgebraMatrix> values_;
};

// l1 norm of ad_a<X,Y> - <aX + X mu(a), Y> - <X, aY + Y mu(a)>; vanishes for
// every mu with values in ker(* + Ad_gamma^{-1}).
double perturbed_compatibility_check(const Metric& metric, const MuMap& mu,
                                     const InnerDerivation& d,
                                     const ModuleVector& x,
                                     const ModuleVector& y,
                                     TruncationPolicy& policy);

// Curvature R(ad_a, ad_b) of the perturbed connection, as a matrix under the
// row-vector/right-multiplication identification of End(chi):
// [mu(a), mu(b)] - mu([b, a]). Zero iff mu respects the bracket on the pair.
AlgebraMatrix inner_curvature(const Metric& metric, const MuMap& mu,
                              const InnerDerivation& a_t,
                              const InnerDerivation& b_t);

// Same curvature evaluated operationally on the module basis (test
// cross-path for inner_curvature).
AlgebraMatrix inner_curvature_operational(const Metric& metric,
                                          const MuMap& mu,
                                          const InnerDerivation& a_t,
                                          const InnerDerivation& b_t,
                                          TruncationPolicy& policy);

// R(ad_a, d_j) = [nabla_j, mu(a)] - mu(d_j a), assembled by evaluating on
// the module basis.
AlgebraMatrix general_inner_curvature(const Metric& metric, const MuMap& mu,
                                      const InnerDerivation& a_t, int j,
                                      double tol, TruncationPolicy& policy,
                                      int oracle_q = 101);

}  // namespace nct

#endif
