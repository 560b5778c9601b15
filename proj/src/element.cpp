#include "nctorus/element.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace nct {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

int TorusElement::support_radius() const {
  int r = 0;
  for (const auto& [key, c] : coeffs_) {
    r = std::max({r, std::abs(key.m), std::abs(key.n)});
  }
  return r;
}

void check_same_theta(const TorusElement& a, const TorusElement& b) {
  if (a.theta() != b.theta()) {
    throw ThetaMismatchError("theta mismatch between operands");
  }
}

TorusElement add(const TorusElement& a, const TorusElement& b) {
  check_same_theta(a, b);
  TorusElement out = a;
  for (const auto& [key, c] : b.coeffs()) {
    out.add_coeff(key.m, key.n, c);
  }
  return out;
}

TorusElement sub(const TorusElement& a, const TorusElement& b) {
  check_same_theta(a, b);
  TorusElement out = a;
  for (const auto& [key, c] : b.coeffs()) {
    out.add_coeff(key.m, key.n, -c);
  }
  return out;
}

TorusElement scale(Complex z, const TorusElement& a) {
  TorusElement out(a.theta());
  if (z == Complex(0.0)) return out;
  for (const auto& [key, c] : a.coeffs()) {
    out.set_coeff(key.m, key.n, z * c);
  }
  return out;
}

TorusElement mul(const TorusElement& a, const TorusElement& b) {
  check_same_theta(a, b);
  TorusElement out(a.theta());
  if (a.is_zero() || b.is_zero()) return out;

  struct Entry {
    int m, n;
    Complex c;
  };
  std::vector<Entry> ea, eb;
  ea.reserve(a.nnz());
  eb.reserve(b.nnz());
  int an_lo = 0, an_hi = 0, am_lo = 0, am_hi = 0;
  bool first = true;
  for (const auto& [key, c] : a.coeffs()) {
    ea.push_back({key.m, key.n, c});
    if (first) {
      am_lo = am_hi = key.m;
      an_lo = an_hi = key.n;
      first = false;
    } else {
      am_lo = std::min(am_lo, key.m);
      am_hi = std::max(am_hi, key.m);
      an_lo = std::min(an_lo, key.n);
      an_hi = std::max(an_hi, key.n);
    }
  }
  int bm_lo = 0, bm_hi = 0, bn_lo = 0, bn_hi = 0;
  first = true;
  for (const auto& [key, c] : b.coeffs()) {
    eb.push_back({key.m, key.n, c});
    if (first) {
      bm_lo = bm_hi = key.m;
      bn_lo = bn_hi = key.n;
      first = false;
    } else {
      bm_lo = std::min(bm_lo, key.m);
      bm_hi = std::max(bm_hi, key.m);
      bn_lo = std::min(bn_lo, key.n);
      bn_hi = std::max(bn_hi, key.n);
    }
  }

  // Phase table over (n of a, m of b): e^{-2 pi i theta n m'}.
  const int aw = an_hi - an_lo + 1;
  const int bw = bm_hi - bm_lo + 1;
  std::vector<Complex> phase(static_cast<std::size_t>(aw) * bw);
  for (int na = an_lo; na <= an_hi; ++na) {
    for (int mb = bm_lo; mb <= bm_hi; ++mb) {
      double arg = -kTwoPi * a.theta() * static_cast<double>(na) *
                   static_cast<double>(mb);
      phase[static_cast<std::size_t>(na - an_lo) * bw + (mb - bm_lo)] =
          std::polar(1.0, arg);
    }
  }

  // Dense accumulation over the Minkowski-sum bounding box.
  const int om_lo = am_lo + bm_lo, om_hi = am_hi + bm_hi;
  const int on_lo = an_lo + bn_lo, on_hi = an_hi + bn_hi;
  const std::size_t ow = static_cast<std::size_t>(on_hi - on_lo + 1);
  std::vector<Complex> acc(static_cast<std::size_t>(om_hi - om_lo + 1) * ow,
                           Complex(0.0));
  for (const Entry& pb : eb) {
    const Complex cb = pb.c;
    const std::size_t pcol = static_cast<std::size_t>(pb.m - bm_lo);
    for (const Entry& pa : ea) {
      const Complex ph =
          phase[static_cast<std::size_t>(pa.n - an_lo) * bw + pcol];
      acc[static_cast<std::size_t>(pa.m + pb.m - om_lo) * ow +
          (pa.n + pb.n - on_lo)] += pa.c * cb * ph;
    }
  }

  for (int m = om_lo; m <= om_hi; ++m) {
    for (int n = on_lo; n <= on_hi; ++n) {
      const Complex c =
          acc[static_cast<std::size_t>(m - om_lo) * ow + (n - on_lo)];
      if (std::abs(c) >= kDenormalGuard) out.set_coeff(m, n, c);
    }
  }
  return out;
}

TorusElement star(const TorusElement& a) {
  TorusElement out(a.theta());
  for (const auto& [key, c] : a.coeffs()) {
    double arg = -kTwoPi * a.theta() * static_cast<double>(key.m) *
                 static_cast<double>(key.n);
    out.set_coeff(-key.m, -key.n, std::conj(c) * std::polar(1.0, arg));
  }
  return out;
}

TorusElement derive(int j, const TorusElement& a) {
  if (j != 1 && j != 2) {
    throw Error("derive: direction index must be 1 or 2");
  }
  TorusElement out(a.theta());
  for (const auto& [key, c] : a.coeffs()) {
    int k = (j == 1) ? key.m : key.n;
    if (k == 0) continue;
    out.set_coeff(key.m, key.n, Complex(0.0, kTwoPi * k) * c);
  }
  return out;
}

Complex trace(const TorusElement& a) { return a.coeff(0, 0); }

double norm_l1(const TorusElement& a) {
  double s = 0.0;
  for (const auto& [key, c] : a.coeffs()) s += std::abs(c);
  return s;
}

TorusElement truncate(const TorusElement& a, TruncationPolicy& policy) {
  TorusElement out(a.theta());
  for (const auto& [key, c] : a.coeffs()) {
    if (std::max(std::abs(key.m), std::abs(key.n)) <= policy.radius) {
      out.set_coeff(key.m, key.n, c);
    } else {
      policy.tail_mass += std::abs(c);
    }
  }
  return out;
}

double l1_distance(const TorusElement& a, const TorusElement& b) {
  return norm_l1(sub(a, b));
}

bool is_self_adjoint(const TorusElement& a, double tol) {
  return l1_distance(a, star(a)) <= tol * std::max(1.0, norm_l1(a));
}

}  // namespace nct
