#pragma once

// Independent reference evaluations for the tests. Nothing here calls into
// the library: the breather is re-evaluated literally from G, F, M and N in
// 50-digit arithmetic (no rescaling needed, the exponent range is huge), and
// derivatives come from Richardson-extrapolated central differences.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <functional>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

struct Breather {
  Real alpha, beta, mu, x1, x2;
  // Phase speeds. The Gardner convention adds 30 mu^4 to both printed
  // polynomials; `published` keeps them as printed.
  bool published = false;

  Real delta() const { return alpha * alpha + beta * beta - 4 * mu * mu; }

  Real delta5() const {
    const Real a2 = alpha * alpha, b2 = beta * beta, m2 = mu * mu;
    Real v = -a2 * a2 + 10 * a2 * b2 - 5 * b2 * b2 + 10 * (a2 - 3 * b2) * m2 - 30 * m2 * m2;
    return published ? v : v + 30 * m2 * m2;
  }
  Real gamma5() const {
    const Real a2 = alpha * alpha, b2 = beta * beta, m2 = mu * mu;
    Real v = -b2 * b2 + 10 * a2 * b2 - 5 * a2 * a2 + 10 * (3 * a2 - b2) * m2 - 30 * m2 * m2;
    return published ? v : v + 30 * m2 * m2;
  }

  struct Parts {
    Real g, f, gx, fx, m, n;
  };

  Parts parts(const Real& t, const Real& x) const {
    using boost::multiprecision::cosh;
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    using boost::multiprecision::sinh;
    using boost::multiprecision::sqrt;
    const Real y1 = x + delta5() * t + x1;
    const Real y2 = x + gamma5() * t + x2;
    const Real r = sqrt(alpha * alpha + beta * beta);
    const Real sd = sqrt(delta());
    const Real s = sin(alpha * y1), c = cos(alpha * y1);
    const Real ch = cosh(beta * y2), sh = sinh(beta * y2);

    Parts p;
    p.g = beta * r / (alpha * sd) * s - 2 * mu * beta * (ch + sh) / delta();
    p.f = ch - 2 * mu * beta * (alpha * c - beta * s) / (alpha * r * sd);
    p.gx = beta * r / sd * c - 2 * mu * beta * beta * (ch + sh) / delta();
    p.fx = beta * sh + 2 * mu * beta * (alpha * s + beta * c) / (r * sd);
    p.n = p.f * p.f + p.g * p.g;
    // M as printed: first bracket times F minus second bracket times G.
    p.m = (beta * r / sd * c - 2 * mu * beta * beta * (ch + sh) / delta()) * p.f -
          (beta * sh + 2 * mu * beta * (alpha * s + beta * c) / (r * sd)) * p.g;
    return p;
  }

  /// 2 M / N.
  Real rational(const Real& t, const Real& x) const {
    const Parts p = parts(t, x);
    return 2 * p.m / p.n;
  }

  /// 2 d/dx arctan(G/F) = 2 (G_x F - G F_x) / (F^2 + G^2), with G_x and F_x
  /// differentiated by hand from G and F.
  Real arctan_derivative(const Real& t, const Real& x) const {
    const Parts p = parts(t, x);
    return 2 * (p.gx * p.f - p.g * p.fx) / p.n;
  }
};

inline Breather make(double alpha, double beta, double mu, double x1 = 0, double x2 = 0,
                     bool published = false) {
  return {Real(alpha), Real(beta), Real(mu), Real(x1), Real(x2), published};
}

/// Fourth-order central difference at steps h and h/2 combined by Richardson
/// extrapolation (sixth order overall).
inline double richardson_derivative(const std::function<double(double)>& f, double x,
                                    double h) {
  auto d4 = [&](double s) {
    return (-f(x + 2 * s) + 8 * f(x + s) - 8 * f(x - s) + f(x - 2 * s)) / (12 * s);
  };
  return (16 * d4(h / 2) - d4(h)) / 15;
}

}  // namespace oracle
