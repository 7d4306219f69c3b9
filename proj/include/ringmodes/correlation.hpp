#ifndef RINGMODES_CORRELATION_HPP
#define RINGMODES_CORRELATION_HPP

#include <cmath>
#include <stdexcept>

#include "ringmodes/common.hpp"
#include "ringmodes/quadrature.hpp"

namespace ringmodes {

// Scalar radiative correlation functions of the dimensionless interatomic
// separation X = 2*pi * (distance / wavelength), for parallel dipoles:
//
//   d1(X)  -- pair decay kernel, bounded by its X->0 limit of 1
//   s(X)   -- pair shift kernel; diverges like -3/(4 X^3) as X->0
//   M(X) = s(X) + i*d1(X), the complex channel coupling
//
// The exact shift carries a principal-value style integral
//   I(X) = int_0^inf du e^-u (1+u+u^2)/(u^2+X^2),
// evaluated by adaptive quadrature; a closed-form approximation of I is
// available as s_approx. Near X=0 the closed forms cancel catastrophically,
// so both d1 and the oscillatory part of s switch to series below
// `series_switchover`. The switchover sits where series and closed form are
// both accurate to well below 1e-12, keeping the function continuous there
// at that level.

inline constexpr double series_switchover = 0.1;

// X->0 limit of d1 (never reached by pair evaluations; exposed for tests).
inline constexpr double d1_zero_limit = 1.0;

namespace detail {

inline double d1_series(double x) {
  const double x2 = x * x;
  return 1.0 + x2 * (-1.0 / 5.0 +
                     x2 * (3.0 / 280.0 +
                           x2 * (-1.0 / 3780.0 + x2 * (1.0 / 266112.0))));
}

inline double d1_closed(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return 1.5 * (s / x + c / (x * x) - s / (x * x * x));
}

// cos X/X - sin X/X^2 - cos X/X^3, the oscillatory part of s.
inline double osc_series(double x) {
  const double x2 = x * x;
  const double poly =
      -3.0 / 8.0 +
      x2 * (5.0 / 144.0 + x2 * (-7.0 / 5760.0 + x2 * (1.0 / 44800.0)));
  return -1.0 / (x * x * x) + 0.5 / x + x * poly;
}

inline double osc_closed(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return c / x - s / (x * x) - c / (x * x * x);
}

inline double osc_part(double x) {
  return x < series_switchover ? osc_series(x) : osc_closed(x);
}

inline void require_positive(double x, const char* who) {
  if (!(x > 0.0))
    throw std::domain_error(std::string(who) + ": separation must be > 0");
}

}  // namespace detail

inline double d1(double x) {
  detail::require_positive(x, "d1");
  return x < series_switchover ? detail::d1_series(x) : detail::d1_closed(x);
}

// Integral part of the exact shift. The integrand is peaked at u ~ 0 with
// width ~x and decays like e^-u, so the domain is split at max(10x, 10) and
// the tail is mapped onto (0,1] with u = u0 - ln t (the mapped integrand
// tends smoothly to e^-u0).
inline double shift_integral(double x, double tol = 1e-12) {
  detail::require_positive(x, "shift_integral");
  const double x2 = x * x;
  const double u0 = std::max(10.0 * x, 10.0);
  auto body = [x2](double u) {
    return std::exp(-u) * (1.0 + u * (1.0 + u)) / (u * u + x2);
  };
  auto tail = [x2, u0](double t) {
    const double u = u0 - std::log(t);
    return std::exp(-u0) * (1.0 + u * (1.0 + u)) / (u * u + x2);
  };
  return integrate_adaptive(body, 0.0, u0, 0.5 * tol) +
         integrate_adaptive(tail, 0.0, 1.0, 0.5 * tol);
}

inline double s_exact(double x, double tol = 1e-12) {
  detail::require_positive(x, "s_exact");
  if (!(tol > 0.0)) throw std::domain_error("s_exact: tol must be > 0");
  return 1.5 * (detail::osc_part(x) + shift_integral(x, tol) / (pi * x * x));
}

inline double s_approx(double x) {
  detail::require_positive(x, "s_approx");
  const double x2 = x * x;
  const double bracket = (1.0 - x2) / x * std::atan(1.0 / x) + 1.0 +
                         0.5 * std::log((1.0 + x2) / x2);
  return 1.5 * (detail::osc_part(x) + bracket / (pi * x * x));
}

struct KernelValue {
  double d1;
  double s;
  cplx m;  // s + i*d1
};

// Kernel evaluation policy: exact shift (quadrature, absolute tolerance
// `tol`) or the closed-form approximation.
struct Kernel {
  enum class Mode { exact, approx };
  Mode mode = Mode::exact;
  double tol = 1e-12;

  static Kernel exact(double tol = 1e-12) { return {Mode::exact, tol}; }
  static Kernel approx() { return {Mode::approx, 0.0}; }

  KernelValue operator()(double x) const {
    const double d = d1(x);
    const double s = mode == Mode::exact ? s_exact(x, tol) : s_approx(x);
    return {d, s, cplx(s, d)};
  }

  cplx m(double x) const { return (*this)(x).m; }
};

}  // namespace ringmodes

#endif
