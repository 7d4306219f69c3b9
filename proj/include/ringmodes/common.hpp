#ifndef RINGMODES_COMMON_HPP
#define RINGMODES_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace ringmodes {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// Everything in the library is dimensionless: lengths in units of the
// transition wavelength, dimensionless separations X = 2*pi*(length),
// rates in units of the single-atom decay rate, shifts likewise.

// Raised when adaptive quadrature cannot meet the requested tolerance
// within its subdivision budget.
class QuadratureError : public std::runtime_error {
public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the dense eigensolver exceeds its iteration budget or a
// residual check fails.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when branch continuation over a radius grid cannot decide the
// assignment (grid too coarse).
class TrackingError : public std::runtime_error {
public:
  explicit TrackingError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ringmodes

#endif
