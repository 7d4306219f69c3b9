#ifndef RINGMODES_TRAPPING_HPP
#define RINGMODES_TRAPPING_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringmodes/common.hpp"
#include "ringmodes/geometry.hpp"
#include "ringmodes/spectrum.hpp"

namespace ringmodes {

// Photon-trapping scan: at fixed radius, sweep the number of ring atoms,
// record the minimal decay rate, and fit the exponential suppression law
// -ln(Gamma_min/Gamma) ~ s(r) (N - N_hat) past the critical atom number.
//
// Fit windowing: beyond the knee the suppression exponent keeps steepening,
// and from roughly -ln ~ 33 the cosine sums hit the double-precision noise
// floor (the rate is a cancellation of O(1) terms down to ~1e-15). The
// least-squares line is therefore fitted over the onset window
// supercritical points with -ln(gamma) <= onset_cap, and points at or
// below the noise floor are excluded and flagged.

inline constexpr double supercritical_nn = 0.45;  // chord threshold, wavelengths
inline constexpr double onset_cap = 12.0;         // -ln window for the line fit
inline constexpr double rate_noise_floor = 1e-12; // below this the sum is noise

struct TrapEntry {
  int n;
  double gamma_min;
  std::string p_min;
  double nn_exact;
  double nn_approx;
};

struct TrapFit {
  double slope = 0.0;
  double intercept = 0.0;
  double n_hat = 0.0;
  double rms_residual = 0.0;     // about the fitted line, onset window
  double plateau_level = 0.0;    // median -ln over pre-critical points
  std::vector<int> fit_n;        // points used by the line fit
  std::vector<int> noise_floor_n;  // supercritical points lost to fp noise
};

struct TrapScan {
  double radius;
  std::vector<TrapEntry> entries;
  TrapFit fit;
};

namespace detail {

inline TrapFit knee_fit(const std::vector<TrapEntry>& entries) {
  std::vector<double> xs, ys, pre;
  TrapFit fit;
  for (const auto& e : entries) {
    if (e.nn_exact > supercritical_nn) {
      if (e.gamma_min > 0.0) pre.push_back(-std::log(e.gamma_min));
      continue;
    }
    if (!(e.gamma_min > rate_noise_floor)) {
      fit.noise_floor_n.push_back(e.n);
      continue;
    }
    const double y = -std::log(e.gamma_min);
    if (y > onset_cap) continue;
    xs.push_back(double(e.n));
    ys.push_back(y);
    fit.fit_n.push_back(e.n);
  }
  if (xs.size() < 5)
    throw std::runtime_error("trap scan: fewer than 5 usable supercritical points");
  if (pre.empty())
    throw std::runtime_error("trap scan: no pre-critical points for the plateau level");

  const double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);

  std::sort(pre.begin(), pre.end());
  fit.plateau_level = pre.size() % 2 ? pre[pre.size() / 2]
                                     : 0.5 * (pre[pre.size() / 2 - 1] + pre[pre.size() / 2]);
  fit.n_hat = (fit.plateau_level - fit.intercept) / fit.slope;
  return fit;
}

}  // namespace detail

inline TrapScan scan(double radius, int n_lo, int n_hi, const Kernel& kernel,
                     int n_cap = 200) {
  if (!(radius > 0.0)) throw std::invalid_argument("trap scan: radius must be > 0");
  if (n_lo < 2 || n_hi < n_lo) throw std::invalid_argument("trap scan: bad N range");
  if (n_hi > n_cap)
    throw std::invalid_argument("trap scan: N range exceeds the cap " +
                                std::to_string(n_cap));
  TrapScan out;
  out.radius = radius;
  out.entries.reserve(std::size_t(n_hi - n_lo + 1));
  for (int n = n_lo; n <= n_hi; ++n) {
    const RingConfig cfg{n, radius, false};
    const auto mr = min_rate(cfg, kernel);
    const auto nn = nn_distance(cfg);
    out.entries.push_back({n, mr.gamma_min, mr.p_label, nn.exact, nn.approx});
  }
  out.fit = detail::knee_fit(out.entries);
  return out;
}

struct SlopePoint {
  double radius;
  double slope;
  double n_hat;
};

inline std::vector<SlopePoint> slope_vs_radius(const std::vector<double>& radii,
                                               int n_lo, int n_hi,
                                               const Kernel& kernel) {
  std::vector<SlopePoint> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const auto s = scan(r, n_lo, n_hi, kernel);
    out.push_back({r, s.fit.slope, s.fit.n_hat});
  }
  return out;
}

}  // namespace ringmodes

#endif
