#ifndef RINGMODES_DYNAMICS_HPP
#define RINGMODES_DYNAMICS_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ringmodes/common.hpp"
#include "ringmodes/spectrum.hpp"

namespace ringmodes {

// Time-domain behaviour in the radiationless subspace. Amplitudes evolve
// mode by mode with complex frequency -shift - i*rate/2 (units of Gamma for
// rates, 1/Gamma for times); the constant global phase of the renormalized
// bare energy is dropped throughout.

struct AmplitudeTrajectory {
  std::vector<double> times;
  std::vector<std::vector<cplx>> site_amplitudes;  // [time][site]
  std::vector<double> survival;                    // sum |amplitude|^2
};

inline AmplitudeTrajectory propagate(const ModeSpectrum& spec,
                                     const std::vector<cplx>& initial,
                                     const std::vector<double>& times) {
  const std::size_t dim = std::size_t(spec.config.atom_count());
  if (initial.size() != dim)
    throw std::invalid_argument("propagate: initial state has wrong dimension");
  double nrm = 0.0;
  for (const auto& c : initial) nrm += std::norm(c);
  if (std::abs(nrm - 1.0) > 1e-8)
    throw std::invalid_argument("propagate: initial state must be normalized");

  // expansion coefficients over right modes via bilinear left projections
  std::vector<cplx> coeff(spec.modes.size());
  for (std::size_t p = 0; p < spec.modes.size(); ++p) {
    cplx acc(0.0, 0.0);
    for (std::size_t a = 0; a < dim; ++a) acc += spec.modes[p].left[a] * initial[a];
    coeff[p] = acc;
  }

  AmplitudeTrajectory out;
  out.times = times;
  out.site_amplitudes.resize(times.size());
  out.survival.resize(times.size());
  for (std::size_t it = 0; it < times.size(); ++it) {
    const double t = times[it];
    std::vector<cplx> amp(dim, cplx(0.0, 0.0));
    for (std::size_t p = 0; p < spec.modes.size(); ++p) {
      const auto& m = spec.modes[p];
      const cplx phase = std::exp(cplx(-0.5 * m.rate() * t, -m.shift() * t)) * coeff[p];
      for (std::size_t a = 0; a < dim; ++a) amp[a] += m.right[a] * phase;
    }
    double s = 0.0;
    for (const auto& c : amp) s += std::norm(c);
    out.site_amplitudes[it] = std::move(amp);
    out.survival[it] = s;
  }
  return out;
}

// default time grid: [0, 10/min rate of the p=0 block], clipped at 1e3
inline std::vector<double> default_time_grid(double rate_plus, double rate_minus,
                                             std::size_t steps = 400) {
  const double tmax =
      std::min(10.0 / std::max(std::min(rate_plus, rate_minus), 1e-12), 1e3);
  std::vector<double> t(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) t[i] = tmax * double(i) / double(steps);
  return t;
}

// threshold below which the beat is declared aperiodic (a level crossing)
inline constexpr double beat_crossing_threshold = 1e-6;

struct BeatResult {
  double omega_r;        // |shift(0+) - shift(0-)|
  double omega_direct;   // same frequency from Re sqrt(S^2 + 4 N M^2)/2
  double rate_plus;      // decay rate of the 0+ branch
  double rate_minus;
  double prefactor;      // |sin(theta) cos(theta)|^2
  bool crossing;         // omega_r below the aperiodic threshold
};

inline BeatResult beat_frequency(const RingConfig& config, const Kernel& kernel,
                                 double crossing_threshold = beat_crossing_threshold) {
  config.validate();
  if (!config.has_center)
    throw std::invalid_argument("beat_frequency: requires the central atom");
  const auto dist = build(config);
  const auto coupling = detail::coupling_by_offset(dist, kernel);
  const auto block = detail::p0_block(config.n_outer, config.radius, coupling, kernel);

  const cplx mu_pos = cplx(0.0, 1.0) + 0.5 * block.sum_m + 0.5 * block.disc;
  const cplx mu_neg = cplx(0.0, 1.0) + 0.5 * block.sum_m - 0.5 * block.disc;
  const double shift_pos = -0.5 * mu_pos.real(), shift_neg = -0.5 * mu_neg.real();

  BeatResult out;
  out.omega_r = std::abs(shift_pos - shift_neg);
  out.omega_direct = 0.5 * std::abs(std::sqrt(block.w).real());
  const bool pos_is_plus = mu_pos.real() <= mu_neg.real();
  out.rate_plus = pos_is_plus ? mu_pos.imag() : mu_neg.imag();
  out.rate_minus = pos_is_plus ? mu_neg.imag() : mu_pos.imag();
  const cplx sc = std::sin(block.theta) * std::cos(block.theta);
  out.prefactor = std::norm(sc);
  out.crossing = out.omega_r < crossing_threshold;
  return out;
}

// Transfer probability from the central-atom state to the uniform ring
// state: the closed damped-beat form
//   P(t) = |sin th cos th|^2 { e^{-G+ t} + e^{-G- t}
//                              - 2 e^{-(G+ + G-) t / 2} cos(w t) }
// Returns both P and P divided by the prefactor.
struct BeatProbability {
  BeatResult beat;
  std::vector<double> times;
  std::vector<double> p;
  std::vector<double> p_normalized;
};

inline BeatProbability beat_probability(const RingConfig& config, const Kernel& kernel,
                                        const std::vector<double>& times) {
  BeatProbability out;
  out.beat = beat_frequency(config, kernel);
  out.times = times;
  out.p.resize(times.size());
  out.p_normalized.resize(times.size());
  const double gp = out.beat.rate_plus, gm = out.beat.rate_minus;
  const double w = out.beat.omega_r;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const double bracket = std::exp(-gp * t) + std::exp(-gm * t) -
                           2.0 * std::exp(-0.5 * (gp + gm) * t) * std::cos(w * t);
    out.p_normalized[i] = bracket;
    out.p[i] = out.beat.prefactor * bracket;
  }
  return out;
}

}  // namespace ringmodes

#endif
