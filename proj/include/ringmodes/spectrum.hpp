#ifndef RINGMODES_SPECTRUM_HPP
#define RINGMODES_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ringmodes/common.hpp"
#include "ringmodes/correlation.hpp"
#include "ringmodes/geometry.hpp"

namespace ringmodes {

// Analytic diagonalization of the non-Hermitian channel matrix on the Z_N
// carrier spaces. Eigenvalue conventions:
//
//   mu_p = i + sum_{A=2}^N M(2 pi R_1A) cos(2 pi p (A-1) / N)   (ring)
//   shift = -Re(mu)/2,  rate = Im(mu)      (units of the single-atom rate)
//
// With a central atom the p=0 carrier space is two-dimensional; its block
// eigenvalues are mu_{0 pm} = i + S/2 pm sqrt(S^2 + 4 N M^2(2 pi r))/2 with
// S the ring row sum, and the mixing angle is the principal complex arctan
// of the coefficient c relating the uniform ring state and the central
// state. All trigonometric factors are drawn from canonicalized tables so
// that mu_{N-p} == mu_p holds bitwise and the reflection cancellation of
// sine sums is exact.

enum class BranchTag { ring, zero_plus, zero_minus };

struct Mode {
  int p = 0;
  BranchTag branch = BranchTag::ring;
  cplx mu{};
  std::vector<cplx> right;  // site coefficients, outer atoms 1..N then z
  std::vector<cplx> left;   // bilinear duals: left . right = delta

  double shift() const { return -0.5 * mu.real(); }
  double rate() const { return mu.imag(); }
  std::string label() const {
    switch (branch) {
      case BranchTag::zero_plus: return "0+";
      case BranchTag::zero_minus: return "0-";
      default: return std::to_string(p);
    }
  }
};

struct ModeSpectrum {
  RingConfig config;
  std::vector<Mode> modes;
  // set when the p=0 block of configuration (a) is close to a defective
  // point (the two block eigenvectors nearly coalesce)
  bool near_defective_p0 = false;

  const Mode& by_label(const std::string& lab) const {
    for (const auto& m : modes)
      if (m.label() == lab) return m;
    throw std::invalid_argument("ModeSpectrum: no mode labelled " + lab);
  }
};

namespace detail {

// cos(2 pi m / N) with the index folded so table[m] == table[N-m] bitwise
inline std::vector<double> cos_table(int n) {
  std::vector<double> t(n);
  for (int m = 0; m < n; ++m) {
    const int mf = std::min(m, n - m);
    t[m] = std::cos(two_pi * mf / n);
  }
  return t;
}

// sin(2 pi m / N) canonicalized: exact zeros at m=0 and 2m=N, and
// table[N-m] == -table[m] bitwise
inline std::vector<double> sin_table(int n) {
  std::vector<double> t(n, 0.0);
  for (int m = 1; m < n; ++m) {
    if (2 * m == n) continue;
    const int mf = std::min(m, n - m);
    const double v = std::sin(two_pi * mf / n);
    t[m] = (m <= n / 2) ? v : -v;
  }
  return t;
}

// M(2 pi chord_j) for offsets j = 1..N-1 (index 0 unused)
inline std::vector<cplx> coupling_by_offset(const DistanceTable& dist,
                                            const Kernel& kernel) {
  std::vector<cplx> m(dist.n_outer, cplx(0.0, 0.0));
  for (int j = 1; j < dist.n_outer; ++j) {
    if (2 * j <= dist.n_outer)
      m[j] = kernel.m(two_pi * dist.chord_by_offset[j]);
    else
      m[j] = m[dist.n_outer - j];  // reuse the folded chord evaluation
  }
  return m;
}

inline cplx ring_mu(int n, int p, const std::vector<cplx>& coupling,
                    const std::vector<double>& cosv) {
  cplx acc(0.0, 1.0);
  for (int j = 1; j < n; ++j) acc += coupling[j] * cosv[(std::size_t(p) * j) % n];
  return acc;
}

inline std::vector<cplx> fourier_right(int n, int p, int dim) {
  std::vector<cplx> v(dim, cplx(0.0, 0.0));
  const double norm = 1.0 / std::sqrt(double(n));
  for (int a = 1; a <= n; ++a)
    v[a - 1] = std::polar(norm, two_pi * double((std::size_t(p) * a) % n) / n);
  return v;
}

struct P0Block {
  cplx sum_m;      // sum over the ring row couplings
  cplx m_center;   // M(2 pi r)
  cplx w;          // sum_m^2 + 4 N m_center^2, the discriminant
  cplx disc;       // principal sqrt(w)
  cplx theta;      // complex mixing angle, principal arctan
};

inline P0Block p0_block(int n, double radius, const std::vector<cplx>& coupling,
                        const Kernel& kernel) {
  P0Block b;
  b.sum_m = cplx(0.0, 0.0);
  for (int j = 1; j < n; ++j) b.sum_m += coupling[j];
  b.m_center = kernel.m(two_pi * radius);
  b.w = b.sum_m * b.sum_m + 4.0 * double(n) * b.m_center * b.m_center;
  b.disc = std::sqrt(b.w);
  // mixing coefficient c = 2 sqrt(N) M / (sum + disc); use the algebraically
  // equal form (disc - sum)/(2 sqrt(N) M) when the denominator cancels
  const double rn = std::sqrt(double(n));
  cplx c;
  if (std::abs(b.sum_m + b.disc) >= std::abs(2.0 * rn * b.m_center))
    c = 2.0 * rn * b.m_center / (b.sum_m + b.disc);
  else
    c = (b.disc - b.sum_m) / (2.0 * rn * b.m_center);
  b.theta = std::atan(c);
  return b;
}

}  // namespace detail

inline ModeSpectrum eigen_ring(const RingConfig& config, const Kernel& kernel) {
  config.validate();
  if (config.has_center)
    throw std::invalid_argument("eigen_ring: configuration must have no central atom");
  const int n = config.n_outer;
  const auto dist = build(config);
  const auto coupling = detail::coupling_by_offset(dist, kernel);
  const auto cosv = detail::cos_table(n);

  ModeSpectrum spec{config, {}, false};
  spec.modes.reserve(n);
  for (int p = 0; p < n; ++p) {
    Mode m;
    m.p = p;
    m.mu = detail::ring_mu(n, p, coupling, cosv);
    m.right = detail::fourier_right(n, p, n);
    m.left.resize(n);
    for (int a = 0; a < n; ++a) m.left[a] = std::conj(m.right[a]);
    spec.modes.push_back(std::move(m));
  }
  return spec;
}

// threshold on |disc| relative to the block scale below which the two p=0
// eigenvectors are flagged as nearly bilinear-degenerate
inline constexpr double near_defective_threshold = 1e-8;

inline ModeSpectrum eigen_center(const RingConfig& config, const Kernel& kernel) {
  config.validate();
  if (!config.has_center)
    throw std::invalid_argument("eigen_center: configuration must have a central atom");
  const int n = config.n_outer;
  const int dim = n + 1;
  const auto dist = build(config);
  const auto coupling = detail::coupling_by_offset(dist, kernel);
  const auto cosv = detail::cos_table(n);
  const auto block = detail::p0_block(n, config.radius, coupling, kernel);

  ModeSpectrum spec{config, {}, false};
  spec.modes.reserve(dim);

  const cplx mu_pos = cplx(0.0, 1.0) + 0.5 * block.sum_m + 0.5 * block.disc;
  const cplx mu_neg = cplx(0.0, 1.0) + 0.5 * block.sum_m - 0.5 * block.disc;
  const cplx ct = std::cos(block.theta), st = std::sin(block.theta);
  const double norm = 1.0 / std::sqrt(double(n));

  auto make_p0 = [&](cplx mu, cplx outer, cplx center) {
    Mode m;
    m.mu = mu;
    m.right.assign(dim, outer * norm);
    m.right[n] = center;
    m.left = m.right;  // the block basis is real, so the bilinear dual is the transpose
    return m;
  };

  // the +disc root belongs to (cos, sin), the -disc root to (-sin, cos);
  // the 0+ label goes to the larger-shift branch (smaller Re mu), which at
  // small radii coincides with the branch whose shift diverges to +infinity
  Mode plus_root = make_p0(mu_pos, ct, st);
  Mode minus_root = make_p0(mu_neg, -st, ct);
  if (mu_pos.real() > mu_neg.real()) std::swap(plus_root, minus_root);
  plus_root.branch = BranchTag::zero_plus;
  minus_root.branch = BranchTag::zero_minus;
  spec.modes.push_back(std::move(plus_root));
  spec.modes.push_back(std::move(minus_root));

  const double block_scale =
      std::abs(block.sum_m) + 2.0 * std::sqrt(double(n)) * std::abs(block.m_center);
  spec.near_defective_p0 =
      std::abs(block.disc) < near_defective_threshold * std::max(block_scale, 1.0);

  for (int p = 1; p < n; ++p) {
    Mode m;
    m.p = p;
    m.mu = detail::ring_mu(n, p, coupling, cosv);
    m.right = detail::fourier_right(n, p, dim);  // central amplitude exactly 0
    m.left.assign(dim, cplx(0.0, 0.0));
    for (int a = 0; a < n; ++a) m.left[a] = std::conj(m.right[a]);
    spec.modes.push_back(std::move(m));
  }
  return spec;
}

inline ModeSpectrum eigen(const RingConfig& config, const Kernel& kernel) {
  return config.has_center ? eigen_center(config, kernel) : eigen_ring(config, kernel);
}

// sum_{A=2}^N F(R_1A) sin(2 pi p (A-1) / N); vanishes for every F by the
// reflection symmetry of the chords
inline double sine_sum_check(const RingConfig& config, int p,
                             const std::function<double(double)>& f) {
  const auto dist = build(config);
  const int n = config.n_outer;
  const auto sinv = detail::sin_table(n);
  double acc = 0.0;
  for (int j = 1; j < n; ++j) {
    const double sv = sinv[(std::size_t(std::abs(p)) * j) % n];
    if (sv != 0.0) acc += f(dist.chord_by_offset[j]) * sv;
  }
  return p < 0 ? -acc : acc;  // sin is odd in p
}

struct DegeneracyClasses {
  // symmetry classes by mode label, in spectrum order
  std::vector<std::vector<std::string>> classes;
  // pairs of labels from different classes whose eigenvalues coincide
  // within tol (reported, never merged)
  std::vector<std::pair<std::string, std::string>> accidental;
  double tol = 1e-12;
};

inline DegeneracyClasses degeneracy_classes(const ModeSpectrum& spec,
                                            double tol = 1e-12) {
  const int n = spec.config.n_outer;
  DegeneracyClasses out;
  out.tol = tol;

  if (spec.config.has_center) {
    out.classes.push_back({"0+"});
    out.classes.push_back({"0-"});
  } else {
    out.classes.push_back({"0"});
  }
  for (int p = 1; 2 * p < n; ++p)
    out.classes.push_back({std::to_string(p), std::to_string(n - p)});
  if (n % 2 == 0) out.classes.push_back({std::to_string(n / 2)});

  // verify internal degeneracy and scan for accidental cross-class ties
  std::vector<cplx> rep;
  for (const auto& cls : out.classes) {
    const cplx mu0 = spec.by_label(cls.front()).mu;
    for (const auto& lab : cls)
      if (std::abs(spec.by_label(lab).mu - mu0) > tol)
        throw std::logic_error("degeneracy_classes: symmetry class not degenerate");
    rep.push_back(mu0);
  }
  for (std::size_t i = 0; i < rep.size(); ++i)
    for (std::size_t j = i + 1; j < rep.size(); ++j)
      if (std::abs(rep[i] - rep[j]) <= tol)
        out.accidental.emplace_back(out.classes[i].front(), out.classes[j].front());
  return out;
}

// --- p=0 branch tracking over a radius grid (configuration a) ---

struct P0Branches {
  std::vector<double> radii;
  std::vector<cplx> mu_plus;   // branch anchored by shift -> +inf at small r
  std::vector<cplx> mu_minus;
  std::vector<double> crossing_radii;  // shift crossings, bisected
};

namespace detail {

struct P0Eigenvalues {
  cplx mu_a;  // +disc root
  cplx mu_b;  // -disc root
  cplx w;
};

inline P0Eigenvalues p0_eigenvalues(int n, double radius, const Kernel& kernel) {
  RingConfig cfg{n, radius, true};
  const auto dist = build(cfg);
  const auto coupling = coupling_by_offset(dist, kernel);
  const auto block = p0_block(n, radius, coupling, kernel);
  return {cplx(0.0, 1.0) + 0.5 * block.sum_m + 0.5 * block.disc,
          cplx(0.0, 1.0) + 0.5 * block.sum_m - 0.5 * block.disc, block.w};
}

}  // namespace detail

// Continues the two p=0 eigenvalue branches through the grid by nearest
// matching in the complex plane, anchored at the first grid point (which
// must lie in the crossing-free region r <= 0.1) by the sign of the shift.
// Shift crossings are the radii where the discriminant W crosses the
// negative real axis; each sign change of Im W with Re W < 0 is refined by
// bisection well below the 1e-8 resolution target.
inline P0Branches track_p0_branches(int n_outer, const std::vector<double>& r_grid,
                                    const Kernel& kernel) {
  if (r_grid.size() < 2)
    throw std::invalid_argument("track_p0_branches: need at least two radii");
  if (r_grid.front() > 0.1)
    throw std::invalid_argument(
        "track_p0_branches: grid must start at r <= 0.1 (anchor region)");
  for (std::size_t i = 0; i + 1 < r_grid.size(); ++i)
    if (!(r_grid[i] < r_grid[i + 1]))
      throw std::invalid_argument("track_p0_branches: grid must be ascending");

  P0Branches out;
  out.radii = r_grid;
  out.mu_plus.resize(r_grid.size());
  out.mu_minus.resize(r_grid.size());

  std::vector<cplx> ws(r_grid.size());
  auto ev0 = detail::p0_eigenvalues(n_outer, r_grid[0], kernel);
  ws[0] = ev0.w;
  // anchor: 0+ has the larger shift (more negative Re mu) at small r
  if (ev0.mu_a.real() <= ev0.mu_b.real()) {
    out.mu_plus[0] = ev0.mu_a;
    out.mu_minus[0] = ev0.mu_b;
  } else {
    out.mu_plus[0] = ev0.mu_b;
    out.mu_minus[0] = ev0.mu_a;
  }

  for (std::size_t i = 1; i < r_grid.size(); ++i) {
    const auto ev = detail::p0_eigenvalues(n_outer, r_grid[i], kernel);
    ws[i] = ev.w;
    const cplx pp = out.mu_plus[i - 1], pm = out.mu_minus[i - 1];
    const double keep = std::abs(ev.mu_a - pp) + std::abs(ev.mu_b - pm);
    const double swap = std::abs(ev.mu_a - pm) + std::abs(ev.mu_b - pp);
    const double sep = std::abs(ev.mu_a - ev.mu_b);
    const double lo = std::min(keep, swap), hi = std::max(keep, swap);
    if (hi > 0.0 && lo > 0.9 * hi && lo > 0.5 * sep)
      throw TrackingError("track_p0_branches: ambiguous continuation near r=" +
                          std::to_string(r_grid[i]) + " (grid too coarse)");
    if (keep <= swap) {
      out.mu_plus[i] = ev.mu_a;
      out.mu_minus[i] = ev.mu_b;
    } else {
      out.mu_plus[i] = ev.mu_b;
      out.mu_minus[i] = ev.mu_a;
    }
  }

  // crossings: zeros of Im W with Re W < 0
  auto im_w = [&](double r) { return detail::p0_eigenvalues(n_outer, r, kernel).w; };
  for (std::size_t i = 0; i + 1 < r_grid.size(); ++i) {
    const double s0 = ws[i].imag(), s1 = ws[i + 1].imag();
    if (s0 == 0.0 || s0 * s1 >= 0.0) continue;
    double lo = r_grid[i], hi = r_grid[i + 1];
    double flo = s0;
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      const double fm = im_w(mid).imag();
      if (fm == 0.0) { lo = hi = mid; break; }
      if ((fm > 0) == (flo > 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    const double rc = 0.5 * (lo + hi);
    if (im_w(rc).real() < 0.0) out.crossing_radii.push_back(rc);
  }
  return out;
}

// --- minimal decay rate (photon-trapping candidate state) ---

struct MinRate {
  double gamma_min;      // smallest rate over all modes, units of Gamma
  std::string p_label;   // label of the minimizing mode
  std::vector<cplx> state;  // probability-normalized site coefficients
};

inline MinRate min_rate(const RingConfig& config, const Kernel& kernel) {
  const ModeSpectrum spec = eigen(config, kernel);
  const Mode* best = &spec.modes.front();
  for (const auto& m : spec.modes)
    if (m.rate() < best->rate()) best = &m;
  double nrm = 0.0;
  for (const auto& c : best->right) nrm += std::norm(c);
  nrm = std::sqrt(nrm);
  MinRate out{best->rate(), best->label(), best->right};
  for (auto& c : out.state) c /= nrm;
  return out;
}

}  // namespace ringmodes

#endif
