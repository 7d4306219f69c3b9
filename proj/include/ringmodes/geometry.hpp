#ifndef RINGMODES_GEOMETRY_HPP
#define RINGMODES_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ringmodes/common.hpp"

namespace ringmodes {

// Two circular configurations: n_outer atoms on a regular polygon of the
// given radius (units of the transition wavelength), optionally plus one
// atom at the center. Atom indexing is 1-based along the ring; the central
// atom carries the distinguished label z.
struct RingConfig {
  int n_outer = 2;
  double radius = 1.0;
  bool has_center = false;

  int atom_count() const { return n_outer + (has_center ? 1 : 0); }

  void validate() const {
    if (n_outer < 2) throw std::invalid_argument("RingConfig: n_outer must be >= 2");
    if (!(radius > 0.0)) throw std::invalid_argument("RingConfig: radius must be > 0");
  }
};

// First-row distances. Chords are always evaluated from the closed form
// 2 r sin(pi j / N) with the index folded to min(j, N-j), never from
// coordinate differences: this makes the reflection symmetry
// chord(N-A+2) == chord(A) hold bitwise, which the sine-sum cancellation
// in the spectrum relies on.
struct DistanceTable {
  int n_outer;
  double radius;
  bool has_center;
  std::vector<double> chord_by_offset;  // [0]=0 (self), [j]=|atom1 - atom1+j|

  // distance from atom 1 to atom a, a in 2..N
  double chord(int a) const { return chord_by_offset[a - 1]; }
  // distance between any two outer atoms
  double between(int a, int b) const {
    int j = std::abs(a - b) % n_outer;
    return chord_by_offset[std::min(j, n_outer - j)];
  }
  double center_distance() const { return radius; }
};

inline DistanceTable build(const RingConfig& config) {
  config.validate();
  const int n = config.n_outer;
  DistanceTable t{n, config.radius, config.has_center, std::vector<double>(n, 0.0)};
  for (int j = 1; j < n; ++j) {
    const int jf = std::min(j, n - j);
    t.chord_by_offset[j] = 2.0 * config.radius * std::sin(pi * jf / n);
  }
  return t;
}

struct NextNeighbour {
  double exact;   // chord 2 r sin(pi/N)
  double approx;  // arc estimate 2 pi r / N
};

inline NextNeighbour nn_distance(const RingConfig& config) {
  config.validate();
  return {2.0 * config.radius * std::sin(pi / config.n_outer),
          two_pi * config.radius / config.n_outer};
}

}  // namespace ringmodes

#endif
