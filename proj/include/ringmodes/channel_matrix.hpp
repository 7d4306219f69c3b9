#ifndef RINGMODES_CHANNEL_MATRIX_HPP
#define RINGMODES_CHANNEL_MATRIX_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "ringmodes/common.hpp"
#include "ringmodes/correlation.hpp"
#include "ringmodes/dense_eigen.hpp"
#include "ringmodes/geometry.hpp"

namespace ringmodes {

// Channel matrix in the uncorrelated site basis: diagonal i, off-diagonal
// M(2 pi R_AB). Complex symmetric, not Hermitian. Each unordered pair is
// evaluated once and mirrored, so the symmetry is bitwise.
inline CMatrix build_matrix(const RingConfig& config, const Kernel& kernel) {
  config.validate();
  const auto dist = build(config);
  const int n = config.n_outer;
  const std::size_t dim = std::size_t(config.atom_count());
  CMatrix r(dim);
  for (std::size_t i = 0; i < dim; ++i) r(i, i) = cplx(0.0, 1.0);

  // one kernel evaluation per distinct chord offset
  std::vector<cplx> m_by_offset(n, cplx(0.0, 0.0));
  for (int j = 1; 2 * j <= n; ++j) m_by_offset[j] = kernel.m(two_pi * dist.chord_by_offset[j]);
  for (int j = n / 2 + 1; j < n; ++j) m_by_offset[j] = m_by_offset[n - j];

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const int j = std::min(b - a, n - (b - a));
      r(a, b) = m_by_offset[j];
      r(b, a) = m_by_offset[j];
    }
  if (config.has_center) {
    const cplx mc = kernel.m(two_pi * config.radius);
    for (int a = 0; a < n; ++a) {
      r(a, n) = mc;
      r(n, a) = mc;
    }
  }
  return r;
}

// Brute-force spectrum of the channel matrix: the independent check for
// every analytic result.
inline std::vector<EigenPair> eigen_numeric(const CMatrix& matrix,
                                            const EigenOptions& opt = {}) {
  return eigen_decompose(matrix, opt);
}

// Plain-text dump: one line per row, entries as "re,im" separated by spaces.
inline void dump_matrix(const CMatrix& m, std::ostream& os) {
  char buf[64];
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(i, j).real(), m(i, j).imag());
      os << (j ? " " : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace ringmodes

#endif
