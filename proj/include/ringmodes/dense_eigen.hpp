#ifndef RINGMODES_DENSE_EIGEN_HPP
#define RINGMODES_DENSE_EIGEN_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringmodes/common.hpp"

namespace ringmodes {

// Dense complex non-Hermitian eigensolver: Householder reduction to upper
// Hessenberg form, explicit single-shift QR iteration with Wilkinson shifts
// and deflation to a Schur form A = Z T Z^H, then eigenvectors by guarded
// back-substitution on T. The iteration treats the matrix as general; the
// only complex-symmetry shortcut is the bilinear left-eigenvector
// construction at the end.

class CMatrix {
public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n, cplx(0.0, 0.0)) {}

  std::size_t size() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::vector<cplx> apply(const std::vector<cplx>& v) const {
    std::vector<cplx> out(n_, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n_; ++i) {
      cplx acc(0.0, 0.0);
      for (std::size_t j = 0; j < n_; ++j) acc += a_[i * n_ + j] * v[j];
      out[i] = acc;
    }
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

struct EigenPair {
  cplx value;
  std::vector<cplx> right;
  std::vector<cplx> left;      // bilinear dual: left_p . right_q = delta_pq
  bool near_defective = false; // v^T v of the raw vector fell below threshold
};

struct EigenOptions {
  std::size_t max_dim = 64;
  double residual_tol = 1e-10;   // scaled by max(1, |A|)
  int max_sweeps_per_value = 60;
};

namespace detail {

// Givens rotation [c, s; -conj(s), c] with real c zeroing the second entry
struct Givens {
  double c;
  cplx s;
};

inline Givens make_givens(cplx a, cplx b) {
  const double na = std::abs(a), nb = std::abs(b);
  if (nb == 0.0) return {1.0, cplx(0.0, 0.0)};
  if (na == 0.0) return {0.0, cplx(1.0, 0.0)};
  const double r = std::hypot(na, nb);
  // phase convention keeps the rotated leading entry aligned with a
  return {na / r, (a / na) * std::conj(b) / r};
}

// eigenvalue of [[a,b],[c,d]] closest to d
inline cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  const cplx tr = a + d;
  const cplx det = a * d - b * c;
  cplx disc = std::sqrt(tr * tr - 4.0 * det);
  const cplx l1 = 0.5 * (tr + disc);
  const cplx l2 = 0.5 * (tr - disc);
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

inline void hessenberg(CMatrix& a, CMatrix& z) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Householder vector for column k below the subdiagonal
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    cplx x0 = a(k + 1, k);
    const cplx phase = std::abs(x0) == 0.0 ? cplx(1.0, 0.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * xnorm;
    std::vector<cplx> v(n, cplx(0.0, 0.0));
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // A <- (I - beta v v^H) A
    for (std::size_t j = 0; j < n; ++j) {
      cplx dot(0.0, 0.0);
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= beta;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
    }
    // A <- A (I - beta v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      cplx dot(0.0, 0.0);
      for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
    }
    // Z <- Z (I - beta v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      cplx dot(0.0, 0.0);
      for (std::size_t j = k + 1; j < n; ++j) dot += z(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) z(i, j) -= dot * std::conj(v[j]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// explicit-shift QR sweeps on the Hessenberg matrix, accumulating Z
inline void schur_qr(CMatrix& h, CMatrix& z, const EigenOptions& opt) {
  const std::size_t n = h.size();
  if (n < 2) return;
  const double eps = std::numeric_limits<double>::epsilon();
  std::size_t hi = n - 1;
  int iters_at_hi = 0;
  long budget = long(opt.max_sweeps_per_value) * long(n) + 100;

  while (true) {
    // deflate converged subdiagonals
    for (std::size_t i = hi; i >= 1; --i) {
      const double small =
          eps * (std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)));
      if (std::abs(h(i, i - 1)) <= small) h(i, i - 1) = 0.0;
    }
    while (hi > 0 && h(hi, hi - 1) == cplx(0.0, 0.0)) {
      --hi;
      iters_at_hi = 0;
    }
    if (hi == 0) break;

    std::size_t lo = hi;
    while (lo > 0 && h(lo, lo - 1) != cplx(0.0, 0.0)) --lo;

    if (--budget < 0)
      throw ConvergenceError("dense eigensolver: QR iteration budget exhausted");

    cplx shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi),
                                 h(hi, hi - 1), h(hi, hi));
    if (++iters_at_hi % 12 == 0) {
      // occasional ad-hoc shift to break stagnation
      shift = h(hi, hi) + cplx(1.5 * std::abs(h(hi, hi - 1)), 0.0);
    }

    // implicit single-shift sweep: each rotation is applied as a similarity,
    // the first one from the shifted leading column, the rest chasing the
    // bulge down the subdiagonal
    for (std::size_t i = lo; i < hi; ++i) {
      Givens g;
      if (i == lo) {
        g = make_givens(h(lo, lo) - shift, h(lo + 1, lo));
      } else {
        g = make_givens(h(i, i - 1), h(i + 1, i - 1));
      }
      const std::size_t jstart = (i == lo) ? lo : i - 1;
      for (std::size_t j = jstart; j < n; ++j) {
        const cplx t1 = h(i, j), t2 = h(i + 1, j);
        h(i, j) = g.c * t1 + g.s * t2;
        h(i + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
      const std::size_t rmax = std::min(i + 2, hi) + 1;
      for (std::size_t r = 0; r < rmax; ++r) {
        const cplx t1 = h(r, i), t2 = h(r, i + 1);
        h(r, i) = g.c * t1 + std::conj(g.s) * t2;
        h(r, i + 1) = -g.s * t1 + g.c * t2;
      }
      for (std::size_t r = 0; r < n; ++r) {
        const cplx t1 = z(r, i), t2 = z(r, i + 1);
        z(r, i) = g.c * t1 + std::conj(g.s) * t2;
        z(r, i + 1) = -g.s * t1 + g.c * t2;
      }
      if (i > lo) h(i + 1, i - 1) = 0.0;
    }
  }
}

// right eigenvector of the triangular T for the eigenvalue at position k,
// with guarded divisions so that degenerate diagonals still yield a usable
// basis vector (validated afterwards by the residual check)
inline std::vector<cplx> triangular_eigenvector(const CMatrix& t, std::size_t k) {
  const std::size_t n = t.size();
  const cplx lambda = t(k, k);
  double tnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) tnorm = std::max(tnorm, std::abs(t(i, j)));
  const double smin =
      std::max(std::numeric_limits<double>::epsilon() * tnorm * n,
               std::numeric_limits<double>::min() * 16.0);

  std::vector<cplx> y(n, cplx(0.0, 0.0));
  y[k] = 1.0;
  for (std::size_t ii = k; ii-- > 0;) {
    cplx rhs(0.0, 0.0);
    for (std::size_t j = ii + 1; j <= k; ++j) rhs += t(ii, j) * y[j];
    cplx denom = t(ii, ii) - lambda;
    if (std::abs(denom) < smin) denom = cplx(smin, 0.0);
    y[ii] = -rhs / denom;
  }
  return y;
}

}  // namespace detail

// Full eigendecomposition. Right vectors are Euclidean-normalized; left
// vectors are built from transposed right vectors, with eigenvalue clusters
// re-scaled through the bilinear Gram inverse so that left_p . right_q =
// delta_pq also across degenerate pairs.
inline std::vector<EigenPair> eigen_decompose(const CMatrix& matrix,
                                              const EigenOptions& opt = {}) {
  const std::size_t n = matrix.size();
  if (n == 0) return {};
  if (n > opt.max_dim)
    throw std::invalid_argument("eigen_decompose: dimension " + std::to_string(n) +
                                " exceeds the configured cap " +
                                std::to_string(opt.max_dim));

  CMatrix t = matrix;
  CMatrix z = CMatrix::identity(n);
  detail::hessenberg(t, z);
  detail::schur_qr(t, z, opt);

  std::vector<EigenPair> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k].value = t(k, k);
    const auto y = detail::triangular_eigenvector(t, k);
    std::vector<cplx> v(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      cplx acc(0.0, 0.0);
      for (std::size_t j = 0; j <= k; ++j) acc += z(i, j) * y[j];
      v[i] = acc;
    }
    double nrm = 0.0;
    for (const auto& c : v) nrm += std::norm(c);
    nrm = std::sqrt(nrm);
    for (auto& c : v) c /= nrm;
    out[k].right = std::move(v);
  }

  // residual check against the original matrix
  const double scale = std::max(1.0, matrix.max_abs());
  for (auto& p : out) {
    const auto av = matrix.apply(p.right);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      r = std::max(r, std::abs(av[i] - p.value * p.right[i]));
    if (r > opt.residual_tol * scale)
      throw ConvergenceError("dense eigensolver: residual " + std::to_string(r) +
                             " exceeds tolerance");
  }

  // bilinear left vectors, clustering eigenvalues that coincide numerically
  const double cluster_tol = 1e-8 * std::max(1.0, matrix.max_abs());
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> cluster{i};
    for (std::size_t j = i + 1; j < n; ++j)
      if (!done[j] && std::abs(out[j].value - out[i].value) <= cluster_tol)
        cluster.push_back(j);
    for (auto idx : cluster) done[idx] = true;

    const std::size_t m = cluster.size();
    // bilinear Gram G_ab = v_a^T v_b
    std::vector<cplx> g(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        cplx acc(0.0, 0.0);
        for (std::size_t r = 0; r < n; ++r)
          acc += out[cluster[a]].right[r] * out[cluster[b]].right[r];
        g[a * m + b] = acc;
      }
    // invert G by Gauss-Jordan with partial pivoting
    std::vector<cplx> inv(m * m, cplx(0.0, 0.0));
    for (std::size_t a = 0; a < m; ++a) inv[a * m + a] = 1.0;
    bool defective = false;
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < m; ++r)
        if (std::abs(g[r * m + col]) > std::abs(g[piv * m + col])) piv = r;
      if (std::abs(g[piv * m + col]) < 1e-8) defective = true;
      for (std::size_t c = 0; c < m; ++c) {
        std::swap(g[piv * m + c], g[col * m + c]);
        std::swap(inv[piv * m + c], inv[col * m + c]);
      }
      const cplx d = g[col * m + col];
      for (std::size_t c = 0; c < m; ++c) {
        g[col * m + c] /= d;
        inv[col * m + c] /= d;
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col) continue;
        const cplx f = g[r * m + col];
        if (f == cplx(0.0, 0.0)) continue;
        for (std::size_t c = 0; c < m; ++c) {
          g[r * m + c] -= f * g[col * m + c];
          inv[r * m + c] -= f * inv[col * m + c];
        }
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      auto& pa = out[cluster[a]];
      pa.near_defective = defective;
      pa.left.assign(n, cplx(0.0, 0.0));
      for (std::size_t b = 0; b < m; ++b) {
        const cplx w = inv[a * m + b];
        const auto& vb = out[cluster[b]].right;
        for (std::size_t r = 0; r < n; ++r) pa.left[r] += w * vb[r];
      }
    }
  }
  return out;
}

// Greedy min-max multiset pairing on |delta mu|: repeatedly match the
// globally closest unmatched pair. Returns the largest matched distance.
inline double match_eigenvalues(const std::vector<cplx>& a,
                                const std::vector<cplx>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("match_eigenvalues: size mismatch");
  const std::size_t n = a.size();
  std::vector<bool> ua(n, false), ub(n, false);
  double worst = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (ua[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (ub[j]) continue;
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    ua[bi] = ub[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace ringmodes

#endif
