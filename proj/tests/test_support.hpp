#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "corruptlab/kernels.hpp"
#include "corruptlab/matrix.hpp"
#include "corruptlab/reconstruct.hpp"
#include "corruptlab/rng.hpp"

namespace corruptlab::testing {

inline Space labels(std::size_t n, const std::string& prefix = "o") {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(prefix + std::to_string(i));
  return Space(std::move(l));
}

/// Flat Dirichlet draw of dimension n.
inline std::vector<double> dirichlet(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) total += (x = -std::log1p(-rng.uniform()));
  for (double& x : w) x /= total;
  return w;
}

inline Dist random_dist(Rng& rng, const Space& space) { return Dist(space, dirichlet(rng, space.size())); }

/// Each column an independent flat Dirichlet draw.
inline Kernel random_kernel(Rng& rng, const Space& from, const Space& to) {
  Matrix m(to.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j) {
    const auto col = dirichlet(rng, to.size());
    for (std::size_t i = 0; i < to.size(); ++i) m(i, j) = col[i];
  }
  return Kernel(from, to, std::move(m));
}

/// Random kernel with a reasonably conditioned Gram matrix, so that absolute
/// 1e-9 identities on corrected quantities are meaningful.
inline Kernel random_reconstructible(Rng& rng, const Space& from, const Space& to) {
  for (;;) {
    Kernel t = random_kernel(rng, from, to);
    const Matrix gram = t.matrix().transpose() * t.matrix();
    if (LuDecomposition(gram, kRankTol).min_pivot_ratio() > 1e-3) return t;
  }
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

inline std::size_t random_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
}

inline Kernel binary_noise(double sigma_neg, double sigma_pos) {
  const Space s({"-1", "+1"});
  return Kernel(s, s, Matrix::from_rows({{1 - sigma_neg, sigma_pos}, {sigma_neg, 1 - sigma_pos}}));
}

}  // namespace corruptlab::testing
