#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "corruptlab/matrix.hpp"

namespace corruptlab {

/// Tolerance for column sums and distribution totals at construction.
inline constexpr double kStochasticTol = 1e-9;

/// Default cap on the number of entries of a materialized product kernel.
inline constexpr std::size_t kDefaultSizeGuard = 1'000'000;

/// Ordered, non-empty set of distinct outcome names.
class Space {
 public:
  explicit Space(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  /// Index of `name`; throws UnknownOutcome.
  std::size_t index_of(const std::string& name) const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Product space with labels joined as "a⊗b".
Space product_space(std::span<const Space> factors);

/// Probability vector over a Space. Never renormalized silently.
class Dist {
 public:
  Dist(Space space, std::vector<double> weights);

  const Space& space() const noexcept { return space_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_.at(i); }
  std::size_t size() const noexcept { return weights_.size(); }

 private:
  Space space_;
  std::vector<double> weights_;
};

Dist make_dist(const Space& space, std::span<const double> weights);

/// Scales non-negative weights to sum to one. The explicit opt-in for callers
/// that want normalization; throws InvalidParameter on zero or negative mass.
std::vector<double> normalized(std::span<const double> weights);

Dist point_mass(const Space& space, std::size_t index);
Dist uniform(const Space& space);

/// Product distribution ⊗ᵢ pᵢ, in the same index order as parallel_product.
Dist product_dist(std::span<const Dist> factors, std::size_t guard = kDefaultSizeGuard);

/// Markov kernel from → to as a column-stochastic |to|×|from| matrix;
/// column j is the distribution T(from_j).
class Kernel {
 public:
  Kernel(Space from, Space to, Matrix matrix);

  const Space& from() const noexcept { return from_; }
  const Space& to() const noexcept { return to_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  /// Column j as a distribution over `to`.
  Dist column(std::size_t j) const;

 private:
  Space from_;
  Space to_;
  Matrix matrix_;
};

Kernel identity_kernel(const Space& space);

/// Kernel mapping every input to `target`.
Kernel constant_kernel(const Space& from, const Dist& target);

/// t2 ∘ t1, i.e. matrix t2·t1.
Kernel compose(const Kernel& t2, const Kernel& t1);

Dist pushforward(const Kernel& t, const Dist& p);

/// Tᵀ·f: the expectation of f under T(x) for each input x.
std::vector<double> pullback(const Kernel& t, std::span<const double> f);

Kernel parallel_product(std::span<const Kernel> ts, std::size_t guard = kDefaultSizeGuard);

/// n independent copies of t run in parallel.
Kernel replicate(const Kernel& t, std::size_t n, std::size_t guard = kDefaultSizeGuard);

}  // namespace corruptlab
