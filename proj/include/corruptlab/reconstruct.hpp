#pragma once

#include <optional>

#include "corruptlab/kernels.hpp"
#include "corruptlab/matrix.hpp"

namespace corruptlab {

/// Loss ℓ : O × A → ℝ stored as values(z, a).
class LossTable {
 public:
  LossTable(Space outcomes, Space actions, Matrix values);

  const Space& outcomes() const noexcept { return outcomes_; }
  const Space& actions() const noexcept { return actions_; }
  const Matrix& values() const noexcept { return values_; }
  double operator()(std::size_t z, std::size_t a) const noexcept { return values_(z, a); }

  /// Column ℓₐ as a function over outcomes.
  std::vector<double> action_column(std::size_t a) const { return values_.col(a); }
  /// ⟨p, ℓₐ⟩ for every action.
  std::vector<double> expected(const Dist& p) const;

  double sup_norm() const noexcept;

 private:
  Space outcomes_;
  Space actions_;
  Matrix values_;
};

/// 0-1 loss on `labels`, with one action per label.
LossTable zero_one_loss(const Space& labels);

/// Left inverse R of a kernel T (R·T = I), |from| × |to|.
class Reconstruction {
 public:
  /// Validates a caller-supplied left inverse; throws InvalidParameter if the
  /// residual max|R·T − I| exceeds 1e-9.
  static Reconstruction from_matrix(const Kernel& t, Matrix r);

  const Kernel& kernel() const noexcept { return kernel_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  double residual() const noexcept { return residual_; }

 private:
  Reconstruction(Kernel t, Matrix r, double residual)
      : kernel_(std::move(t)), matrix_(std::move(r)), residual_(residual) {}

  Kernel kernel_;
  Matrix matrix_;
  double residual_;
};

inline constexpr double kResidualTol = 1e-9;
inline constexpr double kRankTol = 1e-10;

/// Full column rank test on TᵀT via pivoted elimination.
bool is_reconstructible(const Kernel& t);

/// R = (TᵀT)⁻¹Tᵀ. Throws NotReconstructible.
Reconstruction pseudoinverse(const Kernel& t);

/// ℓ̃ = R*ℓ over the corrupted outcomes: ℓ̃(z̃, a) = Σ_z R(z, z̃) ℓ(z, a).
LossTable corrected_loss(const Reconstruction& r, const LossTable& loss);

/// ‖R*‖∞, the largest absolute column sum of R.
double op_norm_row_sum(const Reconstruction& r);
double op_norm_row_sum(const Matrix& r);

/// ‖ℓ̃‖∞.
double corrected_sup_norm(const Reconstruction& r, const LossTable& loss);

struct SandwichReport {
  double alpha;
  double inv_alpha;
  double row_norm;
  bool holds;  // 1/α ≤ ‖R*‖∞ + 1e-9
};

/// Compares 1/α(T) with ‖R*‖∞ for the Moore–Penrose reconstruction. A
/// single-point input space makes the comparison vacuous and reports holds.
SandwichReport sandwich_report(const Kernel& t);

}  // namespace corruptlab
