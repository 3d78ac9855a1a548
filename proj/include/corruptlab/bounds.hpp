#pragma once

#include <optional>
#include <vector>

#include "corruptlab/kernels.hpp"
#include "corruptlab/reconstruct.hpp"

namespace corruptlab {

/// A learning problem (L, e): loss L(θ, a) over hypotheses × actions and an
/// experiment kernel e : Θ ⇝ O.
class DecisionProblem {
 public:
  DecisionProblem(Space thetas, Space actions, Matrix loss, Kernel experiment);

  const Space& thetas() const noexcept { return thetas_; }
  const Space& actions() const noexcept { return actions_; }
  const Matrix& loss() const noexcept { return loss_; }
  const Kernel& experiment() const noexcept { return experiment_; }

 private:
  Space thetas_;
  Space actions_;
  Matrix loss_;
  Kernel experiment_;
};

/// ΔL(θ, a) = L(θ, a) − min_a' L(θ, a').
double regret(const DecisionProblem& problem, std::size_t theta, std::size_t action);

/// ρ(θ₁, θ₂) = min_a ΔL(θ₁, a) + ΔL(θ₂, a).
double separation(const DecisionProblem& problem, std::size_t theta1, std::size_t theta2);

/// ρ·(¼ − (n/4)·V(e(θ₁), e(θ₂))) without clamping, for a real effective
/// sample count n ≥ 0.
double lecam_unclamped(const DecisionProblem& problem, std::size_t theta1, std::size_t theta2, double n);

/// Two-point lower bound on the minimax risk from a single observation.
double lecam_bound(const DecisionProblem& problem, std::size_t theta1, std::size_t theta2);

/// Lower bound for n iid observations via V(P⊗ⁿ, Q⊗ⁿ) ≤ n·V(P, Q); n may be a
/// real effective count. Clamped at 0.
double lecam_replicated(const DecisionProblem& problem, std::size_t theta1, std::size_t theta2, double n);

/// Lower bound for n observations passed through the corruption t: the
/// replicated bound at effective count α(t)·n.
double lecam_corrupted(const DecisionProblem& problem, const Kernel& t, std::size_t theta1, std::size_t theta2,
                       double n);

struct CorruptionSource {
  Kernel kernel;
  std::size_t count;
  double alpha;
  std::optional<double> corrected_sup;
};

/// Computes α and, when a loss is supplied and the kernel is reconstructible,
/// ‖ℓ̃‖∞ for the Moore–Penrose reconstruction.
CorruptionSource make_source(const Kernel& kernel, std::size_t count, const LossTable* loss = nullptr);

struct MixedCorruption {
  std::vector<CorruptionSource> sources;

  std::size_t total_count() const noexcept;
  /// K = Σ α(Tᵢ)·nᵢ.
  double effective_count() const noexcept;
};

double lecam_mixed(const DecisionProblem& problem, const MixedCorruption& mix, std::size_t theta1,
                   std::size_t theta2);

/// ‖ℓ̃‖∞·√(2·(kl + log(1/δ))/n); the δ term is omitted when `delta` is empty.
double pacbayes_upper(double corrected_sup, std::size_t n, double kl, std::optional<double> delta = std::nullopt);

/// √(Σ rᵢ ‖ℓ̃ᵢ‖∞²) with rᵢ = nᵢ / n.
double mixed_sup_constant(const MixedCorruption& mix);

/// mixed_sup_constant(mix)·√(2·kl/n) with n the total count.
double pacbayes_mixed(const MixedCorruption& mix, double kl, std::optional<double> delta = std::nullopt);

inline constexpr double kExcessTol = 1e-12;

/// Smallest K with E(ℓₐ − ℓ_{a_P})² ≤ K·E(ℓₐ − ℓ_{a_P}) for every action.
/// +inf if some action has zero excess risk but positive second moment.
double bernstein_constant(const Dist& p, const LossTable& loss);

/// Smallest η with E_{z̃∼T(z)}(ℓ̃(z̃,a₁) − ℓ̃(z̃,a₂))² ≤ η(ℓ(z,a₁) − ℓ(z,a₂))²
/// over all z, a₁, a₂. +inf when a zero clean difference has a positive
/// corrupted second moment.
double eta_compatibility(const LossTable& loss, const Kernel& t, const Reconstruction& r);

/// Closed-form η for 0-1 loss under binary label noise:
/// max((1 + σ₋₁ − σ₁)², (1 + σ₁ − σ₋₁)²)/(1 − σ₋₁ − σ₁)². An upper bound on
/// eta_compatibility; equal to it when σ₋₁ = σ₁.
double label_noise_eta(double sigma_neg, double sigma_pos);

/// γ = (e^β − 1 − β)/(β‖ℓ‖∞).
double fastrate_gamma(double beta, double sup_norm);

}  // namespace corruptlab
