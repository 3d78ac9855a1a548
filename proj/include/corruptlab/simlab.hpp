#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corruptlab/kernels.hpp"
#include "corruptlab/reconstruct.hpp"

namespace corruptlab {

/// A sample is a sequence of outcome indices into some Space.
using Sample = std::vector<std::size_t>;

/// n iid draws from p by inverse CDF over the space order.
Sample sample(const Dist& p, std::size_t n, std::uint64_t seed);

/// Passes each outcome independently through the kernel column T(zᵢ).
/// Throws UnknownOutcome for indices outside t.from().
Sample corrupt(const Kernel& t, std::span<const std::size_t> clean, std::uint64_t seed);

/// Occurrence counts of each outcome index in a space of `size` outcomes.
std::vector<std::size_t> outcome_counts(std::span<const std::size_t> s, std::size_t size);

/// Action minimizing the empirical mean loss; ties go to the lowest index.
/// Throws EmptySample.
std::size_t erm(std::span<const std::size_t> s, const LossTable& loss);

struct ExperimentConfig {
  Dist clean_dist;
  LossTable loss;
  Kernel corruption;
  std::vector<std::size_t> sample_sizes;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Worker threads for the trial loop; results do not depend on it.
  std::size_t threads = 1;
};

/// Throws InvalidParameter / SpaceMismatch on inconsistent configs.
void validate(const ExperimentConfig& config);

struct RiskRow {
  std::size_t n;
  double mean_excess_risk;
  double std_error;
  double envelope;
  std::optional<double> decay_ratio;  // mean(2n)/mean(n), fast-rate runs only
};

struct RiskCurve {
  std::vector<RiskRow> rows;
};

/// Corrected-loss ERM on corrupted samples, scored by true excess risk under
/// the clean distribution, with the envelope ‖ℓ̃‖∞·√(2 ln|A| / n).
RiskCurve risk_curve(const ExperimentConfig& config);

struct FastRateReport {
  RiskCurve curve;
  double bernstein_clean;
  double eta;
  /// Mean of the available decay ratios.
  std::optional<double> mean_decay_ratio;
};

/// risk_curve for a separable 0-1 problem whose Bayes action is available,
/// plus decay ratios. Throws PreconditionFailed otherwise, or if η is infinite.
FastRateReport fastrate_curve(const ExperimentConfig& config);

void write_csv(const RiskCurve& curve, std::ostream& out);

/// Convex potential Ψ of a canonical proper loss ℓ(z, v) = v(z) + Ψ(v).
struct CanonicalProperLoss {
  std::string name;
  std::function<double(std::span<const double>)> psi;
  std::function<std::vector<double>(std::span<const double>)> gradient;
};

/// Ψ(v) = log Σ exp(−v_z): the log loss, minimized where softmax(−v) = P.
CanonicalProperLoss log_loss_potential();
/// Ψ(v) = ⟨c, v⟩.
CanonicalProperLoss linear_potential(std::vector<double> c);
/// Ψ(v) = ½‖v‖².
CanonicalProperLoss quadratic_potential();

/// Weights q with mean_i (R*v)(z̃ᵢ) = ⟨q, v⟩, i.e. q = R·p̂ for the empirical
/// distribution p̂ of the corrupted sample.
std::vector<double> corrected_weights(const Reconstruction& r, std::span<const std::size_t> corrupted);

/// ⟨q, v⟩ + Ψ(v).
double proper_objective(std::span<const double> q, const CanonicalProperLoss& loss, std::span<const double> v);
std::vector<double> proper_gradient(std::span<const double> q, const CanonicalProperLoss& loss,
                                    std::span<const double> v);

struct ProperFit {
  std::vector<double> v;
  double objective;
  std::vector<double> trace;  // objective after each accepted or rejected step
};

/// Gradient descent on the empirical proper objective. With `corrected` the
/// sample is over t.to() and the objective uses ℓ̃(z̃, v) = (R*v)(z̃) + Ψ(v);
/// otherwise the sample is over t.from() and t only fixes the dimension.
/// The step size halves whenever a step would increase the objective (at most
/// 30 halvings per step; a step that still increases is skipped).
ProperFit fit_proper(bool corrected, const Kernel& t, std::span<const std::size_t> s, const CanonicalProperLoss& loss,
                     std::size_t steps, double rate);

/// Max relative error between central finite differences (h = 1e-5) and the
/// analytic gradient of the corrected objective at v, each component scaled
/// by max(1, |analytic|). Corrupted weights default to uniform over t.to().
double gradient_check(const CanonicalProperLoss& loss, const Kernel& t, std::span<const double> v,
                      std::optional<std::vector<double>> corrupted_weights = std::nullopt);

}  // namespace corruptlab
