#include "corruptlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corruptlab/divergence.hpp"
#include "corruptlab/error.hpp"

namespace corruptlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_index(std::size_t i, std::size_t size, const char* what) {
  if (i >= size) {
    throw Error(ErrorCode::IndexOutOfRange,
                std::string(what) + " index " + std::to_string(i) + " out of range " + std::to_string(size));
  }
}

double row_min(const Matrix& m, std::size_t row) {
  const auto r = m.row(row);
  return *std::min_element(r.begin(), r.end());
}

double pair_variational(const DecisionProblem& problem, std::size_t theta1, std::size_t theta2) {
  return variational(problem.experiment().column(theta1), problem.experiment().column(theta2));
}

}  // namespace

DecisionProblem::DecisionProblem(Space thetas, Space actions, Matrix loss, Kernel experiment)
    : thetas_(std::move(thetas)), actions_(std::move(actions)), loss_(std::move(loss)),
      experiment_(std::move(experiment)) {
  if (loss_.rows() != thetas_.size() || loss_.cols() != actions_.size()) {
    throw Error(ErrorCode::LengthMismatch, "loss must be |thetas| x |actions|");
  }
  for (double v : loss_.data())
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "loss entries must be finite");
  if (!(experiment_.from() == thetas_)) {
    throw Error(ErrorCode::SpaceMismatch, "experiment must be indexed by the hypotheses");
  }
}

double regret(const DecisionProblem& problem, std::size_t theta, std::size_t action) {
  check_index(theta, problem.thetas().size(), "theta");
  check_index(action, problem.actions().size(), "action");
  return problem.loss()(theta, action) - row_min(problem.loss(), theta);
}

double separation(const DecisionProblem& problem, std::size_t theta1, std::size_t theta2) {
  check_index(theta1, problem.thetas().size(), "theta1");
  check_index(theta2, problem.thetas().size(), "theta2");
  const Matrix& l = problem.loss();
  const double m1 = row_min(l, theta1), m2 = row_min(l, theta2);
  double best = kInf;
  for (std::size_t a = 0; a < l.cols(); ++a) best = std::min(best, (l(theta1, a) - m1) + (l(theta2, a) - m2));
  return best;
}

double lecam_unclamped(const DecisionProblem& problem, std::size_t theta1, std::size_t theta2, double n) {
  if (!(n >= 0.0) || !std::isfinite(n)) throw Error(ErrorCode::InvalidParameter, "sample count must be >= 0");
  const double rho = separation(problem, theta1, theta2);
  return rho * (0.25 - 0.25 * n * pair_variational(problem, theta1, theta2));
}

double lecam_bound(const DecisionProblem& problem, std::size_t theta1, std::size_t theta2) {
  return lecam_replicated(problem, theta1, theta2, 1.0);
}

double lecam_replicated(const DecisionProblem& problem, std::size_t theta1, std::size_t theta2, double n) {
  return std::max(0.0, lecam_unclamped(problem, theta1, theta2, n));
}

double lecam_corrupted(const DecisionProblem& problem, const Kernel& t, std::size_t theta1, std::size_t theta2,
                       double n) {
  if (!(t.from() == problem.experiment().to())) {
    throw Error(ErrorCode::SpaceMismatch, "corruption must act on the experiment's outcome space");
  }
  return lecam_replicated(problem, theta1, theta2, alpha(t) * n);
}

CorruptionSource make_source(const Kernel& kernel, std::size_t count, const LossTable* loss) {
  CorruptionSource src{kernel, count, alpha(kernel), std::nullopt};
  if (loss != nullptr && is_reconstructible(kernel)) {
    src.corrected_sup = corrected_sup_norm(pseudoinverse(kernel), *loss);
  }
  return src;
}

std::size_t MixedCorruption::total_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : sources) n += s.count;
  return n;
}

double MixedCorruption::effective_count() const noexcept {
  double k = 0.0;
  for (const auto& s : sources) k += s.alpha * static_cast<double>(s.count);
  return k;
}

double lecam_mixed(const DecisionProblem& problem, const MixedCorruption& mix, std::size_t theta1,
                   std::size_t theta2) {
  for (const auto& s : mix.sources) {
    if (!(s.kernel.from() == problem.experiment().to())) {
      throw Error(ErrorCode::SpaceMismatch, "every source must act on the experiment's outcome space");
    }
  }
  return lecam_replicated(problem, theta1, theta2, mix.effective_count());
}

double pacbayes_upper(double corrected_sup, std::size_t n, double kl, std::optional<double> delta) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  if (!(kl >= 0.0)) throw Error(ErrorCode::InvalidParameter, "kl must be >= 0");
  if (!(corrected_sup >= 0.0)) throw Error(ErrorCode::InvalidParameter, "corrected_sup must be >= 0");
  double complexity = kl;
  if (delta) {
    if (!(*delta > 0.0 && *delta < 1.0)) throw Error(ErrorCode::InvalidParameter, "delta must lie in (0, 1)");
    complexity += std::log(1.0 / *delta);
  }
  return corrected_sup * std::sqrt(2.0 * complexity / static_cast<double>(n));
}

double mixed_sup_constant(const MixedCorruption& mix) {
  const std::size_t n = mix.total_count();
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "mixed corruption needs a positive total count");
  double acc = 0.0;
  for (const auto& s : mix.sources) {
    if (s.count == 0) continue;
    if (!s.corrected_sup) throw Error(ErrorCode::MissingStatistic, "source without corrected_sup");
    acc += static_cast<double>(s.count) / static_cast<double>(n) * *s.corrected_sup * *s.corrected_sup;
  }
  return std::sqrt(acc);
}

double pacbayes_mixed(const MixedCorruption& mix, double kl, std::optional<double> delta) {
  return pacbayes_upper(mixed_sup_constant(mix), mix.total_count(), kl, delta);
}

double bernstein_constant(const Dist& p, const LossTable& loss) {
  const std::vector<double> risk = loss.expected(p);
  const std::size_t best = static_cast<std::size_t>(std::min_element(risk.begin(), risk.end()) - risk.begin());
  double k = 0.0;
  for (std::size_t a = 0; a < risk.size(); ++a) {
    if (a == best) continue;
    double first = 0.0, second = 0.0;
    for (std::size_t z = 0; z < p.size(); ++z) {
      const double d = loss(z, a) - loss(z, best);
      first += p[z] * d;
      second += p[z] * d * d;
    }
    if (first > kExcessTol) {
      k = std::max(k, second / first);
    } else if (second > kExcessTol) {
      return kInf;
    }
  }
  return k;
}

double eta_compatibility(const LossTable& loss, const Kernel& t, const Reconstruction& r) {
  if (!(loss.outcomes() == t.from())) throw Error(ErrorCode::SpaceMismatch, "loss outcomes != kernel input");
  if (!(r.kernel().from() == t.from() && r.kernel().to() == t.to())) {
    throw Error(ErrorCode::SpaceMismatch, "reconstruction belongs to a different kernel");
  }
  const LossTable noisy = corrected_loss(r, loss);
  const Matrix& m = t.matrix();
  double eta = 0.0;
  for (std::size_t z = 0; z < loss.outcomes().size(); ++z)
    for (std::size_t a1 = 0; a1 < loss.actions().size(); ++a1)
      for (std::size_t a2 = a1 + 1; a2 < loss.actions().size(); ++a2) {
        const double clean = loss(z, a1) - loss(z, a2);
        double corrupted = 0.0;
        for (std::size_t zt = 0; zt < m.rows(); ++zt) {
          const double d = noisy(zt, a1) - noisy(zt, a2);
          corrupted += m(zt, z) * d * d;
        }
        if (clean * clean > kExcessTol) {
          eta = std::max(eta, corrupted / (clean * clean));
        } else if (corrupted > kExcessTol) {
          return kInf;
        }
      }
  return eta;
}

double label_noise_eta(double sigma_neg, double sigma_pos) {
  const double det = 1.0 - sigma_neg - sigma_pos;
  if (std::abs(det) < 1e-12) throw Error(ErrorCode::NotReconstructible, "sigma_neg + sigma_pos = 1");
  const double a = (1.0 + sigma_neg - sigma_pos) / det;
  const double b = (1.0 + sigma_pos - sigma_neg) / det;
  return std::max(a * a, b * b);
}

double fastrate_gamma(double beta, double sup_norm) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::InvalidParameter, "beta must be > 0");
  if (!(sup_norm > 0.0) || !std::isfinite(sup_norm)) throw Error(ErrorCode::InvalidParameter, "sup_norm must be > 0");
  return (std::expm1(beta) - beta) / (beta * sup_norm);
}

}  // namespace corruptlab
