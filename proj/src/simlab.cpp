#include "corruptlab/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "corruptlab/bounds.hpp"
#include "corruptlab/error.hpp"
#include "corruptlab/format.hpp"
#include "corruptlab/rng.hpp"

namespace corruptlab {
namespace {

class InverseCdf {
 public:
  explicit InverseCdf(std::span<const double> weights) : cdf_(weights.size()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      cdf_[i] = acc;
      if (weights[i] > 0.0) last_positive_ = i;
    }
  }

  std::size_t draw(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) return last_positive_;
    return static_cast<std::size_t>(it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
  std::size_t last_positive_ = 0;
};

double excess_risk(const std::vector<double>& risk, std::size_t chosen) {
  return risk[chosen] - *std::min_element(risk.begin(), risk.end());
}

// Runs fn(trial) for trial in [0, trials) on up to `threads` workers.
template <class Fn>
void run_trials(std::size_t trials, std::size_t threads, Fn fn) {
  threads = std::clamp<std::size_t>(threads, 1, trials);
  if (threads == 1) {
    for (std::size_t i = 0; i < trials; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([=, &fn] {
      for (std::size_t i = w; i < trials; i += threads) fn(i);
    });
  }
}

// Tolerance for "0-1 loss" entries and a zero Bayes risk.
constexpr double kSeparableTol = 1e-12;

}  // namespace

Sample sample(const Dist& p, std::size_t n, std::uint64_t seed) {
  const InverseCdf cdf(p.weights());
  Rng rng(seed);
  Sample out(n);
  for (auto& z : out) z = cdf.draw(rng.uniform());
  return out;
}

Sample corrupt(const Kernel& t, std::span<const std::size_t> clean, std::uint64_t seed) {
  std::vector<InverseCdf> columns;
  columns.reserve(t.from().size());
  for (std::size_t j = 0; j < t.from().size(); ++j) columns.emplace_back(t.matrix().col(j));
  Rng rng(seed);
  Sample out(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (clean[i] >= columns.size()) {
      throw Error(ErrorCode::UnknownOutcome, "outcome index " + std::to_string(clean[i]) + " not in kernel input");
    }
    out[i] = columns[clean[i]].draw(rng.uniform());
  }
  return out;
}

std::vector<std::size_t> outcome_counts(std::span<const std::size_t> s, std::size_t size) {
  std::vector<std::size_t> counts(size, 0);
  for (std::size_t z : s) {
    if (z >= size) throw Error(ErrorCode::UnknownOutcome, "outcome index " + std::to_string(z) + " out of range");
    ++counts[z];
  }
  return counts;
}

std::size_t erm(std::span<const std::size_t> s, const LossTable& loss) {
  if (s.empty()) throw Error(ErrorCode::EmptySample, "erm on an empty sample");
  const auto counts = outcome_counts(s, loss.outcomes().size());
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < loss.actions().size(); ++a) {
    double total = 0.0;
    for (std::size_t z = 0; z < counts.size(); ++z) total += static_cast<double>(counts[z]) * loss(z, a);
    const double mean = total / static_cast<double>(s.size());
    if (mean < best_value) {
      best_value = mean;
      best = a;
    }
  }
  return best;
}

void validate(const ExperimentConfig& c) {
  if (!(c.clean_dist.space() == c.loss.outcomes())) {
    throw Error(ErrorCode::SpaceMismatch, "clean distribution and loss outcomes differ");
  }
  if (!(c.corruption.from() == c.loss.outcomes())) {
    throw Error(ErrorCode::SpaceMismatch, "corruption input space differs from loss outcomes");
  }
  if (c.sample_sizes.empty()) throw Error(ErrorCode::InvalidParameter, "no sample sizes");
  for (std::size_t i = 0; i < c.sample_sizes.size(); ++i) {
    if (c.sample_sizes[i] == 0) throw Error(ErrorCode::InvalidParameter, "sample sizes must be >= 1");
    if (i > 0 && c.sample_sizes[i] <= c.sample_sizes[i - 1]) {
      throw Error(ErrorCode::InvalidParameter, "sample sizes must be strictly increasing");
    }
  }
  if (c.trials < 1) throw Error(ErrorCode::InvalidParameter, "trials must be >= 1");
}

RiskCurve risk_curve(const ExperimentConfig& config) {
  validate(config);
  const Reconstruction r = pseudoinverse(config.corruption);
  const LossTable noisy_loss = corrected_loss(r, config.loss);
  const std::vector<double> risk = config.loss.expected(config.clean_dist);
  const double kl = std::log(static_cast<double>(config.loss.actions().size()));
  const Rng root(config.seed);

  RiskCurve curve;
  for (std::size_t g = 0; g < config.sample_sizes.size(); ++g) {
    const std::size_t n = config.sample_sizes[g];
    const Rng grid = root.split(g);
    std::vector<double> excess(config.trials);
    run_trials(config.trials, config.threads, [&](std::size_t trial) {
      const Rng stream = grid.split(trial);
      const Sample clean = sample(config.clean_dist, n, stream.split(0).key());
      const Sample observed = corrupt(config.corruption, clean, stream.split(1).key());
      excess[trial] = excess_risk(risk, erm(observed, noisy_loss));
    });

    // Summed in trial order so the result is independent of scheduling.
    double sum = 0.0;
    for (double e : excess) sum += e;
    const double mean = sum / static_cast<double>(config.trials);
    double sq = 0.0;
    for (double e : excess) sq += (e - mean) * (e - mean);
    const double se = config.trials > 1
                          ? std::sqrt(sq / static_cast<double>(config.trials - 1)) /
                                std::sqrt(static_cast<double>(config.trials))
                          : 0.0;
    curve.rows.push_back({n, mean, se, pacbayes_upper(noisy_loss.sup_norm(), n, kl), std::nullopt});
  }
  return curve;
}

FastRateReport fastrate_curve(const ExperimentConfig& config) {
  validate(config);
  for (double v : config.loss.values().data()) {
    if (std::abs(v) > kSeparableTol && std::abs(v - 1.0) > kSeparableTol) {
      throw Error(ErrorCode::PreconditionFailed, "fast-rate runs need a 0-1 loss");
    }
  }
  const std::vector<double> risk = config.loss.expected(config.clean_dist);
  if (*std::min_element(risk.begin(), risk.end()) > kSeparableTol) {
    throw Error(ErrorCode::PreconditionFailed, "clean distribution is not separable by any available action");
  }
  const Reconstruction r = pseudoinverse(config.corruption);
  FastRateReport report{{}, bernstein_constant(config.clean_dist, config.loss),
                        eta_compatibility(config.loss, config.corruption, r), std::nullopt};
  if (std::isinf(report.eta)) throw Error(ErrorCode::PreconditionFailed, "loss and corruption are not η-compatible");

  report.curve = risk_curve(config);
  auto& rows = report.curve.rows;
  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (auto& row : rows) {
    const auto twice = std::find_if(rows.begin(), rows.end(), [&](const RiskRow& o) { return o.n == 2 * row.n; });
    if (twice == rows.end() || !(row.mean_excess_risk > 0.0)) continue;
    row.decay_ratio = twice->mean_excess_risk / row.mean_excess_risk;
    ratio_sum += *row.decay_ratio;
    ++ratio_count;
  }
  if (ratio_count > 0) report.mean_decay_ratio = ratio_sum / static_cast<double>(ratio_count);
  return report;
}

void write_csv(const RiskCurve& curve, std::ostream& out) {
  const bool with_ratio =
      std::any_of(curve.rows.begin(), curve.rows.end(), [](const RiskRow& r) { return r.decay_ratio.has_value(); });
  out << "n,mean_excess_risk,std_error,envelope" << (with_ratio ? ",decay_ratio" : "") << '\n';
  for (const auto& row : curve.rows) {
    out << row.n << ',' << format_double(row.mean_excess_risk) << ',' << format_double(row.std_error) << ','
        << format_double(row.envelope);
    if (with_ratio) out << ',' << (row.decay_ratio ? format_double(*row.decay_ratio) : "");
    out << '\n';
  }
}

CanonicalProperLoss log_loss_potential() {
  return {"log_loss",
          [](std::span<const double> v) {
            double m = -std::numeric_limits<double>::infinity();
            for (double x : v) m = std::max(m, -x);
            double s = 0.0;
            for (double x : v) s += std::exp(-x - m);
            return m + std::log(s);
          },
          [](std::span<const double> v) {
            double m = -std::numeric_limits<double>::infinity();
            for (double x : v) m = std::max(m, -x);
            std::vector<double> g(v.size());
            double s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) s += (g[i] = std::exp(-v[i] - m));
            for (double& x : g) x = -x / s;
            return g;
          }};
}

CanonicalProperLoss linear_potential(std::vector<double> c) {
  return {"linear", [c](std::span<const double> v) { return dot(c, v); },
          [c](std::span<const double>) { return c; }};
}

CanonicalProperLoss quadratic_potential() {
  return {"quadratic", [](std::span<const double> v) { return 0.5 * dot(v, v); },
          [](std::span<const double> v) { return std::vector<double>(v.begin(), v.end()); }};
}

std::vector<double> corrected_weights(const Reconstruction& r, std::span<const std::size_t> corrupted) {
  if (corrupted.empty()) throw Error(ErrorCode::EmptySample, "empty corrupted sample");
  const auto counts = outcome_counts(corrupted, r.kernel().to().size());
  std::vector<double> freq(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    freq[i] = static_cast<double>(counts[i]) / static_cast<double>(corrupted.size());
  return r.matrix() * freq;
}

double proper_objective(std::span<const double> q, const CanonicalProperLoss& loss, std::span<const double> v) {
  return dot(q, v) + loss.psi(v);
}

std::vector<double> proper_gradient(std::span<const double> q, const CanonicalProperLoss& loss,
                                    std::span<const double> v) {
  std::vector<double> g = loss.gradient(v);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += q[i];
  return g;
}

ProperFit fit_proper(bool corrected, const Kernel& t, std::span<const std::size_t> s, const CanonicalProperLoss& loss,
                     std::size_t steps, double rate) {
  if (!(rate > 0.0)) throw Error(ErrorCode::InvalidParameter, "rate must be > 0");
  std::vector<double> q;
  if (corrected) {
    q = corrected_weights(pseudoinverse(t), s);
  } else {
    if (s.empty()) throw Error(ErrorCode::EmptySample, "empty sample");
    const auto counts = outcome_counts(s, t.from().size());
    q.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
      q[i] = static_cast<double>(counts[i]) / static_cast<double>(s.size());
  }

  ProperFit fit{std::vector<double>(t.from().size(), 0.0), 0.0, {}};
  fit.objective = proper_objective(q, loss, fit.v);
  if (!std::isfinite(fit.objective)) throw Error(ErrorCode::DivergedObjective, "objective not finite at start");

  std::vector<double> candidate(fit.v.size());
  for (std::size_t step = 0; step < steps; ++step) {
    const std::vector<double> g = proper_gradient(q, loss, fit.v);
    for (int backoff = 0; backoff <= 30; ++backoff) {
      for (std::size_t i = 0; i < g.size(); ++i) candidate[i] = fit.v[i] - rate * g[i];
      const double value = proper_objective(q, loss, candidate);
      if (std::isnan(value) || value == -std::numeric_limits<double>::infinity()) {
        throw Error(ErrorCode::DivergedObjective, "objective became " + format_double(value));
      }
      if (value <= fit.objective) {
        fit.v = candidate;
        fit.objective = value;
        break;
      }
      if (backoff < 30) rate *= 0.5;
    }
    fit.trace.push_back(fit.objective);
  }
  return fit;
}

double gradient_check(const CanonicalProperLoss& loss, const Kernel& t, std::span<const double> v,
                      std::optional<std::vector<double>> corrupted_weights) {
  const Reconstruction r = pseudoinverse(t);
  std::vector<double> freq = corrupted_weights
                                 ? *corrupted_weights
                                 : std::vector<double>(t.to().size(), 1.0 / static_cast<double>(t.to().size()));
  if (freq.size() != t.to().size()) throw Error(ErrorCode::LengthMismatch, "corrupted weights length");
  const std::vector<double> q = r.matrix() * freq;
  const std::vector<double> analytic = proper_gradient(q, loss, v);

  constexpr double h = 1e-5;
  std::vector<double> x(v.begin(), v.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double up = proper_objective(q, loss, x);
    x[i] = saved - h;
    const double down = proper_objective(q, loss, x);
    x[i] = saved;
    const double numeric = (up - down) / (2.0 * h);
    worst = std::max(worst, std::abs(numeric - analytic[i]) / std::max(1.0, std::abs(analytic[i])));
  }
  return worst;
}

}  // namespace corruptlab
