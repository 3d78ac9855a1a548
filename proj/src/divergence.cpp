#include "corruptlab/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corruptlab/error.hpp"

namespace corruptlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_space(const Dist& p, const Dist& q) {
  if (!(p.space() == q.space())) throw Error(ErrorCode::SpaceMismatch, "distributions over different spaces");
}

}  // namespace

FGenerator variational_generator() {
  return {"variational", [](double t) { return 0.5 * std::abs(t - 1.0); }, 0.5, 0.5};
}

FGenerator kl_generator() {
  return {"kl", [](double t) { return -std::log(t); }, kInf, 0.0};
}

FGenerator reverse_kl_generator() {
  return {"reverse_kl", [](double t) { return t > 0.0 ? t * std::log(t) : 0.0; }, 0.0, kInf};
}

FGenerator hellinger_generator() {
  return {"hellinger", [](double t) { return (std::sqrt(t) - 1.0) * (std::sqrt(t) - 1.0); }, 1.0, 1.0};
}

FGenerator chi_square_generator() {
  return {"chi_square", [](double t) { return (t - 1.0) * (t - 1.0); }, 1.0, kInf};
}

double variational(const Dist& p, const Dist& q) {
  require_same_space(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double f_divergence(const Dist& p, const Dist& q, const FGenerator& gen) {
  require_same_space(p, q);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i], qi = q[i];
    double term = 0.0;
    if (pi > 0.0) {
      term = qi > 0.0 ? pi * gen.f(qi / pi) : pi * gen.limit_at_zero;
    } else if (qi > 0.0) {
      term = qi * gen.slope_at_infinity;
    }
    if (term == kInf) return kInf;
    total += term;
  }
  return total;
}

double lambda_coeff(const Kernel& t) {
  const Matrix& m = t.matrix();
  if (m.cols() == 1) return 1.0;
  double best = kInf;
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      double overlap = 0.0;
      for (std::size_t k = 0; k < m.rows(); ++k) overlap += std::min(m(k, i), m(k, j));
      best = std::min(best, overlap);
    }
  return std::clamp(best, 0.0, 1.0);
}

ColumnPairMax max_column_variational(const Kernel& t) {
  const Matrix& m = t.matrix();
  ColumnPairMax out{0.0, {0, 0}};
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      double l1 = 0.0;
      for (std::size_t k = 0; k < m.rows(); ++k) l1 += std::abs(m(k, i) - m(k, j));
      if (0.5 * l1 > out.value) out = {0.5 * l1, {i, j}};
    }
  return out;
}

double alpha(const Kernel& t) {
  const double via_overlap = 1.0 - lambda_coeff(t);
  const double via_columns = max_column_variational(t).value;
  if (std::abs(via_overlap - via_columns) > 1e-9) {
    throw Error(ErrorCode::InternalInconsistency, "alpha: 1 - lambda = " + std::to_string(via_overlap) +
                                                      " but max column V = " + std::to_string(via_columns));
  }
  return via_overlap;
}

SdpiReport sdpi_check(const Kernel& t, const Dist& p, const Dist& q, const FGenerator& gen) {
  require_same_space(p, q);
  const double lhs = f_divergence(pushforward(t, p), pushforward(t, q), gen);
  const double a = alpha(t);
  const double d = f_divergence(p, q, gen);
  const double rhs = a > 0.0 ? a * d : 0.0;
  return {lhs, rhs, std::isinf(rhs) || lhs <= rhs + 1e-9};
}

}  // namespace corruptlab
