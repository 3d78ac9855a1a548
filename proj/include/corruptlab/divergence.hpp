#pragma once

#include <functional>
#include <string>
#include <utility>

#include "corruptlab/kernels.hpp"

namespace corruptlab {

/// Convex generator f with f(1) = 0, plus its boundary behaviour, defining
/// D_f(P, Q) = Σ pᵢ f(qᵢ / pᵢ).
struct FGenerator {
  std::string name;
  std::function<double(double)> f;
  double limit_at_zero;      // lim_{t→0⁺} f(t), may be +inf
  double slope_at_infinity;  // lim_{t→∞} f(t)/t, may be +inf
};

/// f(t) = ½|t − 1|; D_f is the variational divergence.
FGenerator variational_generator();
/// f(t) = −log t; D_f(P, Q) = KL(P ‖ Q).
FGenerator kl_generator();
/// f(t) = t log t; D_f(P, Q) = KL(Q ‖ P).
FGenerator reverse_kl_generator();
/// f(t) = (√t − 1)².
FGenerator hellinger_generator();
/// f(t) = (t − 1)².
FGenerator chi_square_generator();

/// ½ Σ |pᵢ − qᵢ|, in [0, 1].
double variational(const Dist& p, const Dist& q);

/// Extended-real f-divergence; returns +inf when an infinite term arises.
double f_divergence(const Dist& p, const Dist& q, const FGenerator& gen);

/// min over column pairs of Σ_k min(T_ki, T_kj). Equals 1 for a single column.
double lambda_coeff(const Kernel& t);

/// Coefficient of ergodicity 1 − λ(T). Cross-checked against the maximum
/// pairwise column variational distance; throws InternalInconsistency if the
/// two disagree beyond 1e-9.
double alpha(const Kernel& t);

/// max over column pairs of V(T(xᵢ), T(xⱼ)), and the pair attaining it.
struct ColumnPairMax {
  double value;
  std::pair<std::size_t, std::size_t> pair;
};
ColumnPairMax max_column_variational(const Kernel& t);

struct SdpiReport {
  double lhs;  // D_f(T(P), T(Q))
  double rhs;  // α(T) · D_f(P, Q)
  bool holds;
};

SdpiReport sdpi_check(const Kernel& t, const Dist& p, const Dist& q, const FGenerator& gen);

}  // namespace corruptlab
