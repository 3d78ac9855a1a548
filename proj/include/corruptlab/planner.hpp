#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corruptlab/rational.hpp"

namespace corruptlab {

/// A purchasable data source: unit cost of one example corrupted by some T,
/// with α(T) and optionally ‖ℓ̃‖∞.
struct SourceOffer {
  std::string name;
  double alpha;
  std::optional<double> corrected_sup;
  Rational unit_cost;
};

struct AcquisitionPlan {
  std::map<std::string, std::int64_t> counts;
  double objective = 0.0;  // Σ αᵢnᵢ
  Rational spend;          // Σ cᵢnᵢ
};

/// Largest scaled budget the exact dynamic program will allocate for.
inline constexpr std::int64_t kCapacityGuard = 10'000'000;

/// Density greedy: sources by α/c descending (ties: lower cost, then name),
/// buying as many of each as the remaining budget allows. Sources with α = 0
/// are never bought.
AcquisitionPlan greedy_plan(const std::vector<SourceOffer>& offers, const Rational& budget);

/// Optimal unbounded-knapsack plan over costs scaled to integers by the LCM of
/// all denominators. Throws CapacityGuardExceeded past kCapacityGuard.
AcquisitionPlan exact_plan(const std::vector<SourceOffer>& offers, const Rational& budget,
                           std::int64_t capacity_guard = kCapacityGuard);

/// Ascending cᵢ‖ℓ̃ᵢ‖∞² (ties by name). Throws MissingStatistic.
std::vector<std::string> rank_sources_upper(const std::vector<SourceOffer>& offers);

/// Descending αᵢ/cᵢ with the greedy tie rule.
std::vector<std::string> rank_sources_lower(const std::vector<SourceOffer>& offers);

}  // namespace corruptlab
