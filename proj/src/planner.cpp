#include "corruptlab/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "corruptlab/error.hpp"

namespace corruptlab {
namespace {

__extension__ using i128 = __int128;

void validate(const std::vector<SourceOffer>& offers, const Rational& budget) {
  if (offers.empty()) throw Error(ErrorCode::InvalidParameter, "no offers");
  if (budget < Rational(0)) throw Error(ErrorCode::InvalidParameter, "budget must be >= 0");
  std::set<std::string> names;
  for (const auto& o : offers) {
    if (!names.insert(o.name).second) throw Error(ErrorCode::InvalidParameter, "duplicate offer '" + o.name + "'");
    if (!(o.alpha >= 0.0 && o.alpha <= 1.0)) {
      throw Error(ErrorCode::InvalidParameter, "alpha of '" + o.name + "' must lie in [0, 1]");
    }
    if (!(o.unit_cost > Rational(0))) throw Error(ErrorCode::InvalidParameter, "cost of '" + o.name + "' must be > 0");
    if (o.corrected_sup && !(*o.corrected_sup >= 0.0)) {
      throw Error(ErrorCode::InvalidParameter, "corrected_sup of '" + o.name + "' must be >= 0");
    }
  }
}

// Offer indices by α/c descending, then cost ascending, then name.
std::vector<std::size_t> density_order(const std::vector<SourceOffer>& offers) {
  std::vector<std::size_t> idx(offers.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    const auto& a = offers[i];
    const auto& b = offers[j];
    // α_a/c_a > α_b/c_b  ⇔  α_a·c_b > α_b·c_a
    const double lhs = a.alpha * b.unit_cost.to_double();
    const double rhs = b.alpha * a.unit_cost.to_double();
    if (lhs != rhs) return lhs > rhs;
    if (a.unit_cost != b.unit_cost) return a.unit_cost < b.unit_cost;
    return a.name < b.name;
  });
  return idx;
}

AcquisitionPlan finish(const std::vector<SourceOffer>& offers, const std::vector<std::int64_t>& counts) {
  AcquisitionPlan plan;
  for (std::size_t i = 0; i < offers.size(); ++i) {
    if (counts[i] == 0) continue;
    plan.counts[offers[i].name] = counts[i];
    plan.objective += offers[i].alpha * static_cast<double>(counts[i]);
    plan.spend = plan.spend + offers[i].unit_cost * counts[i];
  }
  return plan;
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b, std::int64_t guard) {
  const std::int64_t g = std::gcd(a, b);
  const i128 l = static_cast<i128>(a / g) * b;
  if (l > guard) throw Error(ErrorCode::CapacityGuardExceeded, "cost denominators scale beyond the capacity guard");
  return static_cast<std::int64_t>(l);
}

}  // namespace

AcquisitionPlan greedy_plan(const std::vector<SourceOffer>& offers, const Rational& budget) {
  validate(offers, budget);
  std::vector<std::int64_t> counts(offers.size(), 0);
  Rational remaining = budget;
  for (std::size_t i : density_order(offers)) {
    if (offers[i].alpha <= 0.0) continue;
    const std::int64_t n = floor_div(remaining, offers[i].unit_cost);
    counts[i] = n;
    remaining = remaining - offers[i].unit_cost * n;
  }
  return finish(offers, counts);
}

AcquisitionPlan exact_plan(const std::vector<SourceOffer>& offers, const Rational& budget,
                           std::int64_t capacity_guard) {
  validate(offers, budget);
  std::int64_t scale = budget.den();
  for (const auto& o : offers) scale = lcm_checked(scale, o.unit_cost.den(), capacity_guard);
  const i128 cap128 = static_cast<i128>(budget.num()) * (scale / budget.den());
  if (cap128 > capacity_guard) {
    throw Error(ErrorCode::CapacityGuardExceeded, "scaled budget exceeds the capacity guard");
  }
  const auto capacity = static_cast<std::size_t>(cap128);

  const std::vector<std::size_t> order = density_order(offers);
  std::vector<std::int64_t> weight(offers.size());
  for (std::size_t i = 0; i < offers.size(); ++i) {
    const i128 w = static_cast<i128>(offers[i].unit_cost.num()) * (scale / offers[i].unit_cost.den());
    weight[i] = w > static_cast<i128>(capacity) ? static_cast<std::int64_t>(capacity) + 1
                                                    : static_cast<std::int64_t>(w);
  }

  // best[w]: max objective with scaled spend ≤ w; pick[w]: last item added, or
  // -1 when best[w] is inherited from best[w - 1].
  std::vector<double> best(capacity + 1, 0.0);
  std::vector<int> pick(capacity + 1, -1);
  for (std::size_t w = 1; w <= capacity; ++w) {
    best[w] = best[w - 1];
    for (std::size_t i : order) {
      if (offers[i].alpha <= 0.0 || static_cast<std::size_t>(weight[i]) > w) continue;
      const double cand = best[w - weight[i]] + offers[i].alpha;
      if (cand > best[w] + 1e-12) {
        best[w] = cand;
        pick[w] = static_cast<int>(i);
      }
    }
  }

  std::vector<std::int64_t> counts(offers.size(), 0);
  for (std::size_t w = capacity; w > 0;) {
    if (pick[w] < 0) {
      --w;
    } else {
      ++counts[pick[w]];
      w -= weight[pick[w]];
    }
  }
  return finish(offers, counts);
}

std::vector<std::string> rank_sources_upper(const std::vector<SourceOffer>& offers) {
  std::vector<std::pair<double, std::string>> keyed;
  for (const auto& o : offers) {
    if (!o.corrected_sup) throw Error(ErrorCode::MissingStatistic, "offer '" + o.name + "' lacks corrected_sup");
    keyed.emplace_back(o.unit_cost.to_double() * *o.corrected_sup * *o.corrected_sup, o.name);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  for (auto& [score, name] : keyed) out.push_back(std::move(name));
  return out;
}

std::vector<std::string> rank_sources_lower(const std::vector<SourceOffer>& offers) {
  std::vector<std::string> out;
  for (std::size_t i : density_order(offers)) out.push_back(offers[i].name);
  return out;
}

}  // namespace corruptlab
