#include "corruptlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "corruptlab/divergence.hpp"
#include "corruptlab/error.hpp"
#include "corruptlab/reconstruct.hpp"

namespace corruptlab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

// Below this |det|-like quantity the closed forms divide by zero.
constexpr double kDegenerate = 1e-12;

}  // namespace

void validate(const CorruptionSpec& spec) {
  std::visit(overloaded{
                 [](const BinaryLabelNoise& s) {
                   check_prob(s.sigma_neg, "sigma_neg");
                   check_prob(s.sigma_pos, "sigma_pos");
                 },
                 [](const SymmetricLabelNoise& s) {
                   if (s.classes < 2) throw Error(ErrorCode::InvalidParameter, "need at least 2 classes");
                   check_prob(s.sigma, "sigma");
                 },
                 [](const SemiSupervised& s) {
                   check_prob(s.sigma_neg, "sigma_neg");
                   check_prob(s.sigma_pos, "sigma_pos");
                 },
                 [](const PartialLabels& s) { check_prob(s.sigma, "sigma"); },
             },
             spec);
}

std::string family_name(const CorruptionSpec& spec) {
  return std::visit(overloaded{
                        [](const BinaryLabelNoise&) { return std::string("binary_label_noise"); },
                        [](const SymmetricLabelNoise&) { return std::string("symmetric_label_noise"); },
                        [](const SemiSupervised&) { return std::string("semi_supervised"); },
                        [](const PartialLabels&) { return std::string("partial_labels"); },
                    },
                    spec);
}

Space binary_labels() { return Space({"-1", "+1"}); }

Space partial_label_space() { return Space({"001", "010", "011", "100", "101", "110", "111"}); }

Kernel build_kernel(const CorruptionSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const BinaryLabelNoise& s) {
            return Kernel(binary_labels(), binary_labels(),
                          Matrix::from_rows({{1.0 - s.sigma_neg, s.sigma_pos}, {s.sigma_neg, 1.0 - s.sigma_pos}}));
          },
          [](const SymmetricLabelNoise& s) {
            const auto k = static_cast<std::size_t>(s.classes);
            std::vector<std::string> labels;
            for (std::size_t i = 1; i <= k; ++i) labels.push_back(std::to_string(i));
            Matrix m(k, k, s.sigma / static_cast<double>(k - 1));
            for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0 - s.sigma;
            Space space(std::move(labels));
            return Kernel(space, space, std::move(m));
          },
          [](const SemiSupervised& s) {
            return Kernel(binary_labels(), Space({"-1", "+1", "?"}),
                          Matrix::from_rows({{s.sigma_neg, 0.0},
                                             {0.0, s.sigma_pos},
                                             {1.0 - s.sigma_neg, 1.0 - s.sigma_pos}}));
          },
          [](const PartialLabels& s) {
            const Space to = partial_label_space();
            Matrix m(to.size(), 3);
            for (std::size_t row = 0; row < to.size(); ++row) {
              const std::string& bits = to.label(row);
              const auto present = static_cast<int>(std::count(bits.begin(), bits.end(), '1'));
              for (std::size_t y = 0; y < 3; ++y) {
                if (bits[y] != '1') continue;
                // present − 1 spurious labels added, 3 − present withheld
                m(row, y) = std::pow(s.sigma, present - 1) * std::pow(1.0 - s.sigma, 3 - present);
              }
            }
            return Kernel(Space({"1", "2", "3"}), to, std::move(m));
          },
      },
      spec);
}

ClosedFormStats closed_form_stats(const CorruptionSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const BinaryLabelNoise& s) {
            const double det = std::abs(1.0 - s.sigma_neg - s.sigma_pos);
            ClosedFormStats out{det, std::nullopt, std::nullopt};
            if (det > kDegenerate) {
              out.row_norm = std::max(1.0 - s.sigma_neg + s.sigma_pos, 1.0 - s.sigma_pos + s.sigma_neg) / det;
              out.corrected01_norm =
                  std::max({1.0 - s.sigma_neg, 1.0 - s.sigma_pos, s.sigma_neg, s.sigma_pos}) / det;
            }
            return out;
          },
          [](const SymmetricLabelNoise& s) {
            // T = aI + b𝟙𝟙ᵀ with b = σ/(k−1), a = 1 − kb; T⁻¹ = (I − b𝟙𝟙ᵀ)/a.
            const double k = s.classes;
            const double b = s.sigma / (k - 1.0);
            const double a = std::abs(1.0 - k * b);
            ClosedFormStats out{a, std::nullopt, std::nullopt};
            if (a > kDegenerate) {
              out.row_norm = (1.0 + (k - 2.0) * b) / a;
              out.corrected01_norm = std::max(s.sigma, 1.0 - s.sigma) / a;
            }
            return out;
          },
          [](const SemiSupervised& s) {
            ClosedFormStats out{std::max(s.sigma_neg, s.sigma_pos), std::nullopt, std::nullopt};
            if (s.sigma_neg == s.sigma_pos && s.sigma_pos > kDegenerate) out.row_norm = 1.0 / s.sigma_pos;
            return out;
          },
          [](const PartialLabels& s) { return ClosedFormStats{1.0 - s.sigma, std::nullopt, std::nullopt}; },
      },
      spec);
}

double published_semisupervised_corrected01(double sigma) {
  return (1.0 - 2.0 * sigma + 2.0 * sigma * sigma) / (2.0 * sigma + 3.0 * sigma - 5.0 * sigma * sigma);
}

CorruptionSpec family_at(std::string_view family, double param, int classes) {
  if (family == "binary-noise") return BinaryLabelNoise{param, param};
  if (family == "symmetric-noise") return SymmetricLabelNoise{classes, param};
  if (family == "semi-supervised") return SemiSupervised{param, param};
  if (family == "partial-labels") return PartialLabels{param};
  throw Error(ErrorCode::UnknownFamily, "unknown family '" + std::string(family) +
                                            "' (expected binary-noise, symmetric-noise, semi-supervised, "
                                            "partial-labels)");
}

std::vector<TableRow> reproduce_table(std::string_view family, const std::vector<double>& grid, int classes) {
  std::vector<TableRow> rows;
  rows.reserve(grid.size());
  for (double param : grid) {
    const CorruptionSpec spec = family_at(family, param, classes);
    const Kernel t = build_kernel(spec);
    const ClosedFormStats closed = closed_form_stats(spec);

    TableRow row{};
    row.param = param;
    row.alpha_closed = closed.alpha;
    row.alpha_numeric = alpha(t);
    row.row_norm_closed = closed.row_norm;
    row.corrected01_closed = closed.corrected01_norm;
    row.max_abs_diff = std::abs(row.alpha_closed - row.alpha_numeric);
    row.reconstructible = is_reconstructible(t);

    if (!row.reconstructible) {
      row.note = "not reconstructible";
      rows.push_back(std::move(row));
      continue;
    }
    const Reconstruction r = pseudoinverse(t);
    row.row_norm_numeric = op_norm_row_sum(r);
    row.corrected01_numeric = corrected_sup_norm(r, zero_one_loss(t.from()));
    if (row.row_norm_closed) {
      row.max_abs_diff = std::max(row.max_abs_diff, std::abs(*row.row_norm_closed - *row.row_norm_numeric));
    }
    if (row.corrected01_closed) {
      row.max_abs_diff =
          std::max(row.max_abs_diff, std::abs(*row.corrected01_closed - *row.corrected01_numeric));
    }

    if (std::holds_alternative<SemiSupervised>(spec)) {
      // Shown for comparison but excluded from max_abs_diff.
      const double published = published_semisupervised_corrected01(param);
      row.corrected01_closed = published;
      const double gap = std::abs(published - *row.corrected01_numeric);
      if (gap > 1e-9) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "published corrected01 differs by %.6g", gap);
        row.note = buf;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace corruptlab
