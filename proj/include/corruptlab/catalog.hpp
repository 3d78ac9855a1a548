#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "corruptlab/kernels.hpp"

namespace corruptlab {

/// Binary labels {-1, +1}; σ₋₁ and σ₁ are the flip probabilities of each class.
struct BinaryLabelNoise {
  double sigma_neg;
  double sigma_pos;
};

/// k classes {1..k}; a label is kept with probability 1 − σ and otherwise
/// replaced uniformly by one of the other k − 1 classes.
struct SymmetricLabelNoise {
  int classes;
  double sigma;
};

/// Binary labels observed over {-1, +1, ?}; class i keeps its label with
/// probability σᵢ and is erased to "?" otherwise.
struct SemiSupervised {
  double sigma_neg;
  double sigma_pos;
};

/// Three classes observed as non-empty subsets of {1,2,3}; the true label is
/// always present and each other label is added independently with
/// probability σ.
struct PartialLabels {
  double sigma;
};

using CorruptionSpec = std::variant<BinaryLabelNoise, SymmetricLabelNoise, SemiSupervised, PartialLabels>;

/// Throws InvalidParameter for probabilities outside [0, 1] or k < 2.
void validate(const CorruptionSpec& spec);

std::string family_name(const CorruptionSpec& spec);

Space binary_labels();
/// Binary-counting order 001, 010, ..., 111; bit i (left to right) marks label i+1.
Space partial_label_space();

Kernel build_kernel(const CorruptionSpec& spec);

struct ClosedFormStats {
  double alpha;
  std::optional<double> row_norm;
  std::optional<double> corrected01_norm;
};

/// Closed-form α, ‖R*‖∞ and ‖ℓ̃₀₁‖∞ where they are known. Norms are empty
/// when no closed form is available or the kernel is not reconstructible.
ClosedFormStats closed_form_stats(const CorruptionSpec& spec);

/// The published symmetric semi-supervised ‖ℓ̃₀₁‖∞ expression,
/// (1 − 2σ + 2σ²)/(2σ + 3σ − 5σ²), kept verbatim for comparison only. It
/// disagrees with the computed norm and is never used as a statistic.
double published_semisupervised_corrected01(double sigma);

/// One-parameter slice of a family, as used by table reproduction:
/// "binary-noise" (σ, σ), "symmetric-noise" (k, σ), "semi-supervised" (σ, σ),
/// "partial-labels" σ. Throws UnknownFamily.
CorruptionSpec family_at(std::string_view family, double param, int classes = 3);

struct TableRow {
  double param;
  bool reconstructible;
  double alpha_closed;
  double alpha_numeric;
  std::optional<double> row_norm_closed;
  std::optional<double> row_norm_numeric;
  std::optional<double> corrected01_closed;
  std::optional<double> corrected01_numeric;
  double max_abs_diff;  // over the closed/numeric pairs that are both present
  std::string note;
};

/// Closed-form vs numeric statistics for every grid point of a family.
std::vector<TableRow> reproduce_table(std::string_view family, const std::vector<double>& grid, int classes = 3);

}  // namespace corruptlab
