#pragma once

#include <json.hpp>

#include <vector>

#include "corruptlab/bounds.hpp"
#include "corruptlab/catalog.hpp"
#include "corruptlab/kernels.hpp"
#include "corruptlab/planner.hpp"
#include "corruptlab/reconstruct.hpp"
#include "corruptlab/simlab.hpp"

// JSON wire formats. Readers throw Error(ParseError) for structural problems
// and the owning module's error for semantic ones (NotStochastic, ...).
namespace corruptlab::json_io {

using nlohmann::json;

/// Parses text; throws ParseError with the parser's diagnostic.
json parse(std::string_view text);

Space space_from_json(const json& j);

/// {"from": [...], "to": [...], "matrix": [[...]]}, matrix[k][j] = P(to_k | from_j).
Kernel kernel_from_json(const json& j);
json to_json(const Kernel& k);

/// {"space": [...], "weights": [...]}
Dist dist_from_json(const json& j);
json to_json(const Dist& d);

/// {"outcomes": [...], "actions": [...], "values": [[...]]}, values[z][a].
LossTable loss_from_json(const json& j);
json to_json(const LossTable& l);

/// {"matrix": [[...]], "residual": r}
json to_json(const Reconstruction& r);

/// {"family": "binary_label_noise", "params": {"sigma_neg": .., "sigma_pos": ..}}
/// {"family": "symmetric_label_noise", "params": {"classes": k, "sigma": ..}}
/// {"family": "semi_supervised", "params": {"sigma_neg": .., "sigma_pos": ..}}
/// {"family": "partial_labels", "params": {"sigma": ..}}
CorruptionSpec spec_from_json(const json& j);
json to_json(const CorruptionSpec& s);

/// A kernel object, a spec object, or a spec with "instances": [...] which
/// applies the label corruption alongside the identity on those instances.
Kernel corruption_from_json(const json& j);

/// {"thetas": [...], "actions": [...], "loss": [[...]], "experiment": kernel}
DecisionProblem problem_from_json(const json& j);

/// {"sources": [{"kernel": kernel, "count": n, "corrected_sup": s?}, ...]}
/// α is always computed from the kernel.
MixedCorruption mix_from_json(const json& j);

/// [{"name", "alpha", "corrected_sup"?, "cost": {"num", "den"}}, ...]
std::vector<SourceOffer> offers_from_json(const json& j);
json to_json(const AcquisitionPlan& p);

/// {"clean_dist": dist, "loss": loss, "corruption": ..., "sample_sizes": [...],
///  "trials": t, "seed": s, "threads"?: k}
ExperimentConfig config_from_json(const json& j);

}  // namespace corruptlab::json_io
