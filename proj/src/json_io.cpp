#include "corruptlab/json_io.hpp"

#include "corruptlab/error.hpp"

namespace corruptlab::json_io {
namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad value for '") + key + "': " + e.what());
  }
}

const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
  return j.at(key);
}

Matrix matrix_from_json(const json& j, const char* key) {
  return Matrix::from_rows(get<std::vector<std::vector<double>>>(j, key));
}

template <class T>
T convert(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Space space_from_json(const json& j) { return Space(convert<std::vector<std::string>>(j, "space labels")); }

Kernel kernel_from_json(const json& j) {
  return Kernel(space_from_json(at(j, "from")), space_from_json(at(j, "to")), matrix_from_json(j, "matrix"));
}

json to_json(const Kernel& k) {
  return {{"from", k.from().labels()}, {"to", k.to().labels()}, {"matrix", k.matrix().to_rows()}};
}

Dist dist_from_json(const json& j) {
  return Dist(Space(get<std::vector<std::string>>(j, "space")), get<std::vector<double>>(j, "weights"));
}

json to_json(const Dist& d) {
  return {{"space", d.space().labels()}, {"weights", std::vector<double>(d.weights().begin(), d.weights().end())}};
}

LossTable loss_from_json(const json& j) {
  return LossTable(Space(get<std::vector<std::string>>(j, "outcomes")), Space(get<std::vector<std::string>>(j, "actions")),
                   matrix_from_json(j, "values"));
}

json to_json(const LossTable& l) {
  return {{"outcomes", l.outcomes().labels()}, {"actions", l.actions().labels()}, {"values", l.values().to_rows()}};
}

json to_json(const Reconstruction& r) { return {{"matrix", r.matrix().to_rows()}, {"residual", r.residual()}}; }

CorruptionSpec spec_from_json(const json& j) {
  const auto family = get<std::string>(j, "family");
  const json params = j.contains("params") ? j.at("params") : json::object();
  CorruptionSpec spec;
  if (family == "binary_label_noise") {
    spec = BinaryLabelNoise{get<double>(params, "sigma_neg"), get<double>(params, "sigma_pos")};
  } else if (family == "symmetric_label_noise") {
    spec = SymmetricLabelNoise{get<int>(params, "classes"), get<double>(params, "sigma")};
  } else if (family == "semi_supervised") {
    spec = SemiSupervised{get<double>(params, "sigma_neg"), get<double>(params, "sigma_pos")};
  } else if (family == "partial_labels") {
    spec = PartialLabels{get<double>(params, "sigma")};
  } else {
    throw Error(ErrorCode::UnknownFamily, "unknown family '" + family + "'");
  }
  validate(spec);
  return spec;
}

json to_json(const CorruptionSpec& s) {
  json params;
  if (const auto* b = std::get_if<BinaryLabelNoise>(&s)) {
    params = {{"sigma_neg", b->sigma_neg}, {"sigma_pos", b->sigma_pos}};
  } else if (const auto* k = std::get_if<SymmetricLabelNoise>(&s)) {
    params = {{"classes", k->classes}, {"sigma", k->sigma}};
  } else if (const auto* ss = std::get_if<SemiSupervised>(&s)) {
    params = {{"sigma_neg", ss->sigma_neg}, {"sigma_pos", ss->sigma_pos}};
  } else if (const auto* p = std::get_if<PartialLabels>(&s)) {
    params = {{"sigma", p->sigma}};
  }
  return {{"family", family_name(s)}, {"params", params}};
}

Kernel corruption_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "corruption must be an object");
  if (j.contains("matrix")) return kernel_from_json(j);
  Kernel labels = build_kernel(spec_from_json(j));
  if (!j.contains("instances")) return labels;
  const std::vector<Kernel> parts{identity_kernel(space_from_json(j.at("instances"))), std::move(labels)};
  return parallel_product(parts);
}

DecisionProblem problem_from_json(const json& j) {
  return DecisionProblem(Space(get<std::vector<std::string>>(j, "thetas")),
                         Space(get<std::vector<std::string>>(j, "actions")), matrix_from_json(j, "loss"),
                         kernel_from_json(at(j, "experiment")));
}

MixedCorruption mix_from_json(const json& j) {
  MixedCorruption mix;
  const auto sources = get<std::vector<json>>(j, "sources");
  if (sources.empty()) throw Error(ErrorCode::ParseError, "'sources' is empty");
  for (const auto& s : sources) {
    auto src = make_source(kernel_from_json(at(s, "kernel")), get<std::size_t>(s, "count"));
    if (s.contains("corrected_sup")) src.corrected_sup = get<double>(s, "corrected_sup");
    mix.sources.push_back(std::move(src));
  }
  return mix;
}

std::vector<SourceOffer> offers_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "offers must be an array");
  std::vector<SourceOffer> offers;
  for (const auto& o : j) {
    SourceOffer offer{get<std::string>(o, "name"), get<double>(o, "alpha"), std::nullopt,
                      Rational(get<std::int64_t>(at(o, "cost"), "num"), get<std::int64_t>(at(o, "cost"), "den"))};
    if (o.contains("corrected_sup") && !o.at("corrected_sup").is_null()) {
      offer.corrected_sup = get<double>(o, "corrected_sup");
    }
    offers.push_back(std::move(offer));
  }
  return offers;
}

json to_json(const AcquisitionPlan& p) {
  json counts = json::object();
  for (const auto& [name, n] : p.counts) counts[name] = n;
  return {{"counts", counts},
          {"objective", p.objective},
          {"spend", {{"num", p.spend.num()}, {"den", p.spend.den()}}}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c{dist_from_json(at(j, "clean_dist")),
                     loss_from_json(at(j, "loss")),
                     corruption_from_json(at(j, "corruption")),
                     get<std::vector<std::size_t>>(j, "sample_sizes"),
                     get<std::size_t>(j, "trials"),
                     get<std::uint64_t>(j, "seed"),
                     j.contains("threads") ? get<std::size_t>(j, "threads") : 1};
  validate(c);
  return c;
}

}  // namespace corruptlab::json_io
