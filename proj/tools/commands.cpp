#include "commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "corruptlab/bounds.hpp"
#include "corruptlab/catalog.hpp"
#include "corruptlab/divergence.hpp"
#include "corruptlab/error.hpp"
#include "corruptlab/format.hpp"
#include "corruptlab/json_io.hpp"
#include "corruptlab/planner.hpp"
#include "corruptlab/reconstruct.hpp"
#include "corruptlab/simlab.hpp"

namespace corruptlab::cli {
namespace {

using json_io::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return json_io::parse(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::size_t resolve_theta(const DecisionProblem& problem, const std::string& token) {
  std::size_t idx = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), idx);
  if (ec == std::errc() && ptr == token.data() + token.size()) return idx;
  return problem.thetas().index_of(token);
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string kernel;
  std::string loss;
  std::string export_reconstruction;
};

void cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const Kernel t = json_io::kernel_from_json(read_json_file(a.kernel));
  std::optional<LossTable> loss;
  if (!a.loss.empty()) loss = json_io::loss_from_json(read_json_file(a.loss));

  json report;
  report["alpha"] = alpha(t);
  report["lambda"] = lambda_coeff(t);
  const bool ok = is_reconstructible(t);
  report["reconstructible"] = ok;
  report["row_norm"] = nullptr;
  if (loss) report["corrected_sup"] = nullptr;
  if (ok) {
    const Reconstruction r = pseudoinverse(t);
    report["row_norm"] = op_norm_row_sum(r);
    if (loss) report["corrected_sup"] = corrected_sup_norm(r, *loss);
    if (!a.export_reconstruction.empty()) {
      write_text_file(a.export_reconstruction, json_io::to_json(r).dump(2) + "\n");
    }
  }
  out << report.dump(2) << '\n';
}

// --- tables ----------------------------------------------------------------

struct TablesArgs {
  std::string family;
  std::string grid = "0:0.45:0.05";
  int classes = 3;
};

void cmd_tables(const TablesArgs& a, std::ostream& out) {
  const auto rows = reproduce_table(a.family, parse_grid(a.grid), a.classes);
  out << "param,alpha_closed,alpha_numeric,row_norm_closed,row_norm_numeric,corrected01_closed,"
         "corrected01_numeric,max_abs_diff,note\n";
  for (const auto& r : rows) {
    out << format_double(r.param) << ',' << format_double(r.alpha_closed) << ',' << format_double(r.alpha_numeric)
        << ',' << cell(r.row_norm_closed) << ',' << cell(r.row_norm_numeric) << ',' << cell(r.corrected01_closed)
        << ',' << cell(r.corrected01_numeric) << ',' << format_double(r.max_abs_diff) << ',' << r.note << '\n';
  }
}

// --- plan ------------------------------------------------------------------

struct PlanArgs {
  std::string offers;
  std::string budget;
};

void cmd_plan(const PlanArgs& a, std::ostream& out) {
  const auto offers = json_io::offers_from_json(read_json_file(a.offers));
  const Rational budget = Rational::parse(a.budget);
  json report;
  report["budget"] = {{"num", budget.num()}, {"den", budget.den()}};
  report["greedy"] = json_io::to_json(greedy_plan(offers, budget));
  report["exact"] = json_io::to_json(exact_plan(offers, budget));
  report["rank_lower"] = rank_sources_lower(offers);
  try {
    report["rank_upper"] = rank_sources_upper(offers);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MissingStatistic) throw;
    report["rank_upper"] = nullptr;
  }
  out << report.dump(2) << '\n';
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string mode = "risk";
};

void cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const ExperimentConfig config = json_io::config_from_json(read_json_file(a.config));
  std::ostringstream csv;
  json summary;
  if (a.mode == "fast-rate") {
    const FastRateReport report = fastrate_curve(config);
    write_csv(report.curve, csv);
    summary["bernstein_clean"] = report.bernstein_clean;
    summary["eta"] = report.eta;
    summary["mean_decay_ratio"] = report.mean_decay_ratio ? json(*report.mean_decay_ratio) : json(nullptr);
    summary["rows"] = report.curve.rows.size();
  } else {
    const RiskCurve curve = risk_curve(config);
    write_csv(curve, csv);
    summary["rows"] = curve.rows.size();
  }
  summary["mode"] = a.mode;
  write_text_file(a.out, csv.str());
  out << summary.dump(2) << '\n';
}

// --- lecam -----------------------------------------------------------------

struct LecamArgs {
  std::string problem;
  std::string theta1;
  std::string theta2;
  std::optional<double> n;
  std::string kernel;
  std::string mix;
};

void cmd_lecam(const LecamArgs& a, std::ostream& out) {
  const DecisionProblem problem = json_io::problem_from_json(read_json_file(a.problem));
  const std::size_t t1 = resolve_theta(problem, a.theta1);
  const std::size_t t2 = resolve_theta(problem, a.theta2);
  json report;
  report["separation"] = separation(problem, t1, t2);
  report["variational"] = variational(problem.experiment().column(t1), problem.experiment().column(t2));

  double effective = 0.0;
  double bound = 0.0;
  if (!a.mix.empty()) {
    if (a.n) throw Error(ErrorCode::InvalidParameter, "--n and --mix are exclusive; counts come from the mix file");
    const MixedCorruption mix = json_io::mix_from_json(read_json_file(a.mix));
    report["mode"] = "mixed";
    effective = mix.effective_count();
    bound = lecam_mixed(problem, mix, t1, t2);
  } else {
    const double n = a.n.value_or(1.0);
    if (!a.kernel.empty()) {
      const Kernel t = json_io::kernel_from_json(read_json_file(a.kernel));
      report["mode"] = "corrupted";
      report["alpha"] = alpha(t);
      effective = alpha(t) * n;
      bound = lecam_corrupted(problem, t, t1, t2, n);
    } else {
      report["mode"] = "replicated";
      effective = n;
      bound = lecam_replicated(problem, t1, t2, n);
    }
  }
  report["effective_n"] = effective;
  report["bound"] = bound;
  report["unclamped"] = lecam_unclamped(problem, t1, t2, effective);
  out << report.dump(2) << '\n';
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3) throw Error(ErrorCode::ParseError, "grid must be start:end:step");
  const double lo = parse_number(parts[0]), hi = parse_number(parts[1]), step = parse_number(parts[2]);
  if (!(step > 0.0) || !(hi >= lo)) throw Error(ErrorCode::ParseError, "grid needs step > 0 and end >= start");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    if (x > hi + 1e-12) break;
    // snap to 12 decimals so 3·0.05 prints as 0.15
    grid.push_back(std::round(x * 1e12) / 1e12);
    if (grid.size() > 1'000'000) throw Error(ErrorCode::ParseError, "grid too large");
  }
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corrupted-learning analysis toolkit", "corruptlab-cli"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* sub_analyze = app.add_subcommand("analyze", "Statistics of a corruption kernel");
  sub_analyze->add_option("--kernel", analyze.kernel, "Kernel JSON file")->required();
  sub_analyze->add_option("--loss", analyze.loss, "Loss table JSON file");
  sub_analyze->add_option("--export-reconstruction", analyze.export_reconstruction,
                          "Write the Moore-Penrose reconstruction JSON here");

  TablesArgs tables;
  auto* sub_tables = app.add_subcommand("tables", "Closed-form vs numeric statistics for a corruption family");
  sub_tables->add_option("--family", tables.family, "binary-noise | symmetric-noise | semi-supervised | partial-labels")
      ->required();
  sub_tables->add_option("--grid", tables.grid, "start:end:step (inclusive)");
  sub_tables->add_option("--classes", tables.classes, "Classes for symmetric-noise");

  PlanArgs plan;
  auto* sub_plan = app.add_subcommand("plan", "Budgeted data acquisition");
  sub_plan->add_option("--offers", plan.offers, "Offers JSON file")->required();
  sub_plan->add_option("--budget", plan.budget, "Budget as an integer, fraction or decimal")->required();

  SimulateArgs simulate;
  auto* sub_sim = app.add_subcommand("simulate", "Monte-Carlo risk curves");
  sub_sim->add_option("--config", simulate.config, "Experiment config JSON file")->required();
  sub_sim->add_option("--out", simulate.out, "CSV output path")->required();
  sub_sim->add_option("--mode", simulate.mode, "risk | fast-rate")->check(CLI::IsMember({"risk", "fast-rate"}));

  LecamArgs lecam;
  auto* sub_lecam = app.add_subcommand("lecam", "Two-point minimax lower bounds");
  sub_lecam->add_option("--problem", lecam.problem, "Decision problem JSON file")->required();
  sub_lecam->add_option("--theta1", lecam.theta1, "Hypothesis index or name")->required();
  sub_lecam->add_option("--theta2", lecam.theta2, "Hypothesis index or name")->required();
  sub_lecam->add_option("--n", lecam.n, "Sample count (default 1)");
  auto* opt_kernel = sub_lecam->add_option("--kernel", lecam.kernel, "Corruption kernel JSON file");
  auto* opt_mix = sub_lecam->add_option("--mix", lecam.mix, "Mixed corruption JSON file");
  opt_kernel->excludes(opt_mix);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*sub_analyze) cmd_analyze(analyze, out);
    if (*sub_tables) cmd_tables(tables, out);
    if (*sub_plan) cmd_plan(plan, out);
    if (*sub_sim) cmd_simulate(simulate, out);
    if (*sub_lecam) cmd_lecam(lecam, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kExitNumerical : kExitInput;
  }
  return kExitOk;
}

}  // namespace corruptlab::cli
