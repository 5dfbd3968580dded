// Copyright 2026 The pguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "pguess/bibo.h"
#include "pguess/distribution.h"
#include "pguess/filter_solver.h"
#include "pguess/guess_curve.h"
#include "pguess/montecarlo.h"
#include "pguess/vector_binary.h"

namespace pguess::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int kDefaultPoints = 21;
constexpr double kValidationStdErrors = 4.0;

std::string Fmt(double x) { return absl::StrFormat("%.12g", x); }

// Rounds to the 12 significant digits used for every printed number.
double Num(double x) { return std::strtod(Fmt(x).c_str(), nullptr); }

json NumArray(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(Num(v));
  return arr;
}

json MatrixJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Num(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kInternal:
    case absl::StatusCode::kUnknown:
    case absl::StatusCode::kDataLoss:
      return kExitInternal;
    default:
      return kExitDomain;
  }
}

int Fail(const absl::Status& status, std::ostream& err) {
  err << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

int UsageError(std::string_view message, std::ostream& err) {
  err << "usage error: " << message << "\n";
  return kExitUsage;
}

// Parsed matrix from a JSON array of equal-length numeric rows.
std::optional<Eigen::MatrixXd> ParseMatrix(const json& node,
                                           std::string* problem) {
  if (!node.is_array() || node.empty()) {
    *problem = "expected a non-empty array of rows";
    return std::nullopt;
  }
  const size_t cols = node[0].is_array() ? node[0].size() : 0;
  if (cols == 0) {
    *problem = "rows must be non-empty arrays";
    return std::nullopt;
  }
  Eigen::MatrixXd m(node.size(), cols);
  for (size_t i = 0; i < node.size(); ++i) {
    const json& row = node[i];
    if (!row.is_array() || row.size() != cols) {
      *problem = absl::StrFormat("row %d does not have %d entries", i, cols);
      return std::nullopt;
    }
    for (size_t j = 0; j < cols; ++j) {
      if (!row[j].is_number()) {
        *problem = absl::StrFormat("entry (%d, %d) is not a number", i, j);
        return std::nullopt;
      }
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

struct LoadedFile {
  std::optional<JointDistribution> joint;
  std::optional<Channel> filter;
};

// Reads a distribution file. Malformed input is a usage error; a matrix that
// parses but is not a distribution is a domain error.
int LoadDistributionFile(const std::string& path, bool want_filter,
                         LoadedFile* loaded, std::ostream& err) {
  std::ifstream in(path);
  if (!in) return UsageError(absl::StrFormat("cannot read '%s'", path), err);
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    return UsageError(absl::StrFormat("'%s' is not a JSON object", path), err);
  }
  if (!doc.contains("joint")) {
    return UsageError(absl::StrFormat("'%s' has no \"joint\" key", path), err);
  }
  std::string problem;
  std::optional<Eigen::MatrixXd> m = ParseMatrix(doc["joint"], &problem);
  if (!m) return UsageError(absl::StrFormat("\"joint\": %s", problem), err);
  for (const char* key : {"labels_x", "labels_y"}) {
    if (!doc.contains(key)) continue;
    const json& labels = doc[key];
    const Eigen::Index expected =
        std::string_view(key) == "labels_x" ? m->rows() : m->cols();
    if (!labels.is_array() ||
        static_cast<Eigen::Index>(labels.size()) != expected) {
      return UsageError(absl::StrFormat("\"%s\" must be an array of %d strings",
                                        key, expected),
                        err);
    }
    for (const json& label : labels) {
      if (!label.is_string()) {
        return UsageError(absl::StrFormat("\"%s\" must hold strings", key),
                          err);
      }
    }
  }
  absl::StatusOr<JointDistribution> joint =
      JointDistribution::Create(std::move(*m));
  if (!joint.ok()) return Fail(joint.status(), err);
  loaded->joint = std::move(*joint);
  if (want_filter) {
    if (!doc.contains("filter")) {
      return UsageError(absl::StrFormat("'%s' has no \"filter\" key", path),
                        err);
    }
    std::optional<Eigen::MatrixXd> f = ParseMatrix(doc["filter"], &problem);
    if (!f) return UsageError(absl::StrFormat("\"filter\": %s", problem), err);
    absl::StatusOr<Channel> filter = Channel::Create(std::move(*f));
    if (!filter.ok()) return Fail(filter.status(), err);
    loaded->filter = std::move(*filter);
  }
  return kExitOk;
}

struct GridFlags {
  std::optional<double> eps;
  std::optional<double> eps_min;
  std::optional<double> eps_max;
  int points = kDefaultPoints;
};

// Either the single --eps value or `points` evenly spaced values.
int BuildGrid(const GridFlags& flags, double default_lo, double default_hi,
              std::vector<double>* grid, std::ostream& err) {
  if (flags.eps) {
    if (flags.eps_min || flags.eps_max) {
      return UsageError("--eps cannot be combined with --eps-min/--eps-max",
                        err);
    }
    *grid = {*flags.eps};
    return kExitOk;
  }
  if (flags.points < 2) return UsageError("--points must be >= 2", err);
  const double lo = flags.eps_min.value_or(default_lo);
  const double hi = flags.eps_max.value_or(default_hi);
  if (!(hi > lo)) {
    return UsageError(
        absl::StrFormat("eps range [%s, %s] is empty", Fmt(lo), Fmt(hi)), err);
  }
  grid->resize(flags.points);
  for (int i = 0; i < flags.points; ++i) {
    (*grid)[i] = i + 1 == flags.points
                     ? hi
                     : lo + (hi - lo) * static_cast<double>(i) /
                                (flags.points - 1);
  }
  return kExitOk;
}

// Interprets a 2x2 joint with P(X = 1) >= 1/2 as a BIBO model.
std::optional<BiboParams> AsBibo(const JointDistribution& joint) {
  if (joint.rows() != 2 || joint.cols() != 2) return std::nullopt;
  const double p = joint(1, 0) + joint(1, 1);
  if (p <= 0.0 || p >= 1.0) return std::nullopt;
  absl::StatusOr<BiboParams> params =
      BiboParams::Create(p, joint(0, 1) / (1.0 - p), joint(1, 0) / p);
  if (!params.ok() || ClassifyBranch(*params) == BiboBranch::kDegenerate) {
    return std::nullopt;
  }
  return *params;
}

int WriteCurveCsv(const JointDistribution& joint,
                  const std::vector<double>& grid, std::ostream& csv,
                  std::ostream& err) {
  const std::optional<BiboParams> bibo = AsBibo(joint);
  std::ostringstream body;
  body << "epsilon,h,branch,filter_gamma\n";
  for (double eps : grid) {
    absl::StatusOr<FilterSolution> sol = SolvePrivacyAwareGuessing(joint, eps);
    if (!sol.ok()) return Fail(sol.status(), err);
    std::string branch = "GENERAL", gamma;
    if (bibo) {
      absl::StatusOr<BiboFrontierPoint> point =
          BiboGuessingFrontier(*bibo, eps);
      if (point.ok()) {
        branch = std::string(BiboBranchName(point->branch));
        gamma = Fmt(point->zeta);
      }
    }
    body << Fmt(eps) << "," << Fmt(sol->utility) << "," << branch << ","
         << gamma << "\n";
  }
  csv << body.str();
  return kExitOk;
}

struct PcFlags {
  std::string joint;
};

int RunPc(const PcFlags& flags, std::ostream& out, std::ostream& err) {
  LoadedFile file;
  if (int code = LoadDistributionFile(flags.joint, false, &file, err)) {
    return code;
  }
  const JointDistribution& joint = *file.joint;
  json doc;
  doc["pc_x"] = Num(GuessProb(joint, Axis::kRows));
  doc["pc_y"] = Num(GuessProb(joint, Axis::kCols));
  doc["pc_x_given_y"] = Num(CondGuessProb(joint, Axis::kRows));
  doc["pc_y_given_x"] = Num(CondGuessProb(joint, Axis::kCols));
  out << doc.dump() << "\n";
  return kExitOk;
}

struct HcurveFlags {
  std::string joint;
  GridFlags grid;
  bool breakpoints = false;
  std::string csv_path;
  double slope_tol = CurveOptions{}.slope_tol;
};

int RunHcurve(const HcurveFlags& flags, std::ostream& out, std::ostream& err) {
  LoadedFile file;
  if (int code = LoadDistributionFile(flags.joint, false, &file, err)) {
    return code;
  }
  const JointDistribution& joint = *file.joint;
  const double lo = GuessProb(joint, Axis::kRows);
  const double hi = CondGuessProb(joint, Axis::kRows);
  if (!flags.grid.eps && !flags.grid.eps_min && !flags.grid.eps_max &&
      !(hi > lo)) {
    return Fail(absl::FailedPreconditionError(absl::StrFormat(
                    "P_c(X|Y) = P_c(X) = %s: the eps domain is a single point",
                    Fmt(lo))),
                err);
  }
  std::vector<double> grid;
  if (int code = BuildGrid(flags.grid, lo, hi, &grid, err)) return code;

  if (!flags.breakpoints) return WriteCurveCsv(joint, grid, out, err);

  CurveOptions options;
  options.slope_tol = flags.slope_tol;
  absl::StatusOr<GuessCurve> curve = TraceGuessCurve(joint, options);
  if (!curve.ok()) return Fail(curve.status(), err);
  if (!flags.csv_path.empty()) {
    std::ofstream csv(flags.csv_path);
    if (!csv) {
      return UsageError(
          absl::StrFormat("cannot write '%s'", flags.csv_path), err);
    }
    if (int code = WriteCurveCsv(joint, grid, csv, err)) return code;
  }
  json doc;
  doc["K"] = curve->num_segments();
  doc["breakpoints"] = NumArray(curve->breakpoints);
  doc["slopes"] = NumArray(curve->slopes);
  out << doc.dump() << "\n";
  return kExitOk;
}

struct BiboFlags {
  double p = 0.0, alpha = 0.0, beta = 0.0;
  std::optional<double> eps;
};

int RunBibo(const BiboFlags& flags, std::ostream& out, std::ostream& err) {
  absl::StatusOr<BiboParams> params =
      BiboParams::Create(flags.p, flags.alpha, flags.beta);
  if (!params.ok()) return Fail(params.status(), err);
  const BiboBranch branch = ClassifyBranch(*params);
  if (branch == BiboBranch::kDegenerate) {
    err << BiboBranchName(branch) << ": (1-alpha)(1-p) <= beta p, so "
        << "P_c(X|Y) = P_c(X) = " << Fmt(params->p())
        << " and the privacy constraint is vacuous\n";
    return kExitDomain;
  }
  absl::StatusOr<double> perfect = PerfectPrivacyUtility(*params);
  if (!perfect.ok()) return Fail(perfect.status(), err);
  absl::StatusOr<bool> nontrivial = HasNontrivialUtility(*params);
  if (!nontrivial.ok()) return Fail(nontrivial.status(), err);

  json doc;
  if (flags.eps) {
    absl::StatusOr<BiboFrontierPoint> point =
        BiboGuessingFrontier(*params, *flags.eps);
    if (!point.ok()) return Fail(point.status(), err);
    absl::StatusOr<Channel> filter = BiboOptimalFilter(*params, *flags.eps);
    if (!filter.ok()) return Fail(filter.status(), err);
    doc["eps"] = Num(*flags.eps);
    doc["h"] = Num(point->value);
    doc["branch"] = std::string(BiboBranchName(point->branch));
    doc["zeta"] = Num(point->zeta);
    doc["filter"] = MatrixJson(filter->matrix());
  } else {
    doc["branch"] = std::string(BiboBranchName(branch));
    doc["pc_x"] = Num(params->p());
    doc["pc_x_given_y"] = Num(params->pc_x_given_y());
  }
  doc["perfect_privacy_h"] = Num(*perfect);
  doc["nontrivial_utility"] = *nontrivial;
  out << doc.dump() << "\n";
  return kExitOk;
}

struct VectorFlags {
  int n = 0;
  double p = 0.0, alpha = 0.0;
  GridFlags grid;
  bool compare = false;
};

int RunVector(const VectorFlags& flags, std::ostream& out, std::ostream& err) {
  absl::StatusOr<VectorModel> model =
      VectorModel::Create(flags.n, flags.p, flags.alpha);
  if (!model.ok()) return Fail(model.status(), err);
  std::vector<double> grid;
  if (int code = BuildGrid(flags.grid, model->p(), model->alpha_bar(), &grid,
                           err)) {
    return code;
  }
  absl::StatusOr<ThresholdEstimate> threshold = EstimateThreshold(*model);
  if (!threshold.ok()) return Fail(threshold.status(), err);

  std::ostringstream body;
  body << (flags.compare ? "epsilon,h_block,h_memoryless,gap,gap_lower_bound,"
                           "gap_upper_bound\n"
                         : "epsilon,h,branch,filter_gamma\n");
  for (double eps : grid) {
    absl::StatusOr<BlockFrontierPoint> block =
        BlockFrontier(*model, eps, *threshold);
    if (!block.ok()) return Fail(block.status(), err);
    if (!flags.compare) {
      body << Fmt(eps) << "," << Fmt(block->value) << ","
           << FormulaValidityName(block->validity) << ","
           << (block->filter_feasible ? Fmt(block->zeta) : "") << "\n";
      continue;
    }
    absl::StatusOr<double> memoryless = MemorylessFrontier(*model, eps);
    if (!memoryless.ok()) return Fail(memoryless.status(), err);
    absl::StatusOr<GapBounds> bounds = MemorylessGapBounds(*model, eps);
    if (!bounds.ok()) return Fail(bounds.status(), err);
    body << Fmt(eps) << "," << Fmt(block->value) << "," << Fmt(*memoryless)
         << "," << Fmt(block->value - *memoryless) << ","
         << Fmt(bounds->lower) << ","
         << (bounds->upper ? Fmt(*bounds->upper) : "") << "\n";
  }
  out << body.str();
  return kExitOk;
}

struct ValidateFlags {
  std::string scenario = "bsc";
  uint64_t seed = 1;
  int64_t samples = 1000000;
  double gamma = 0.25;
  int n = 2;
  double p = 0.6, alpha = 0.2;
  std::string joint;
};

int BuildScenario(const ValidateFlags& flags, SimConfig* config,
                  std::ostream& err) {
  auto set = [config](auto scenario) {
    config->model = std::move(scenario);
    return kExitOk;
  };
  const std::string name = flags.scenario == "fig3" ? "bsc" : flags.scenario;
  if (name == "bsc" || name == "constant") {
    absl::StatusOr<BiboParams> params = BiboParams::Create(0.6, 0.2, 0.2);
    if (!params.ok()) return Fail(params.status(), err);
    const JointDistribution joint = BiboJoint(*params);
    absl::StatusOr<Channel> filter =
        name == "bsc"
            ? Channel::FromRows({{1.0, 0.0}, {flags.gamma, 1.0 - flags.gamma}})
            : Channel::Constant(2, std::vector{0.5, 0.5});
    if (!filter.ok()) return Fail(filter.status(), err);
    return set(JointScenario{joint, *filter});
  }
  if (name == "identity") {
    absl::StatusOr<JointDistribution> joint =
        JointDistribution::Diagonal(std::vector{0.5, 0.5});
    if (!joint.ok()) return Fail(joint.status(), err);
    return set(JointScenario{*joint, Channel::Identity(2)});
  }
  if (name == "memoryless" || name == "block") {
    absl::StatusOr<VectorModel> model =
        VectorModel::Create(flags.n, flags.p, flags.alpha);
    if (!model.ok()) return Fail(model.status(), err);
    return set(VectorScenario{*model,
                              name == "block" ? VectorFilterKind::kBlockZn
                                              : VectorFilterKind::kMemoryless,
                              flags.gamma});
  }
  if (name == "file") {
    if (flags.joint.empty()) {
      return UsageError("scenario 'file' needs --joint PATH", err);
    }
    LoadedFile file;
    if (int code = LoadDistributionFile(flags.joint, true, &file, err)) {
      return code;
    }
    return set(JointScenario{*file.joint, *file.filter});
  }
  return UsageError(absl::StrFormat("unknown scenario '%s'", name), err);
}

int RunValidate(const ValidateFlags& flags, std::ostream& out,
                std::ostream& err) {
  SimConfig config{flags.seed, flags.samples,
                   JointScenario{JointDistribution::Diagonal(std::vector{1.0})
                                     .value(),
                                 Channel::Identity(1)}};
  if (int code = BuildScenario(flags, &config, err)) return code;
  absl::StatusOr<SimReport> report = Simulate(config);
  if (!report.ok()) return Fail(report.status(), err);
  const bool ok = WithinTolerance(*report, kValidationStdErrors);
  json doc;
  doc["scenario"] = flags.scenario;
  doc["seed"] = report->seed;
  doc["samples"] = report->samples;
  doc["generator"] = std::string(report->generator);
  doc["empirical_pc_y"] = Num(report->empirical_pc_y);
  doc["analytic_pc_y"] = Num(report->analytic_pc_y);
  doc["stderr_y"] = Num(report->std_error_y);
  doc["empirical_pc_x"] = Num(report->empirical_pc_x);
  doc["analytic_pc_x"] = Num(report->analytic_pc_x);
  doc["stderr_x"] = Num(report->std_error_x);
  doc["within_tolerance"] = ok;
  out << doc.dump() << "\n";
  if (!ok) {
    err << "empirical guessing rates are outside " << kValidationStdErrors
        << " standard errors of the analytic values\n";
    return kExitValidation;
  }
  return kExitOk;
}

void AddGridOptions(CLI::App* cmd, GridFlags* grid) {
  cmd->add_option("--eps", grid->eps, "Single privacy threshold");
  cmd->add_option("--eps-min", grid->eps_min, "Lower end of the eps grid");
  cmd->add_option("--eps-max", grid->eps_max, "Upper end of the eps grid");
  cmd->add_option("--points", grid->points, "Number of grid points")
      ->default_val(kDefaultPoints);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Privacy-aware guessing: guessing-probability frontiers and "
               "optimal privacy filters",
               "pguess"};
  app.require_subcommand(1);

  PcFlags pc;
  CLI::App* pc_cmd = app.add_subcommand(
      "pc", "P_c(X), P_c(Y), P_c(X|Y), P_c(Y|X) of a joint distribution");
  pc_cmd->add_option("--joint", pc.joint, "Distribution JSON file")
      ->required();

  HcurveFlags hcurve;
  CLI::App* hcurve_cmd =
      app.add_subcommand("hcurve", "Sample h(eps) and its breakpoints");
  hcurve_cmd->add_option("--joint", hcurve.joint, "Distribution JSON file")
      ->required();
  AddGridOptions(hcurve_cmd, &hcurve.grid);
  hcurve_cmd->add_flag("--breakpoints", hcurve.breakpoints,
                       "Print thresholds and slopes as JSON");
  hcurve_cmd->add_option("--csv", hcurve.csv_path,
                         "With --breakpoints, also write the CSV here");
  hcurve_cmd->add_option("--slope-tol", hcurve.slope_tol,
                         "Slope tolerance for merging segments");

  BiboFlags bibo;
  CLI::App* bibo_cmd = app.add_subcommand(
      "bibo", "Closed-form frontier for binary X through a BIBO channel");
  bibo_cmd->add_option("--p", bibo.p, "P(X = 1), in [1/2, 1)")->required();
  bibo_cmd->add_option("--alpha", bibo.alpha, "P(Y = 1 | X = 0)")->required();
  bibo_cmd->add_option("--beta", bibo.beta, "P(Y = 0 | X = 1)")->required();
  bibo_cmd->add_option("--eps", bibo.eps, "Privacy threshold");

  VectorFlags vec;
  CLI::App* vec_cmd = app.add_subcommand(
      "vector", "Block and memoryless frontiers for i.i.d. binary vectors");
  vec_cmd->add_option("--n", vec.n, "Block length")->required();
  vec_cmd->add_option("--p", vec.p, "P(X_k = 1), in [1/2, 1)")->required();
  vec_cmd->add_option("--alpha", vec.alpha, "BSC crossover")->required();
  AddGridOptions(vec_cmd, &vec.grid);
  vec_cmd->add_flag("--compare", vec.compare,
                    "Emit both frontiers, their gap and the gap bounds");

  ValidateFlags validate;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Monte Carlo check of analytic guessing probabilities");
  validate_cmd
      ->add_option("--scenario", validate.scenario,
                   "bsc | identity | constant | memoryless | block | file "
                   "(fig3 is an alias of bsc)")
      ->default_val("bsc");
  validate_cmd->add_option("--seed", validate.seed, "Generator seed")
      ->default_val(1);
  validate_cmd->add_option("--samples", validate.samples, "Sample count")
      ->check(CLI::PositiveNumber)
      ->default_val(1000000);
  validate_cmd->add_option("--gamma", validate.gamma,
                           "Z-channel crossover for bsc/memoryless/block")
      ->default_val(0.25);
  validate_cmd->add_option("--n", validate.n, "Block length")->default_val(2);
  validate_cmd->add_option("--p", validate.p, "P(X_k = 1)")->default_val(0.6);
  validate_cmd->add_option("--alpha", validate.alpha, "BSC crossover")
      ->default_val(0.2);
  validate_cmd->add_option("--joint", validate.joint,
                           "JSON file with \"joint\" and \"filter\" (scenario "
                           "file)");

  std::vector<std::string> storage = args;
  if (storage.empty()) storage.push_back("pguess");
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pc_cmd->parsed()) return RunPc(pc, out, err);
    if (hcurve_cmd->parsed()) return RunHcurve(hcurve, out, err);
    if (bibo_cmd->parsed()) return RunBibo(bibo, out, err);
    if (vec_cmd->parsed()) return RunVector(vec, out, err);
    if (validate_cmd->parsed()) return RunValidate(validate, out, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return UsageError("no subcommand given", err);
}

}  // namespace pguess::cli
