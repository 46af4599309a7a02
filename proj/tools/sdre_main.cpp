// Copyright 2026 The sdre Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// sdre command-line tool.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdre/sdre.hpp"

namespace fs = std::filesystem;
using sdre::ErrorKind;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidConfig:
    case ErrorKind::kUnknownDgp:
    case ErrorKind::kInvalidBox:
    case ErrorKind::kUnsupportedDimension:
      return kExitConfig;
    case ErrorKind::kData:
    case ErrorKind::kShape:
    case ErrorKind::kInvalidLabel:
    case ErrorKind::kUndefinedCoverage:
    case ErrorKind::kValidationUndefined:
    case ErrorKind::kUndefinedMu:
      return kExitData;
    case ErrorKind::kSimulationFailure:
      return kExitInternal;
  }
  return kExitInternal;
}

std::string ReadFile(const fs::path& path, ErrorKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) sdre::Fail(kind, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream OpenOut(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) sdre::Fail(ErrorKind::kInvalidConfig, "cannot write " + path.string());
  return out;
}

// "i:lower:upper" fields separated by spaces or commas; unnamed dimensions
// keep the reference bounds.
sdre::HyperBox ParseBoxSpec(const std::string& spec, const sdre::HyperBox& reference) {
  sdre::HyperBox box = reference;
  std::string text = spec;
  for (char& c : text) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(text);
  std::string field;
  while (in >> field) {
    std::size_t dim = 0;
    double lo = 0.0, hi = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream f(field);
    if (!(f >> dim >> c1 >> lo >> c2 >> hi) || c1 != ':' || c2 != ':' || dim >= box.dims()) {
      sdre::Fail(ErrorKind::kInvalidConfig, "box: bad field '" + field + "'");
    }
    box.lower[dim] = lo;
    box.upper[dim] = hi;
  }
  box.Validate();
  return box;
}

int CmdDgps() {
  const auto& reg = sdre::DgpRegistry::Builtin();
  std::cout << "name,D,I,threshold,share,sampler\n";
  for (const auto& name : reg.Names()) {
    const auto& s = reg.Find(name);
    std::cout << name << ',' << s.dims << ',' << s.influential << ','
              << (s.threshold ? sdre::FormatDouble(*s.threshold) : "na") << ','
              << sdre::FormatDouble(100.0 * s.expected_share) << ','
              << sdre::SamplerName(s.preferred_sampler) << '\n';
  }
  return kExitOk;
}

struct GenerateArgs {
  std::string dgp;
  std::size_t n = 0;
  std::string sampler = "lhs";
  std::uint64_t seed = 1;
  double noise = 0.0;
  std::size_t skip = 0;
  std::string out;
};

int CmdGenerate(const GenerateArgs& a) {
  const auto& spec = sdre::DgpRegistry::Builtin().Find(a.dgp);
  auto data = sdre::GenerateDataset(spec, a.n, sdre::ParseSampler(a.sampler), a.seed, a.skip);
  if (a.noise > 0.0) {
    data.y = sdre::flip_noise(data.y, a.noise, sdre::DeriveSeed(a.seed, {99}));
  }
  auto out = OpenOut(a.out);
  sdre::WriteDatasetCsv(out, data);
  return kExitOk;
}

sdre::Dataset LoadDataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) sdre::Fail(ErrorKind::kData, "cannot open " + path);
  return sdre::ReadDatasetCsv(in);
}

sdre::ExperimentConfig LoadConfig(const std::string& path) {
  sdre::ExperimentConfig cfg;
  if (!path.empty()) cfg = sdre::ParseExperimentConfig(ReadFile(path, ErrorKind::kInvalidConfig));
  sdre::ApplySeedOverride(cfg);
  return cfg;
}

struct DiscoverArgs {
  std::string data;
  std::string method;
  std::string config;
  std::string out;
  std::string dgp;
  std::size_t new_points = 0;
};

int CmdDiscover(const DiscoverArgs& a) {
  const sdre::Method method = sdre::ParseMethod(a.method);
  sdre::ExperimentConfig cfg = LoadConfig(a.config);
  if (a.new_points) cfg.new_points = a.new_points;
  cfg.Validate();
  const sdre::Dataset data = LoadDataset(a.data);
  const sdre::HyperBox box0 =
      a.dgp.empty() ? data.x.box() : sdre::DgpRegistry::Builtin().Find(a.dgp).input_box;
  if (box0.dims() != data.dims()) {
    sdre::Fail(ErrorKind::kShape, "data has " + std::to_string(data.dims()) +
                                      " inputs, the dgp box has " +
                                      std::to_string(box0.dims()));
  }
  const auto result = sdre::discover(method, data, data, box0, cfg, cfg.base_seed);
  const auto trajectory = sdre::Trajectory(result, data);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  {
    auto out = OpenOut(dir / "boxes.txt");
    sdre::WriteBoxFile(out, result.boxes, result.val_means);
  }
  {
    auto out = OpenOut(dir / "trajectory.csv");
    sdre::WriteTrajectoryCsv(out, trajectory);
  }
  {
    auto out = OpenOut(dir / "trajectory.svg");
    out << sdre::TrajectorySvg(trajectory, a.method + " on " + fs::path(a.data).filename().string());
  }
  std::cout << "boxes " << result.boxes.size() << ", last box " << result.last_index
            << ", restricted dims " << sdre::restricted_dims(result.last_box(), box0) << '\n';
  if (result.fell_back) std::cerr << "warning: constant forest, plain peel used\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string boxes;
  std::string data;
  std::string dgp;
  std::string out;
};

int CmdEvaluate(const EvaluateArgs& a) {
  std::ifstream in(a.boxes, std::ios::binary);
  if (!in) sdre::Fail(ErrorKind::kData, "cannot open " + a.boxes);
  const auto records = sdre::ReadBoxFile(in);
  if (records.empty()) sdre::Fail(ErrorKind::kData, "box file is empty");
  const sdre::Dataset data = LoadDataset(a.data);
  const sdre::HyperBox box0 =
      a.dgp.empty() ? records.front().box : sdre::DgpRegistry::Builtin().Find(a.dgp).input_box;
  sdre::DiscoveryResult r;
  for (const auto& rec : records) {
    r.boxes.push_back(rec.box);
    r.val_means.push_back(rec.val_mean);
  }
  r.last_index = r.boxes.size() - 1;
  const auto m = sdre::EvaluateRun(r, data, box0);
  std::cout << "auc " << sdre::FormatDouble(m.auc) << '\n'
            << "density " << (m.density ? sdre::FormatDouble(*m.density) : "nan") << '\n'
            << "restricted " << m.restricted << '\n'
            << "volume " << sdre::FormatDouble(m.volume_fraction) << '\n';
  if (!a.out.empty()) {
    auto out = OpenOut(a.out);
    sdre::WriteTrajectoryCsv(out, m.trajectory);
  }
  return kExitOk;
}

struct MseArgs {
  std::string dgp = "dgp3";
  std::string box = "2:0.95:1";
  sdre::MseConfig cfg;
  std::vector<std::size_t> ks;
  std::string formula = "decomposition";
  std::string out;
};

int CmdMse(MseArgs a) {
  const auto& spec = sdre::DgpRegistry::Builtin().Find(a.dgp);
  const sdre::HyperBox b = ParseBoxSpec(a.box, spec.input_box);
  if (a.formula == "decomposition") {
    a.cfg.formula = sdre::MseAmFormula::kDecomposition;
  } else if (a.formula == "literal") {
    a.cfg.formula = sdre::MseAmFormula::kLiteral;
  } else {
    sdre::Fail(ErrorKind::kInvalidConfig, "formula: expected 'decomposition' or 'literal'");
  }
  if (a.ks.empty()) a.ks = {a.cfg.k};
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!a.out.empty()) {
    file = OpenOut(a.out);
    out = &file;
  }
  sdre::WriteMseCsvHeader(*out);
  for (std::size_t k : a.ks) {
    sdre::MseConfig c = a.cfg;
    c.k = k;
    const auto report = sdre::mse_experiment(spec, b, c);
    sdre::WriteMseCsvRow(*out, a.dgp, report);
    out->flush();
  }
  return kExitOk;
}

struct BenchmarkArgs {
  std::string config;
  std::string out;
  std::size_t jobs = 0;
};

int CmdBenchmark(const BenchmarkArgs& a) {
  sdre::ExperimentConfig cfg = LoadConfig(a.config);
  if (a.jobs) cfg.jobs = a.jobs;
  if (cfg.jobs) sdre::SetParallelism(cfg.jobs);
  cfg.Validate();

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = sdre::run_benchmark(cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path dir(a.out);
  fs::create_directories(dir);
  nlohmann::ordered_json files = nlohmann::ordered_json::object();
  const auto write = [&](const std::string& name, auto&& writer) {
    {
      auto out = OpenOut(dir / name);
      writer(out);
    }
    files[name] = sdre::FileChecksum(dir / name);
  };
  for (sdre::Metric m : sdre::kAllMetrics) {
    write(std::string(sdre::MetricName(m)) + ".csv",
          [&](std::ostream& o) { sdre::WriteMetricCsv(o, result, m); });
  }
  write("runs.csv", [&](std::ostream& o) { sdre::WriteRunsCsv(o, result); });
  write("errors.csv", [&](std::ostream& o) { sdre::WriteFailuresCsv(o, result); });

  nlohmann::ordered_json manifest;
  manifest["tool"] = "sdre";
  manifest["version"] = std::string(sdre::kVersion);
  manifest["config"] = nlohmann::json::parse(sdre::ExperimentConfigToJson(cfg));
  nlohmann::ordered_json seeds;
  seeds["base_seed"] = cfg.base_seed;
  for (const auto& dgp : cfg.dgps) seeds["test_set"][dgp] = sdre::TestSetSeed(cfg.base_seed, dgp);
  manifest["seeds"] = seeds;
  manifest["schemas"] = {{"metric_csv", sdre::kResultCsvVersion},
                         {"dataset_csv", sdre::kDatasetCsvVersion},
                         {"box_file", sdre::kBoxFileVersion},
                         {"trajectory_csv", sdre::kTrajectoryCsvVersion}};
  manifest["files"] = files;
  manifest["timings"] = {{"total_seconds", seconds}};
  {
    auto out = OpenOut(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }

  const std::size_t ok = std::count_if(result.cells.begin(), result.cells.end(),
                                       [](const auto& c) { return c.runs_ok > 0; });
  std::cout << result.cells.size() << " cells, " << result.failures.size()
            << " failed runs, " << seconds << " s\n";
  if (ok == 0) {
    std::cerr << "error: every cell failed, see errors.csv\n";
    return kExitData;
  }
  return kExitOk;
}

struct PlotArgs {
  std::string trajectory;
  std::string out;
  std::string title = "peeling trajectory";
};

int CmdPlot(const PlotArgs& a) {
  std::ifstream in(a.trajectory, std::ios::binary);
  if (!in) sdre::Fail(ErrorKind::kData, "cannot open " + a.trajectory);
  const auto points = sdre::ReadTrajectoryCsv(in);
  auto out = OpenOut(a.out);
  out << sdre::TrajectorySvg(points, a.title);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sdre: scenario discovery with PRIM and rule extraction"};
  app.set_version_flag("--version", std::string(sdre::kVersion));
  app.require_subcommand(1);

  auto* dgps = app.add_subcommand("dgps", "List the built-in data-generating processes");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Sample and label a dataset (CSV)");
  generate->add_option("--dgp", gen.dgp, "DGP name")->required();
  generate->add_option("-n,--n", gen.n, "Number of points")->required();
  generate->add_option("--sampler", gen.sampler, "lhs, halton or uniform");
  generate->add_option("--seed", gen.seed, "Seed");
  generate->add_option("--noise", gen.noise, "Label flip share in [0, 0.5]");
  generate->add_option("--skip", gen.skip, "Halton leading skip");
  generate->add_option("-o,--out", gen.out, "Output CSV")->required();

  DiscoverArgs disc;
  auto* discover = app.add_subcommand("discover", "Run one discovery method on a dataset");
  discover->add_option("--data", disc.data, "Dataset CSV")->required();
  discover->add_option("--method", disc.method, "B, B.all, O, O.p, RF.l or RF.p")->required();
  discover->add_option("--config", disc.config, "Experiment config JSON");
  discover->add_option("--dgp", disc.dgp, "Take box_0 from this DGP (default: data bounds)");
  discover->add_option("--new-points", disc.new_points, "K for the RF methods");
  discover->add_option("-o,--out", disc.out, "Output directory")->required();

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Score a box file on a test dataset");
  evaluate->add_option("--boxes", eval.boxes, "Box file")->required();
  evaluate->add_option("--data", eval.data, "Test dataset CSV")->required();
  evaluate->add_option("--dgp", eval.dgp, "Take box_0 from this DGP (default: first box)");
  evaluate->add_option("-o,--out", eval.out, "Trajectory CSV to write");

  MseArgs mse;
  auto* mse_cmd = app.add_subcommand("mse", "Metamodel MSE experiment for a fixed box");
  mse_cmd->add_option("--dgp", mse.dgp, "DGP name");
  mse_cmd->add_option("--box", mse.box, "Box b as i:lower:upper fields");
  mse_cmd->add_option("-n,--n", mse.cfg.n, "|d|");
  mse_cmd->add_option("-k,--k", mse.ks, "K (repeatable)");
  mse_cmd->add_option("--outer", mse.cfg.reps_outer, "Outer replications");
  mse_cmd->add_option("--inner", mse.cfg.reps_inner, "Inner replications");
  mse_cmd->add_option("--ground-truth", mse.cfg.ground_truth, "Ground-truth points");
  mse_cmd->add_option("--trees", mse.cfg.forest.n_trees, "Trees per forest");
  mse_cmd->add_option("--seed", mse.cfg.seed, "Seed");
  mse_cmd->add_option("--formula", mse.formula, "decomposition or literal");
  mse_cmd->add_option("-o,--out", mse.out, "Output CSV (default stdout)");

  BenchmarkArgs bench;
  auto* benchmark = app.add_subcommand("benchmark", "Run the benchmark grid");
  benchmark->add_option("--config", bench.config, "Config JSON or a previous manifest.json");
  benchmark->add_option("--jobs", bench.jobs, "Concurrent workers (default: all cores)");
  benchmark->add_option("-o,--out", bench.out, "Output directory")->required();

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render a trajectory CSV as SVG");
  plot_cmd->add_option("--trajectory", plot.trajectory, "Trajectory CSV")->required();
  plot_cmd->add_option("--title", plot.title, "Plot title");
  plot_cmd->add_option("-o,--out", plot.out, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*dgps) return CmdDgps();
    if (*generate) return CmdGenerate(gen);
    if (*discover) return CmdDiscover(disc);
    if (*evaluate) return CmdEvaluate(eval);
    if (*mse_cmd) return CmdMse(mse);
    if (*benchmark) return CmdBenchmark(bench);
    if (*plot_cmd) return CmdPlot(plot);
  } catch (const sdre::Error& e) {
    std::cerr << "error (" << sdre::ErrorKindName(e.kind()) << "): " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
