#include "cli.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "json_config.h"
#include "minepred/checkpoint.h"
#include "minepred/ekf.h"
#include "minepred/image_io.h"
#include "minepred/log_io.h"
#include "minepred/metrics.h"
#include "minepred/pipeline.h"
#include "minepred/prediction_io.h"
#include "minepred/rasterizer.h"
#include "minepred/report.h"
#include "minepred/synth.h"
#include "minepred/trainer.h"
#include "plot.h"

namespace minepred {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Removes every path it tracked unless Commit() is called.
class OutputGuard {
 public:
  OutputGuard() = default;
  OutputGuard(const OutputGuard&) = delete;
  OutputGuard& operator=(const OutputGuard&) = delete;
  ~OutputGuard() {
    if (committed_) return;
    for (auto it = created_.rbegin(); it != created_.rend(); ++it) {
      std::error_code ec;
      fs::remove_all(*it, ec);
    }
  }

  // Call before writing `path`; only paths that do not exist yet are
  // removed on failure.
  const fs::path& Track(const fs::path& path) {
    if (!fs::exists(path)) created_.push_back(path);
    return path;
  }
  void Commit() { committed_ = true; }

 private:
  std::vector<fs::path> created_;
  bool committed_ = false;
};

void MakeOutputDir(OutputGuard& guard, const fs::path& dir) {
  guard.Track(dir);
  fs::create_directories(dir);
}

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out;
};

std::string OutOr(const GlobalOptions& g, const char* fallback) {
  return g.out.empty() ? fallback : g.out;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string kind = "crossroads";
  int agents = 50;
  double sample_hz = 10.0;
};

void AddSynth(CLI::App& app, SynthArgs& a) {
  auto* sub = app.add_subcommand("synth", "Generate a synthetic scene: map.json + trajectories.csv");
  sub->add_option("--kind", a.kind, "Scenario kind")
      ->check(CLI::IsMember({"straight", "t_junction", "crossroads"}))
      ->capture_default_str();
  sub->add_option("--agents", a.agents, "Number of agents")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--sample-hz", a.sample_hz, "Trajectory sampling rate (Hz)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void RunSynth(const GlobalOptions& g, const SynthArgs& a) {
  OutputGuard guard;
  const fs::path out = OutOr(g, "data");
  SynthOptions options;
  options.sample_hz = a.sample_hz;
  const SynthScene scene = SynthScenario(ParseScenarioKind(a.kind), a.agents, g.seed, options);
  MakeOutputDir(guard, out);
  WriteMapJson(guard.Track(out / "map.json"), scene.map);
  WriteTrajectoryCsv(guard.Track(out / "trajectories.csv"), scene.trajectories);
  std::size_t states = 0;
  for (const auto& t : scene.trajectories) states += t.states.size();
  std::cout << "synth: " << a.kind << ", " << scene.trajectories.size() << " agents, " << states
            << " states -> " << out.string() << "\n";
  guard.Commit();
}

// ----------------------------------------------------------- preprocess

struct PreprocessArgs {
  std::string logs;
  std::string map;
  std::size_t history_len = 6;
  std::size_t horizon = 6;
  double hist_hz = 2.0;
  double pred_dt = 1.0;
  std::vector<double> split_ratios{7.0, 1.5, 1.5};
};

void AddPreprocess(CLI::App& app, PreprocessArgs& a) {
  auto* sub = app.add_subcommand(
      "preprocess", "Resample, window and split trajectory logs into a dataset directory");
  sub->add_option("--logs", a.logs, "Trajectory log (.csv or .jsonl)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--map", a.map, "Map JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("-k,--history-len", a.history_len, "History states per instance (k)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("-H,--horizon", a.horizon, "Predicted positions per instance (H)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--hist-hz", a.hist_hz, "History sampling rate (Hz)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--pred-dt", a.pred_dt, "Seconds between predicted positions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--split-ratios", a.split_ratios, "train,val,test proportions")
      ->expected(3)
      ->delimiter(',')
      ->capture_default_str();
}

void RunPreprocess(const GlobalOptions& g, const PreprocessArgs& a) {
  OutputGuard guard;
  const fs::path out = OutOr(g, "dataset");
  const SceneMap map = ReadMapJson(a.map);
  const auto trajectories = ReadTrajectoryLog(a.logs, &map.origin);
  DatasetOptions options;
  options.window.history_len = a.history_len;
  options.window.horizon = a.horizon;
  options.window.hist_hz = a.hist_hz;
  options.window.pred_dt = a.pred_dt;
  options.split_ratios = {a.split_ratios.at(0), a.split_ratios.at(1), a.split_ratios.at(2)};
  options.seed = g.seed;
  const Dataset ds = BuildDataset(trajectories, map, options);
  MakeOutputDir(guard, out);
  for (const char* name : {"map.json", "instances.jsonl", "split.json", "summary.json"}) {
    guard.Track(out / name);
  }
  SaveDataset(out, ds);
  std::cout << "preprocess: k=" << a.history_len << " H=" << a.horizon << " at " << a.hist_hz
            << " Hz, pred_dt=" << a.pred_dt << " s\n"
            << "  " << trajectories.size() << " agents, " << ds.counts.trajectories
            << " segments, " << ds.counts.states << " resampled states, " << ds.counts.dropped
            << " too short\n"
            << "  " << ds.instances.size() << " instances: train " << ds.split.train.size()
            << " / val " << ds.split.val.size() << " / test " << ds.split.test.size()
            << " (ratios " << a.split_ratios[0] << ":" << a.split_ratios[1] << ":"
            << a.split_ratios[2] << ")\n";
  guard.Commit();
}

// ------------------------------------------------------------ rasterize

struct RasterizeArgs {
  std::string data;
  std::vector<std::size_t> instances;
  std::string preset = "train";
  std::string format = "png";
};

void AddPresetOption(CLI::App* sub, std::string& preset) {
  sub->add_option("--preset", preset, "Raster preset (full, train, compact)")
      ->check(CLI::IsMember({"full", "train", "compact"}))
      ->capture_default_str();
}

void AddRasterize(CLI::App& app, RasterizeArgs& a) {
  auto* sub = app.add_subcommand("rasterize", "Render agent-centric BEV rasters of instances");
  sub->add_option("--data", a.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--instance", a.instances, "Instance ids (default: the whole test split)")
      ->delimiter(',');
  AddPresetOption(sub, a.preset);
  sub->add_option("--format", a.format, "Image format")
      ->check(CLI::IsMember({"png", "ppm"}))
      ->capture_default_str();
}

const Instance& FindInstance(const Dataset& ds, std::size_t id) {
  for (const Instance& inst : ds.instances) {
    if (inst.id == id) return inst;
  }
  throw Error("no instance with id " + std::to_string(id));
}

void RunRasterize(const GlobalOptions& g, const RasterizeArgs& a) {
  OutputGuard guard;
  const fs::path out = OutOr(g, "rasters");
  const Dataset ds = LoadDataset(a.data);
  const RasterConfig cfg = RasterConfig::FromPreset(a.preset);
  std::vector<std::size_t> ids = a.instances;
  if (ids.empty()) {
    for (const Instance* inst : Select(ds, ds.split.test)) ids.push_back(inst->id);
  }
  MakeOutputDir(guard, out);
  for (std::size_t id : ids) {
    const Raster raster = RenderInstance(FindInstance(ds, id), cfg);
    const fs::path file = guard.Track(out / ("raster-" + std::to_string(id) + "." + a.format));
    if (a.format == "png") {
      WritePng(file, raster.image);
    } else {
      WritePpm(file, raster.image);
    }
  }
  std::cout << "rasterize: " << ids.size() << " rasters (" << a.preset << ", "
            << cfg.size_px << "x" << cfg.size_px << ") -> " << out.string() << "\n";
  guard.Commit();
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string data;
  std::vector<int> modes{5};
  std::string preset = "train";
  int batch_size = 64;
  double learning_rate = 1e-4;
  int epochs = 20;
  long max_steps = 0;
  std::string optimizer = "adam";
  double alpha = 1.0;
  double angle_threshold_deg = 45.0;
  std::string loss = "best-mode";
  int hidden = 128;
  double coord_scale = 10.0;
};

void AddModesOption(CLI::App* sub, std::vector<int>& modes) {
  sub->add_option("--modes", modes, "Mode counts M, e.g. 1,2,3,5")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void AddTrain(CLI::App& app, TrainArgs& a) {
  auto* sub = app.add_subcommand("train", "Train one model per requested mode count");
  sub->add_option("--data", a.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  AddModesOption(sub, a.modes);
  AddPresetOption(sub, a.preset);
  sub->add_option("--batch-size", a.batch_size, "Mini-batch size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--learning-rate,--lr", a.learning_rate, "Adam learning rate")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--epochs", a.epochs, "Training epochs")->capture_default_str();
  sub->add_option("--max-steps", a.max_steps, "Stop after this many steps (0 = no cap)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--optimizer", a.optimizer, "Optimizer")
      ->check(CLI::IsMember({"adam"}))
      ->capture_default_str();
  sub->add_option("--alpha", a.alpha, "Regression weight in the best-mode loss")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--angle-threshold-deg", a.angle_threshold_deg,
                  "Angle gate of best-mode selection (degrees)")
      ->check(CLI::Range(0.0, 180.0))
      ->capture_default_str();
  sub->add_option("--loss", a.loss, "Training objective")
      ->check(CLI::IsMember({"best-mode", "mixture-of-experts"}))
      ->capture_default_str();
  sub->add_option("--hidden", a.hidden, "Hidden layer width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--coord-scale", a.coord_scale, "Metres per raw coordinate output")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

std::string CheckpointName(int modes) { return "model-M" + std::to_string(modes) + ".ckpt"; }

void RunTrain(const GlobalOptions& g, const TrainArgs& a) {
  OutputGuard guard;
  const fs::path out = OutOr(g, "models");
  const Dataset ds = LoadDataset(a.data);
  if (ds.split.train.empty()) throw Error("missing split: the training split is empty");

  ModelSpec base;
  base.horizon = static_cast<int>(ds.window.horizon);
  base.hidden = a.hidden;
  base.coord_scale = a.coord_scale;
  base.raster = RasterConfig::FromPreset(a.preset);

  TrainConfig tcfg;
  tcfg.batch_size = a.batch_size;
  tcfg.learning_rate = a.learning_rate;
  tcfg.epochs = a.epochs;
  tcfg.max_steps = a.max_steps;
  tcfg.seed = g.seed;
  tcfg.optimizer = a.optimizer;
  tcfg.Validate();

  std::cout << "train: rendering " << ds.split.train.size() << " train / " << ds.split.val.size()
            << " val rasters (" << a.preset << ")\n";
  const auto train = MakeSamples(ds.instances, ds.split.train, base.raster);
  const auto val = MakeSamples(ds.instances, ds.split.val, base.raster);

  MakeOutputDir(guard, out);
  for (int m : a.modes) {
    ModelSpec spec = base;
    spec.modes = m;
    spec.Validate();
    LossConfig lcfg;
    lcfg.alpha = a.alpha;
    lcfg.angle_threshold = a.angle_threshold_deg * std::numbers::pi / 180.0;
    lcfg.modes = m;
    lcfg.kind = ParseLossKind(a.loss);
    const ModelParams init = InitParams(spec, g.seed);
    const TrainResult result = Train(init, train, val, tcfg, lcfg);
    for (const EpochRecord& r : result.history) {
      std::cout << "  M=" << m << " epoch " << r.epoch << " train " << r.train_loss << " val "
                << r.val_loss << "\n";
    }
    SaveCheckpoint(guard.Track(out / CheckpointName(m)), result.best);
    WriteLossHistoryCsv(guard.Track(out / ("loss-M" + std::to_string(m) + ".csv")),
                        result.history);
    std::cout << "  M=" << m << ": " << result.steps << " steps, best epoch " << result.best_epoch
              << " -> " << (out / CheckpointName(m)).string() << "\n";
  }

  json cfg = {
      {"seed", g.seed},
      {"train",
       {{"data", a.data},
        {"modes", a.modes},
        {"preset", a.preset},
        {"batch_size", a.batch_size},
        {"learning_rate", a.learning_rate},
        {"epochs", a.epochs},
        {"max_steps", a.max_steps},
        {"optimizer", a.optimizer},
        {"alpha", a.alpha},
        {"angle_threshold_deg", a.angle_threshold_deg},
        {"loss", a.loss},
        {"hidden", a.hidden},
        {"coord_scale", a.coord_scale}}},
  };
  std::ofstream(guard.Track(out / "train_config.json")) << cfg.dump(2) << "\n";
  guard.Commit();
}

// ------------------------------------------------- predict / eval shared

struct PredictArgs {
  std::string data;
  std::string models = "models";
  std::vector<std::string> checkpoints;
  std::vector<std::string> methods{"ekf", "model"};
  std::vector<int> modes{1, 2, 3, 5};
  std::string split = "test";
  bool filter_feasible = false;
  std::string ekf_model = "ctrv";
};

void AddPredictOptions(CLI::App* sub, PredictArgs& a) {
  sub->add_option("--data", a.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--models", a.models, "Directory holding model-M<k>.ckpt files")
      ->capture_default_str();
  sub->add_option("--checkpoint", a.checkpoints, "Explicit checkpoint files (overrides --modes)")
      ->check(CLI::ExistingFile);
  sub->add_option("--methods", a.methods, "Methods to run: ekf, model")
      ->delimiter(',')
      ->check(CLI::IsMember({"ekf", "model"}))
      ->capture_default_str();
  AddModesOption(sub, a.modes);
  sub->add_option("--split", a.split, "Instances to predict")
      ->check(CLI::IsMember({"train", "val", "test", "all"}))
      ->capture_default_str();
  sub->add_flag("--filter-feasible", a.filter_feasible,
                "Zero the probability of modes leaving the drivable area");
  sub->add_option("--ekf-model", a.ekf_model, "EKF process model")
      ->check(CLI::IsMember({"cv", "ca", "ctrv", "ctra"}))
      ->capture_default_str();
}

std::vector<const Instance*> SplitInstances(const Dataset& ds, const std::string& split) {
  if (split == "train") return Select(ds, ds.split.train);
  if (split == "val") return Select(ds, ds.split.val);
  if (split == "test") return Select(ds, ds.split.test);
  std::vector<const Instance*> all;
  for (const Instance& inst : ds.instances) all.push_back(&inst);
  return all;
}

std::vector<ModelParams> LoadModels(const PredictArgs& a, const Dataset& ds) {
  std::vector<fs::path> paths;
  if (!a.checkpoints.empty()) {
    for (const auto& c : a.checkpoints) paths.emplace_back(c);
  } else {
    for (int m : a.modes) paths.push_back(fs::path(a.models) / CheckpointName(m));
  }
  std::vector<ModelParams> models;
  for (const fs::path& p : paths) {
    if (!fs::exists(p)) throw Error("checkpoint '" + p.string() + "' does not exist");
    ModelParams params = LoadCheckpoint(p);
    if (static_cast<std::size_t>(params.spec.horizon) != ds.window.horizon) {
      throw Error("checkpoint '" + p.string() + "' predicts H=" +
                  std::to_string(params.spec.horizon) + " but the dataset uses H=" +
                  std::to_string(ds.window.horizon));
    }
    models.push_back(std::move(params));
  }
  return models;
}

std::vector<MethodPredictions> RunPredictions(const PredictArgs& a, const Dataset& ds,
                                              const std::vector<const Instance*>& instances) {
  std::vector<MethodPredictions> out;
  auto finish = [&](Prediction p) {
    return a.filter_feasible ? FeasibilityFilter(p, *ds.map) : p;
  };
  for (const std::string& method : a.methods) {
    if (method == "ekf") {
      EkfConfig cfg;
      cfg.model.kind = ParseMotionModel(a.ekf_model);
      MethodPredictions mp{"ekf", {}};
      for (const Instance* inst : instances) {
        mp.predictions.push_back(finish(PredictEkf(*inst, cfg, ds.window)));
      }
      out.push_back(std::move(mp));
    } else {
      for (const ModelParams& params : LoadModels(a, ds)) {
        MethodPredictions mp{ModelTag(params.spec.modes), {}};
        for (const Instance* inst : instances) {
          mp.predictions.push_back(finish(PredictModel(params, *inst)));
        }
        out.push_back(std::move(mp));
      }
    }
  }
  return out;
}

std::string PredictionFileName(const std::string& tag) { return "predictions-" + tag + ".jsonl"; }

void AddPredict(CLI::App& app, PredictArgs& a) {
  auto* sub = app.add_subcommand("predict", "Write per-method prediction files for a split");
  AddPredictOptions(sub, a);
}

void RunPredict(const GlobalOptions& g, const PredictArgs& a) {
  OutputGuard guard;
  const fs::path out = OutOr(g, "predictions");
  const Dataset ds = LoadDataset(a.data);
  const auto instances = SplitInstances(ds, a.split);
  if (instances.empty()) throw Error("missing split: '" + a.split + "' has no instances");
  const auto methods = RunPredictions(a, ds, instances);
  MakeOutputDir(guard, out);
  for (const auto& mp : methods) {
    WritePredictions(guard.Track(out / PredictionFileName(mp.tag)), mp.predictions);
    std::size_t flagged = 0;
    for (const auto& p : mp.predictions) flagged += p.all_infeasible ? 1 : 0;
    std::cout << "predict: " << MethodLabel(mp.tag) << " " << mp.predictions.size()
              << " records";
    if (a.filter_feasible) std::cout << " (" << flagged << " with every mode infeasible)";
    std::cout << "\n";
  }
  guard.Commit();
}

struct EvalArgs {
  PredictArgs predict;
  std::string predictions;
  double miss_threshold = kDefaultMissThreshold;
  std::string miss_criterion = "final";
};

void AddEval(CLI::App& app, EvalArgs& a) {
  auto* sub = app.add_subcommand("eval", "Score methods on a split and write a comparison report");
  AddPredictOptions(sub, a.predict);
  sub->add_option("--predictions", a.predictions,
                  "Read predictions-<tag>.jsonl from this directory instead of predicting")
      ->check(CLI::ExistingDirectory);
  sub->add_option("--miss-threshold", a.miss_threshold, "Miss distance (m)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--miss-criterion", a.miss_criterion, "Final-step or any-step misses")
      ->check(CLI::IsMember({"final", "any"}))
      ->capture_default_str();
}

void RunEval(const GlobalOptions& g, const EvalArgs& a) {
  OutputGuard guard;
  const fs::path out = OutOr(g, "eval");
  const Dataset ds = LoadDataset(a.predict.data);
  const auto instances = SplitInstances(ds, a.predict.split);
  if (instances.empty()) throw Error("missing split: '" + a.predict.split + "' has no instances");

  std::vector<MethodPredictions> methods;
  if (!a.predictions.empty()) {
    std::vector<std::string> tags;
    for (const auto& m : a.predict.methods) {
      if (m == "ekf") {
        tags.push_back("ekf");
      } else {
        for (int k : a.predict.modes) tags.push_back(ModelTag(k));
      }
    }
    for (const auto& tag : tags) {
      const fs::path file = fs::path(a.predictions) / PredictionFileName(tag);
      if (!fs::exists(file)) throw Error("missing prediction file '" + file.string() + "'");
      MethodPredictions mp{tag, ReadPredictions(file)};
      if (a.predict.filter_feasible) {
        for (auto& p : mp.predictions) p = FeasibilityFilter(p, *ds.map);
      }
      methods.push_back(std::move(mp));
    }
  } else {
    methods = RunPredictions(a.predict, ds, instances);
  }

  ReportConfig cfg;
  cfg.horizon = static_cast<int>(ds.window.horizon);
  cfg.miss_threshold = a.miss_threshold;
  cfg.miss_criterion = a.miss_criterion == "any" ? MissCriterion::kAnyStep
                                                 : MissCriterion::kFinalStep;
  const MetricReport report = Compare(methods, GroundTruthOf(instances), cfg);
  MakeOutputDir(guard, out);
  WriteReport(guard.Track(out / "report.csv"), report);
  std::ofstream(guard.Track(out / "report.txt")) << ReportText(report);
  std::cout << ReportText(report);
  guard.Commit();
}

// ----------------------------------------------------------------- plot

struct PlotArgs {
  std::string data;
  std::string predictions;
  std::size_t instance = 0;
  bool filter_feasible = false;
  std::string png;
  std::string preset = "train";
};

void AddPlot(CLI::App& app, PlotArgs& a) {
  auto* sub = app.add_subcommand("plot", "Draw one instance with its predicted modes as SVG");
  sub->add_option("--data", a.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--predictions", a.predictions, "Prediction file (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--instance", a.instance, "Instance id")->required();
  sub->add_flag("--filter-feasible", a.filter_feasible,
                "Apply the feasibility filter; infeasible modes are drawn dashed");
  sub->add_option("--png", a.png, "Also write the instance's BEV raster to this PNG");
  AddPresetOption(sub, a.preset);
}

void RunPlot(const GlobalOptions& g, const PlotArgs& a) {
  OutputGuard guard;
  const fs::path out = OutOr(g, "plot.svg");
  const Dataset ds = LoadDataset(a.data);
  const Instance& inst = FindInstance(ds, a.instance);
  std::optional<Prediction> pred;
  for (Prediction& p : ReadPredictions(a.predictions)) {
    if (p.instance_id == a.instance) pred = std::move(p);
  }
  if (!pred) throw Error("no prediction for instance " + std::to_string(a.instance));
  if (a.filter_feasible) pred = FeasibilityFilter(*pred, *ds.map);
  const std::string svg = RenderPlotSvg(inst, *ds.map, *pred);
  if (out.has_parent_path()) MakeOutputDir(guard, out.parent_path());
  {
    std::ofstream f(guard.Track(out), std::ios::binary);
    f << svg;
    if (!f) throw Error("failed writing '" + out.string() + "'");
  }
  if (!a.png.empty()) {
    WritePng(guard.Track(a.png), RenderInstance(inst, RasterConfig::FromPreset(a.preset)).image);
  }
  std::cout << "plot: instance " << a.instance << ", " << pred->modes.size() << " modes -> "
            << out.string() << "\n";
  guard.Commit();
}

}  // namespace

int RunCli(int argc, const char* const* argv) {
  CLI::App app{"Multimodal trajectory prediction for open-pit mine scenes", "minepred"};
  app.fallthrough();
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config; keys mirror the option names");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Seed for every random stream")->capture_default_str();
  app.add_option("--out", global.out,
                 "Output path (defaults: synth data/, preprocess dataset/, rasterize rasters/, "
                 "train models/, predict predictions/, eval eval/, plot plot.svg)");

  SynthArgs synth;
  PreprocessArgs preprocess;
  RasterizeArgs rasterize;
  TrainArgs train;
  PredictArgs predict;
  EvalArgs eval;
  PlotArgs plot;
  AddSynth(app, synth);
  AddPreprocess(app, preprocess);
  AddRasterize(app, rasterize);
  AddTrain(app, train);
  AddPredict(app, predict);
  AddEval(app, eval);
  AddPlot(app, plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand("synth")) RunSynth(global, synth);
    if (app.got_subcommand("preprocess")) RunPreprocess(global, preprocess);
    if (app.got_subcommand("rasterize")) RunRasterize(global, rasterize);
    if (app.got_subcommand("train")) RunTrain(global, train);
    if (app.got_subcommand("predict")) RunPredict(global, predict);
    if (app.got_subcommand("eval")) RunEval(global, eval);
    if (app.got_subcommand("plot")) RunPlot(global, plot);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace minepred
