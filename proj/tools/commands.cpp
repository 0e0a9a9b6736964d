// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <regex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "selftest.hpp"
#include "wcam/augment.hpp"
#include "wcam/engine.hpp"
#include "wcam/error.hpp"
#include "wcam/io.hpp"
#include "wcam/metrics.hpp"
#include "wcam/render.hpp"
#include "wcam/result_json.hpp"
#include "wcam/transport.hpp"

namespace wcam::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Raised for problems the user can fix by changing the invocation or inputs.
struct UsageError : Error {
  using Error::Error;
};

// --config ----------------------------------------------------------------

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::string scalar_to_arg(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw UsageError("config values must be strings, numbers, booleans or arrays of those");
}

/// Splices the keys of a JSON config file in front of the explicit flags,
/// so flags given on the command line take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  const auto path = find_config_path(args);
  if (!path || args.empty()) return args;
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file " + *path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config file " + *path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  std::vector<std::string> out{args.front()};
  for (const auto& [key, value] : doc.items()) {
    if (key == "config" || key == "command") continue;
    if (value.is_array()) {
      for (const auto& v : value) {
        out.push_back("--" + key);
        out.push_back(scalar_to_arg(v));
      }
    } else {
      out.push_back("--" + key);
      out.push_back(scalar_to_arg(value));
    }
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

// Models ------------------------------------------------------------------

struct ModelOptions {
  std::string model;
  int timeout_ms = 30000;
  std::size_t max_batch = 64;
  int retries = 2;
  int max_in_flight = 4;
  std::optional<double> cell_alpha;

  void add_flags(CLI::App& app) {
    app.add_option("--model", model,
                   "builtin:cell<K> | builtin:mean | builtin:constant:<p> | stdio:<command> | http://host:port")
        ->required();
    app.add_option("--timeout-ms", timeout_ms, "Adapter timeout per request")->check(CLI::PositiveNumber);
    app.add_option("--max-batch", max_batch, "Largest batch sent to an external scorer")->check(CLI::PositiveNumber);
    app.add_option("--retries", retries, "Extra attempts after a timeout")->check(CLI::NonNegativeNumber);
    app.add_option("--max-in-flight", max_in_flight, "Concurrent requests to an external scorer")
        ->check(CLI::PositiveNumber);
    app.add_option("--cell-alpha", cell_alpha,
                   "Energy gain of builtin:cell models (default: calibrated so the input scores logistic(2))");
  }

  void to_json(json& doc) const {
    doc["model"] = model;
    doc["timeout-ms"] = timeout_ms;
    doc["max-batch"] = max_batch;
    doc["retries"] = retries;
    doc["max-in-flight"] = max_in_flight;
    if (cell_alpha) doc["cell-alpha"] = *cell_alpha;
  }
};

/// Resolves a --model string. External adapters are created once and shared;
/// builtin models are cheap and created per image.
class ModelSource {
 public:
  explicit ModelSource(ModelOptions options) : options_(std::move(options)) {
    static const std::regex cell(R"(builtin:cell(\d+))");
    static const std::regex constant(R"(builtin:constant:([0-9.eE+-]+))");
    std::smatch m;
    const std::string& spec = options_.model;
    if (std::regex_match(spec, m, cell)) {
      kind_ = Kind::Cell;
      cell_ = std::stoi(m[1]);
    } else if (spec == "builtin:mean") {
      kind_ = Kind::Mean;
    } else if (std::regex_match(spec, m, constant)) {
      kind_ = Kind::Constant;
      constant_ = std::stod(m[1]);
    } else if (spec.rfind("stdio:", 0) == 0 || spec.rfind("http://", 0) == 0) {
      AdapterConfig config;
      const bool http = spec.rfind("http://", 0) == 0;
      config.transport = http ? Transport::Http : Transport::StdioSubprocess;
      config.endpoint = http ? spec : spec.substr(6);
      config.timeout_ms = options_.timeout_ms;
      config.max_batch = options_.max_batch;
      config.retries = options_.retries;
      config.max_in_flight = options_.max_in_flight;
      apply_endpoint_override(config);
      kind_ = Kind::External;
      external_ = make_adapter(config);
    } else {
      throw UsageError("unrecognised --model '" + spec + "'");
    }
  }

  /// Scorer for one image; `holder` keeps per-image models alive.
  ScoreFn& for_image(const Image& image, const WcamConfig& config, std::unique_ptr<ScoreFn>& holder) const {
    switch (kind_) {
      case Kind::External:
        return *external_;
      case Kind::Mean:
        holder = std::make_unique<MeanPixelModel>();
        return *holder;
      case Kind::Constant:
        holder = std::make_unique<ConstantModel>(constant_);
        return *holder;
      case Kind::Cell: {
        if (image.width() != image.height()) throw DimensionError("builtin:cell models need square images");
        const FeatureLayout layout = featurize(image.width(), config);
        if (cell_ >= layout.feature_count()) {
          throw UsageError("builtin:cell" + std::to_string(cell_) + " outside the " +
                           std::to_string(layout.feature_count()) + "-feature grid");
        }
        const double alpha = options_.cell_alpha.value_or(calibrate_alpha(image, layout, cell_, config.spec));
        holder = analytic_cell_energy_model(layout, cell_, config.spec, alpha);
        return *holder;
      }
    }
    throw UsageError("unreachable model kind");
  }

  bool shared() const noexcept { return kind_ == Kind::External; }

 private:
  enum class Kind { Cell, Mean, Constant, External };
  ModelOptions options_;
  Kind kind_ = Kind::Mean;
  int cell_ = 0;
  double constant_ = 0.0;
  std::unique_ptr<ScoreFn> external_;
};

// Shared helpers -------------------------------------------------------------

void write_json(const fs::path& path, const json& doc) { atomic_write(path, doc.dump(2) + "\n"); }

void write_png(const fs::path& path, const Raster& raster) { atomic_write(path, encode_png(raster)); }

std::vector<fs::path> collect_pngs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        std::string ext = e.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (e.is_regular_file() && ext == ".png") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw UsageError("input not found: " + in);
    }
  }
  return files;
}

Image load_image(const fs::path& path, int center) {
  Image img = read_png(path);
  if (center > 0) img = center_crop(img, center);
  return img;
}

/// Unique output stems in input order.
std::vector<std::string> output_stems(const std::vector<fs::path>& files) {
  std::map<std::string, int> seen;
  std::vector<std::string> stems;
  for (const auto& f : files) {
    std::string stem = f.stem().string();
    if (const int n = seen[stem]++; n > 0) stem += "_" + std::to_string(n);
    stems.push_back(stem);
  }
  return stems;
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

// attribute -------------------------------------------------------------------

struct AttributeCommand {
  std::vector<std::string> images;
  std::string out_dir = "wcam_out";
  std::string family = "haar";
  std::string boundary = "periodic";
  std::string scrambling = "none";
  std::string palette = "hot";
  int levels = 3;
  int grid_size = 8;
  int n = 32;
  std::uint64_t seed = 0;
  int batch_size = 64;
  bool clamp_reconstruction = true;
  int jobs = 1;
  int center = 0;
  bool compare = false;
  bool gridlines = true;
  double alpha = 0.6;
  int upscale = 4;
  ModelOptions model;

  void add_flags(CLI::App& app) {
    app.add_option("--image", images, "Input PNG (repeatable)")
        ->required()
        ->check(CLI::ExistingFile)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--family", family, "Wavelet family: haar | db2");
    app.add_option("--levels", levels, "Decomposition levels J")->check(CLI::PositiveNumber);
    app.add_option("--boundary", boundary, "periodic | symmetric");
    app.add_option("--grid,--grid-size", grid_size, "Feature grid side g (K = g^2)")->check(CLI::PositiveNumber);
    app.add_option("--n,--N", n, "Samples per design matrix N");
    app.add_option("--seed", seed, "Design seed");
    app.add_option("--scrambling", scrambling, "none | digital-shift");
    app.add_option("--batch-size", batch_size, "Images per model call")->check(CLI::PositiveNumber);
    app.add_option("--clamp-reconstruction", clamp_reconstruction, "Clamp masked reconstructions to [0,1]");
    app.add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);
    app.add_option("--center-crop", center, "Center-crop inputs to this side first");
    app.add_option("--compare", compare, "Render two inputs side by side on a shared color scale");
    app.add_option("--palette", palette, "hot | gray");
    app.add_option("--gridlines", gridlines, "Draw level boundaries on scale heatmaps");
    app.add_option("--alpha", alpha, "Heatmap opacity over the source in spatial renders")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--upscale", upscale, "Pixel magnification of the heatmaps")->check(CLI::PositiveNumber);
    model.add_flags(app);
  }

  WcamConfig wcam_config() const {
    WcamConfig c;
    c.spec = WaveletSpec{parse_family(family), levels, parse_boundary(boundary)};
    c.grid_size = grid_size;
    c.samples = n;
    c.seed = seed;
    if (scrambling == "none") {
      c.scrambling = Scrambling::None;
    } else if (scrambling == "digital-shift") {
      c.scrambling = Scrambling::DigitalShift;
    } else {
      throw UsageError("unknown --scrambling '" + scrambling + "'");
    }
    c.batch_size = batch_size;
    c.clamp_reconstruction = clamp_reconstruction;
    c.validate();
    return c;
  }

  json resolved() const {
    json doc{{"command", "attribute"},
             {"image", images},
             {"out", out_dir},
             {"family", family},
             {"levels", levels},
             {"boundary", boundary},
             {"grid", grid_size},
             {"n", n},
             {"seed", seed},
             {"scrambling", scrambling},
             {"batch-size", batch_size},
             {"clamp-reconstruction", clamp_reconstruction},
             {"jobs", jobs},
             {"center-crop", center},
             {"compare", compare},
             {"palette", palette},
             {"gridlines", gridlines},
             {"alpha", alpha},
             {"upscale", upscale}};
    model.to_json(doc);
    return doc;
  }

  int run(std::ostream& out, std::ostream& err) const {
    const WcamConfig config = wcam_config();
    RenderOptions render;
    render.palette = parse_palette(palette);
    render.gridlines = gridlines;
    render.alpha = alpha;
    render.upscale = upscale;
    if (compare && images.size() != 2) throw UsageError("--compare needs exactly two --image inputs");

    const ModelSource source(model);
    const fs::path dir(out_dir);
    std::vector<fs::path> files(images.begin(), images.end());
    const auto stems = output_stems(files);

    struct Outcome {
      Image image;
      std::optional<WcamResult> result;
      std::string message;
      std::string error;
    };
    std::vector<Outcome> outcomes(files.size());
    std::mutex shared_model;
    const bool per_image_parallel = files.size() > 1 && jobs > 1;

    parallel_for(files.size(), per_image_parallel ? jobs : 1, [&](std::size_t i) {
      Outcome& o = outcomes[i];
      try {
        o.image = load_image(files[i], center);
        WcamConfig cfg = config;
        cfg.jobs = per_image_parallel ? 1 : jobs;
        std::unique_ptr<ScoreFn> holder;
        ScoreFn& model_fn = source.for_image(o.image, cfg, holder);
        std::unique_lock lock(shared_model, std::defer_lock);
        if (source.shared()) lock.lock();
        o.result = attribute(o.image, model_fn, cfg);
      } catch (const DegenerateVariance& e) {
        o.message = e.what();
        json doc{{"status", "indifferent"},
                 {"config", config_to_json(config)},
                 {"f_empty", e.f_empty()},
                 {"variance", e.variance()},
                 {"model_id", model.model},
                 {"image_digest", image_digest(o.image)}};
        write_json(dir / (stems[i] + ".wcam.json"), doc);
      } catch (const std::exception& e) {
        o.error = files[i].string() + ": " + e.what();
      }
    });

    for (const auto& o : outcomes) {
      if (!o.error.empty()) {
        err << "error: " << o.error << "\n";
        return kUsageError;
      }
    }

    for (std::size_t i = 0; i < files.size(); ++i) {
      const Outcome& o = outcomes[i];
      if (!o.result) {
        out << files[i].string() << ": " << o.message << "\n";
        continue;
      }
      const WcamResult& r = *o.result;
      atomic_write(dir / (stems[i] + ".wcam.json"), dump_result(r));
      write_png(dir / (stems[i] + ".scale.png"), render_heatmap(r, HeatmapMode::Scale, render));
      write_png(dir / (stems[i] + ".spatial.png"), render_heatmap(r, HeatmapMode::Spatial, render, &o.image));
      const int top = r.argmax_tsi();
      out << files[i].string() << ": " << r.evaluations << " forwards, top feature " << top << " (TSI "
          << r.tsi[top] << "; ";
      for (std::size_t s = 0; s < r.layout.feature(top).segments.size(); ++s) {
        out << (s ? ", " : "") << r.layout.feature(top).segments[s].describe();
      }
      out << ")\n";
    }

    if (compare && outcomes[0].result && outcomes[1].result) {
      const auto& a = outcomes[0];
      const auto& b = outcomes[1];
      const std::string stem = stems[0] + "_vs_" + stems[1];
      write_png(dir / (stem + ".scale.png"), render_comparison(*a.result, *b.result, HeatmapMode::Scale, render));
      write_png(dir / (stem + ".spatial.png"),
                render_comparison(*a.result, *b.result, HeatmapMode::Spatial, render, &a.image, &b.image));
    }
    write_json(dir / "attribute.config.json", resolved());
    return kOk;
  }
};

// augment -----------------------------------------------------------------

struct AugmentCommand {
  std::vector<std::string> inputs;
  std::string op;
  std::string out_dir = "augmented";
  double sigma = 2.0;
  double drop_rate = 0.2;
  std::string family = "haar";
  std::string boundary = "periodic";
  int levels = 3;
  std::uint64_t seed = 0;
  int center = 0;
  int jobs = 1;

  void add_flags(CLI::App& app) {
    app.add_option("--input", inputs, "PNG file or directory of PNGs (repeatable)")
        ->required()
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--op", op, "blur | wp | blur-wp")->required()->check(CLI::IsMember({"blur", "wp", "blur-wp"}));
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--sigma", sigma, "Gaussian blur standard deviation (pixels)")->check(CLI::NonNegativeNumber);
    app.add_option("--drop-rate", drop_rate, "Fraction of wavelet coefficients cancelled per channel")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--family", family, "Wavelet family: haar | db2");
    app.add_option("--levels", levels, "Decomposition levels J")->check(CLI::PositiveNumber);
    app.add_option("--boundary", boundary, "periodic | symmetric");
    app.add_option("--seed", seed, "Base seed; image i uses seed + i");
    app.add_option("--center-crop", center, "Center-crop inputs to this side first");
    app.add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);
  }

  json resolved() const {
    return {{"command", "augment"}, {"input", inputs},   {"op", op},
            {"out", out_dir},       {"sigma", sigma},    {"drop-rate", drop_rate},
            {"family", family},     {"levels", levels},  {"boundary", boundary},
            {"seed", seed},         {"center-crop", center}, {"jobs", jobs}};
  }

  int run(std::ostream& out, std::ostream& err) const {
    AugmentConfig base;
    base.sigma = sigma;
    base.drop_rate = drop_rate;
    base.spec = WaveletSpec{parse_family(family), levels, parse_boundary(boundary)};
    base.seed = seed;
    base.validate();

    const auto files = collect_pngs(inputs);
    if (files.empty()) throw UsageError("no PNG inputs found");
    const auto stems = output_stems(files);
    const fs::path dir(out_dir);

    std::vector<std::string> logs(files.size());
    std::vector<std::string> errors(files.size());
    parallel_for(files.size(), jobs, [&](std::size_t i) {
      try {
        const Image img = load_image(files[i], center);
        AugmentConfig cfg = base;
        cfg.seed = seed + i;
        PerturbationReport report;
        Image result;
        if (op == "blur") {
          result = gaussian_blur(img, cfg.sigma);
        } else if (op == "wp") {
          result = wavelet_perturb(img, cfg, &report);
        } else {
          result = blur_wp(img, cfg, &report);
        }
        result.clamp01();
        const fs::path target = dir / (stems[i] + "_" + op + ".png");
        atomic_write(target, encode_png(result));
        std::ostringstream line;
        line << files[i].string() << " -> " << target.string();
        if (op != "blur") {
          line << ": " << report.cancelled_per_channel.front() << "/" << report.coefficients_per_channel
               << " coefficients cancelled per channel";
        }
        logs[i] = line.str();
      } catch (const std::exception& e) {
        errors[i] = files[i].string() + ": " + e.what();
      }
    });
    for (const auto& e : errors) {
      if (!e.empty()) {
        err << "error: " << e << "\n";
        return kUsageError;
      }
    }
    for (const auto& l : logs) out << l << "\n";
    out << "wrote " << files.size() << " images\n";
    write_json(dir / "augment.config.json", resolved());
    return kOk;
  }
};

// eval --------------------------------------------------------------------

struct EvalCommand {
  std::string manifest;
  std::string scores_path;
  std::string out_dir = "eval_out";
  std::string image_root;
  std::vector<std::string> test_sets;
  std::string source_provider = "google";
  std::string target_provider = "ign";
  double threshold = kDefaultThreshold;
  bool skip_unpaired = false;
  std::optional<std::string> model_spec;
  ModelOptions model;

  void add_flags(CLI::App& app) {
    app.add_option("--manifest", manifest, "Manifest CSV")->required();
    app.add_option("--scores", scores_path, "JSON object mapping manifest path to score");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--image-root", image_root, "Directory manifest paths are relative to when scoring live");
    app.add_option("--test-set", test_sets, "Restrict to these test sets (repeatable); each must be non-empty")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--source-provider", source_provider, "Provider of the reference images for probability shift");
    app.add_option("--target-provider", target_provider, "Provider of the shifted images");
    app.add_option("--threshold", threshold, "Decision threshold")->check(CLI::Range(0.0, 1.0));
    app.add_option("--skip-unpaired", skip_unpaired, "Ignore positives without a counterpart");
    app.add_option("--model", model_spec, "Score images live with this model instead of --scores");
    app.add_option("--timeout-ms", model.timeout_ms, "Adapter timeout per request")->check(CLI::PositiveNumber);
    app.add_option("--max-batch", model.max_batch, "Largest batch sent to an external scorer")
        ->check(CLI::PositiveNumber);
    app.add_option("--retries", model.retries, "Extra attempts after a timeout")->check(CLI::NonNegativeNumber);
  }

  json resolved() const {
    json doc{{"command", "eval"},
             {"manifest", manifest},
             {"out", out_dir},
             {"test-set", test_sets},
             {"source-provider", source_provider},
             {"target-provider", target_provider},
             {"threshold", threshold},
             {"skip-unpaired", skip_unpaired}};
    if (!scores_path.empty()) doc["scores"] = scores_path;
    if (!image_root.empty()) doc["image-root"] = image_root;
    if (model_spec) {
      doc["model"] = *model_spec;
      doc["timeout-ms"] = model.timeout_ms;
      doc["max-batch"] = model.max_batch;
      doc["retries"] = model.retries;
    }
    return doc;
  }

  ScoreTable live_scores(const std::vector<ManifestEntry>& entries) const {
    ModelOptions opts = model;
    opts.model = *model_spec;
    const ModelSource source(opts);
    ScoreTable table;
    for (const auto& e : entries) {
      const fs::path p = image_root.empty() ? fs::path(e.path) : fs::path(image_root) / e.path;
      const Image img = read_png(p);
      WcamConfig cfg;
      std::unique_ptr<ScoreFn> holder;
      ScoreFn& fn = source.for_image(img, cfg, holder);
      table[e.path] = score_batch(fn, std::span<const Image>(&img, 1)).front();
    }
    return table;
  }

  int run(std::ostream& out, std::ostream& err) const {
    if (scores_path.empty() == !model_spec.has_value()) {
      throw UsageError("give exactly one of --scores or --model");
    }
    std::vector<ManifestEntry> entries = read_manifest(manifest);
    if (!test_sets.empty()) {
      std::vector<ManifestEntry> kept;
      for (const auto& e : entries) {
        if (std::find(test_sets.begin(), test_sets.end(), e.test_set) != test_sets.end()) kept.push_back(e);
      }
      for (const auto& t : test_sets) {
        const bool present = std::any_of(kept.begin(), kept.end(), [&](const auto& e) { return e.test_set == t; });
        if (!present) throw MissingScores("test set '" + t + "' has no manifest entries");
      }
      entries = std::move(kept);
    }
    if (entries.empty()) throw MissingScores("manifest has no entries");

    ScoreTable scores;
    if (model_spec) {
      scores = live_scores(entries);
    } else {
      std::ifstream in(scores_path);
      if (!in) throw UsageError("cannot read scores file " + scores_path);
      try {
        scores = parse_scores(json::parse(in));
      } catch (const json::exception& e) {
        throw UsageError(std::string("scores file is not valid JSON: ") + e.what());
      }
    }

    const auto rows = disentangle_report(entries, scores, threshold);
    const fs::path dir(out_dir);
    atomic_write(dir / "report.csv", report_csv(rows));
    write_json(dir / "report.json", report_json(rows));
    const std::string text = report_text(rows);
    atomic_write(dir / "report.txt", text);
    out << text;

    const auto pairs = pair_positives(entries, scores, source_provider, target_provider, skip_unpaired);
    if (pairs.empty()) {
      out << "no paired " << source_provider << "/" << target_provider << " positives; probability shift skipped\n";
    } else {
      const ProbabilityShift shift = probability_shift(pairs);
      write_json(dir / "shift.json", shift_json(shift));
      out << "probability shift over " << pairs.size() << " pairs: mean delta " << shift.mean_delta
          << ", downward 0.5 crossings " << shift.downward_crossing_fraction << "\n";
    }
    write_json(dir / "eval.config.json", resolved());
    (void)err;
    return kOk;
  }
};

// selftest ------------------------------------------------------------------

struct SelftestCommand {
  std::vector<std::string> only;
  bool corrupt_directions = false;

  void add_flags(CLI::App& app) {
    app.add_option("--only", only, "Run only these groups (repeatable)")
        ->check(CLI::IsMember(kSelftestGroups))
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    // Test hook for the failure path; not part of the public interface.
    app.add_flag("--corrupt-directions", corrupt_directions)->group("");
  }

  int run(std::ostream& out) const {
    SelftestOptions opts;
    opts.only.insert(only.begin(), only.end());
    opts.corrupt_directions = corrupt_directions;
    return run_selftest(opts, out) ? kOk : kCheckFailed;
  }
};

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wavelet-domain attribution, augmentation and evaluation for image classifiers", "wcam"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  AttributeCommand attribute_cmd;
  AugmentCommand augment_cmd;
  EvalCommand eval_cmd;
  SelftestCommand selftest_cmd;
  std::string config_path;

  auto* attribute_app = app.add_subcommand("attribute", "Estimate a WCAM for one or more images");
  auto* augment_app = app.add_subcommand("augment", "Apply blur / wavelet-perturbation augmentations");
  auto* eval_app = app.add_subcommand("eval", "F1 / rate report and probability-shift analysis");
  auto* selftest_app = app.add_subcommand("selftest", "Run the built-in reference checks");
  attribute_cmd.add_flags(*attribute_app);
  augment_cmd.add_flags(*augment_app);
  eval_cmd.add_flags(*eval_app);
  selftest_cmd.add_flags(*selftest_app);
  for (auto* sub : {attribute_app, augment_app, eval_app}) {
    sub->add_option("--config", config_path, "JSON file of flag values (keys are flag names)");
  }

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'wcam --help' for usage\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*attribute_app) return attribute_cmd.run(out, err);
    if (*augment_app) return augment_cmd.run(out, err);
    if (*eval_app) return eval_cmd.run(out, err);
    if (*selftest_app) return selftest_cmd.run(out);
  } catch (const MissingScores& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const UnpairedEntry& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const UndefinedMetric& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace wcam::cli
