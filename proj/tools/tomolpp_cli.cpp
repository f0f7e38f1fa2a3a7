// tomolpp: simulate fan-beam CT with dead detector channels and correct the
// resulting ring artifacts.
//
// Exit codes: 0 success, 1 usage error, 2 runtime/data error.

#include "tomolpp/config.hpp"
#include "tomolpp/correct.hpp"
#include "tomolpp/geometry.hpp"
#include "tomolpp/io.hpp"
#include "tomolpp/lpp_mask.hpp"
#include "tomolpp/metrics.hpp"
#include "tomolpp/pipeline.hpp"
#include "tomolpp/projector.hpp"
#include "tomolpp/synth.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace tomolpp;

namespace {

struct GeometryArgs {
  std::string file;
  std::optional<int> image_size;
  std::optional<double> pixel_spacing;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--geometry", file, "Geometry key=value file (geometry.* or bare keys)");
    cmd->add_option("--image-size", image_size, "Override image_size");
    cmd->add_option("--pixel-spacing", pixel_spacing, "Override pixel_spacing");
  }

  FanBeamGeometry resolve(std::optional<int> fallback_size = std::nullopt) const {
    KeyValueFile kv;
    if (!file.empty()) {
      kv = KeyValueFile::load(file);
      bool prefixed = false;
      for (const auto& key : kv.keys()) prefixed |= key.rfind("geometry.", 0) == 0;
      if (prefixed) kv = kv.section("geometry.");
    }
    if (image_size) {
      kv.set("image_size", *image_size);
    } else if (fallback_size && !kv.contains("image_size")) {
      kv.set("image_size", *fallback_size);
    }
    if (pixel_spacing) kv.set("pixel_spacing", *pixel_spacing);
    return geometry_from_key_values(kv);
  }
};

struct MaskArgs {
  std::string channels;
  std::string file;

  void add_to(CLI::App* cmd) {
    auto* list = cmd->add_option("--mask", channels, "Dead channels, e.g. 80,123,456");
    auto* path = cmd->add_option("--mask-file", file, "Mask file written by 'corrupt'");
    list->excludes(path);
  }

  bool given() const { return !channels.empty() || !file.empty(); }

  LppMask resolve(int n_detectors) const {
    if (!file.empty()) {
      LppMask m = mask_from_key_values(KeyValueFile::load(file));
      if (m.n_detectors() != n_detectors) throw std::invalid_argument("mask file does not match geometry");
      return m;
    }
    return parse_channels(channels, n_detectors);
  }
};

Image read_image(const std::string& path, const FanBeamGeometry& geom) {
  return Image(read_array(path), geom.pixel_spacing());
}

std::pair<int, int> parse_pair(const std::string& text, const char* what) {
  const auto items = split_list(text);
  if (items.size() != 2) throw std::invalid_argument(std::string(what) + " expects 'lo,hi'");
  return {std::stoi(items[0]), std::stoi(items[1])};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fan-beam CT simulation with dead-channel (LPP) artifact correction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tomolpp 1.0");

  // phantom
  auto* phantom = app.add_subcommand("phantom", "Write an analytic phantom as a raw array");
  std::string phantom_kind = "shepp-logan";
  std::size_t phantom_size = 512;
  double phantom_radius = 100.0, phantom_mu = 0.5, phantom_spacing = 1.0;
  std::string phantom_out;
  phantom->add_option("--kind", phantom_kind, "shepp-logan | disk")
      ->check(CLI::IsMember({"shepp-logan", "disk"}));
  phantom->add_option("--size", phantom_size, "Pixels per side")->check(CLI::PositiveNumber);
  phantom->add_option("--radius", phantom_radius, "Disk radius in pixels");
  phantom->add_option("--mu", phantom_mu, "Disk attenuation");
  phantom->add_option("--pixel-spacing", phantom_spacing, "Pixel spacing");
  phantom->add_option("-o,--out", phantom_out, "Output .tomo file")->required();

  // project
  auto* project = app.add_subcommand("project", "Forward-project an image into a sinogram");
  std::string project_in, project_out;
  GeometryArgs project_geom;
  project->add_option("-i,--in", project_in, "Image .tomo")->required();
  project->add_option("-o,--out", project_out, "Sinogram .tomo")->required();
  project_geom.add_to(project);

  // fbp
  auto* fbp_cmd = app.add_subcommand("fbp", "Filtered back-projection of a sinogram");
  std::string fbp_in, fbp_out;
  GeometryArgs fbp_geom;
  fbp_cmd->add_option("-i,--in", fbp_in, "Sinogram .tomo")->required();
  fbp_cmd->add_option("-o,--out", fbp_out, "Image .tomo")->required();
  fbp_geom.add_to(fbp_cmd);

  // corrupt
  auto* corrupt = app.add_subcommand("corrupt", "Zero dead detector columns in a sinogram");
  std::string corrupt_in, corrupt_out, corrupt_mask_out;
  std::optional<std::uint64_t> corrupt_seed;
  std::string count_range = "7,15", index_range = "80,601";
  MaskArgs corrupt_mask;
  corrupt->add_option("-i,--in", corrupt_in, "Sinogram .tomo")->required();
  corrupt->add_option("-o,--out", corrupt_out, "Corrupted sinogram .tomo")->required();
  corrupt_mask.add_to(corrupt);
  corrupt->add_option("--seed", corrupt_seed, "Draw a random mask from this seed");
  corrupt->add_option("--count-range", count_range, "Dead channel count range lo,hi");
  corrupt->add_option("--index-range", index_range, "Dead channel index range lo,hi");
  corrupt->add_option("--mask-out", corrupt_mask_out, "Write the mask used");

  // correct
  auto* correct = app.add_subcommand("correct", "Reconstruct a corrupted sinogram with correction");
  std::string correct_in, correct_out, correct_method = "ista", correct_config;
  GeometryArgs correct_geom;
  MaskArgs correct_mask;
  correct->add_option("-i,--in", correct_in, "Corrupted sinogram .tomo")->required();
  correct->add_option("-o,--out", correct_out, "Image .tomo")->required();
  correct->add_option("--method", correct_method, "none | interp | ista")
      ->check(CLI::IsMember({"none", "interp", "ista"}));
  correct->add_option("--config", correct_config, "ISTA settings (correction.* or bare keys)");
  correct_geom.add_to(correct);
  correct_mask.add_to(correct);

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "HU-space MAE / PSNR / SSIM of a prediction");
  std::string eval_pred, eval_gt, eval_id = "pred", eval_out;
  std::optional<double> eval_range;
  bool eval_fov = false, eval_no_header = false;
  evaluate_cmd->add_option("--pred", eval_pred, "Predicted image .tomo (mu)")->required();
  evaluate_cmd->add_option("--gt", eval_gt, "Ground-truth image .tomo (mu)")->required();
  evaluate_cmd->add_option("--id", eval_id, "Row id");
  evaluate_cmd->add_option("--psnr-range", eval_range, "Fixed HU dynamic range (default: GT range)");
  evaluate_cmd->add_flag("--fov-only", eval_fov, "Restrict to the inscribed circle");
  evaluate_cmd->add_flag("--no-header", eval_no_header, "Omit the CSV header");
  evaluate_cmd->add_option("-o,--out", eval_out, "CSV output (default stdout)");

  // preview
  auto* preview = app.add_subcommand("preview", "16-bit PGM preview of a mu image in an HU window");
  std::string preview_in, preview_out, preview_window = "-1000,1000";
  preview->add_option("-i,--in", preview_in, "Image .tomo (mu)")->required();
  preview->add_option("-o,--out", preview_out, "Output .pgm")->required();
  preview->add_option("--window", preview_window, "HU window lo,hi");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "generate -> corrupt -> reconstruct -> correct -> evaluate");
  std::string pipeline_config, pipeline_out;
  int pipeline_jobs = 1;
  pipeline->add_option("config", pipeline_config, "Run config file")->required();
  pipeline->add_option("--jobs", pipeline_jobs, "Samples processed in parallel")->check(CLI::PositiveNumber);
  pipeline->add_option("--out", pipeline_out, "Override io.output_dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*phantom) {
      Image img = phantom_kind == "disk" ? disk_phantom(phantom_size, phantom_radius, phantom_mu, phantom_spacing)
                                         : shepp_logan(phantom_size, phantom_spacing);
      write_array(phantom_out, img.values());
    } else if (*project) {
      Array2D values = read_array(project_in);
      const auto geom = project_geom.resolve(static_cast<int>(values.rows()));
      write_array(project_out, forward_project(Image(std::move(values), geom.pixel_spacing()), geom).values());
    } else if (*fbp_cmd) {
      const auto geom = fbp_geom.resolve();
      write_array(fbp_out, fbp(Sinogram(read_array(fbp_in)), geom).values());
    } else if (*corrupt) {
      const Sinogram sino(read_array(corrupt_in));
      const int n_det = static_cast<int>(sino.n_detectors());
      LppMask mask;
      if (corrupt_mask.given()) {
        mask = corrupt_mask.resolve(n_det);
      } else if (corrupt_seed) {
        const auto [clo, chi] = parse_pair(count_range, "--count-range");
        const auto [ilo, ihi] = parse_pair(index_range, "--index-range");
        mask = generate_mask(*corrupt_seed, LppSpec{clo, chi, ilo, ihi}, n_det);
      } else {
        std::cerr << "corrupt: give --mask, --mask-file or --seed\n";
        return 1;
      }
      write_array(corrupt_out, apply_mask(sino, mask).values());
      if (!corrupt_mask_out.empty()) write_file_atomic(corrupt_mask_out, to_key_values(mask).to_string());
    } else if (*correct) {
      const auto geom = correct_geom.resolve();
      const Sinogram sino(read_array(correct_in));
      const LppMask mask = correct_mask.given() ? correct_mask.resolve(geom.n_detectors())
                                                : LppMask::empty(geom.n_detectors());
      IstaConfig ista = IstaConfig::defaults();
      if (!correct_config.empty()) {
        auto kv = KeyValueFile::load(correct_config);
        bool prefixed = false;
        for (const auto& key : kv.keys()) prefixed |= key.rfind("correction.", 0) == 0;
        if (prefixed) kv = kv.section("correction.");
        kv.erase("method");
        ista = ista_config_from_key_values(kv);
      }
      write_array(correct_out,
                  correct_image(sino, mask, geom, parse_correction_method(correct_method), ista).values());
    } else if (*evaluate_cmd) {
      const Array2D pred = read_array(eval_pred);
      const Array2D gt = read_array(eval_gt);
      MetricOptions options;
      options.psnr_range = eval_range;
      options.fov_only = eval_fov;
      SampleResult row{eval_id, eval_pred, 0, evaluate(Image(pred, 1.0), Image(gt, 1.0), options)};
      std::string csv = metrics_csv({row});
      if (eval_no_header) csv = csv.substr(csv.find('\n') + 1);
      if (eval_out.empty()) {
        std::cout << csv;
      } else {
        write_file_atomic(eval_out, csv);
      }
    } else if (*preview) {
      const auto [lo, hi] = parse_pair(preview_window, "--window");
      write_pgm16_preview(preview_out, mu_to_hu(Image(read_array(preview_in), 1.0)).values(), lo, hi);
    } else if (*pipeline) {
      RunConfig cfg = load_run_config(pipeline_config);
      if (!pipeline_out.empty()) cfg.output_dir = pipeline_out;
      const auto results = run_pipeline(cfg, pipeline_jobs);
      std::cout << metrics_csv(results);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
