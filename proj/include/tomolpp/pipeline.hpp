#pragma once

#include "tomolpp/correct.hpp"
#include "tomolpp/geometry.hpp"
#include "tomolpp/lpp_mask.hpp"
#include "tomolpp/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tomolpp {

enum class CorrectionMethod { none, interp, ista };

std::string to_string(CorrectionMethod method);
CorrectionMethod parse_correction_method(const std::string& text);

/// Corrects a corrupted sinogram into an image with the chosen method.
/// `none` returns the plain FBP of the observation.
Image correct_image(const Sinogram& observed, const LppMask& mask, const FanBeamGeometry& geom,
                    CorrectionMethod method, const IstaConfig& ista);

/// Everything a pipeline run needs. Parsed from flat `section.key = value` text:
///
///   geometry.*            FanBeamGeometry fields
///   lpp.count_range       lo,hi           (7,15)
///   lpp.index_range       lo,hi           (80,601)
///   lpp.seed              base seed; sample i uses seed + i
///   correction.method     none | interp | ista
///   correction.*          IstaConfig keys (n_layers, step_sizes, thresholds,
///                         theta0, theta_decay, transform, init)
///   metrics.psnr_range    gt | <HU value>
///   metrics.fov_only      true | false
///   io.inputs             comma list of `shepp-logan`, .pgm/.ppm or .tomo paths
///   io.output_dir         output directory
///   io.samples_per_input  seeds drawn per input (1)
///   io.previews           also write 16-bit PGM previews (false)
///
/// Relative paths resolve against the directory of the config file.
struct RunConfig {
  FanBeamGeometry geometry;
  LppSpec lpp;
  std::uint64_t seed = 0;
  CorrectionMethod method = CorrectionMethod::ista;
  IstaConfig ista = IstaConfig::defaults();
  MetricOptions metrics;
  std::vector<std::string> inputs{"shepp-logan"};
  std::filesystem::path output_dir = "out";
  int samples_per_input = 1;
  bool previews = false;
  std::filesystem::path base_dir = ".";
};

RunConfig parse_run_config(const KeyValueFile& kv, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Loads a pipeline input as a grayscale grid at geometry resolution.
Image load_input_image(const std::string& input, const RunConfig& cfg);

struct SampleResult {
  std::string id;
  std::string input;
  std::uint64_t seed = 0;
  MetricReport metrics;
};

/// One sample directory per (input, seed) plus metrics.csv in output_dir.
/// Samples run on up to `jobs` threads; outputs do not depend on `jobs`.
std::vector<SampleResult> run_pipeline(const RunConfig& cfg, int jobs = 1);

/// `id,mae_hu,psnr_db,ssim` header plus one row per result.
std::string metrics_csv(const std::vector<SampleResult>& results);

}  // namespace tomolpp
