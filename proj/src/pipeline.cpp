#include "tomolpp/pipeline.hpp"

#include "tomolpp/io.hpp"
#include "tomolpp/projector.hpp"
#include "tomolpp/synth.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

namespace tomolpp {

std::string to_string(CorrectionMethod method) {
  switch (method) {
    case CorrectionMethod::none: return "none";
    case CorrectionMethod::interp: return "interp";
    case CorrectionMethod::ista: return "ista";
  }
  return "?";
}

CorrectionMethod parse_correction_method(const std::string& text) {
  if (text == "none") return CorrectionMethod::none;
  if (text == "interp") return CorrectionMethod::interp;
  if (text == "ista") return CorrectionMethod::ista;
  throw std::invalid_argument("unknown correction method '" + text + "' (expected none, interp or ista)");
}

Image correct_image(const Sinogram& observed, const LppMask& mask, const FanBeamGeometry& geom,
                    CorrectionMethod method, const IstaConfig& ista) {
  switch (method) {
    case CorrectionMethod::none: return fbp(observed, geom);
    case CorrectionMethod::interp: return fbp(interpolate_sinogram(observed, mask), geom);
    case CorrectionMethod::ista: return ista_correct(observed, mask, geom, ista);
  }
  throw std::logic_error("unhandled correction method");
}

namespace {

std::pair<int, int> int_pair(const KeyValueFile& kv, const std::string& key, std::pair<int, int> fallback) {
  const auto values = kv.get_ints(key, {fallback.first, fallback.second});
  if (values.size() != 2) throw ConfigError("'" + key + "' expects two comma-separated integers");
  return {static_cast<int>(values[0]), static_cast<int>(values[1])};
}

template <class Fn>
auto with_line(const KeyValueFile& kv, const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(kv.location(key) + key + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const KeyValueFile& kv, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.base_dir = base_dir;

  for (const auto& key : kv.keys()) {
    const bool known = key.rfind("geometry.", 0) == 0 || key.rfind("correction.", 0) == 0 ||
                       key == "lpp.count_range" || key == "lpp.index_range" || key == "lpp.seed" ||
                       key == "metrics.psnr_range" || key == "metrics.fov_only" || key == "io.inputs" ||
                       key == "io.output_dir" || key == "io.samples_per_input" || key == "io.previews";
    if (!known) throw ConfigError(kv.location(key) + "unknown key '" + key + "'");
  }

  try {
    cfg.geometry = geometry_from_key_values(kv.section("geometry."));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }

  const auto [count_lo, count_hi] = int_pair(kv, "lpp.count_range", {cfg.lpp.count_lo, cfg.lpp.count_hi});
  const auto [index_lo, index_hi] = int_pair(kv, "lpp.index_range", {cfg.lpp.index_lo, cfg.lpp.index_hi});
  cfg.lpp = {count_lo, count_hi, index_lo, index_hi};
  const long long seed = kv.get_int("lpp.seed", 0);
  if (seed < 0) throw ConfigError("lpp.seed must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);

  auto correction = kv.section("correction.");
  cfg.method = with_line(kv, "correction.method",
                         [&] { return parse_correction_method(correction.get_string("method", "ista")); });
  correction.erase("method");
  cfg.ista = with_line(kv, "correction.n_layers", [&] { return ista_config_from_key_values(correction); });

  const std::string range = kv.get_string("metrics.psnr_range", "gt");
  if (range != "gt") {
    const double value = kv.get_double("metrics.psnr_range", 0.0);
    if (!(value > 0.0)) throw ConfigError("metrics.psnr_range must be 'gt' or a positive HU range");
    cfg.metrics.psnr_range = value;
  }
  cfg.metrics.fov_only = kv.get_bool("metrics.fov_only", false);

  cfg.inputs = split_list(kv.get_string("io.inputs", "shepp-logan"));
  if (cfg.inputs.empty()) throw ConfigError("io.inputs is empty");
  cfg.output_dir = kv.get_string("io.output_dir", "out");
  if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;
  const long long per_input = kv.get_int("io.samples_per_input", 1);
  if (per_input < 1) throw ConfigError("io.samples_per_input must be >= 1");
  cfg.samples_per_input = static_cast<int>(per_input);
  cfg.previews = kv.get_bool("io.previews", false);

  // Fail early on masks the geometry cannot host.
  with_line(kv, "lpp.index_range", [&] {
    generate_mask(0, cfg.lpp, cfg.geometry.n_detectors());
    return 0;
  });
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(KeyValueFile::load(path), path.parent_path().empty() ? "." : path.parent_path());
}

Image load_input_image(const std::string& input, const RunConfig& cfg) {
  const auto size = static_cast<std::size_t>(cfg.geometry.image_size());
  const double ps = cfg.geometry.pixel_spacing();
  if (input == "shepp-logan") return shepp_logan(size, ps);
  std::filesystem::path path(input);
  if (path.is_relative()) path = cfg.base_dir / path;
  const auto ext = path.extension().string();
  if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return resize_to_square(read_pnm(path), size, ps);
  if (ext == ".tomo") return resize_to_square(read_array(path), size, ps);
  throw IoError("input '" + input + "': expected shepp-logan, a .pgm/.ppm image or a .tomo array");
}

std::string metrics_csv(const std::vector<SampleResult>& results) {
  std::string out = "id,mae_hu,psnr_db,ssim\n";
  for (const auto& r : results) {
    out += r.id + "," + format_double(r.metrics.mae_hu) + "," + format_double(r.metrics.psnr_db) + "," +
           format_double(r.metrics.ssim) + "\n";
  }
  return out;
}

namespace {

SampleResult run_one(const RunConfig& cfg, const Image& gray, const std::string& input, std::size_t index) {
  char id[32];
  std::snprintf(id, sizeof id, "sample_%03zu", index);
  const std::uint64_t seed = cfg.seed + index;

  SampleOptions options;
  options.lpp = cfg.lpp;
  const Sample s = make_sample(gray, cfg.geometry, seed, options);
  const Image corrected = correct_image(s.corrupted_sino, s.mask, cfg.geometry, cfg.method, cfg.ista);

  SampleResult result{id, input, seed, evaluate(corrected, s.gt_image, cfg.metrics)};

  const auto dir = cfg.output_dir / id;
  std::filesystem::create_directories(dir);
  write_array(dir / "gt.tomo", s.gt_image.values());
  write_array(dir / "clean_sino.tomo", s.clean_sino.values());
  write_array(dir / "corrupted_sino.tomo", s.corrupted_sino.values());
  write_array(dir / "fbp.tomo", s.fbp_image.values());
  write_array(dir / "corrected.tomo", corrected.values());
  write_file_atomic(dir / "mask.txt", to_key_values(s.mask).to_string());

  KeyValueFile manifest;
  manifest.set("id", std::string(id));
  manifest.set("input", input);
  manifest.set("seed", static_cast<long long>(seed));
  manifest.set("mu_max", s.mu_max);
  manifest.set("method", to_string(cfg.method));
  manifest.merge(to_key_values(s.mask), "lpp.");
  manifest.merge(to_key_values(cfg.geometry), "geometry.");
  if (cfg.method == CorrectionMethod::ista) manifest.merge(to_key_values(cfg.ista), "correction.");
  write_file_atomic(dir / "manifest.txt", manifest.to_string());

  if (cfg.previews) {
    write_pgm16_preview(dir / "gt_preview.pgm", mu_to_hu(s.gt_image).values(), -1000.0, 1000.0);
    write_pgm16_preview(dir / "fbp_preview.pgm", mu_to_hu(s.fbp_image).values(), -1000.0, 1000.0);
    write_pgm16_preview(dir / "corrected_preview.pgm", mu_to_hu(corrected).values(), -1000.0, 1000.0);
  }
  return result;
}

}  // namespace

std::vector<SampleResult> run_pipeline(const RunConfig& cfg, int jobs) {
  std::vector<Image> grays;
  grays.reserve(cfg.inputs.size());
  for (const auto& input : cfg.inputs) grays.push_back(load_input_image(input, cfg));

  const std::size_t total = cfg.inputs.size() * static_cast<std::size_t>(cfg.samples_per_input);
  std::filesystem::create_directories(cfg.output_dir);

  std::vector<SampleResult> results(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const std::size_t input = i / cfg.samples_per_input;
      try {
        results[i] = run_one(cfg, grays[input], cfg.inputs[input], i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  write_file_atomic(cfg.output_dir / "metrics.csv", metrics_csv(results));
  return results;
}

}  // namespace tomolpp
