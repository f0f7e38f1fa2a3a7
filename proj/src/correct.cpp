#include "tomolpp/correct.hpp"

#include "tomolpp/projector.hpp"

#include <cmath>
#include <stdexcept>

namespace tomolpp {

Sinogram interpolate_sinogram(const Sinogram& corrupted, const LppMask& mask) {
  const int n = static_cast<int>(corrupted.n_detectors());
  if (mask.n_detectors() != n) throw std::invalid_argument("interpolate_sinogram: mask size mismatch");
  if (static_cast<int>(mask.count()) == n) {
    throw DegenerateInputError("interpolate_sinogram: every channel is dead");
  }
  Sinogram out(corrupted);
  if (mask.count() == 0) return out;

  // For each channel, the nearest observed channel on each side (-1 / n if none).
  const auto dead = mask.flags();
  std::vector<int> left(n), right(n);
  int last = -1;
  for (int c = 0; c < n; ++c) {
    if (!dead[c]) last = c;
    left[c] = last;
  }
  last = n;
  for (int c = n - 1; c >= 0; --c) {
    if (!dead[c]) last = c;
    right[c] = last;
  }

  for (std::size_t v = 0; v < out.n_views(); ++v) {
    auto row = out.view(v);
    for (int c : mask.dead_channels()) {
      const int l = left[c];
      const int r = right[c];
      if (l < 0) {
        row[c] = row[r];
      } else if (r >= n) {
        row[c] = row[l];
      } else {
        const double t = static_cast<double>(c - l) / (r - l);
        row[c] = (1.0 - t) * row[l] + t * row[r];
      }
    }
  }
  return out;
}

std::string to_string(IstaInit init) {
  return init == IstaInit::fbp_of_observed ? "fbp_of_observed" : "interpolation_then_fbp";
}

IstaInit parse_ista_init(const std::string& text) {
  if (text == "fbp_of_observed") return IstaInit::fbp_of_observed;
  if (text == "interpolation_then_fbp") return IstaInit::interpolation_then_fbp;
  throw std::invalid_argument("unknown init '" + text +
                              "' (expected fbp_of_observed or interpolation_then_fbp)");
}

IstaConfig IstaConfig::geometric(std::size_t n_layers, double rho, double theta0, double gamma) {
  IstaConfig cfg;
  cfg.step_sizes.assign(n_layers, rho);
  cfg.thresholds.resize(n_layers);
  double theta = theta0;
  for (std::size_t k = 0; k < n_layers; ++k) {
    cfg.thresholds[k] = theta;
    theta *= gamma;
  }
  return cfg;
}

IstaConfig IstaConfig::defaults() {
  return geometric(kDefaultLayers, 1.0, kDefaultTheta0, kDefaultThetaDecay);
}

void IstaConfig::validate() const {
  if (step_sizes.size() != thresholds.size()) {
    throw std::invalid_argument("IstaConfig: step_sizes and thresholds must have one entry per layer");
  }
  for (double rho : step_sizes) {
    if (!(rho > 0.0)) throw std::invalid_argument("IstaConfig: step sizes must be > 0");
  }
  for (double theta : thresholds) {
    if (!(theta >= 0.0)) throw std::invalid_argument("IstaConfig: thresholds must be >= 0");
  }
}

KeyValueFile to_key_values(const IstaConfig& cfg) {
  KeyValueFile kv;
  kv.set("n_layers", static_cast<long long>(cfg.n_layers()));
  kv.set("step_sizes", join_doubles(cfg.step_sizes));
  kv.set("thresholds", join_doubles(cfg.thresholds));
  kv.set("transform", to_string(cfg.transform));
  kv.set("init", to_string(cfg.init));
  return kv;
}

namespace {

std::vector<double> per_layer(const KeyValueFile& kv, const std::string& key, std::size_t layers,
                              std::vector<double> fallback) {
  auto values = kv.get_doubles(key, std::move(fallback));
  if (values.size() == 1 && layers != 1) values.assign(layers, values.front());
  if (values.size() != layers) {
    throw ConfigError("ista: '" + key + "' has " + std::to_string(values.size()) + " entries for " +
                      std::to_string(layers) + " layers");
  }
  return values;
}

}  // namespace

IstaConfig ista_config_from_key_values(const KeyValueFile& kv) {
  kv.require_known({"n_layers", "step_sizes", "thresholds", "theta0", "theta_decay", "transform", "init"});
  const long long layers_raw = kv.get_int("n_layers", static_cast<long long>(kDefaultLayers));
  if (layers_raw < 0) throw ConfigError("ista: n_layers must be >= 0");
  const auto layers = static_cast<std::size_t>(layers_raw);
  const auto geometric = IstaConfig::geometric(layers, 1.0, kv.get_double("theta0", kDefaultTheta0),
                                               kv.get_double("theta_decay", kDefaultThetaDecay));
  IstaConfig cfg;
  cfg.step_sizes = per_layer(kv, "step_sizes", layers, geometric.step_sizes);
  cfg.thresholds = per_layer(kv, "thresholds", layers, geometric.thresholds);
  cfg.transform = parse_transform_kind(kv.get_string("transform", to_string(cfg.transform)));
  cfg.init = parse_ista_init(kv.get_string("init", to_string(cfg.init)));
  cfg.validate();
  return cfg;
}

Image data_consistency_step(const Image& x, const Sinogram& y, const LppMask& mask,
                            const FanBeamGeometry& geom, double rho) {
  Sinogram residual = masked_forward(x, geom, mask);
  residual -= y;
  Image update = fbp(residual, geom);
  update *= rho;
  return x - update;
}

Image ista_initialize(const Sinogram& y, const LppMask& mask, const FanBeamGeometry& geom,
                      IstaInit init) {
  if (init == IstaInit::interpolation_then_fbp) return fbp(interpolate_sinogram(y, mask), geom);
  return fbp(y, geom);
}

Image ista_iterate(Image x, const Sinogram& y, const LppMask& mask, const FanBeamGeometry& geom,
                   const IstaConfig& cfg, const IstaObserver& observer) {
  cfg.validate();
  for (std::size_t k = 0; k < cfg.n_layers(); ++k) {
    Image r = data_consistency_step(x, y, mask, geom, cfg.step_sizes[k]);
    if (cfg.thresholds[k] > 0.0) {
      x = Image(shrink(r.values(), cfg.transform, cfg.thresholds[k]), r.pixel_spacing());
    } else {
      // G^T G = I, so a zero threshold leaves r as is.
      x = std::move(r);
    }
    if (observer) observer(k + 1, x);
  }
  return x;
}

Image ista_correct(const Sinogram& y, const LppMask& mask, const FanBeamGeometry& geom,
                   const IstaConfig& cfg, const IstaObserver& observer) {
  cfg.validate();
  return ista_iterate(ista_initialize(y, mask, geom, cfg.init), y, mask, geom, cfg, observer);
}

}  // namespace tomolpp
