#include "tomolpp/lpp_mask.hpp"

#include "tomolpp/projector.hpp"
#include "tomolpp/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tomolpp {

LppMask::LppMask(std::vector<int> dead_channels, int n_detectors)
    : dead_(std::move(dead_channels)), n_detectors_(n_detectors) {
  if (n_detectors < 1) throw std::invalid_argument("LppMask: n_detectors must be >= 1");
  std::sort(dead_.begin(), dead_.end());
  if (std::adjacent_find(dead_.begin(), dead_.end()) != dead_.end()) {
    throw std::invalid_argument("LppMask: duplicate channel index");
  }
  if (!dead_.empty() && (dead_.front() < 0 || dead_.back() >= n_detectors)) {
    throw std::invalid_argument("LppMask: channel index out of range");
  }
}

bool LppMask::is_dead(int channel) const {
  return std::binary_search(dead_.begin(), dead_.end(), channel);
}

std::vector<bool> LppMask::flags() const {
  std::vector<bool> out(n_detectors_, false);
  for (int c : dead_) out[c] = true;
  return out;
}

LppMask generate_mask(std::uint64_t seed, const LppSpec& spec, int n_detectors) {
  if (spec.index_lo < 0 || spec.index_lo > spec.index_hi || spec.index_hi >= n_detectors) {
    throw std::invalid_argument("generate_mask: index range must satisfy 0 <= lo <= hi < n_detectors");
  }
  const int pool_size = spec.index_hi - spec.index_lo + 1;
  if (spec.count_lo < 1 || spec.count_lo > spec.count_hi || spec.count_hi > pool_size) {
    throw std::invalid_argument("generate_mask: count range must satisfy 1 <= lo <= hi <= range size");
  }
  Rng rng(seed);
  const int count = static_cast<int>(rng.uniform_int(spec.count_lo, spec.count_hi));
  std::vector<int> pool(pool_size);
  std::iota(pool.begin(), pool.end(), spec.index_lo);
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(pool_size - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return LppMask(std::move(pool), n_detectors);
}

Sinogram apply_mask(const Sinogram& sino, const LppMask& mask) {
  if (static_cast<int>(sino.n_detectors()) != mask.n_detectors()) {
    throw std::invalid_argument("apply_mask: mask is for " + std::to_string(mask.n_detectors()) +
                                " channels, sinogram has " + std::to_string(sino.n_detectors()));
  }
  Sinogram out(sino);
  for (std::size_t v = 0; v < out.n_views(); ++v) {
    auto row = out.view(v);
    for (int c : mask.dead_channels()) row[c] = 0.0;
  }
  return out;
}

Sinogram masked_forward(const Image& image, const FanBeamGeometry& geom, const LppMask& mask) {
  return apply_mask(forward_project(image, geom), mask);
}

std::string format_channels(const LppMask& mask) {
  std::string out;
  for (std::size_t i = 0; i < mask.dead_channels().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(mask.dead_channels()[i]);
  }
  return out;
}

LppMask parse_channels(const std::string& text, int n_detectors) {
  std::vector<int> channels;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw std::invalid_argument("mask: '" + item + "' is not a channel index");
    }
    channels.push_back(value);
  }
  return LppMask(std::move(channels), n_detectors);
}

KeyValueFile to_key_values(const LppMask& mask) {
  KeyValueFile kv;
  kv.set("n_detectors", mask.n_detectors());
  kv.set("dead_channels", format_channels(mask));
  return kv;
}

LppMask mask_from_key_values(const KeyValueFile& kv) {
  kv.require_known({"n_detectors", "dead_channels"});
  if (!kv.contains("n_detectors")) throw ConfigError("mask: missing n_detectors");
  const auto n = static_cast<int>(kv.get_int("n_detectors", 0));
  return parse_channels(kv.get_string("dead_channels", ""), n);
}

}  // namespace tomolpp
