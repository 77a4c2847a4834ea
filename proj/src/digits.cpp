#include "deodata/digits.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace deodata {

std::vector<DigitImage> load_digits_csv(std::istream& in) {
  const auto records = read_csv_records(in);
  std::vector<DigitImage> images;
  images.reserve(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != kDigitSide * kDigitSide + 1) {
      throw ParseError(r + 1, "expected 65 fields, got " + std::to_string(rec.size()));
    }
    DigitImage img;
    for (std::size_t i = 0; i <= kDigitSide * kDigitSide; ++i) {
      double v = 0;
      const auto& f = rec[i];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw ParseError(r + 1, "field " + std::to_string(i + 1) + " is not numeric: '" + f + "'");
      }
      if (i < kDigitSide * kDigitSide) {
        if (v < 0 || v > kDigitMaxIntensity) throw ParseError(r + 1, "intensity out of range 0..16");
        img.pixels[i] = v;
      } else {
        img.label = static_cast<int>(v);
      }
    }
    images.push_back(img);
  }
  if (images.empty()) throw ParseError(0, "empty digits file");
  return images;
}

std::vector<DigitImage> load_digits_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_digits_csv(in);
}

IntensityGrid downscale_image(const std::array<double, kDigitSide * kDigitSide>& pixels, std::size_t target) {
  if (target < 1 || target > kDigitSide) {
    throw std::invalid_argument("target resolution must be in 1..8, got " + std::to_string(target));
  }
  IntensityGrid out{target, std::vector<double>(target * target)};
  if (target == kDigitSide) {
    std::copy(pixels.begin(), pixels.end(), out.values.begin());
    return out;
  }

  // Overlap of source cell s with output cell o along one axis, where each
  // output cell spans 8/target source units.
  const double span = static_cast<double>(kDigitSide) / static_cast<double>(target);
  std::vector<double> weight(target * kDigitSide, 0.0);
  for (std::size_t o = 0; o < target; ++o) {
    const double lo = static_cast<double>(o) * span;
    const double hi = lo + span;
    for (std::size_t s = 0; s < kDigitSide; ++s) {
      const double overlap = std::min(hi, static_cast<double>(s + 1)) - std::max(lo, static_cast<double>(s));
      weight[o * kDigitSide + s] = std::max(0.0, overlap);
    }
  }

  const double area = span * span;
  for (std::size_t orow = 0; orow < target; ++orow) {
    for (std::size_t ocol = 0; ocol < target; ++ocol) {
      double acc = 0.0;
      for (std::size_t srow = 0; srow < kDigitSide; ++srow) {
        const double wr = weight[orow * kDigitSide + srow];
        if (wr == 0.0) continue;
        for (std::size_t scol = 0; scol < kDigitSide; ++scol) {
          acc += wr * weight[ocol * kDigitSide + scol] * pixels[srow * kDigitSide + scol];
        }
      }
      out.values[orow * target + ocol] = std::clamp(acc / area, 0.0, kDigitMaxIntensity);
    }
  }
  return out;
}

Symbol quantize_intensity(double value, int levels, double max_intensity) {
  if (levels < 2) throw std::invalid_argument("intensity levels must be >= 2");
  if (!(value >= 0.0 && value <= max_intensity)) {
    throw std::invalid_argument("intensity " + std::to_string(value) + " outside [0, " +
                                std::to_string(max_intensity) + "]");
  }
  constexpr double kEps = 1e-9;
  const auto bin = static_cast<int>(std::floor(value * levels / (max_intensity + kEps)));
  return "q" + std::to_string(std::min(bin, levels - 1));
}

void DerivationConfig::validate() const {
  if (target_resolution < 1 || target_resolution > kDigitSide) {
    throw std::invalid_argument("target resolution must be in 1..8");
  }
  const std::size_t cells = target_resolution * target_resolution;
  if (attribute_count() == 0) throw std::invalid_argument("at least one pixel attribute required");
  if (attribute_count() > cells) {
    throw std::invalid_argument("pixel count " + std::to_string(attribute_count()) + " exceeds " +
                                std::to_string(cells) + " cells");
  }
  for (auto p : pixel_indices) {
    if (p >= cells) throw std::invalid_argument("pixel index " + std::to_string(p) + " out of range");
  }
  {
    auto sorted = pixel_indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate pixel index");
    }
  }
  if (intensity_levels < 2) throw std::invalid_argument("intensity levels must be >= 2");
  if (selected_outcomes.empty()) throw std::invalid_argument("no outcomes selected");
  {
    auto sorted = selected_outcomes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate outcome in selection");
    }
  }
  if (per_outcome_train_count < 1) throw std::invalid_argument("per-outcome train count must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

ScaledDigits scale_digits(const std::vector<DigitImage>& raw, std::size_t resolution) {
  ScaledDigits out;
  out.resolution = resolution;
  out.grids.reserve(raw.size());
  out.labels.reserve(raw.size());
  for (const auto& img : raw) {
    out.grids.push_back(downscale_image(img.pixels, resolution));
    out.labels.push_back(img.label);
  }
  return out;
}

DerivedSplit derive_experiment_dataset(const std::vector<DigitImage>& raw, const DerivationConfig& config,
                                       std::mt19937_64& rng) {
  config.validate();
  return derive_experiment_dataset(scale_digits(raw, config.target_resolution), config, rng);
}

DerivedSplit derive_experiment_dataset(const ScaledDigits& scaled, const DerivationConfig& config,
                                       std::mt19937_64& rng) {
  config.validate();
  if (scaled.resolution != config.target_resolution) {
    throw std::invalid_argument("scaled digits resolution does not match the config");
  }
  const std::size_t cells = config.target_resolution * config.target_resolution;

  // Pool per selected outcome, in file order.
  std::vector<std::vector<std::size_t>> pools(config.selected_outcomes.size());
  for (std::size_t i = 0; i < scaled.labels.size(); ++i) {
    auto it = std::find(config.selected_outcomes.begin(), config.selected_outcomes.end(), scaled.labels[i]);
    if (it != config.selected_outcomes.end()) pools[it - config.selected_outcomes.begin()].push_back(i);
  }
  for (std::size_t k = 0; k < pools.size(); ++k) {
    if (pools[k].size() < config.per_outcome_train_count + 1) {
      throw std::invalid_argument("outcome " + std::to_string(config.selected_outcomes[k]) + " has " +
                                  std::to_string(pools[k].size()) + " images, need at least " +
                                  std::to_string(config.per_outcome_train_count + 1));
    }
  }

  std::vector<std::size_t> pixels = config.pixel_indices;
  if (pixels.empty()) {
    std::vector<std::size_t> all(cells);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::shuffle(all.begin(), all.end(), rng);
    pixels.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(config.pixel_count));
  }

  std::vector<std::string> names;
  for (auto p : pixels) names.push_back("px" + std::to_string(p));

  auto featurize = [&](const IntensityGrid& grid) {
    std::vector<Symbol> row;
    row.reserve(pixels.size());
    for (auto p : pixels) row.push_back(quantize_intensity(grid.values[p], config.intensity_levels));
    return row;
  };

  std::vector<std::vector<Symbol>> train_rows, test_rows;
  std::vector<Symbol> train_out, test_out;
  std::vector<std::size_t> train_origin, test_origin;
  for (std::size_t k = 0; k < pools.size(); ++k) {
    auto pool = pools[k];
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto label = std::to_string(config.selected_outcomes[k]);
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const bool train = j < config.per_outcome_train_count;
      (train ? train_rows : test_rows).push_back(featurize(scaled.grids[pool[j]]));
      (train ? train_out : test_out).push_back(label);
      (train ? train_origin : test_origin).push_back(pool[j]);
    }
  }

  return DerivedSplit{CategoricalDataset(names, train_rows, train_out), CategoricalDataset(names, test_rows, test_out),
                      std::move(train_origin), std::move(test_origin), std::move(pixels)};
}

}  // namespace deodata
