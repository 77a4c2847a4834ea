#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "deodata/dataset.hpp"

namespace deodata {

inline constexpr std::size_t kDigitSide = 8;
inline constexpr double kDigitMaxIntensity = 16.0;

/// Square gray-scale grid, row-major.
struct IntensityGrid {
  std::size_t side = 0;
  std::vector<double> values;

  double at(std::size_t row, std::size_t col) const { return values[row * side + col]; }
};

struct DigitImage {
  std::array<double, kDigitSide * kDigitSide> pixels{};
  int label = 0;
};

/// Reads the flat 65-column export (64 intensities row-major, then label).
std::vector<DigitImage> load_digits_csv(std::istream& in);
std::vector<DigitImage> load_digits_csv_file(const std::string& path);

/// Area-weighted block averaging of an 8x8 image to target x target.
IntensityGrid downscale_image(const std::array<double, kDigitSide * kDigitSide>& pixels, std::size_t target);

/// floor(value * levels / (max + eps)) rendered as "q<k>".
Symbol quantize_intensity(double value, int levels, double max_intensity = kDigitMaxIntensity);

struct DerivationConfig {
  std::size_t target_resolution = 4;
  /// Flat indices into the scaled image. When empty, `pixel_count` pixels are
  /// drawn without replacement per trial.
  std::vector<std::size_t> pixel_indices;
  std::size_t pixel_count = 6;
  int intensity_levels = 4;
  std::vector<int> selected_outcomes{0, 1, 2, 3};
  std::size_t per_outcome_train_count = 6;
  std::size_t trials = 1;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
  std::size_t attribute_count() const {
    return pixel_indices.empty() ? pixel_count : pixel_indices.size();
  }
};

struct DerivedSplit {
  CategoricalDataset train;
  CategoricalDataset test;
  /// Index of the source image behind each row, for provenance checks.
  std::vector<std::size_t> train_origin;
  std::vector<std::size_t> test_origin;
  std::vector<std::size_t> pixels;
};

/// Every image downscaled once; derivation only selects and quantizes.
struct ScaledDigits {
  std::size_t resolution = 0;
  std::vector<IntensityGrid> grids;
  std::vector<int> labels;
};

ScaledDigits scale_digits(const std::vector<DigitImage>& raw, std::size_t resolution);

/// Filters, downscales, samples pixels, quantizes and splits. The result is
/// a pure function of (raw, config, rng state). Train draws are a prefix of
/// a per-outcome shuffle, so larger train counts extend smaller ones for the
/// same rng state.
DerivedSplit derive_experiment_dataset(const std::vector<DigitImage>& raw, const DerivationConfig& config,
                                       std::mt19937_64& rng);

/// Same, from a pre-scaled collection; its resolution must match the config.
DerivedSplit derive_experiment_dataset(const ScaledDigits& scaled, const DerivationConfig& config,
                                       std::mt19937_64& rng);

}  // namespace deodata
