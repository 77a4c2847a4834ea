#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "deodata/digits.hpp"

using namespace deodata;

namespace {

const std::vector<DigitImage>& digits() {
  static const auto raw = load_digits_csv_file(std::string(DEODATA_DATA_DIR) + "/digits.csv");
  return raw;
}

}  // namespace

TEST_CASE("bundled digits file has the expected shape") {
  const auto& raw = digits();
  CHECK(raw.size() == 1797);
  std::array<int, 10> per_label{};
  for (const auto& img : raw) {
    REQUIRE(img.label >= 0);
    REQUIRE(img.label <= 9);
    ++per_label[img.label];
  }
  for (int n : per_label) CHECK(n >= 170);
}

TEST_CASE("load_digits_csv rejects bad records") {
  std::istringstream short_row("1,2,3\n");
  CHECK_THROWS_AS(load_digits_csv(short_row), ParseError);
  std::string row;
  for (int i = 0; i < 64; ++i) row += "17,";
  row += "3\n";
  std::istringstream too_bright(row);
  CHECK_THROWS_AS(load_digits_csv(too_bright), ParseError);
}

TEST_CASE("downscale: identity at 8, block mean at 4, full average at 1") {
  std::array<double, 64> px{};
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) px[r * 8 + c] = c < 4 ? 0.0 : 16.0;
  }
  const auto same = downscale_image(px, 8);
  CHECK(std::equal(same.values.begin(), same.values.end(), px.begin()));

  const auto half = downscale_image(px, 4);
  CHECK(half.side == 4);
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(half.at(r, 0) == 0.0);
    CHECK(half.at(r, 1) == 0.0);
    CHECK(half.at(r, 2) == 16.0);
    CHECK(half.at(r, 3) == 16.0);
  }
  CHECK(downscale_image(px, 1).values[0] == doctest::Approx(8.0));

  CHECK_THROWS_AS(downscale_image(px, 0), std::invalid_argument);
  CHECK_THROWS_AS(downscale_image(px, 9), std::invalid_argument);
}

TEST_CASE("downscale to a non-divisor resolution weights partial overlaps") {
  std::array<double, 64> px{};
  px[0] = 16.0;  // single bright top-left pixel
  const auto g = downscale_image(px, 3);
  // Output cell (0,0) spans 8/3 source units per axis; pixel (0,0) fully inside.
  CHECK(g.at(0, 0) == doctest::Approx(16.0 / ((8.0 / 3) * (8.0 / 3))));
  CHECK(g.at(1, 1) == 0.0);
  double total = 0;
  for (double v : g.values) total += v;
  CHECK(total * (8.0 / 3) * (8.0 / 3) == doctest::Approx(16.0));
}

TEST_CASE("quantize_intensity bins") {
  CHECK(quantize_intensity(0.0, 2) == "q0");
  CHECK(quantize_intensity(8.01, 2) == "q1");
  CHECK(quantize_intensity(7.99, 2) == "q0");
  CHECK(quantize_intensity(16.0, 2) == "q1");
  CHECK(quantize_intensity(16.0, 5) == "q4");
  CHECK(quantize_intensity(3.2, 5) == "q0");
  CHECK(quantize_intensity(3.3, 5) == "q1");
  CHECK_THROWS_AS(quantize_intensity(17.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(quantize_intensity(-1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(quantize_intensity(1.0, 1), std::invalid_argument);
}

TEST_CASE("derivation is deterministic, disjoint and sized as configured") {
  DerivationConfig cfg;
  cfg.target_resolution = 6;
  cfg.pixel_count = 6;
  cfg.intensity_levels = 5;
  cfg.per_outcome_train_count = 6;
  std::mt19937_64 a(11), b(11);
  const auto s1 = derive_experiment_dataset(digits(), cfg, a);
  const auto s2 = derive_experiment_dataset(digits(), cfg, b);
  CHECK(s1.train_origin == s2.train_origin);
  CHECK(s1.test_origin == s2.test_origin);
  CHECK(s1.pixels == s2.pixels);

  CHECK(s1.train.num_rows() == 24);
  CHECK(s1.train.num_attributes() == 6);
  std::set<std::size_t> train(s1.train_origin.begin(), s1.train_origin.end());
  for (auto i : s1.test_origin) CHECK(train.count(i) == 0);
  std::size_t pool = 0;
  for (const auto& img : digits()) pool += img.label <= 3 ? 1 : 0;
  CHECK(s1.train.num_rows() + s1.test.num_rows() == pool);

  std::set<std::size_t> px(s1.pixels.begin(), s1.pixels.end());
  CHECK(px.size() == 6);
  CHECK(*px.rbegin() < 36);

  for (std::size_t r = 0; r < s1.train.num_rows(); ++r) {
    CHECK(digits()[s1.train_origin[r]].label == std::stoi(s1.train.outcome(r)));
  }
}

TEST_CASE("fixed pixel indices are honoured") {
  DerivationConfig cfg;
  cfg.pixel_indices = {0, 5, 15};
  std::mt19937_64 rng(3);
  const auto s = derive_experiment_dataset(digits(), cfg, rng);
  CHECK(s.pixels == std::vector<std::size_t>{0, 5, 15});
  CHECK(s.train.attribute_names() == std::vector<std::string>{"px0", "px5", "px15"});
}

TEST_CASE("larger train counts extend smaller ones for the same seed") {
  DerivationConfig small, large;
  small.per_outcome_train_count = 2;
  large.per_outcome_train_count = 8;
  std::mt19937_64 a(5), b(5);
  const auto s = derive_experiment_dataset(digits(), small, a);
  const auto l = derive_experiment_dataset(digits(), large, b);
  CHECK(s.pixels == l.pixels);
  std::set<std::size_t> big(l.train_origin.begin(), l.train_origin.end());
  for (auto i : s.train_origin) CHECK(big.count(i) == 1);
}

TEST_CASE("derivation errors name the outcome that is short of images") {
  DerivationConfig cfg;
  cfg.per_outcome_train_count = 500;
  std::mt19937_64 rng(1);
  try {
    derive_experiment_dataset(digits(), cfg, rng);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("outcome 0") != std::string::npos);
  }
}

TEST_CASE("config validation") {
  DerivationConfig cfg;
  cfg.target_resolution = 2;
  cfg.pixel_count = 5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.selected_outcomes = {1, 1};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.pixel_indices = {3, 3};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.intensity_levels = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("pre-scaled collection must match the requested resolution") {
  const auto scaled = scale_digits(digits(), 4);
  DerivationConfig cfg;
  cfg.target_resolution = 6;
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(derive_experiment_dataset(scaled, cfg, rng), std::invalid_argument);
}
