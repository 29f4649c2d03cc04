#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "wavemark/error.hpp"
#include "wavemark/fixtures.hpp"
#include "wavemark/metrics.hpp"
#include "wavemark/report.hpp"

using namespace wavemark;
using namespace wavemark::testing;

namespace {

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

EvaluationReport fixture_report(bool parallel, bool literal = false) {
  ReportOptions options;
  options.seed = 42;
  options.parallel = parallel;
  options.literal_divisors = literal;
  return build_report(fixtures::pseudo_lena(), fixtures::primary_logo(), fixtures::secondary_logo(), EmbedParams{},
                      default_attack_matrix(), options);
}

}  // namespace

TEST_CASE("psnr from mse uses MAX = 1") {
  CHECK(psnr_from_mse(0.01) == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(psnr_from_mse(3.81e-6) == doctest::Approx(54.19).epsilon(0.02 / 54.19));
  CHECK(psnr_from_mse(6.10e-5) == doctest::Approx(42.15).epsilon(0.02 / 42.15));
  CHECK(std::isinf(psnr_from_mse(0.0)));
}

TEST_CASE("mse and psnr on images") {
  const GrayImage a(4, 4, 0.5);
  GrayImage b = a;
  CHECK(mse(a, b) == 0.0);
  CHECK(std::isinf(psnr(a, b)));
  b(0, 0) = 0.9;  // one pixel off by 0.4 over 16 pixels
  CHECK(mse(a, b) == doctest::Approx(0.16 / 16).epsilon(1e-14));
  CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK_THROWS_AS(mse(a, GrayImage(4, 2)), Error);
}

TEST_CASE("decibel formatting") {
  CHECK(format_decibels(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_decibels(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_decibels(42.148776) == "42.1488");
  CHECK(format_decibels(42.148776, 2) == "42.15");
}

TEST_CASE("similarity ratio counts matching quantised pixels") {
  const GrayImage ref(2, 2, std::vector<double>{0.0, 1.0, 0.0, 1.0});
  const GrayImage half(2, 2, std::vector<double>{0.0, 1.0, 1.0, 0.0});
  CHECK(similarity_ratio(ref, ref) == 1.0);
  CHECK(similarity_ratio(half, ref) == 0.5);
  // One 8-bit step apart differs exactly, agrees in binary.
  const GrayImage near(2, 2, std::vector<double>{0.0, 254.0 / 255.0, 0.0, 1.0});
  CHECK(similarity_ratio(near, ref, SimilarityMode::exact8bit()) == 0.75);
  CHECK(similarity_ratio(near, ref, SimilarityMode::binary()) == 1.0);
  CHECK_THROWS_AS(similarity_ratio(ref, GrayImage(2, 4)), Error);
}

TEST_CASE("similarity ties within 1e-9 classify like the reference") {
  const GrayImage ref(2, 2, std::vector<double>{0.5, 0.5, 127.5 / 255.0, 0.0});
  const GrayImage noisy(2, 2, std::vector<double>{0.5 - 1e-12, 0.5 + 1e-12, 127.5 / 255.0 - 1e-12, 1e-12});
  CHECK(similarity_ratio(noisy, ref, SimilarityMode::binary()) == 1.0);
  CHECK(similarity_ratio(noisy, ref, SimilarityMode::exact8bit()) == 1.0);
}

TEST_CASE("similarity ratio properties") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const GrayImage a = random_image(9, 7, rng);
    const GrayImage b = random_image(9, 7, rng);
    for (auto mode : {SimilarityMode::exact8bit(), SimilarityMode::binary(0.3)}) {
      const double s = similarity_ratio(a, b, mode);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      CHECK(s == similarity_ratio(b, a, mode));
      CHECK(similarity_ratio(a, a, mode) == 1.0);
    }
  }
}

TEST_CASE("similarity mode names") {
  CHECK(to_string(SimilarityMode::exact8bit()) == "exact8bit");
  CHECK(to_string(SimilarityMode::binary()) == "binary:0.5");
  CHECK(parse_similarity_mode("binary:0.25") == SimilarityMode::binary(0.25));
  CHECK(parse_similarity_mode("binary") == SimilarityMode::binary());
  CHECK(parse_similarity_mode("exact8bit") == SimilarityMode::exact8bit());
  CHECK_THROWS_AS(parse_similarity_mode("binary:2"), Error);
  CHECK_THROWS_AS(parse_similarity_mode("fuzzy"), Error);
}

TEST_CASE("best band prefers LL on ties") {
  CHECK(best_band(0.8, 0.8) == Band::LL);
  CHECK(best_band(0.8, 0.81) == Band::HH);
  CHECK(best_band(0.9, 0.1) == Band::LL);
}

TEST_CASE("fidelity of the fixture embedding matches its energy budget") {
  const GrayImage cover = fixtures::pseudo_lena();
  const GrayImage primary = fixtures::primary_logo();
  const EmbedParams p;
  const NestedWatermark nested = nest_watermarks(primary, fixtures::secondary_logo(), p);
  const GrayImage marked = embed_into_cover(cover, nested, p);
  const EmbedFidelity f = measure_fidelity(cover, primary, nested, marked);
  const double budget = (0.04 * 0.04 + 0.01 * 0.01) * energy(nested.image.samples()) / (512.0 * 512.0);
  CHECK(std::abs(f.mse2 - budget) <= 1e-9 * budget);
  CHECK(f.psnr2 == doctest::Approx(psnr_from_mse(f.mse2)));
  CHECK(f.mse1 > 0.0);
}

TEST_CASE("report rows follow attack order in both execution modes") {
  const EvaluationReport serial = fixture_report(false);
  const EvaluationReport parallel = fixture_report(true);
  REQUIRE(serial.rows.size() == 8);
  const auto matrix = default_attack_matrix();
  for (std::size_t i = 0; i < 8; ++i) CHECK(serial.rows[i].attack == attack_name(matrix[i]));
  CHECK(to_csv(serial) == to_csv(parallel));
  CHECK(to_json_text(serial) == to_json_text(parallel));
}

TEST_CASE("fixture report matches the frozen golden CSV") {
  const auto golden = std::filesystem::path(WAVEMARK_GOLDEN_DIR) / "fixtures_report.csv";
  REQUIRE(std::filesystem::exists(golden));
  CHECK(to_csv(fixture_report(true)) == read_text(golden));
}

TEST_CASE("csv layout") {
  const EvaluationReport r = fixture_report(true, true);
  const std::string csv = to_csv(r);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == std::string(kCsvHeader) + ",sr_ll_paperalpha,sr_hh_paperalpha");
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 7);
  }
  CHECK(count == 8);
}

TEST_CASE("json report round trips") {
  const EvaluationReport r = fixture_report(true, true);
  const std::string text = to_json_text(r);
  const EvaluationReport back = report_from_json_text(text);
  CHECK(to_json_text(back) == text);
  CHECK(to_csv(back) == to_csv(r));
  CHECK(to_markdown(back) == to_markdown(r));
  CHECK_THROWS_AS(report_from_json_text("{\"schema\": \"other\"}"), Error);
  CHECK_THROWS_AS(report_from_json_text("not json"), Error);
}

TEST_CASE("infinite psnr is written as the string inf") {
  EvaluationReport r;
  r.attacks = {AttackSpec{attack::Identity{}, std::nullopt}};
  r.rows.push_back(ReportRow{"identity", "-", std::numeric_limits<double>::infinity(), 1.0, 1.0, Band::LL,
                             std::nullopt, std::nullopt});
  r.fidelity = {10.0, 0.1, std::numeric_limits<double>::infinity(), 0.0};
  CHECK(to_json_text(r).find("\"psnr_db\": \"inf\"") != std::string::npos);
  const EvaluationReport back = report_from_json_text(to_json_text(r));
  CHECK(std::isinf(back.rows[0].psnr_db));
  CHECK(std::isinf(back.fidelity.psnr2));
  CHECK(to_csv(r).find(",inf,") != std::string::npos);
}

TEST_CASE("markdown has one row per attack and a fidelity line") {
  const std::string md = to_markdown(fixture_report(true));
  CHECK(std::count(md.begin(), md.end(), '\n') == 2 + 8 + 2);
  CHECK(md.find("| jpeg | quality=75 |") != std::string::npos);
  CHECK(md.find("Embedding fidelity: PSNR1") != std::string::npos);
}

TEST_CASE("report rejects a watermark that does not fit the cover subband") {
  ReportOptions options;
  options.parallel = false;
  try {
    build_report(GrayImage(4, 4), GrayImage(4, 4), GrayImage(2, 2), EmbedParams{}, default_attack_matrix(), options);
    FAIL("expected WatermarkTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WatermarkTooLarge);
  }
}
