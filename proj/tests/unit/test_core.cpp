#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "urllc/core/config.hpp"
#include "urllc/core/rng.hpp"
#include "urllc/core/units.hpp"

using namespace urllc;

TEST_SUITE("core") {

TEST_CASE("sinr target values") {
  CHECK(min_sinr_target(1056, 75).db() == doctest::Approx(42.4).epsilon(0.002));
  CHECK(min_sinr_target(1056, 75).linear == doctest::Approx(1.732e4).epsilon(1e-3));
  CHECK(std::abs(min_sinr_target(576, 75).db() - 23.10) < 0.01);
  CHECK(min_sinr_target(0, 75).linear == 0.0);
  CHECK(min_sinr_target(176, 75).linear == doctest::Approx(4.086).epsilon(1e-3));
  CHECK(min_sinr_target(176, 75).db() == doctest::Approx(6.11).epsilon(1e-3));
}

TEST_CASE("sinr target matches long double evaluation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> bits(0.0, 1200.0), symbols(1.0, 200.0);
  for (int i = 0; i < 2000; ++i) {
    const double b = bits(rng), s = symbols(rng);
    const double got = min_sinr_target(b, s).linear;
    const long double want = oracle::sinr_target(b, s);
    CHECK(std::abs(got - static_cast<double>(want)) <= 1e-13 * static_cast<double>(want) + 1e-300);
    if (want > 0) CHECK(std::abs(min_sinr_target(b, s).db() - static_cast<double>(oracle::to_db(want))) < 1e-9);
  }
}

TEST_CASE("sinr target monotone in bits and symbols") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double b = 1 + 500 * u(rng), s = 10 + 100 * u(rng), db = 0.5 + 5 * u(rng), ds = 0.5 + 5 * u(rng);
    CHECK(min_sinr_target(b + db, s).linear > min_sinr_target(b, s).linear);
    CHECK(min_sinr_target(b, s + ds).linear < min_sinr_target(b, s).linear);
  }
}

TEST_CASE("sinr target rejects bad arguments") {
  CHECK_THROWS_AS(min_sinr_target(10, 0), std::invalid_argument);
  CHECK_THROWS_AS(min_sinr_target(10, -1), std::invalid_argument);
  CHECK_THROWS_AS(min_sinr_target(-1, 10), std::invalid_argument);
}

TEST_CASE("power unit conversions") {
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(dbm_to_watts(43.0) == doctest::Approx(19.952623149688797).epsilon(1e-12));
  const double noise = dbm_to_watts(-169.0 + 10.0 * std::log10(1e5));
  CHECK(noise == doctest::Approx(1.2589254117941673e-15).epsilon(1e-12));
  CHECK_THROWS_AS(watts_to_dbm(0.0), std::invalid_argument);
  CHECK_THROWS_AS(watts_to_dbm(-1.0), std::invalid_argument);
  for (int e = -18; e <= 4; ++e) {
    for (double mant : {1.0, 2.5, 7.3}) {
      const double w = mant * std::pow(10.0, e);
      CHECK(std::abs(dbm_to_watts(watts_to_dbm(w)) - w) <= 1e-12 * w);
    }
  }
}

TEST_CASE("default config derived quantities") {
  SystemConfig cfg;
  CHECK(validate_config(cfg).empty());
  CHECK(cfg.num_users() == 48);
  CHECK(cfg.phase1_symbols() == doctest::Approx(75.0));
  CHECK(cfg.phase2_symbols() == doctest::Approx(25.0));
  CHECK(cfg.frame_symbols() == doctest::Approx(100.0));
  CHECK(cfg.noise_power_w() == doctest::Approx(1.2589254117941673e-15).epsilon(1e-12));
  CHECK(cfg.group_bits(0) == 176.0);
  CHECK(cfg.total_bits() == 1056.0);
  for (double b : cfg.penalty_weights) CHECK(b == 256.0);
  CHECK(default_penalty_weights({1, 3, 8}) == std::vector<double>{2.0, 8.0, 256.0});
}

TEST_CASE("config violations name the field") {
  auto has = [](const std::vector<ConfigViolation>& v, const std::string& field) {
    for (const auto& x : v)
      if (x.field == field) return true;
    return false;
  };
  SystemConfig cfg;
  cfg.phase1_s = cfg.latency_s;
  cfg.phase2_s = 0.0;
  CHECK(has(validate_config(cfg), "phase2_s"));

  cfg = SystemConfig{};
  cfg.phase1_s = 5e-4;
  CHECK(has(validate_config(cfg), "phase1_s"));

  cfg = SystemConfig{};
  cfg.penalty_weights[2] = 0.0;
  CHECK(has(validate_config(cfg), "penalty_weights"));

  cfg = SystemConfig{};
  cfg.group_sizes[0] = 0;
  CHECK(has(validate_config(cfg), "group_sizes"));

  cfg = SystemConfig{};
  cfg.num_antennas = 0;
  CHECK(has(validate_config(cfg), "num_antennas"));

  cfg = SystemConfig{};
  cfg.donut_inner_m = cfg.donut_outer_m;
  CHECK(has(validate_config(cfg), "donut_inner_m"));
}

TEST_CASE("config text round trip") {
  SystemConfig cfg;
  cfg.set_groups(3, 4);
  cfg.set_uniform_bits(17.5);
  cfg.seed = 99;
  cfg.donut_inner_m = 350;
  cfg.donut_outer_m = 450;
  const SystemConfig back = parse_config(format_config(cfg));
  CHECK(format_config(back) == format_config(cfg));
  CHECK(back.num_users() == 12);
  CHECK(back.penalty_weights == std::vector<double>(3, 16.0));
  CHECK(back.seed == 99);
}

TEST_CASE("config parser errors") {
  CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("num_antennas = 4\nnum_antennas = 5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("num_antennas = four\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just text\n"), ConfigError);
  const auto cfg = parse_config("# comment\nbits_per_user = 20\npenalty_weights = auto\n");
  CHECK(cfg.bits_per_user == std::vector<double>(48, 20.0));
}

TEST_CASE("random streams are keyed by seed, trial and purpose") {
  auto draw = [](std::uint64_t seed, std::uint64_t trial, Stream s) {
    Rng r = make_stream(seed, trial, s);
    return r();
  };
  CHECK(draw(1, 0, Stream::channels) == draw(1, 0, Stream::channels));
  CHECK(draw(1, 0, Stream::channels) != draw(1, 1, Stream::channels));
  CHECK(draw(1, 0, Stream::channels) != draw(2, 0, Stream::channels));
  CHECK(draw(1, 0, Stream::channels) != draw(1, 0, Stream::topology));

  Rng r = make_stream(5, 0, Stream::channels);
  double re2 = 0.0, im2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto z = complex_gaussian(r);
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
  }
  CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(im2 / n == doctest::Approx(0.5).epsilon(0.02));
}

}
