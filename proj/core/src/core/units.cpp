#include "urllc/core/units.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace urllc {

double SinrTarget::db() const { return linear_to_db(linear); }

SinrTarget min_sinr_target(double bits, double symbols) {
  if (!(symbols > 0.0)) throw std::invalid_argument("min_sinr_target: symbols must be positive");
  if (!(bits >= 0.0)) throw std::invalid_argument("min_sinr_target: bits must be nonnegative");
  const double rate = bits / symbols;
  // expm1 keeps relative precision at low rates where exp2(r) - 1 cancels.
  if (rate < 1.0) return SinrTarget{std::expm1(rate * std::numbers::ln2)};
  return SinrTarget{std::exp2(rate) - 1.0};
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (!(watts > 0.0)) throw std::invalid_argument("watts_to_dbm: power must be positive");
  return 10.0 * std::log10(watts) + 30.0;
}

double linear_to_db(double ratio) {
  if (ratio <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(ratio);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace urllc
