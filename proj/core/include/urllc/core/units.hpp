#pragma once

namespace urllc {

// Minimum SINR needed to push `bits` through `symbols` channel uses at
// Shannon capacity. Kept linear; db() is for display only.
struct SinrTarget {
  double linear = 0.0;

  double db() const;
};

SinrTarget min_sinr_target(double bits, double symbols);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

double linear_to_db(double ratio);
double db_to_linear(double db);

}  // namespace urllc
