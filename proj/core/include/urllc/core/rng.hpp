#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace urllc {

using Rng = std::mt19937_64;

// Independent streams per trial so results do not depend on scheduling.
enum class Stream : std::uint64_t {
  topology = 1,
  channels = 2,
  interference = 3,
  restarts = 4,
};

Rng make_stream(std::uint64_t seed, std::uint64_t trial, Stream stream);

// CN(0, 1): real and imaginary parts each N(0, 1/2).
std::complex<double> complex_gaussian(Rng& rng);

double uniform01(Rng& rng);

}  // namespace urllc
