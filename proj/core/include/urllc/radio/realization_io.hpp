#pragma once

#include <iosfwd>

#include "urllc/radio/channels.hpp"

namespace urllc::radio {

// Line-oriented text dump, round-trip exact (shortest decimal form of every
// double). First line is "urllc-realization <version>".
inline constexpr int kRealizationFormatVersion = 1;

void write_realization(std::ostream& out, const Realization& r);
Realization read_realization(std::istream& in);

}  // namespace urllc::radio
