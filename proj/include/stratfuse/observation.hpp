#pragma once

#include <array>

namespace stratfuse::ctf {

inline constexpr int kObservationBits = 6;
inline constexpr int kObservationCount = 1 << kObservationBits;  // 64

// The 6-bit summary a robot receives at a macro decision point.
// Bit order (a is least significant):
//   a: robot is on its own territory
//   b: enemy flag within flag_sight_range
//   c: enemy robot within close_range
//   d: enemy robot beyond close_range but within far_range
//   e: allied robot within close_range
//   f: pincer signal from an allied robot within far_range
struct MacroObservation {
  std::array<bool, kObservationBits> bits{};
  int index = 0;

  static MacroObservation from_bits(const std::array<bool, kObservationBits>& b) {
    MacroObservation o;
    o.bits = b;
    for (int i = 0; i < kObservationBits; ++i)
      if (b[static_cast<std::size_t>(i)]) o.index |= 1 << i;
    return o;
  }

  friend bool operator==(const MacroObservation&, const MacroObservation&) = default;
};

}  // namespace stratfuse::ctf
