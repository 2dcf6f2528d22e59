#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <string>

namespace mitl {

// Closed interval [lo, hi] with natural endpoints; hi may be infinite.
// Construction of punctual or inverted intervals is rejected by the parser,
// so a valid Interval always satisfies lo < hi.
struct Interval {
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

  std::int64_t lo = 0;
  std::int64_t hi = kInf;

  Interval() = default;
  Interval(std::int64_t l, std::int64_t h) : lo(l), hi(h) {}

  bool infinite() const { return hi == kInf; }
  bool is_full() const { return lo == 0 && infinite(); }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }

  std::string str() const {
    std::string s = "[" + std::to_string(lo) + ",";
    s += infinite() ? "inf" : std::to_string(hi);
    return s + "]";
  }
};

}  // namespace mitl
