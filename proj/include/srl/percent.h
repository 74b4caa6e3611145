// Copyright 2026 The srlkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Two-decimal percentages with round-half-up, computed in integers so that
// reports are byte-stable.

#ifndef SRL_PERCENT_H_
#define SRL_PERCENT_H_

#include <cstdint>
#include <string>

namespace srl {

// round_half_up(100 * part / whole, 2 decimals) expressed in hundredths of
// a percent. Zero when whole is zero.
inline std::int64_t PercentHundredths(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return 0;
  const unsigned __int128 scaled =
      static_cast<unsigned __int128>(part) * 20000u + whole;
  return static_cast<std::int64_t>(scaled / (2u * static_cast<unsigned __int128>(whole)));
}

// Same rounding applied to an arbitrary non-negative ratio.
inline std::int64_t RatioHundredths(double ratio) {
  return static_cast<std::int64_t>(ratio * 10000.0 + 0.5);
}

inline double HundredthsValue(std::int64_t hundredths) {
  return static_cast<double>(hundredths) / 100.0;
}

// "92.28"
inline std::string FormatHundredths(std::int64_t hundredths) {
  const bool negative = hundredths < 0;
  const std::uint64_t v =
      static_cast<std::uint64_t>(negative ? -hundredths : hundredths);
  std::string frac = std::to_string(v % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return (negative ? "-" : "") + std::to_string(v / 100) + "." + frac;
}

inline double RoundedPercent(std::uint64_t part, std::uint64_t whole) {
  return HundredthsValue(PercentHundredths(part, whole));
}

}  // namespace srl

#endif  // SRL_PERCENT_H_
