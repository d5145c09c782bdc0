// Copyright 2026 The thermal-jc Authors
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

#pragma once

#include <charconv>
#include <ostream>
#include <span>
#include <string>
#include <system_error>

#include "thermal_jc/sweep.hpp"

namespace thermal_jc::csv {

inline constexpr std::string_view kSweepHeader = "nbar1,nbar2,gt,d1,concurrence";
inline constexpr std::string_view kRobustHeader = "nbar1,nbar2,measure,gtau_over_pi,peak,present";
inline constexpr int kSignificantDigits = 12;

// Shortest %.12g-style rendering; to_chars ignores the global locale.
inline std::string number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, kSignificantDigits);
  if (res.ec != std::errc{}) throw ComputationError("csv: number formatting failed");
  return std::string(buf, res.ptr);
}

inline void write_row(std::ostream& os, const SweepRecord& r) {
  os << number(r.nbar1) << ',' << number(r.nbar2) << ',' << number(r.gt) << ',' << number(r.d1) << ','
     << number(r.c) << '\n';
}

inline void write_sweep(std::ostream& os, std::span<const SweepRecord> records) {
  os << kSweepHeader << '\n';
  for (const auto& r : records) write_row(os, r);
}

inline void write_robust(std::ostream& os, std::span<const RobustTimeRecord> records) {
  os << kRobustHeader << '\n';
  for (const auto& r : records) {
    os << number(r.nbar1) << ',' << number(r.nbar2) << ',' << to_string(r.measure) << ','
       << number(r.gtau_over_pi) << ',' << number(r.peak_value) << ',' << (r.present ? 1 : 0) << '\n';
  }
}

}  // namespace thermal_jc::csv
