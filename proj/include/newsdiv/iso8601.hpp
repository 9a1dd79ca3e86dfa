// Copyright 2026 The Newsdiv Authors.
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

#include <cstdint>
#include <cstdio>
#include <string>

#include "newsdiv/error.hpp"

namespace newsdiv {

/// Seconds since the Unix epoch, UTC. Fractional seconds are accepted on
/// input and truncated.
using Timestamp = std::int64_t;

inline constexpr std::int64_t kSecondsPerDay = 86400;

namespace detail {

// Days since 1970-01-01 for a proleptic Gregorian date.
inline std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

inline bool parse_fixed_uint(const std::string& s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

/// Parses "YYYY-MM-DDTHH:MM:SS[.fff][Z|+HH:MM|-HH:MM]". A missing zone
/// designator means UTC. Throws Error on malformed input.
inline Timestamp parse_iso8601(const std::string& s) {
  const auto fail = [&]() -> Timestamp {
    throw Error("malformed ISO-8601 timestamp: \"" + s + "\"");
  };
  int year, month, day, hour, minute, second;
  if (!detail::parse_fixed_uint(s, 0, 4, year)) return fail();
  if (s.size() < 19 || s[4] != '-' || s[7] != '-') return fail();
  if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return fail();
  if (s[13] != ':' || s[16] != ':') return fail();
  if (!detail::parse_fixed_uint(s, 5, 2, month) || !detail::parse_fixed_uint(s, 8, 2, day) ||
      !detail::parse_fixed_uint(s, 11, 2, hour) || !detail::parse_fixed_uint(s, 14, 2, minute) ||
      !detail::parse_fixed_uint(s, 17, 2, second)) {
    return fail();
  }
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60) {
    return fail();
  }

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      ++pos;
      ++digits;
    }
    if (digits == 0) return fail();
  }

  std::int64_t offset = 0;
  if (pos < s.size()) {
    const char c = s[pos];
    if (c == 'Z' || c == 'z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      int oh = 0, om = 0;
      if (!detail::parse_fixed_uint(s, pos + 1, 2, oh)) return fail();
      std::size_t after = pos + 3;
      if (after < s.size() && s[after] == ':') ++after;
      if (!detail::parse_fixed_uint(s, after, 2, om)) return fail();
      pos = after + 2;
      offset = (c == '+' ? 1 : -1) * (oh * 3600 + om * 60);
    } else {
      return fail();
    }
  }
  if (pos != s.size()) return fail();

  const std::int64_t days =
      detail::days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  return days * kSecondsPerDay + hour * 3600 + minute * 60 + second - offset;
}

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
inline std::string format_iso8601(Timestamp t) {
  std::int64_t days = t / kSecondsPerDay;
  std::int64_t rem = t % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    days -= 1;
  }
  int y;
  unsigned m, d;
  detail::civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", y, m, d,
                static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

}  // namespace newsdiv
