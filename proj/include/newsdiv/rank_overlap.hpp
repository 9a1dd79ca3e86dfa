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

#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "newsdiv/error.hpp"

namespace newsdiv {

namespace detail {

// Below this length, linear prefix scans beat hashing and allocate nothing.
inline constexpr std::size_t kSmallListLimit = 128;

inline void validate_rbo_args(std::span<const std::string> a, std::span<const std::string> b,
                              const char* who) {
  if (a.empty() || b.empty()) {
    throw Error(std::string(who) + ": ranked lists must be non-empty");
  }
  const auto check_unique = [&](std::span<const std::string> list) {
    if (list.size() <= kSmallListLimit) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          if (list[i] == list[j]) {
            throw Error(std::string(who) + ": duplicate item \"" + list[i] + "\" in list");
          }
        }
      }
    } else {
      std::unordered_set<std::string> seen;
      seen.reserve(list.size());
      for (const auto& id : list) {
        if (!seen.insert(id).second) {
          throw Error(std::string(who) + ": duplicate item \"" + id + "\" in list");
        }
      }
    }
  };
  check_unique(a);
  check_unique(b);
}

// Prefix-intersection sizes at depths 1..D. The overlap grows by checking
// only the two elements entering at each depth:
//
//   X_d = X_{d-1} + I(a_d = b_d) + I(a_d in b_{1:d-1}) + I(b_d in a_{1:d-1})
//
// valid because the lists are duplicate-free. Small lists use linear
// membership scans; long ones a shared lookup set (an element seen from
// exactly one side waits in `pending` until the other side reaches it).
template <typename Sink>
inline void scan_overlap(std::span<const std::string> a, std::span<const std::string> b,
                         Sink&& sink) {
  const std::size_t depth = std::min(a.size(), b.size());
  std::size_t overlap = 0;
  if (depth <= kSmallListLimit) {
    for (std::size_t d = 0; d < depth; ++d) {
      if (a[d] == b[d]) {
        overlap += 1;
      } else {
        for (std::size_t i = 0; i < d; ++i) {
          if (b[i] == a[d]) {
            overlap += 1;
            break;
          }
        }
        for (std::size_t i = 0; i < d; ++i) {
          if (a[i] == b[d]) {
            overlap += 1;
            break;
          }
        }
      }
      sink(d, overlap);
    }
  } else {
    std::unordered_set<std::string> pending;
    pending.reserve(2 * depth);
    for (std::size_t d = 0; d < depth; ++d) {
      if (a[d] == b[d]) {
        overlap += 1;
      } else {
        if (pending.erase(a[d]) == 1) {
          overlap += 1;
        } else {
          pending.insert(a[d]);
        }
        if (pending.erase(b[d]) == 1) {
          overlap += 1;
        } else {
          pending.insert(b[d]);
        }
      }
      sink(d, overlap);
    }
  }
}

}  // namespace detail

/// Rank-biased overlap (Webber, Moffat & Zobel, ACM TOIS 2010) between two
/// duplicate-free ranked lists, truncated at the shorter list.
///
/// At each depth d the agreement A_d is the size of the prefix
/// intersection divided by d; depths are weighted by the geometric
/// progression s^(d-1), so disagreement near the head costs more than
/// disagreement in the tail. The infinite-list form is
///
///   (1 - s) * sum_d s^(d-1) * A_d
///
/// Truncating at D = min(|a|, |b|) leaves at most mass 1 - s^D, so the
/// truncated sum is renormalized by it; identical finite lists then score
/// exactly 1 and disjoint ones exactly 0. Computed here as
/// sum(w_d * A_d) / sum(w_d) with w_d = s^(d-1), which is the same
/// expression with the (1 - s) factors cancelled and makes the
/// identical-list case bitwise exact. Symmetric in its list arguments.
inline double rbo(std::span<const std::string> a, std::span<const std::string> b, double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error("rbo: persistence s must lie in (0,1), got " + std::to_string(s));
  }
  detail::validate_rbo_args(a, b, "rbo");

  double weight = 1.0;
  double weighted_agreement = 0.0;
  double weight_total = 0.0;
  detail::scan_overlap(a, b, [&](std::size_t d, std::size_t overlap) {
    weighted_agreement += weight * (static_cast<double>(overlap) / static_cast<double>(d + 1));
    weight_total += weight;
    weight *= s;
  });
  return weighted_agreement / weight_total;
}

inline double rbo(const std::vector<std::string>& a, const std::vector<std::string>& b, double s) {
  return rbo(std::span<const std::string>(a), std::span<const std::string>(b), s);
}

/// Agreement profile A_d for d = 1..min(|a|,|b|). A_d * d is the integer
/// size of the depth-d prefix intersection, so the sequence of
/// intersection sizes is non-decreasing with steps of at most 2.
inline std::vector<double> overlap_profile(std::span<const std::string> a,
                                           std::span<const std::string> b) {
  detail::validate_rbo_args(a, b, "overlap_profile");
  std::vector<double> profile;
  profile.reserve(std::min(a.size(), b.size()));
  detail::scan_overlap(a, b, [&](std::size_t d, std::size_t overlap) {
    profile.push_back(static_cast<double>(overlap) / static_cast<double>(d + 1));
  });
  return profile;
}

inline std::vector<double> overlap_profile(const std::vector<std::string>& a,
                                           const std::vector<std::string>& b) {
  return overlap_profile(std::span<const std::string>(a), std::span<const std::string>(b));
}

}  // namespace newsdiv
