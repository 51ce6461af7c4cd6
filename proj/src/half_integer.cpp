// Copyright 2026 The qclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qclass/half_integer.hpp"

#include <charconv>
#include <cmath>

#include "qclass/errors.hpp"

namespace qclass {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  const char* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || begin == s.data() + s.size())
    throw DomainError("malformed half-integer '" + std::string(whole) + "'");
  return v;
}

}  // namespace

HalfInteger HalfInteger::parse(std::string_view text) {
  if (text.empty()) throw DomainError("empty half-integer");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const int num = parse_int(text.substr(0, slash), text);
    const int den = parse_int(text.substr(slash + 1), text);
    if (den == 1) return from_int(num);
    if (den != 2) throw DomainError("half-integer denominator must be 1 or 2: '" + std::string(text) + "'");
    return from_twice(num);
  }
  if (text.find('.') != std::string_view::npos) {
    const double v = std::stod(std::string(text));
    const double twice = 2.0 * v;
    if (std::abs(twice - std::round(twice)) > 1e-12)
      throw DomainError("not a half-integer: '" + std::string(text) + "'");
    return from_twice(static_cast<int>(std::lround(twice)));
  }
  return from_int(parse_int(text, text));
}

std::string HalfInteger::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

void require_angular_momentum(HalfInteger j, const char* what) {
  if (j.twice() < 0) throw DomainError(std::string(what) + ": angular momentum must be non-negative, got " + j.str());
}

void require_projection(HalfInteger j, HalfInteger m, const char* what) {
  require_angular_momentum(j, what);
  const int tm = m.twice();
  if (tm > j.twice() || -tm > j.twice() || (j.twice() - tm) % 2 != 0)
    throw DomainError(std::string(what) + ": magnetic number " + m.str() + " invalid for j=" + j.str());
}

}  // namespace qclass
