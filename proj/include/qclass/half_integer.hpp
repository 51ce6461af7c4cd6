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

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qclass {

// Angular momenta and magnetic numbers are integers or half-integers; they are
// stored doubled so that arithmetic stays exact.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_int(int value) { return HalfInteger(2 * value); }

  /// Accepts "3", "-1", "3/2", "-1/2", "1.5", "0.5".
  static HalfInteger parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
  constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(twice_ - o.twice_); }
  constexpr auto operator<=>(const HalfInteger&) const = default;

  std::string str() const;

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

inline constexpr HalfInteger kHalf = HalfInteger::from_twice(1);

/// Throws DomainError unless `j` is a valid angular momentum (j >= 0).
void require_angular_momentum(HalfInteger j, const char* what);

/// Throws DomainError unless |m| <= j and m, j have the same parity.
void require_projection(HalfInteger j, HalfInteger m, const char* what);

/// True when |a-b| <= c <= a+b and a+b+c is an integer.
constexpr bool triangle(HalfInteger a, HalfInteger b, HalfInteger c) {
  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  if (ta < 0 || tb < 0 || tc < 0) return false;
  if ((ta + tb + tc) % 2 != 0) return false;
  const int lo = ta > tb ? ta - tb : tb - ta;
  return tc >= lo && tc <= ta + tb;
}

}  // namespace qclass
