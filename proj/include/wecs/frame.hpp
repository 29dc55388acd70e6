// Copyright 2026 The wecs-sim Authors
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

#include <cmath>

namespace wecs {

// Two-component quantity expressed in one reference frame (αβ or dq).
// The frame is implied by the variable name at the call site.
struct FrameVector2 {
  double first = 0.0;
  double second = 0.0;

  constexpr FrameVector2& operator+=(const FrameVector2& o) {
    first += o.first;
    second += o.second;
    return *this;
  }
  constexpr FrameVector2& operator-=(const FrameVector2& o) {
    first -= o.first;
    second -= o.second;
    return *this;
  }
  constexpr FrameVector2& operator*=(double k) {
    first *= k;
    second *= k;
    return *this;
  }

  friend constexpr FrameVector2 operator+(FrameVector2 a, const FrameVector2& b) { return a += b; }
  friend constexpr FrameVector2 operator-(FrameVector2 a, const FrameVector2& b) { return a -= b; }
  friend constexpr FrameVector2 operator-(const FrameVector2& a) { return {-a.first, -a.second}; }
  friend constexpr FrameVector2 operator*(FrameVector2 a, double k) { return a *= k; }
  friend constexpr FrameVector2 operator*(double k, FrameVector2 a) { return a *= k; }
  friend constexpr bool operator==(const FrameVector2&, const FrameVector2&) = default;

  double norm() const { return std::hypot(first, second); }
  bool finite() const { return std::isfinite(first) && std::isfinite(second); }
};

constexpr double dot(const FrameVector2& a, const FrameVector2& b) {
  return a.first * b.first + a.second * b.second;
}

// 2x2 matrix acting on FrameVector2, row-major.
struct Matrix2 {
  double m00 = 1.0, m01 = 0.0;
  double m10 = 0.0, m11 = 1.0;

  constexpr FrameVector2 operator*(const FrameVector2& x) const {
    return {m00 * x.first + m01 * x.second, m10 * x.first + m11 * x.second};
  }
  constexpr Matrix2 transposed() const { return {m00, m10, m01, m11}; }
};

}  // namespace wecs
