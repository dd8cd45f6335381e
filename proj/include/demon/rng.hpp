// Copyright 2026 The demon-cycle Authors
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

#include <array>
#include <cstdint>

namespace demon {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// The output is a pure function of (key, counter).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  [[nodiscard]] static Counter block(Counter ctr, Key key);
};

/// Independent random stream addressed by (seed, stream index). Draw k of
/// stream s is Philox(key = seed, counter = (s, k)); streams never overlap
/// and do not depend on the order in which they are consumed.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform();

  /// Standard normal via Box-Muller; caches the second variate.
  double normal();

  [[nodiscard]] std::uint64_t draws() const { return block_index_; }

 private:
  std::uint64_t next_u64();

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  Philox4x32::Counter buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace demon
