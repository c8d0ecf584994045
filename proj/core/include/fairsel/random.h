// Copyright 2026 The Authors.
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

#ifndef FAIRSEL_RANDOM_H_
#define FAIRSEL_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fairsel {

// All randomness flows from explicit 64-bit seeds. Substreams are derived by
// hashing (seed, path...) with SplitMix64, so trial t of grid point g gets
// DeriveSeed(seed, {g, t}) regardless of execution order.
std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> path);

using Engine = std::mt19937_64;

inline Engine MakeEngine(std::uint64_t seed) { return Engine(SplitMix64(seed)); }

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double Uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace fairsel

#endif  // FAIRSEL_RANDOM_H_
