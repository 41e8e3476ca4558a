// Copyright 2026 The qdc authors.
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
#include <random>
#include <string_view>

namespace qdc {

/// One-shot splitmix64 mixing function (public-domain constants).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic, seedable random stream.
///
/// The stream is an explicitly passed mutable value; everything else in
/// the library is a pure function of its inputs. Independent streams are
/// derived from (seed, stream index), so batched or multi-threaded
/// sampling is reproducible regardless of scheduling.
///
/// Algorithm (recorded in run manifests via `algorithm_id()`):
///   key     = splitmix64(seed + 0x9E3779B97F4A7C15 * (stream + 1))
///   engine  = std::mt19937_64 seeded with key
///   doubles = (engine() >> 11) * 2^-53, uniform on [0, 1)
/// std::mt19937_64 output is fully specified by the C++ standard, and the
/// 53-bit conversion avoids unspecified std::uniform_real_distribution
/// behaviour, so sequences are identical across platforms and toolchains.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(derive_key(seed, stream)), engine_(key_) {}

    /// Uniform double on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Bernoulli trial: true with probability p.
    bool bernoulli(double p) { return uniform01() < p; }

    /// Raw 64-bit draw.
    std::uint64_t next_u64() { return engine_(); }

    /// Child stream independent of this one; derivation chains, so
    /// derived(i).derived(j) trees stay reproducible.
    RandomStream derived(std::uint64_t index) const {
        RandomStream child(key_, index + 1);
        return child;
    }

    std::uint64_t key() const { return key_; }

    static constexpr std::string_view algorithm_id() {
        return "mt19937_64/splitmix64-derive/u53";
    }

  private:
    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
    }

    std::uint64_t key_;
    std::mt19937_64 engine_;
};

} // namespace qdc
