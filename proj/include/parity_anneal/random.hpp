// Copyright 2026 The parity-anneal Authors
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
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace parity_anneal {

/// SplitMix64 finalizer. Used both as a counter-based generator
/// (value k of stream s is splitmix64(s + (k + 1) * golden)) and as the seed
/// mixing function for task coordinates.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t counter_draw(std::uint64_t stream, std::uint64_t counter) {
    return splitmix64(stream + counter * 0x9e3779b97f4a7c15ULL);
}

/// Order-sensitive combination of seed coordinates.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t coordinate) {
    return splitmix64(seed ^ splitmix64(coordinate + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> coordinates) {
    for (auto c : coordinates) seed = mix_seed(seed, c);
    return seed;
}

/// FNV-1a, for folding string coordinates (instance ids, scheme tags) into seeds.
constexpr std::uint64_t hash_string(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Sequential view of the counter-based generator; a UniformRandomBitGenerator.
class CounterStream {
  public:
    using result_type = std::uint64_t;

    explicit CounterStream(std::uint64_t stream) : stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return counter_draw(stream_, counter_++); }

  private:
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

/// Thin wrapper over a 64-bit engine with platform-independent derived draws.
/// std::uniform_real_distribution is implementation-defined, so the
/// conversions are done here to keep sample files bit-identical everywhere.
template <class Engine>
class BasicRng {
  public:
    explicit BasicRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe argument for std::log.
    double uniform_open() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0 (Lemire's multiply-shift with rejection).
    std::uint64_t below(std::uint64_t n) {
        while (true) {
            unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
            auto low = static_cast<std::uint64_t>(m);
            if (low >= n || low >= (-n) % n) return static_cast<std::uint64_t>(m >> 64);
        }
    }

    bool coin() { return (engine_() >> 63) != 0; }

    bool accept(double log_ratio) { return log_ratio >= 0.0 || uniform() < std::exp(log_ratio); }

  private:
    Engine engine_;
};

using Rng = BasicRng<std::mt19937_64>;
/// Branch-free stream for the innermost Monte Carlo loops.
using StreamRng = BasicRng<CounterStream>;

}  // namespace parity_anneal
