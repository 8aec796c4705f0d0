// Copyright 2026 the bsl authors
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

namespace bsl {

/// splitmix64.  All randomized suites draw from this generator so runs are
/// reproducible across platforms (std:: distributions are not portable).
///
/// Splitting rule: a child stream for tag t is seeded with
/// mix(seed ^ GOLDEN*(t+1)).  Parallel per-orbit work uses
/// split(seed, orbit-minimal-element) so serial and parallel runs agree.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t bounded(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    SplitMix64 split(std::uint64_t tag) const {
        SplitMix64 child(state ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
        child.next();
        return child;
    }
};

}  // namespace bsl
