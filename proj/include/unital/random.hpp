#pragma once

#include <cstdint>

namespace unital {

/// Counter-based generator: output k is a pure function of (key, k), so
/// streams are reproducible and can be split without shared state.
///
/// The distributions here are written out explicitly rather than taken from
/// <random>, whose distribution algorithms differ between standard libraries.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double uniform();

    /// Standard normal (Box-Muller; one draw per two uniforms).
    double gaussian();

    /// Exponential with rate 1.
    double exponential();

    /// Independent child stream, keyed by (this key, stream id). Does not
    /// advance this generator.
    CounterRng split(std::uint64_t stream) const;

private:
    CounterRng(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace unital
