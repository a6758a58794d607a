#include "unital/random.hpp"

#include <cmath>
#include <numbers>

namespace unital {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed) : key_(mix64(seed + kGamma)), counter_(0) {}

std::uint64_t CounterRng::next_u64() { return mix64(key_ + kGamma * ++counter_); }

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::exponential() { return -std::log(1.0 - uniform()); }

CounterRng CounterRng::split(std::uint64_t stream) const {
    return CounterRng(mix64(key_ ^ mix64(stream + 0xD1B54A32D192ED03ULL)), 0);
}

}  // namespace unital
