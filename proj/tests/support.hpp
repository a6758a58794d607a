#pragma once

#include <cstdint>

#include "unital/channel.hpp"
#include "unital/matrix.hpp"
#include "unital/random.hpp"

namespace testing {

using namespace unital;

inline ComplexMatrix4 random_hermitian4(CounterRng& rng) {
    ComplexMatrix4 a;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) a(r, c) = Complex(rng.gaussian(), rng.gaussian());
    return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix2 random_matrix2(CounterRng& rng) {
    ComplexMatrix2 a;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) a(r, c) = Complex(rng.gaussian(), rng.gaussian());
    return a;
}

inline RealMatrix3 random_rotation(CounterRng& rng) { return adjoint_action(random_unitary(rng)); }

// |<a, b>| / (||a|| ||b||) == 1 iff a and b agree up to a global phase.
inline double phase_distance(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    Complex inner = 0.0;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) inner += std::conj(a(r, c)) * b(r, c);
    const Complex phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : Complex(1.0);
    return frobenius_distance(phase * a, b);
}

inline std::array<double, 4> sorted_desc(std::array<double, 4> x) {
    std::sort(x.begin(), x.end(), std::greater<>());
    return x;
}

// The map of the counterexample: Bloch action diag(1, 1, 0), not completely positive.
inline ComplexMatrix4 flattening_choi() {
    return 0.5 * ComplexMatrix4{{1.0, 0.0, 0.0, 2.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {2.0, 0.0, 0.0, 1.0}};
}

}  // namespace testing
