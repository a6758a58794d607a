#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"
#include "unital/canonical.hpp"
#include "unital/errors.hpp"

using namespace unital;
using namespace testing;

namespace {

double reduction_residual(const QubitChannel& ch, const Canonicalization& c) {
    const ComplexMatrix2 ud = c.u.adjoint();
    const ComplexMatrix2 vd = c.v.adjoint();
    return pauli_basis_distance([&](const ComplexMatrix2& a) { return c.v * unital::apply(ch, c.u * a * ud) * vd; },
                                [&](const ComplexMatrix2& a) { return unital::apply(c.canonical, a); });
}

double template_residual(const Canonicalization& c) {
    return max_abs_entry(to_choi(c.canonical).matrix - canonical_choi(c.spectrum));
}

}  // namespace

TEST_CASE("canonical_choi has the block template") {
    const ChoiSpectrum s{{1.0, 0.5, 0.3, 0.2}};
    const ComplexMatrix4 c = canonical_choi(s);
    CHECK(c(0, 0) == 0.75);
    CHECK(c(0, 3) == 0.25);
    CHECK(c(1, 1) == 0.25);
    CHECK(std::abs(c(1, 2) - 0.05) <= 1e-15);
    CHECK(c(0, 1) == 0.0);
    CHECK(frobenius_distance(to_choi(canonical_pauli_form(s)).matrix, c) <= 1e-15);
    const auto e = hermitian_eigen4(c).eigenvalues;
    for (std::size_t k = 0; k < 4; ++k) CHECK(e[k] == doctest::Approx(s.lambdas[k]).epsilon(1e-14));
}

TEST_CASE("canonicalize fixed point") {
    // Already canonical: weights descending on I, Z, X, Y.
    const PauliMixingForm p{{0.4, 0.2, 0.1, 0.3}};
    const Canonicalization c = canonicalize(p);
    CHECK(phase_distance(c.u, ComplexMatrix2::identity()) <= 1e-12);
    CHECK(phase_distance(c.v, ComplexMatrix2::identity()) <= 1e-12);
    for (std::size_t k = 0; k < 4; ++k) CHECK(c.canonical.coefficients[k] == doctest::Approx(p.coefficients[k]).epsilon(1e-14));
    const std::array<double, 4> lambdas{0.8, 0.6, 0.4, 0.2};
    for (std::size_t k = 0; k < 4; ++k) CHECK(c.spectrum.lambdas[k] == doctest::Approx(lambdas[k]).epsilon(1e-14));
}

TEST_CASE("unitary channels reduce to the identity") {
    CounterRng rng(21);
    for (int t = 0; t < 20; ++t) {
        const QubitChannel ch = unitary_channel(random_unitary(rng));
        const Canonicalization c = canonicalize(ch);
        CHECK(c.spectrum.lambdas[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(pauli_basis_distance(c.canonical, identity_channel()) <= 1e-10);
        CHECK(reduction_residual(ch, c) <= 1e-10);
    }
}

TEST_CASE("canonicalize random channels") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const QubitChannel ch = random_unital_channel(seed);
        const Canonicalization c = canonicalize(ch);
        CHECK(reduction_residual(ch, c) <= 1e-8);
        CHECK(template_residual(c) <= 1e-12);
        const auto s = choi_spectrum(ch).lambdas;
        for (std::size_t k = 0; k < 4; ++k) CHECK(c.spectrum.lambdas[k] == doctest::Approx(s[k]).epsilon(1e-9));
        for (std::size_t k = 0; k + 1 < 4; ++k) CHECK(c.spectrum.lambdas[k] >= c.spectrum.lambdas[k + 1]);

        // Idempotence.
        const Canonicalization again = canonicalize(c.canonical);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(again.spectrum.lambdas[k] == doctest::Approx(c.spectrum.lambdas[k]).epsilon(1e-9));
            CHECK(std::abs(again.canonical.coefficients[k] - c.canonical.coefficients[k]) <= 1e-8);
        }
    }
}

TEST_CASE("canonicalize degenerate and non-CP maps") {
    SUBCASE("depolarizing") {
        const Canonicalization c = canonicalize(depolarizing_channel());
        CHECK(c.u == ComplexMatrix2::identity());
        CHECK(c.v == ComplexMatrix2::identity());
        for (double x : c.spectrum.lambdas) CHECK(x == doctest::Approx(0.5));
    }
    SUBCASE("ties between weights") {
        for (const auto& mu : {std::array<double, 4>{0.5, 0.5, 0.0, 0.0}, {0.0, 0.0, 0.5, 0.5}, {0.0, 1.0, 0.0, 0.0},
                               {0.25, 0.25, 0.25, 0.25}, {0.1, 0.3, 0.3, 0.3}, {0.0, 0.0, 0.0, 1.0}}) {
            const QubitChannel ch = PauliMixingForm{mu};
            const Canonicalization c = canonicalize(ch);
            CHECK(reduction_residual(ch, c) <= 1e-10);
            const auto expected = sorted_desc({2 * mu[0], 2 * mu[1], 2 * mu[2], 2 * mu[3]});
            for (std::size_t k = 0; k < 4; ++k) CHECK(c.spectrum.lambdas[k] == doctest::Approx(expected[k]).epsilon(1e-12));
        }
    }
    SUBCASE("not completely positive is still reduced") {
        const QubitChannel ch = diagonal_bloch_channel({1.0, 1.0, 0.0});
        const Canonicalization c = canonicalize(ch);
        CHECK(reduction_residual(ch, c) <= 1e-10);
        const std::array<double, 4> expected{1.5, 0.5, 0.5, -0.5};
        for (std::size_t k = 0; k < 4; ++k) CHECK(c.spectrum.lambdas[k] == doctest::Approx(expected[k]).epsilon(1e-12));
    }
    SUBCASE("reflection has an odd number of negative axes") {
        const QubitChannel ch = diagonal_bloch_channel({1.0, 1.0, -1.0});
        const Canonicalization c = canonicalize(ch);
        CHECK(reduction_residual(ch, c) <= 1e-10);
        CHECK(c.spectrum.lambdas[3] == doctest::Approx(-1.0));
    }
}

TEST_CASE("canonicalize rejects maps outside its domain") {
    auto code_of = [](const QubitChannel& ch) {
        try {
            canonicalize(ch);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::NonFinite;
    };
    const QubitChannel damping =
        KrausForm({ComplexMatrix2{{1.0, 0.0}, {0.0, std::sqrt(0.7)}}, ComplexMatrix2{{0.0, std::sqrt(0.3)}, {0.0, 0.0}}});
    CHECK(code_of(damping) == ErrorCode::NotUnital);
    CHECK(code_of(PauliMixingForm{{0.5, 0.2, 0.2, 0.2}}) == ErrorCode::NotTracePreserving);
    ComplexMatrix4 skew = to_choi(identity_channel()).matrix;
    skew(0, 1) = Complex(0.0, 0.3);
    CHECK(code_of(ChoiForm{skew}) == ErrorCode::NotHermitianPreserving);
}

TEST_CASE("pauli_permute") {
    const PauliMixingForm form{{0.4, 0.3, 0.2, 0.1}};
    auto check_realizes = [&](const PauliPermutation& pp) {
        const ComplexMatrix2 gi = pp.gadget_in;
        const ComplexMatrix2 go = pp.gadget_out;
        CHECK(pauli_basis_distance(
                  [&](const ComplexMatrix2& a) { return go * unital::apply(form, gi * a * gi.adjoint()) * go.adjoint(); },
                  [&](const ComplexMatrix2& a) { return unital::apply(pp.result, a); }) <= 1e-12);
    };

    SUBCASE("identity") {
        const auto pp = pauli_permute(form, {0, 1, 2, 3});
        CHECK(pp.gadget_in == ComplexMatrix2::identity());
        CHECK(pp.gadget_out == ComplexMatrix2::identity());
        CHECK(pp.result.coefficients == form.coefficients);
    }
    SUBCASE("X and Z swap through H on both sides") {
        const auto pp = pauli_permute(form, {0, 3, 2, 1});
        CHECK(pp.result.coefficients == std::array<double, 4>{0.4, 0.1, 0.2, 0.3});
        const ComplexMatrix2 h = (1.0 / std::sqrt(2.0)) * (pauli(1) + pauli(3));
        CHECK(phase_distance(pp.gadget_in, h) <= 1e-15);
        CHECK(phase_distance(pp.gadget_out, h) <= 1e-15);
        check_realizes(pp);
    }
    SUBCASE("all 24 permutations, with round trip") {
        std::array<std::size_t, 4> perm{0, 1, 2, 3};
        int count = 0;
        do {
            const auto pp = pauli_permute(form, perm);
            for (std::size_t s = 0; s < 4; ++s) CHECK(pp.result.coefficients[s] == form.coefficients[perm[s]]);
            check_realizes(pp);
            std::array<std::size_t, 4> inverse{};
            for (std::size_t s = 0; s < 4; ++s) inverse[perm[s]] = s;
            CHECK(pauli_permute(pp.result, inverse).result.coefficients == form.coefficients);
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(count == 24);
    }
    SUBCASE("rejects non-permutations") {
        CHECK_THROWS_AS(pauli_permute(form, {0, 0, 1, 2}), Error);
        CHECK_THROWS_AS(pauli_permute(form, {0, 1, 2, 4}), Error);
    }
}

TEST_CASE("unitarily_equivalent") {
    SUBCASE("conjugated pairs") {
        CounterRng rng(77);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const QubitChannel a = random_unital_channel(seed);
            const QubitChannel b = conjugate(a, random_unitary(rng), random_unitary(rng));
            const auto r = unitarily_equivalent(a, b);
            CHECK(r.equivalent);
            CHECK(r.witness_residual <= 1e-8);
            const auto sa = choi_spectrum(a).lambdas, sb = choi_spectrum(b).lambdas;
            for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(sa[k] - sb[k]) <= 1e-9);
        }
    }
    SUBCASE("Pauli weights in reverse order") {
        const auto r = unitarily_equivalent(PauliMixingForm{{0.4, 0.3, 0.2, 0.1}}, PauliMixingForm{{0.1, 0.2, 0.3, 0.4}});
        CHECK(r.equivalent);
        CHECK(r.witness_residual <= 1e-10);
    }
    SUBCASE("distinct spectra") {
        const auto r = unitarily_equivalent(PauliMixingForm{{0.4, 0.3, 0.2, 0.1}}, PauliMixingForm{{0.4, 0.3, 0.25, 0.05}});
        CHECK_FALSE(r.equivalent);
        CHECK(r.spectral_gap == doctest::Approx(0.1));
    }
    SUBCASE("equivalence relation") {
        CounterRng rng(5);
        std::vector<QubitChannel> chans;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            chans.push_back(random_unital_channel(seed));
            chans.push_back(conjugate(chans.back(), random_unitary(rng), random_unitary(rng)));
        }
        for (std::size_t i = 0; i < chans.size(); ++i) {
            CHECK(unitarily_equivalent(chans[i], chans[i]).equivalent);
            for (std::size_t j = 0; j < chans.size(); ++j) {
                const bool ij = unitarily_equivalent(chans[i], chans[j]).equivalent;
                CHECK(ij == unitarily_equivalent(chans[j], chans[i]).equivalent);
                CHECK(ij == (i / 2 == j / 2));
            }
        }
    }
}
