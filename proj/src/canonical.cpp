#include "unital/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "unital/bloch.hpp"
#include "unital/errors.hpp"

namespace unital {

namespace {

struct Gadget {
    ComplexMatrix2 in;
    ComplexMatrix2 out;
};

// Conjugations that swap one adjacent pair of slots along the path I - Z - X - Y.
//   H  both sides: X <-> Z
//   H1 both sides: X <-> Y
//   H1 in, Z H1 out: I <-> Z
Gadget swap_gadget(std::size_t slot_a, std::size_t slot_b) {
    const double r = 1.0 / std::numbers::sqrt2;
    const ComplexMatrix2 h = r * (pauli(1) + pauli(3));
    const ComplexMatrix2 h1 = r * (pauli(1) + pauli(2));
    const std::size_t lo = std::min(slot_a, slot_b);
    const std::size_t hi = std::max(slot_a, slot_b);
    if (lo == 0 && hi == 3) return {h1, pauli(3) * h1};
    if (lo == 1 && hi == 3) return {h, h};
    if (lo == 1 && hi == 2) return {h1, h1};
    throw Error(ErrorCode::PreconditionViolated, "no gadget for this slot pair");
}

std::string spectrum_text(const std::array<double, 4>& l) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g, %.6g)", l[0], l[1], l[2], l[3]);
    return buf;
}

}  // namespace

ComplexMatrix4 canonical_choi(const ChoiSpectrum& spectrum) {
    const auto& l = spectrum.lambdas;
    ComplexMatrix4 c;
    c(0, 0) = c(3, 3) = 0.5 * (l[0] + l[1]);
    c(0, 3) = c(3, 0) = 0.5 * (l[0] - l[1]);
    c(1, 1) = c(2, 2) = 0.5 * (l[2] + l[3]);
    c(1, 2) = c(2, 1) = 0.5 * (l[2] - l[3]);
    return c;
}

PauliMixingForm canonical_pauli_form(const ChoiSpectrum& spectrum) {
    PauliMixingForm p;
    for (std::size_t k = 0; k < 4; ++k) p.coefficients[kCanonicalPauliOrder[k]] = 0.5 * spectrum.lambdas[k];
    return p;
}

PauliPermutation pauli_permute(const PauliMixingForm& form, const std::array<std::size_t, 4>& perm) {
    std::array<bool, 4> seen{};
    for (std::size_t s : perm) {
        if (s > 3 || seen[s]) throw Error(ErrorCode::PreconditionViolated, "perm is not a permutation of 0..3");
        seen[s] = true;
    }

    PauliPermutation out{ComplexMatrix2::identity(), ComplexMatrix2::identity(), {}};
    for (std::size_t s = 0; s < 4; ++s) out.result.coefficients[s] = form.coefficients[perm[s]];

    // Bubble each wanted source into place with adjacent swaps along the path.
    const std::array<std::size_t, 4>& path = kCanonicalPauliOrder;
    std::array<std::size_t, 4> current{0, 1, 2, 3};  // current[s]: source slot now sitting in slot s
    for (std::size_t pos = 0; pos < 4; ++pos) {
        std::size_t at = pos;
        while (current[path[at]] != perm[path[pos]]) ++at;
        for (; at > pos; --at) {
            const std::size_t a = path[at - 1];
            const std::size_t b = path[at];
            const Gadget g = swap_gadget(a, b);
            out.gadget_in = out.gadget_in * g.in;
            out.gadget_out = g.out * out.gadget_out;
            std::swap(current[a], current[b]);
        }
    }
    return out;
}

Canonicalization canonicalize(const QubitChannel& ch, double tol) {
    const ValidationReport report = validate(ch, tol);
    char buf[128];
    if (!report.hermitian_preserving) {
        std::snprintf(buf, sizeof buf, "||C - C*||_F = %.6g", report.hermitian_defect);
        throw Error(ErrorCode::NotHermitianPreserving, buf);
    }
    if (!report.trace_preserving) {
        std::snprintf(buf, sizeof buf, "max |tr Phi(E_ij) - delta_ij| = %.6g", report.trace_defect);
        throw Error(ErrorCode::NotTracePreserving, buf);
    }
    if (!report.unital) {
        std::snprintf(buf, sizeof buf, "||Phi(I) - I||_F = %.6g", report.unital_defect);
        throw Error(ErrorCode::NotUnital, buf);
    }

    const RealMatrix3 bloch = to_bloch(ch).linear;

    // Signed SVD bloch = left * diag(d) * right^t with left, right in SO(3).
    // Singular values land on the axes Z, X, Y in descending order, with any
    // negative sign on the smallest (Y); the resulting Pauli weights are then
    // already ordered I >= Z >= X >= Y.
    RealMatrix3 left = RealMatrix3::identity();
    RealMatrix3 right = RealMatrix3::identity();
    Vector3 d{};
    if (bloch.frobenius_norm() > 1e-14) {
        RealSvd3 svd = real_svd3(bloch);
        std::array<double, 3> sigma = svd.singular;
        if (determinant(svd.left) < 0.0) {
            for (std::size_t i = 0; i < 3; ++i) svd.left(i, 2) = -svd.left(i, 2);
            sigma[2] = -sigma[2];
        }
        if (determinant(svd.right) < 0.0) {
            for (std::size_t i = 0; i < 3; ++i) svd.right(i, 2) = -svd.right(i, 2);
            sigma[2] = -sigma[2];
        }
        // Axis (X, Y, Z) takes sorted index (1, 2, 0): a cyclic relabeling, so det stays +1.
        constexpr std::array<std::size_t, 3> source{1, 2, 0};
        for (std::size_t axis = 0; axis < 3; ++axis) {
            d[axis] = sigma[source[axis]];
            for (std::size_t i = 0; i < 3; ++i) {
                left(i, axis) = svd.left(i, source[axis]);
                right(i, axis) = svd.right(i, source[axis]);
            }
        }
    }

    // bloch(A -> v0 ch(u0 A u0*) v0*) = left^t * bloch * right = diag(d).
    ComplexMatrix2 u0 = ComplexMatrix2::identity();
    ComplexMatrix2 v0 = ComplexMatrix2::identity();
    if (!(left == RealMatrix3::identity())) u0 = su2_from_so3(left.transpose(), tol);
    if (!(right == RealMatrix3::identity())) v0 = su2_from_so3(right, tol);
    const PauliMixingForm diagonal_form = pauli_form_from_scaling(BlochScaling{d});

    // Stable sort starting from the canonical slot order, so ties stay in place.
    std::array<std::size_t, 4> by_weight = kCanonicalPauliOrder;
    std::stable_sort(by_weight.begin(), by_weight.end(), [&](std::size_t a, std::size_t b) {
        return diagonal_form.coefficients[a] > diagonal_form.coefficients[b];
    });
    std::array<std::size_t, 4> perm{};
    for (std::size_t k = 0; k < 4; ++k) perm[kCanonicalPauliOrder[k]] = by_weight[k];
    const PauliPermutation sorted = pauli_permute(diagonal_form, perm);

    Canonicalization out;
    out.u = u0 * sorted.gadget_in;
    out.v = sorted.gadget_out * v0;
    out.canonical = sorted.result;
    for (std::size_t k = 0; k < 4; ++k) out.spectrum.lambdas[k] = 2.0 * sorted.result.coefficients[kCanonicalPauliOrder[k]];

    const ComplexMatrix2 ud = out.u.adjoint();
    const ComplexMatrix2 vd = out.v.adjoint();
    const ComplexMatrix4 reduced = choi_of([&](const ComplexMatrix2& a) { return out.v * unital::apply(ch, out.u * a * ud) * vd; });
    const ComplexMatrix4 expected = canonical_choi(out.spectrum);
    out.residual = max_abs_entry(reduced - expected);
    if (out.residual > tol * std::max(1.0, max_abs_entry(expected))) {
        std::snprintf(buf, sizeof buf, "canonical Choi template mismatch %.6g for spectrum ", out.residual);
        throw Error(ErrorCode::CanonicalizationFailed, buf + spectrum_text(out.spectrum.lambdas));
    }
    return out;
}

EquivalenceResult unitarily_equivalent(const QubitChannel& a, const QubitChannel& b, double tol,
                                       double spectrum_tol) {
    const Canonicalization ca = canonicalize(a, tol);
    const Canonicalization cb = canonicalize(b, tol);

    EquivalenceResult out;
    for (std::size_t k = 0; k < 4; ++k)
        out.spectral_gap = std::max(out.spectral_gap, std::abs(ca.spectrum.lambdas[k] - cb.spectrum.lambdas[k]));
    if (out.spectral_gap > spectrum_tol) return out;

    // Both reduce to the same canonical map P: b(A) = vb* P(ub* A ub) vb and
    // P(B) = va a(ua B ua*) va*.
    out.equivalent = true;
    out.u = ca.u * cb.u.adjoint();
    out.v = cb.v.adjoint() * ca.v;
    const ComplexMatrix2 ud = out.u.adjoint();
    const ComplexMatrix2 vd = out.v.adjoint();
    out.witness_residual = pauli_basis_distance([&](const ComplexMatrix2& x) { return unital::apply(b, x); },
                                                [&](const ComplexMatrix2& x) { return out.v * unital::apply(a, out.u * x * ud) * vd; });
    return out;
}

}  // namespace unital
