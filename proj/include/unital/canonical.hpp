#pragma once

#include <array>
#include <cstddef>

#include "unital/channel.hpp"
#include "unital/matrix.hpp"

namespace unital {

/// Local-unitary reduction of a unital map to its canonical Pauli form:
/// A -> v ch(u A u*) v* equals `canonical`, whose coefficients are
/// spectrum / 2 placed on I, Z, X, Y (see kCanonicalPauliOrder).
struct Canonicalization {
    ComplexMatrix2 u;  // input side
    ComplexMatrix2 v;  // output side
    ChoiSpectrum spectrum;
    PauliMixingForm canonical;
    double residual = 0.0;  // max entry deviation of the conjugated Choi matrix from the template
};

/// The canonical Choi matrix for a descending spectrum:
///   1/2 [[l1+l2, 0, 0, l1-l2], [0, l3+l4, l3-l4, 0], [0, l3-l4, l3+l4, 0], [l1-l2, 0, 0, l1+l2]].
ComplexMatrix4 canonical_choi(const ChoiSpectrum& spectrum);

PauliMixingForm canonical_pauli_form(const ChoiSpectrum& spectrum);

/// Requires a unital, trace-preserving, Hermitian-preserving map (complete
/// positivity is not needed). Raises NotUnital, NotTracePreserving or
/// NotHermitianPreserving, and CanonicalizationFailed if the result does not
/// reproduce the canonical Choi template to tol.
Canonicalization canonicalize(const QubitChannel& ch, double tol = kDefaultTol);

struct PauliPermutation {
    ComplexMatrix2 gadget_in;
    ComplexMatrix2 gadget_out;
    PauliMixingForm result;
};

/// Relabel Pauli coefficients by unitary conjugation: result.coefficients[s] =
/// form.coefficients[perm[s]], and result(A) = gadget_out form(gadget_in A gadget_in*) gadget_out*.
/// Gadgets are products of H = (X+Z)/sqrt2, H1 = (X+Y)/sqrt2 and Z.
PauliPermutation pauli_permute(const PauliMixingForm& form, const std::array<std::size_t, 4>& perm);

struct EquivalenceResult {
    bool equivalent = false;
    ComplexMatrix2 u;              // b(A) = v a(u A u*) v* when equivalent
    ComplexMatrix2 v;
    double witness_residual = 0.0; // Pauli-basis distance of that identity
    double spectral_gap = 0.0;     // max_k |lambda_a[k] - lambda_b[k]|
};

inline constexpr double kSpectrumTol = 1e-7;

/// Decide local unitary equivalence by comparing Choi spectra entrywise
/// (absolute tolerance spectrum_tol); on acceptance the two canonicalizations
/// are composed into witnesses u, v.
EquivalenceResult unitarily_equivalent(const QubitChannel& a, const QubitChannel& b, double tol = kDefaultTol,
                                       double spectrum_tol = kSpectrumTol);

}  // namespace unital
