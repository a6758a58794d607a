#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "unital/matrix.hpp"
#include "unital/random.hpp"

namespace unital {

/// Operator-sum form A -> sum_j F_j A F_j*. Holds 1 to 16 operators.
class KrausForm {
public:
    explicit KrausForm(std::vector<ComplexMatrix2> operators);

    const std::vector<ComplexMatrix2>& operators() const { return operators_; }

private:
    std::vector<ComplexMatrix2> operators_;
};

/// A -> mu_I A + mu_X XAX + mu_Y YAY + mu_Z ZAZ, coefficients in that order.
struct PauliMixingForm {
    std::array<double, 4> coefficients{};
};

/// Choi matrix C = sum_ij E_ij (x) Phi(E_ij); block (i, j) is Phi(E_ij).
struct ChoiForm {
    ComplexMatrix4 matrix;
};

/// Bloch-vector action r -> r * linear + offset (row-vector convention):
/// Phi(sigma_i) = sum_j linear(i, j) sigma_j and Phi(I) = I + sum_i offset_i sigma_i.
struct BlochAffineForm {
    RealMatrix3 linear;
    Vector3 offset{};
};

/// Pauli index (0..3 = I, X, Y, Z) carrying the k-th largest Choi eigenvalue in
/// the canonical form A -> (l1 A + l2 ZAZ + l3 XAX + l4 YAY) / 2.
inline constexpr std::array<std::size_t, 4> kCanonicalPauliOrder{0, 3, 1, 2};

enum class ChannelKind { Kraus, Pauli, Choi, Bloch };

class QubitChannel {
public:
    using Representation = std::variant<KrausForm, PauliMixingForm, ChoiForm, BlochAffineForm>;

    QubitChannel(KrausForm form) : rep_(std::move(form)) {}
    QubitChannel(PauliMixingForm form) : rep_(form) {}
    QubitChannel(ChoiForm form) : rep_(form) {}
    QubitChannel(BlochAffineForm form) : rep_(form) {}

    const Representation& representation() const { return rep_; }
    ChannelKind kind() const { return static_cast<ChannelKind>(rep_.index()); }

    template <typename Form>
    const Form* get_if() const {
        return std::get_if<Form>(&rep_);
    }

private:
    Representation rep_;
};

struct ChoiSpectrum {
    std::array<double, 4> lambdas{};  // descending
};

struct ValidationReport {
    bool hermitian_preserving = false;
    bool trace_preserving = false;
    bool unital = false;
    bool completely_positive = false;

    double hermitian_defect = 0.0;  // ||C - C*||_F
    double trace_defect = 0.0;      // max_ij |tr Phi(E_ij) - delta_ij|
    double unital_defect = 0.0;     // ||Phi(I) - I||_F
    double min_choi_eigenvalue = 0.0;

    bool is_channel() const { return hermitian_preserving && trace_preserving && completely_positive; }
    bool is_unital_channel() const { return is_channel() && unital; }
};

ComplexMatrix4 choi_of(const std::function<ComplexMatrix2(const ComplexMatrix2&)>& map);

ChoiForm to_choi(const QubitChannel& ch);

/// Kraus operators from the eigendecomposition of a PSD Choi matrix.
/// Eigenvalues in [-tol, 0] are clamped to zero; below -tol raises NotPsdError.
/// Eigenvectors with eigenvalue <= tol are dropped.
KrausForm from_choi(const ChoiForm& c, double tol = kDefaultTol);

/// Call as unital::apply: argument-dependent lookup also reaches std::apply.
ComplexMatrix2 apply(const QubitChannel& ch, const ComplexMatrix2& rho);

ValidationReport validate(const QubitChannel& ch, double tol = kDefaultTol);

ChoiSpectrum choi_spectrum(const QubitChannel& ch, double tol = kDefaultTol);

BlochAffineForm to_bloch(const QubitChannel& ch);

/// max over sigma in {I, X, Y, Z} of ||a(sigma) - b(sigma)||_F.
double pauli_basis_distance(const std::function<ComplexMatrix2(const ComplexMatrix2&)>& a,
                            const std::function<ComplexMatrix2(const ComplexMatrix2&)>& b);
double pauli_basis_distance(const QubitChannel& a, const QubitChannel& b);

/// The channel A -> v ch(u A u*) v*.
QubitChannel conjugate(const QubitChannel& ch, const ComplexMatrix2& u, const ComplexMatrix2& v);

QubitChannel identity_channel();
QubitChannel depolarizing_channel();
QubitChannel unitary_channel(const ComplexMatrix2& u);

/// Channel with Bloch action (x, y, z) -> (d1 x, d2 y, d3 z).
QubitChannel diagonal_bloch_channel(const Vector3& d);

/// Haar-random SU(2) element from a normalized Gaussian quaternion.
ComplexMatrix2 random_unitary(std::uint64_t seed);
ComplexMatrix2 random_unitary(CounterRng& rng);

/// Uniform simplex spectrum (sum 2) in canonical Pauli form, conjugated by two
/// independent Haar unitaries. Returned in Kraus form.
QubitChannel random_unital_channel(std::uint64_t seed);

/// A -> v Psi(u A u*) v* where Psi has Choi spectrum `lambdas` in canonical order
/// (lambdas[0] on I, [1] on Z, [2] on X, [3] on Y). Kraus form; lambdas >= 0.
QubitChannel conjugated_canonical_channel(const std::array<double, 4>& lambdas, const ComplexMatrix2& u,
                                          const ComplexMatrix2& v);

}  // namespace unital
