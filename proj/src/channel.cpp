#include "unital/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "unital/errors.hpp"

namespace unital {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ComplexMatrix2 unit_matrix(std::size_t i, std::size_t j) {
    ComplexMatrix2 e;
    e(i, j) = 1.0;
    return e;
}

ComplexMatrix2 choi_block(const ComplexMatrix4& c, std::size_t i, std::size_t j) {
    ComplexMatrix2 b;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t d = 0; d < 2; ++d) b(a, d) = c(2 * i + a, 2 * j + d);
    return b;
}

ComplexMatrix2 apply_kraus(const KrausForm& k, const ComplexMatrix2& a) {
    ComplexMatrix2 out;
    for (const auto& f : k.operators()) out += f * a * f.adjoint();
    return out;
}

ComplexMatrix2 apply_pauli(const PauliMixingForm& p, const ComplexMatrix2& a) {
    ComplexMatrix2 out;
    for (std::size_t k = 0; k < 4; ++k) out += p.coefficients[k] * (pauli(k) * a * pauli(k));
    return out;
}

ComplexMatrix2 apply_choi(const ChoiForm& c, const ComplexMatrix2& a) {
    ComplexMatrix2 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out += a(i, j) * choi_block(c.matrix, i, j);
    return out;
}

ComplexMatrix2 apply_bloch(const BlochAffineForm& b, const ComplexMatrix2& a) {
    // a = a0 I + sum_i a_i sigma_i with complex coefficients.
    const Complex a0 = 0.5 * a.trace();
    ComplexMatrix2 out = a0 * pauli(0);
    for (std::size_t j = 0; j < 3; ++j) {
        Complex coeff = a0 * b.offset[j];
        for (std::size_t i = 0; i < 3; ++i) coeff += 0.5 * (pauli(i + 1) * a).trace() * b.linear(i, j);
        out += coeff * pauli(j + 1);
    }
    return out;
}

}  // namespace

KrausForm::KrausForm(std::vector<ComplexMatrix2> operators) : operators_(std::move(operators)) {
    if (operators_.empty() || operators_.size() > 16) {
        throw Error(ErrorCode::PreconditionViolated,
                    "Kraus form needs 1 to 16 operators, got " + std::to_string(operators_.size()));
    }
}

ComplexMatrix4 choi_of(const std::function<ComplexMatrix2(const ComplexMatrix2&)>& map) {
    ComplexMatrix4 c;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const ComplexMatrix2 block = map(unit_matrix(i, j));
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t d = 0; d < 2; ++d) c(2 * i + a, 2 * j + d) = block(a, d);
        }
    return c;
}

ComplexMatrix2 apply(const QubitChannel& ch, const ComplexMatrix2& rho) {
    return std::visit(overloaded{
                          [&](const KrausForm& k) { return apply_kraus(k, rho); },
                          [&](const PauliMixingForm& p) { return apply_pauli(p, rho); },
                          [&](const ChoiForm& c) { return apply_choi(c, rho); },
                          [&](const BlochAffineForm& b) { return apply_bloch(b, rho); },
                      },
                      ch.representation());
}

ChoiForm to_choi(const QubitChannel& ch) {
    if (const auto* c = ch.get_if<ChoiForm>()) return *c;
    if (const auto* k = ch.get_if<KrausForm>()) {
        // Each operator contributes v v*, v = its columns stacked.
        ComplexMatrix4 c;
        for (const auto& f : k->operators()) {
            const ComplexVector4 v{f(0, 0), f(1, 0), f(0, 1), f(1, 1)};
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t s = 0; s < 4; ++s) c(r, s) += v[r] * std::conj(v[s]);
        }
        return {c};
    }
    return {choi_of([&](const ComplexMatrix2& a) { return unital::apply(ch, a); })};
}

KrausForm from_choi(const ChoiForm& c, double tol) {
    const HermitianEigen4 eig = hermitian_eigen4(c.matrix, tol);
    const double min_eig = eig.eigenvalues[3];
    if (min_eig < -tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "Choi matrix has eigenvalue %.17g", min_eig);
        throw NotPsdError(min_eig, buf);
    }
    std::vector<ComplexMatrix2> ops;
    for (std::size_t k = 0; k < 4; ++k) {
        const double lambda = eig.eigenvalues[k];
        if (lambda <= tol) continue;
        const double scale = std::sqrt(lambda);
        ComplexMatrix2 f;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t a = 0; a < 2; ++a) f(a, i) = scale * eig.eigenvectors(2 * i + a, k);
        ops.push_back(f);
    }
    if (ops.empty()) ops.emplace_back();
    return KrausForm(std::move(ops));
}

ValidationReport validate(const QubitChannel& ch, double tol) {
    const ComplexMatrix4 c = to_choi(ch).matrix;
    ValidationReport rep;

    rep.hermitian_defect = frobenius_distance(c, c.adjoint());
    rep.hermitian_preserving = rep.hermitian_defect <= tol * std::max(1.0, c.frobenius_norm());

    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex tr = choi_block(c, i, j).trace();
            rep.trace_defect = std::max(rep.trace_defect, std::abs(tr - (i == j ? 1.0 : 0.0)));
        }
    rep.trace_preserving = rep.trace_defect <= tol;

    const ComplexMatrix2 image_of_identity = choi_block(c, 0, 0) + choi_block(c, 1, 1);
    rep.unital_defect = frobenius_distance(image_of_identity, ComplexMatrix2::identity());
    rep.unital = rep.unital_defect <= tol;

    const ComplexMatrix4 hermitian_part = 0.5 * (c + c.adjoint());
    rep.min_choi_eigenvalue = hermitian_eigen4(hermitian_part, tol).eigenvalues[3];
    rep.completely_positive = rep.hermitian_preserving && rep.min_choi_eigenvalue >= -tol;
    return rep;
}

ChoiSpectrum choi_spectrum(const QubitChannel& ch, double tol) {
    return {hermitian_eigen4(to_choi(ch).matrix, tol).eigenvalues};
}

BlochAffineForm to_bloch(const QubitChannel& ch) {
    BlochAffineForm b;
    for (std::size_t i = 0; i < 3; ++i) {
        const ComplexMatrix2 image = unital::apply(ch, pauli(i + 1));
        for (std::size_t j = 0; j < 3; ++j) b.linear(i, j) = 0.5 * (pauli(j + 1) * image).trace().real();
    }
    const ComplexMatrix2 image_of_identity = unital::apply(ch, pauli(0));
    for (std::size_t i = 0; i < 3; ++i) b.offset[i] = 0.5 * (pauli(i + 1) * image_of_identity).trace().real();
    return b;
}

double pauli_basis_distance(const std::function<ComplexMatrix2(const ComplexMatrix2&)>& a,
                            const std::function<ComplexMatrix2(const ComplexMatrix2&)>& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, frobenius_distance(a(pauli(k)), b(pauli(k))));
    return worst;
}

double pauli_basis_distance(const QubitChannel& a, const QubitChannel& b) {
    return pauli_basis_distance([&](const ComplexMatrix2& x) { return unital::apply(a, x); },
                                [&](const ComplexMatrix2& x) { return unital::apply(b, x); });
}

QubitChannel conjugate(const QubitChannel& ch, const ComplexMatrix2& u, const ComplexMatrix2& v) {
    if (const auto* k = ch.get_if<KrausForm>()) {
        std::vector<ComplexMatrix2> ops;
        ops.reserve(k->operators().size());
        for (const auto& f : k->operators()) ops.push_back(v * f * u);
        return KrausForm(std::move(ops));
    }
    const ComplexMatrix2 ud = u.adjoint();
    const ComplexMatrix2 vd = v.adjoint();
    return ChoiForm{choi_of([&](const ComplexMatrix2& a) { return v * unital::apply(ch, u * a * ud) * vd; })};
}

QubitChannel identity_channel() { return PauliMixingForm{{1.0, 0.0, 0.0, 0.0}}; }

QubitChannel depolarizing_channel() { return PauliMixingForm{{0.25, 0.25, 0.25, 0.25}}; }

QubitChannel unitary_channel(const ComplexMatrix2& u) { return KrausForm({u}); }

QubitChannel diagonal_bloch_channel(const Vector3& d) {
    BlochAffineForm b;
    b.linear = RealMatrix3::diagonal(d);
    return b;
}

ComplexMatrix2 random_unitary(CounterRng& rng) {
    std::array<double, 4> q{};
    double len = 0.0;
    while (len < 1e-12) {
        for (auto& x : q) x = rng.gaussian();
        len = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    }
    for (auto& x : q) x /= len;
    return ComplexMatrix2{{Complex(q[0], q[1]), Complex(q[2], q[3])},
                          {Complex(-q[2], q[3]), Complex(q[0], -q[1])}};
}

ComplexMatrix2 random_unitary(std::uint64_t seed) {
    CounterRng rng(seed);
    return random_unitary(rng);
}

QubitChannel conjugated_canonical_channel(const std::array<double, 4>& lambdas, const ComplexMatrix2& u,
                                          const ComplexMatrix2& v) {
    std::vector<ComplexMatrix2> ops;
    for (std::size_t k = 0; k < 4; ++k) {
        if (lambdas[k] < 0.0) {
            throw Error(ErrorCode::PreconditionViolated, "negative spectrum entry " + std::to_string(lambdas[k]));
        }
        ops.push_back(std::sqrt(0.5 * lambdas[k]) * (v * pauli(kCanonicalPauliOrder[k]) * u));
    }
    return KrausForm(std::move(ops));
}

QubitChannel random_unital_channel(std::uint64_t seed) {
    CounterRng rng(seed);
    std::array<double, 4> lambdas{};
    double total = 0.0;
    for (auto& x : lambdas) total += (x = rng.exponential());
    for (auto& x : lambdas) x *= 2.0 / total;
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());

    CounterRng u_stream = rng.split(1);
    CounterRng v_stream = rng.split(2);
    const ComplexMatrix2 u = random_unitary(u_stream);
    const ComplexMatrix2 v = random_unitary(v_stream);
    return conjugated_canonical_channel(lambdas, u, v);
}

}  // namespace unital
