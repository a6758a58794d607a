#include "unital/mixed_unitary.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "unital/canonical.hpp"
#include "unital/errors.hpp"

namespace unital {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> padded_descending(const std::vector<double>& w, std::size_t m) {
    std::vector<double> out = w;
    out.resize(std::max(m, w.size()), 0.0);
    std::stable_sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

double arg_or_zero(Complex z) { return z == Complex(0.0, 0.0) ? 0.0 : std::arg(z); }

std::string fmt4(const char* what, double a, double b, double c, double d) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%s (%.17g, %.17g, %.17g, %.17g)", what, a, b, c, d);
    return buf;
}

void require_unital_channel(const QubitChannel& ch, double tol) {
    const ValidationReport r = validate(ch, tol);
    if (r.is_unital_channel()) return;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "not a unital channel: hermitian defect %.6g, trace defect %.6g, unital defect %.6g, "
                  "min Choi eigenvalue %.6g",
                  r.hermitian_defect, r.trace_defect, r.unital_defect, r.min_choi_eigenvalue);
    throw Error(ErrorCode::NotChannel, buf);
}

ComplexMatrix2 phase_diag(double theta) {
    ComplexMatrix2 d = ComplexMatrix2::identity();
    d(1, 1) = std::polar(1.0, theta);
    return d;
}

}  // namespace

MajorizationResult majorizes(const WeightVector& u, const WeightVector& v, double tol) {
    const std::size_t m = std::max(u.weights.size(), v.weights.size());
    const std::vector<double> a = padded_descending(u.weights, m);
    const std::vector<double> b = padded_descending(v.weights, m);
    const double total_a = std::accumulate(a.begin(), a.end(), 0.0);
    const double total_b = std::accumulate(b.begin(), b.end(), 0.0);
    if (std::abs(total_a - total_b) > tol) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "totals differ: %.17g vs %.17g", total_a, total_b);
        throw Error(ErrorCode::SumMismatch, buf);
    }

    MajorizationResult r;
    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        sa += a[k];
        sb += b[k];
        if (sa > sb + tol) {
            r.violated_prefix = k + 1;
            r.lhs_sum = sa;
            r.rhs_sum = sb;
            return r;
        }
    }
    r.holds = true;
    return r;
}

PhasePair solve_phases(double eta1, double eta2, double nu1, double nu2, double theta, double tol) {
    const bool ordered = eta1 >= nu1 - tol && nu1 >= nu2 - tol && nu2 >= eta2 - tol && eta2 >= -tol;
    if (!ordered || std::abs(eta1 + eta2 - nu1 - nu2) > tol) {
        throw Error(ErrorCode::PreconditionViolated,
                    fmt4("need eta1 >= nu1 >= nu2 >= eta2 >= 0 and equal sums, got (eta1, eta2, nu1, nu2) =", eta1,
                         eta2, nu1, nu2));
    }

    const Complex target = eta1 + eta2 * std::polar(1.0, theta);
    const double r = std::abs(target);
    double phi = 0.0;
    if (nu1 * nu2 > 0.0) {
        const double c = (r * r - nu1 * nu1 - nu2 * nu2) / (2.0 * nu1 * nu2);
        phi = std::acos(std::clamp(c, -1.0, 1.0));
    }
    const double theta1 = arg_or_zero(target) - arg_or_zero(nu1 + nu2 * std::polar(1.0, phi));
    return {wrap_angle(theta1), wrap_angle(phi + theta1)};
}

UnitaryDecomposition rebalance_pair(const UnitaryDecomposition& psi, double nu1, double nu2, double tol) {
    if (psi.weights.weights.size() != 2 || psi.unitaries.size() != 2) {
        throw Error(ErrorCode::PreconditionViolated, "rebalance_pair needs exactly two terms");
    }
    const double eta1 = psi.weights.weights[0];
    const double eta2 = psi.weights.weights[1];
    const ComplexMatrix2& v1 = psi.unitaries[0];
    const ComplexMatrix2& v2 = psi.unitaries[1];
    for (const auto& v : psi.unitaries) {
        const double defect = unitarity_defect(v);
        if (defect > tol) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "||V*V - I||_F = %.6g", defect);
            throw Error(ErrorCode::NotUnitary, buf);
        }
    }

    // eta1 A + eta2 D A D* with D = V1* V2 = alpha W diag(1, e^{i theta}) W*.
    const UnitaryDiagonalization f = diagonalize_unitary2(v1.adjoint() * v2, tol);
    const PhasePair p = solve_phases(eta1, eta2, nu1, nu2, f.theta, tol);
    const ComplexMatrix2 base = v1 * f.w;
    const ComplexMatrix2 wd = f.w.adjoint();
    return {{{nu1, nu2}}, {base * phase_diag(p.theta1) * wd, base * phase_diag(p.theta2) * wd}};
}

std::vector<PinchStep> pinch_chain(const WeightVector& u, const WeightVector& v, double eps) {
    const std::size_t m = u.weights.size();
    if (v.weights.size() != m) {
        throw Error(ErrorCode::PreconditionViolated, "pinch_chain needs vectors of equal length");
    }
    const MajorizationResult mr = majorizes(u, v, eps * static_cast<double>(std::max<std::size_t>(m, 1)));
    if (!mr.holds) throw NotMajorizedError(mr.violated_prefix, mr.lhs_sum, mr.rhs_sum);

    std::vector<double> w = v.weights;
    std::vector<PinchStep> steps;
    while (true) {
        std::vector<std::size_t> active;
        for (std::size_t k = 0; k < m; ++k)
            if (std::abs(w[k] - u.weights[k]) > eps) active.push_back(k);
            else w[k] = u.weights[k];
        if (active.empty()) break;

        // First active j with w_j > u_j whose active successor has w < u.
        std::size_t pos = active.size();
        for (std::size_t a = 0; a + 1 < active.size(); ++a) {
            if (w[active[a]] > u.weights[active[a]] && w[active[a + 1]] < u.weights[active[a + 1]]) {
                pos = a;
                break;
            }
        }
        if (pos == active.size() || steps.size() + 1 >= std::max<std::size_t>(m, 2)) {
            std::size_t prefix = active.front() + 1;
            double su = 0.0;
            double sv = 0.0;
            for (std::size_t k = 0; k < prefix; ++k) {
                su += u.weights[k];
                sv += w[k];
            }
            throw NotMajorizedError(prefix, su, sv);
        }
        const std::size_t j = active[pos];
        const std::size_t k = active[pos + 1];
        const double delta = std::min(w[j] - u.weights[j], u.weights[k] - w[k]);
        w[j] -= delta;
        w[k] += delta;
        steps.push_back({j, k, delta});
    }
    return steps;
}

WeightVector apply_pinches(const WeightVector& v, const std::vector<PinchStep>& steps) {
    WeightVector out = v;
    for (const auto& s : steps) {
        out.weights.at(s.first) -= s.delta;
        out.weights.at(s.second) += s.delta;
    }
    return out;
}

UnitaryDecomposition average_of_four(const QubitChannel& ch, double tol) {
    require_unital_channel(ch, tol);
    const Canonicalization c = canonicalize(ch, tol);
    std::array<double, 4> s{};
    for (std::size_t k = 0; k < 4; ++k) s[k] = std::sqrt(std::max(c.spectrum.lambdas[k], 0.0));

    const double r = 1.0 / std::numbers::sqrt2;
    const Complex alpha = r * Complex(s[0], s[1]);
    const Complex beta = r * Complex(s[3], s[2]);
    const Complex ac = std::conj(alpha);
    const Complex bc = std::conj(beta);
    const std::array<ComplexMatrix2, 4> frame{
        ComplexMatrix2{{alpha, bc}, {-beta, ac}},
        ComplexMatrix2{{alpha, -bc}, {beta, ac}},
        ComplexMatrix2{{ac, beta}, {-bc, alpha}},
        ComplexMatrix2{{ac, -beta}, {bc, alpha}},
    };

    // ch(A) = v* P(u* A u) v for the canonical map P.
    UnitaryDecomposition out;
    out.weights.weights.assign(4, 0.25);
    const ComplexMatrix2 vd = c.v.adjoint();
    const ComplexMatrix2 ud = c.u.adjoint();
    for (const auto& f : frame) out.unitaries.push_back(vd * f * ud);
    return out;
}

UnitaryDecomposition decompose(const QubitChannel& ch, const WeightVector& target, double tol) {
    require_unital_channel(ch, tol);
    if (target.weights.empty()) throw Error(ErrorCode::PreconditionViolated, "empty weight vector");
    for (double x : target.weights) {
        if (!std::isfinite(x) || x < -tol) {
            throw Error(ErrorCode::PreconditionViolated, "weights must be finite and nonnegative");
        }
    }
    const double total = std::accumulate(target.weights.begin(), target.weights.end(), 0.0);
    if (std::abs(total - 1.0) > tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "weights sum to %.17g, not 1", total);
        throw Error(ErrorCode::SumMismatch, buf);
    }

    const Canonicalization c = canonicalize(ch, tol);
    std::array<double, 4> half{};
    for (std::size_t k = 0; k < 4; ++k) half[k] = std::max(0.5 * c.spectrum.lambdas[k], 0.0);
    const double half_total = half[0] + half[1] + half[2] + half[3];

    const std::size_t m = std::max<std::size_t>(target.weights.size(), 4);
    std::vector<double> current(m, 0.0);
    std::vector<ComplexMatrix2> unitaries(m, ComplexMatrix2::identity());
    const ComplexMatrix2 vd = c.v.adjoint();
    const ComplexMatrix2 ud = c.u.adjoint();
    for (std::size_t k = 0; k < 4; ++k) {
        current[k] = half[k] / half_total;
        unitaries[k] = vd * pauli(kCanonicalPauliOrder[k]) * ud;
    }

    std::vector<double> goal(target.weights.begin(), target.weights.end());
    for (auto& x : goal) x = std::max(x, 0.0) / total;
    goal = padded_descending(goal, m);

    const MajorizationResult mr = majorizes({goal}, {current}, tol);
    if (!mr.holds) throw NotMajorizedError(mr.violated_prefix, mr.lhs_sum, mr.rhs_sum);

    for (const PinchStep& s : pinch_chain({goal}, {current})) {
        const UnitaryDecomposition pair{{{current[s.first], current[s.second]}},
                                        {unitaries[s.first], unitaries[s.second]}};
        const double nu1 = current[s.first] - s.delta;
        const double nu2 = current[s.second] + s.delta;
        const UnitaryDecomposition r = rebalance_pair(pair, nu1, nu2, tol);
        unitaries[s.first] = r.unitaries[0];
        unitaries[s.second] = r.unitaries[1];
        current[s.first] = nu1;
        current[s.second] = nu2;
    }

    const std::size_t keep = target.weights.size();
    UnitaryDecomposition out;
    out.weights.weights.assign(goal.begin(), goal.begin() + static_cast<std::ptrdiff_t>(keep));
    out.unitaries.assign(unitaries.begin(), unitaries.begin() + static_cast<std::ptrdiff_t>(keep));
    return out;
}

VerifyReport verify(const UnitaryDecomposition& dec, const QubitChannel& ch, double tol) {
    VerifyReport rep;
    const auto& w = dec.weights.weights;
    rep.min_weight = w.empty() ? 0.0 : *std::min_element(w.begin(), w.end());
    rep.weight_sum = std::accumulate(w.begin(), w.end(), 0.0);
    rep.distribution_ok = !w.empty() && rep.min_weight >= -tol && std::abs(rep.weight_sum - 1.0) <= tol;
    for (const auto& u : dec.unitaries) rep.unitary_defect = std::max(rep.unitary_defect, unitarity_defect(u));
    rep.unitaries_ok = rep.unitary_defect <= tol && dec.unitaries.size() == w.size();

    const std::size_t n = std::min(w.size(), dec.unitaries.size());
    rep.residual = pauli_basis_distance(
        [&](const ComplexMatrix2& a) {
            ComplexMatrix2 out;
            for (std::size_t j = 0; j < n; ++j) out += w[j] * (dec.unitaries[j] * a * dec.unitaries[j].adjoint());
            return out;
        },
        [&](const ComplexMatrix2& a) { return unital::apply(ch, a); });
    return rep;
}

}  // namespace unital
