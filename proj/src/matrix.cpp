#include "unital/matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <string>

#include "unital/errors.hpp"

namespace unital {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string fmt_value(const char* what, double value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s = %.6g", what, value);
    return buf;
}

}  // namespace

double determinant(const RealMatrix3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Complex determinant(const ComplexMatrix2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

double unitarity_defect(const ComplexMatrix2& u) {
    return frobenius_distance(u.adjoint() * u, ComplexMatrix2::identity());
}

PauliBasis pauli_basis() {
    return {
        ComplexMatrix2::identity(),
        ComplexMatrix2{{0.0, 1.0}, {1.0, 0.0}},
        ComplexMatrix2{{0.0, -kI}, {kI, 0.0}},
        ComplexMatrix2{{1.0, 0.0}, {0.0, -1.0}},
    };
}

const ComplexMatrix2& pauli(std::size_t index) {
    static const std::array<ComplexMatrix2, 4> basis = pauli_basis().as_array();
    return basis.at(index);
}

ComplexMatrix4 kron(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    ComplexMatrix4 k;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q) k(2 * i + p, 2 * j + q) = a(i, j) * b(p, q);
    return k;
}

HermitianEigen4 hermitian_eigen4(const ComplexMatrix4& a, double tol) {
    if (!a.is_finite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
    const double norm = a.frobenius_norm();
    const double skew = frobenius_distance(a, a.adjoint());
    if (skew > tol * norm) {
        throw Error(ErrorCode::NotHermitian, fmt_value("||A - A*||_F", skew));
    }

    ComplexMatrix4 h = 0.5 * (a + a.adjoint());
    ComplexMatrix4 v = ComplexMatrix4::identity();

    auto off_norm = [&h] {
        double s = 0.0;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                if (r != c) s += std::norm(h(r, c));
        return std::sqrt(s);
    };

    const double threshold = 1e-14 * norm;
    constexpr int kSweepBudget = 64;
    int sweep = 0;
    while (off_norm() > threshold) {
        if (++sweep > kSweepBudget) {
            throw Error(ErrorCode::NoConvergence, fmt_value("off-diagonal norm", off_norm()));
        }
        for (std::size_t p = 0; p < 3; ++p) {
            for (std::size_t q = p + 1; q < 4; ++q) {
                const Complex hpq = h(p, q);
                const double mag = std::abs(hpq);
                if (mag == 0.0) continue;
                // Phase e^{-i arg(hpq)} on column q makes the pivot real, then a
                // real Givens rotation annihilates it.
                const Complex phase = std::conj(hpq) / mag;
                const double hpp = h(p, p).real();
                const double hqq = h(q, q).real();
                const double zeta = (hqq - hpp) / (2.0 * mag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                ComplexMatrix4 j = ComplexMatrix4::identity();
                j(p, p) = c;
                j(p, q) = s;
                j(q, p) = -s * phase;
                j(q, q) = c * phase;
                h = j.adjoint() * h * j;
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                v = v * j;
            }
        }
    }

    std::array<std::size_t, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&h](std::size_t x, std::size_t y) { return h(x, x).real() > h(y, y).real(); });

    HermitianEigen4 out;
    for (std::size_t k = 0; k < 4; ++k) {
        out.eigenvalues[k] = h(order[k], order[k]).real();
        for (std::size_t r = 0; r < 4; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

UnitaryDiagonalization diagonalize_unitary2(const ComplexMatrix2& u, double tol) {
    if (!u.is_finite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
    const double defect = unitarity_defect(u);
    if (defect > tol) throw Error(ErrorCode::NotUnitary, fmt_value("||U*U - I||_F", defect));

    // u / sqrt(det u) lies in SU(2) up to sign; its anti-Hermitian part is a
    // traceless Hermitian matrix with the same eigenvectors as u.
    const ComplexMatrix2 s = u * (1.0 / std::sqrt(determinant(u)));
    const ComplexMatrix2 m = (s - s.adjoint()) * (1.0 / (2.0 * kI));
    const double p = 0.5 * (m(0, 0) - m(1, 1)).real();
    const Complex q = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double r = std::hypot(p, std::abs(q));

    ComplexMatrix2 w = ComplexMatrix2::identity();
    if (std::abs(q) > 1e-15 * std::max(1.0, r)) {
        std::array<Complex, 2> vec = p >= 0.0 ? std::array<Complex, 2>{p + r, std::conj(q)}
                                              : std::array<Complex, 2>{q, r - p};
        const double len = std::hypot(std::abs(vec[0]), std::abs(vec[1]));
        vec[0] /= len;
        vec[1] /= len;
        w(0, 0) = vec[0];
        w(1, 0) = vec[1];
        w(0, 1) = -std::conj(vec[1]);
        w(1, 1) = std::conj(vec[0]);
    }

    auto rayleigh = [&](std::size_t col) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t k = 0; k < 2; ++k) acc += std::conj(w(i, col)) * u(i, k) * w(k, col);
        return acc / std::abs(acc);
    };
    const Complex e1 = rayleigh(0);
    const Complex e2 = rayleigh(1);

    double theta = std::arg(e2 * std::conj(e1));
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
    return {e1, w, theta};
}

RealMatrix3 adjoint_action(const ComplexMatrix2& u) {
    RealMatrix3 r;
    const ComplexMatrix2 ud = u.adjoint();
    for (std::size_t i = 0; i < 3; ++i) {
        const ComplexMatrix2 image = u * pauli(i + 1) * ud;
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = 0.5 * (pauli(j + 1) * image).trace().real();
    }
    return r;
}

ComplexMatrix2 su2_from_so3(const RealMatrix3& r, double tol) {
    if (!r.is_finite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
    const double orth = frobenius_distance(r.transpose() * r, RealMatrix3::identity());
    const double det = determinant(r);
    if (orth > tol || std::abs(det - 1.0) > tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "||R^t R - I||_F = %.6g, det R = %.6g", orth, det);
        throw Error(ErrorCode::NotRotation, buf);
    }

    // Column-convention rotation matrix.
    const RealMatrix3 m = r.transpose();
    const double tr = m.trace();
    const std::array<double, 4> diag4{1.0 + tr, 1.0 + m(0, 0) - m(1, 1) - m(2, 2),
                                      1.0 - m(0, 0) + m(1, 1) - m(2, 2), 1.0 - m(0, 0) - m(1, 1) + m(2, 2)};
    const auto pivot = static_cast<std::size_t>(std::max_element(diag4.begin(), diag4.end()) - diag4.begin());

    std::array<double, 4> q{};  // (w, x, y, z)
    const double big = 0.5 * std::sqrt(std::max(diag4[pivot], 0.0));
    const double f = 0.25 / big;
    switch (pivot) {
        case 0:
            q = {big, (m(2, 1) - m(1, 2)) * f, (m(0, 2) - m(2, 0)) * f, (m(1, 0) - m(0, 1)) * f};
            break;
        case 1:
            q = {(m(2, 1) - m(1, 2)) * f, big, (m(0, 1) + m(1, 0)) * f, (m(0, 2) + m(2, 0)) * f};
            break;
        case 2:
            q = {(m(0, 2) - m(2, 0)) * f, (m(0, 1) + m(1, 0)) * f, big, (m(1, 2) + m(2, 1)) * f};
            break;
        default:
            q = {(m(1, 0) - m(0, 1)) * f, (m(0, 2) + m(2, 0)) * f, (m(1, 2) + m(2, 1)) * f, big};
            break;
    }
    const double len = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    for (auto& x : q) x /= len;

    // u = w I - i (x X + y Y + z Z)
    return ComplexMatrix2{{Complex(q[0], -q[3]), Complex(-q[2], -q[1])},
                          {Complex(q[2], -q[1]), Complex(q[0], q[3])}};
}

RealSvd3 real_svd3(const RealMatrix3& m) {
    RealMatrix3 a = m;
    RealMatrix3 v = RealMatrix3::identity();

    auto col_dot = [](const RealMatrix3& x, std::size_t p, std::size_t q) {
        return x(0, p) * x(0, q) + x(1, p) * x(1, q) + x(2, p) * x(2, q);
    };
    auto rotate = [](RealMatrix3& x, std::size_t p, std::size_t q, double c, double s) {
        for (std::size_t i = 0; i < 3; ++i) {
            const double xp = x(i, p);
            const double xq = x(i, q);
            x(i, p) = c * xp - s * xq;
            x(i, q) = s * xp + c * xq;
        }
    };

    constexpr double kEps = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < 2; ++p) {
            for (std::size_t q = p + 1; q < 3; ++q) {
                const double alpha = col_dot(a, p, p);
                const double beta = col_dot(a, q, q);
                const double gamma = col_dot(a, p, q);
                if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate(a, p, q, c, s);
                rotate(v, p, q, c, s);
                rotated = true;
            }
        }
        if (!rotated) break;
    }

    std::array<double, 3> sigma{};
    for (std::size_t k = 0; k < 3; ++k) sigma[k] = std::sqrt(col_dot(a, k, k));
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    RealSvd3 out;
    const double cutoff = 1e-14 * std::max(1.0, sigma[order[0]]);
    std::size_t filled = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t src = order[k];
        out.singular[k] = sigma[src];
        for (std::size_t i = 0; i < 3; ++i) out.right(i, k) = v(i, src);
        if (sigma[src] > cutoff) {
            for (std::size_t i = 0; i < 3; ++i) out.left(i, k) = a(i, src) / sigma[src];
            ++filled;
        }
    }

    // Complete the left basis for (numerically) zero singular values.
    if (filled == 0) {
        out.left = RealMatrix3::identity();
    } else if (filled == 1) {
        const Vector3 u1{out.left(0, 0), out.left(1, 0), out.left(2, 0)};
        std::size_t axis = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if (std::abs(u1[i]) < std::abs(u1[axis])) axis = i;
        Vector3 u2{};
        u2[axis] = 1.0;
        for (std::size_t i = 0; i < 3; ++i) u2[i] -= u1[axis] * u1[i];
        const double len = std::sqrt(u2[0] * u2[0] + u2[1] * u2[1] + u2[2] * u2[2]);
        for (std::size_t i = 0; i < 3; ++i) out.left(i, 1) = u2[i] / len;
        filled = 2;
    }
    if (filled == 2) {
        out.left(0, 2) = out.left(1, 0) * out.left(2, 1) - out.left(2, 0) * out.left(1, 1);
        out.left(1, 2) = out.left(2, 0) * out.left(0, 1) - out.left(0, 0) * out.left(2, 1);
        out.left(2, 2) = out.left(0, 0) * out.left(1, 1) - out.left(1, 0) * out.left(0, 1);
    }
    return out;
}

}  // namespace unital
