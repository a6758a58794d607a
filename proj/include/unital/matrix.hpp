#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <type_traits>

namespace unital {

using Complex = std::complex<double>;

/// Default absolute/relative tolerance used when a caller does not pass one.
inline constexpr double kDefaultTol = 1e-9;

namespace detail {
inline double conj_of(double x) { return x; }
inline Complex conj_of(const Complex& z) { return std::conj(z); }
inline double abs2_of(double x) { return x * x; }
inline double abs2_of(const Complex& z) { return std::norm(z); }
inline bool finite_of(double x) { return std::isfinite(x); }
inline bool finite_of(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace detail

/// Dense N x N matrix with row-major storage. Small fixed sizes only.
template <typename T, std::size_t N>
class Matrix {
public:
    using value_type = T;
    static constexpr std::size_t size = N;

    constexpr Matrix() : data_{} {}

    /// Row-major nested initializer: Matrix{{a, b}, {c, d}}.
    Matrix(std::initializer_list<std::initializer_list<T>> rows) : data_{} {
        std::size_t r = 0;
        for (const auto& row : rows) {
            std::size_t c = 0;
            for (const auto& x : row) {
                if (r < N && c < N) data_[r * N + c] = x;
                ++c;
            }
            ++r;
        }
    }

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix diagonal(const std::array<T, N>& d) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

    const std::array<T, N * N>& data() const { return data_; }

    Matrix adjoint() const {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(c, r) = detail::conj_of((*this)(r, c));
        return m;
    }

    Matrix transpose() const {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(c, r) = (*this)(r, c);
        return m;
    }

    Matrix conjugate() const {
        Matrix m;
        for (std::size_t i = 0; i < N * N; ++i) m.data_[i] = detail::conj_of(data_[i]);
        return m;
    }

    T trace() const {
        T t{};
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& x : data_) s += detail::abs2_of(x);
        return std::sqrt(s);
    }

    bool is_finite() const {
        for (const auto& x : data_)
            if (!detail::finite_of(x)) return false;
        return true;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const T ark = a(r, k);
                for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.data_ == b.data_; }

private:
    std::array<T, N * N> data_;
};

// Real scalars on complex matrices.
template <std::size_t N>
Matrix<Complex, N> operator*(double s, const Matrix<Complex, N>& a) {
    return Complex(s) * a;
}
template <std::size_t N>
Matrix<Complex, N> operator*(const Matrix<Complex, N>& a, double s) {
    return a * Complex(s);
}

using ComplexMatrix2 = Matrix<Complex, 2>;
using ComplexMatrix4 = Matrix<Complex, 4>;
using RealMatrix3 = Matrix<double, 3>;

using Vector3 = std::array<double, 3>;
using ComplexVector4 = std::array<Complex, 4>;

template <typename T, std::size_t N>
double frobenius_distance(const Matrix<T, N>& a, const Matrix<T, N>& b) {
    return (a - b).frobenius_norm();
}

template <typename T, std::size_t N>
double max_abs_entry(const Matrix<T, N>& a) {
    double m = 0.0;
    for (const auto& x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

double determinant(const RealMatrix3& m);
Complex determinant(const ComplexMatrix2& m);

/// ||u* u - I||_F.
double unitarity_defect(const ComplexMatrix2& u);

/// The identity and the three Pauli matrices, in the order I, X, Y, Z.
struct PauliBasis {
    ComplexMatrix2 i, x, y, z;

    std::array<ComplexMatrix2, 4> as_array() const { return {i, x, y, z}; }
};

PauliBasis pauli_basis();

/// Pauli matrix by index 0..3 = I, X, Y, Z.
const ComplexMatrix2& pauli(std::size_t index);

/// Kronecker product; a(i, j) scales block (i, j).
ComplexMatrix4 kron(const ComplexMatrix2& a, const ComplexMatrix2& b);

struct HermitianEigen4 {
    std::array<double, 4> eigenvalues;  // descending
    ComplexMatrix4 eigenvectors;        // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi eigensolver for a 4x4 Hermitian matrix.
///
/// Requires ||a - a*||_F <= tol * ||a||_F (NotHermitian otherwise). The
/// Hermitian part of `a` is diagonalized until the off-diagonal mass drops
/// below 1e-14 * ||a||_F; more than 64 sweeps raises NoConvergence.
/// Eigenvectors of repeated eigenvalues are an arbitrary orthonormal basis.
HermitianEigen4 hermitian_eigen4(const ComplexMatrix4& a, double tol = kDefaultTol);

struct UnitaryDiagonalization {
    Complex phase;     // |phase| = 1
    ComplexMatrix2 w;  // unitary
    double theta;      // in [0, 2*pi)
};

/// Factor u = phase * w * diag(1, e^{i theta}) * w*.
UnitaryDiagonalization diagonalize_unitary2(const ComplexMatrix2& u, double tol = kDefaultTol);

/// Bloch-frame action of A -> u A u*: entry (i, j) is tr(sigma_j u sigma_i u*) / 2,
/// so row i is the image of sigma_i.
RealMatrix3 adjoint_action(const ComplexMatrix2& u);

/// Lift a rotation to SU(2): the returned u has det 1 and adjoint_action(u) == r.
/// The sign of u is unspecified.
ComplexMatrix2 su2_from_so3(const RealMatrix3& r, double tol = kDefaultTol);

struct RealSvd3 {
    RealMatrix3 left;               // orthogonal
    std::array<double, 3> singular; // nonnegative, descending
    RealMatrix3 right;              // orthogonal; m = left * diag(singular) * right^t
};

/// One-sided Jacobi SVD of a real 3x3 matrix. Ties keep the original column order.
RealSvd3 real_svd3(const RealMatrix3& m);

}  // namespace unital
