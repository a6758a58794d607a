#include "unital/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "unital/errors.hpp"

namespace unital {

namespace {

std::string describe(const BlochScaling& s) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "d = (%.17g, %.17g, %.17g)", s.d[0], s.d[1], s.d[2]);
    return buf;
}

void require_ordered(const BlochScaling& s, double tol) {
    const auto& d = s.d;
    if (d[0] < d[1] - tol || d[1] < std::abs(d[2]) - tol) {
        throw Error(ErrorCode::OrderingViolated, "need d1 >= d2 >= |d3|, got " + describe(s));
    }
}

}  // namespace

BlochScaling scaling_from_spectrum(const std::array<double, 4>& l) {
    return {{0.5 * (l[0] + l[1] - l[2] - l[3]), 0.5 * (l[0] - l[1] + l[2] - l[3]),
             0.5 * (l[0] - l[1] - l[2] + l[3])}};
}

std::array<double, 4> spectrum_from_scaling(const BlochScaling& s) {
    const auto w = is_channel_scaling(s).witnesses;
    return {0.5 * w[0], 0.5 * w[1], 0.5 * w[2], 0.5 * w[3]};
}

PauliMixingForm pauli_form_from_scaling(const BlochScaling& s) {
    const auto w = is_channel_scaling(s).witnesses;
    return {{0.25 * w[0], 0.25 * w[1], 0.25 * w[2], 0.25 * w[3]}};
}

ScalingTest is_channel_scaling(const BlochScaling& s, double tol) {
    const auto& d = s.d;
    ScalingTest t;
    t.witnesses = {1.0 + d[0] + d[1] + d[2], 1.0 + d[0] - d[1] - d[2], 1.0 - d[0] + d[1] - d[2],
                   1.0 - d[0] - d[1] + d[2]};
    t.accepted = std::all_of(t.witnesses.begin(), t.witnesses.end(), [tol](double w) { return w >= -tol; });
    return t;
}

TetraCoordinates tetra_coordinates(const BlochScaling& s, double tol) {
    const ScalingTest t = is_channel_scaling(s, tol);
    if (!t.accepted) throw Error(ErrorCode::NotInTetrahedron, describe(s));
    TetraCoordinates c;
    for (std::size_t k = 0; k < 4; ++k) c.barycentric[k] = 0.25 * t.witnesses[k];
    return c;
}

bool ordered_cone_test(const BlochScaling& s, double tol) {
    require_ordered(s, tol);
    return 1.0 + s.d[2] >= s.d[0] + s.d[1] - tol;
}

ConeDecomposition ordered_cone_decomposition(const BlochScaling& s, double tol) {
    if (!ordered_cone_test(s, tol)) throw Error(ErrorCode::NotInCone, describe(s));
    const auto& d = s.d;

    // c1 (1,1,1) + c2 (1,0,0) + c3 (1,1,-1)/3 = d, remainder on the origin.
    std::array<double, 4> c{};
    c[1] = 0.5 * (d[1] + d[2]);
    c[2] = d[0] - d[1];
    c[3] = 1.5 * (d[1] - d[2]);
    c[0] = 1.0 - c[1] - c[2] - c[3];
    for (auto& x : c) {
        if (x < -tol) throw Error(ErrorCode::NotInCone, describe(s));
        x = std::max(x, 0.0);
    }
    const double total = c[0] + c[1] + c[2] + c[3];
    for (auto& x : c) x /= total;

    ConeDecomposition out;
    out.coefficients = c;
    out.maps = {PauliMixingForm{{0.25, 0.25, 0.25, 0.25}}, PauliMixingForm{{1.0, 0.0, 0.0, 0.0}},
                PauliMixingForm{{0.5, 0.5, 0.0, 0.0}}, PauliMixingForm{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0}}};
    return out;
}

bool scaling_equivalent(const BlochScaling& a, const BlochScaling& b, double tol) {
    auto sorted_abs = [](const BlochScaling& s) {
        std::array<double, 3> m{std::abs(s.d[0]), std::abs(s.d[1]), std::abs(s.d[2])};
        std::sort(m.begin(), m.end());
        return m;
    };
    const auto ma = sorted_abs(a);
    const auto mb = sorted_abs(b);
    for (std::size_t k = 0; k < 3; ++k)
        if (std::abs(ma[k] - mb[k]) > tol) return false;
    const double pa = a.d[0] * a.d[1] * a.d[2];
    const double pb = b.d[0] * b.d[1] * b.d[2];
    return std::abs(pa - pb) <= tol;
}

BlochScaling ordered_representative(const BlochScaling& s) {
    std::array<double, 3> m{std::abs(s.d[0]), std::abs(s.d[1]), std::abs(s.d[2])};
    std::sort(m.begin(), m.end(), std::greater<>());
    const double product = s.d[0] * s.d[1] * s.d[2];
    if (product < 0.0) m[2] = -m[2];
    return {m};
}

}  // namespace unital
