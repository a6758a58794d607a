#pragma once

#include <array>

#include "unital/channel.hpp"
#include "unital/matrix.hpp"

namespace unital {

/// Signed semi-axes (d1, d2, d3) of the ellipsoid image of the Bloch ball
/// under the diagonal map Phi(X) = d1 X, Phi(Y) = d2 Y, Phi(Z) = d3 Z.
struct BlochScaling {
    Vector3 d{};
};

/// Barycentric coordinates relative to the tetrahedron vertices
/// (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1), in that order.
struct TetraCoordinates {
    std::array<double, 4> barycentric{};
};

inline constexpr std::array<Vector3, 4> kTetraVertices{
    Vector3{1.0, 1.0, 1.0}, Vector3{1.0, -1.0, -1.0}, Vector3{-1.0, 1.0, -1.0}, Vector3{-1.0, -1.0, 1.0}};

/// Generators of the ordered cone {d1 >= d2 >= |d3|} intersected with the
/// channel set: origin, (1,1,1), (1,0,0), (1,1,-1)/3.
inline constexpr std::array<Vector3, 4> kConeGenerators{
    Vector3{0.0, 0.0, 0.0}, Vector3{1.0, 1.0, 1.0}, Vector3{1.0, 0.0, 0.0},
    Vector3{1.0 / 3.0, 1.0 / 3.0, -1.0 / 3.0}};

/// d1 = (l1 + l2 - l3 - l4)/2, d2 = (l1 - l2 + l3 - l4)/2, d3 = (l1 - l2 - l3 + l4)/2,
/// with l read as Pauli weights on (I, X, Y, Z) times 2.
BlochScaling scaling_from_spectrum(const std::array<double, 4>& lambdas);
inline BlochScaling scaling_from_spectrum(const ChoiSpectrum& s) { return scaling_from_spectrum(s.lambdas); }

/// Inverse of scaling_from_spectrum: the Choi eigenvalues of the diagonal map,
/// ordered as the weights on (I, X, Y, Z):
/// (1+d1+d2+d3, 1+d1-d2-d3, 1-d1+d2-d3, 1-d1-d2+d3) / 2. Not sorted.
std::array<double, 4> spectrum_from_scaling(const BlochScaling& s);

/// Pauli weights (I, X, Y, Z) of the diagonal map: spectrum_from_scaling / 2.
PauliMixingForm pauli_form_from_scaling(const BlochScaling& s);

struct ScalingTest {
    bool accepted = false;
    std::array<double, 4> witnesses{};  // (1+d1+d2+d3, 1+d1-d2-d3, 1-d1+d2-d3, 1-d1-d2+d3)
};

/// Accepts iff every witness is >= -tol, i.e. d lies in the tetrahedron.
ScalingTest is_channel_scaling(const BlochScaling& s, double tol = kDefaultTol);

/// Raises NotInTetrahedron when is_channel_scaling rejects.
TetraCoordinates tetra_coordinates(const BlochScaling& s, double tol = kDefaultTol);

/// Requires d1 >= d2 >= |d3| (OrderingViolated otherwise, at tol).
/// Accepts iff 1 + d3 >= d1 + d2 - tol.
bool ordered_cone_test(const BlochScaling& s, double tol = kDefaultTol);

struct ConeDecomposition {
    std::array<double, 4> coefficients{};   // over kConeGenerators
    std::array<PauliMixingForm, 4> maps{};  // depolarizing, identity, (A+XAX)/2, (A+XAX+YAY)/3
};

/// Convex coefficients over kConeGenerators reconstructing d. Raises
/// OrderingViolated or NotInCone.
ConeDecomposition ordered_cone_decomposition(const BlochScaling& s, double tol = kDefaultTol);

/// Same sorted |d| entrywise and the same product d1 d2 d3, both at absolute tol.
bool scaling_equivalent(const BlochScaling& a, const BlochScaling& b, double tol = kDefaultTol);

/// Sort by |d| descending and move any sign onto the last axis, giving the
/// representative with d1 >= d2 >= |d3| of the same equivalence class.
BlochScaling ordered_representative(const BlochScaling& s);

}  // namespace unital
