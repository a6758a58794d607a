#pragma once

#include <cstddef>
#include <vector>

#include "unital/channel.hpp"
#include "unital/matrix.hpp"

namespace unital {

struct WeightVector {
    std::vector<double> weights;
};

/// A -> sum_j weights[j] U_j A U_j*.
struct UnitaryDecomposition {
    WeightVector weights;
    std::vector<ComplexMatrix2> unitaries;
};

/// Move delta from position `first` to position `second` (0-based, first < second).
struct PinchStep {
    std::size_t first = 0;
    std::size_t second = 0;
    double delta = 0.0;
};

struct MajorizationResult {
    bool holds = false;
    std::size_t violated_prefix = 0;  // 1-based; 0 when holds
    double lhs_sum = 0.0;             // prefix sums at the violation
    double rhs_sum = 0.0;
};

/// u is majorized by v: after zero padding and descending sorts, every prefix
/// sum of u is at most that of v (within tol). Raises SumMismatch when the
/// totals differ by more than tol.
MajorizationResult majorizes(const WeightVector& u, const WeightVector& v, double tol = kDefaultTol);

struct PhasePair {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

/// Angles in [0, 2pi) with nu1 e^{i theta1} + nu2 e^{i theta2} = eta1 + eta2 e^{i theta}.
/// Requires eta1 >= nu1 >= nu2 >= eta2 >= 0 and eta1 + eta2 = nu1 + nu2, to tol.
PhasePair solve_phases(double eta1, double eta2, double nu1, double nu2, double theta, double tol = kDefaultTol);

/// Re-weight a two-term decomposition (eta1, V1; eta2, V2) to (nu1, U1; nu2, U2)
/// without changing the channel. Same interlacing requirement as solve_phases.
UnitaryDecomposition rebalance_pair(const UnitaryDecomposition& psi, double nu1, double nu2,
                                    double tol = kDefaultTol);

/// Steps turning v into u, where u is majorized by v and both are descending
/// of equal length. Entries within eps of each other count as settled.
/// At most m - 1 steps. Raises NotMajorized.
std::vector<PinchStep> pinch_chain(const WeightVector& u, const WeightVector& v, double eps = 1e-12);

/// Apply steps to v in order.
WeightVector apply_pinches(const WeightVector& v, const std::vector<PinchStep>& steps);

/// Four equally weighted unitaries reproducing a unital channel. Raises NotChannel.
UnitaryDecomposition average_of_four(const QubitChannel& ch, double tol = kDefaultTol);

/// Unitaries realizing ch with the given weights (sorted descending in the
/// result). Raises NotChannel, SumMismatch, or NotMajorizedError when the
/// weights are not majorized by half the Choi spectrum.
UnitaryDecomposition decompose(const QubitChannel& ch, const WeightVector& target, double tol = kDefaultTol);

struct VerifyReport {
    double residual = 0.0;           // max over Pauli inputs of the Frobenius distance
    double unitary_defect = 0.0;     // max_j ||U_j* U_j - I||_F
    double weight_sum = 0.0;
    double min_weight = 0.0;
    bool unitaries_ok = false;
    bool distribution_ok = false;
};

VerifyReport verify(const UnitaryDecomposition& dec, const QubitChannel& ch, double tol = kDefaultTol);

}  // namespace unital
