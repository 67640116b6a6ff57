#pragma once

// Closed-form settings for an arbitrary two-photon polarization pure state:
// the SPDC pump parameters (theta, phi) and local unitaries U_A, U_B with
// (U_A x U_B)(cos(theta)|HH> + e^{i phi} sin(theta)|VV>) = target up to phase.

#include "qforge/elements.hpp"
#include "qforge/qmath.hpp"

namespace qforge {

enum class PureBranch {
    Product,           // ad - bc = 0
    General,           // 0 < |ad - bc| < 1/2
    MaximalDiagonal,   // b = c = 0, |a| = |d|
    MaximalExchange,   // a = d = 0, |b| = |c|
    MaximalGeneral,    // all nonzero, |a| = |d|, |b| = |c|
};

const char* to_string(PureBranch b);

struct PureRecipe {
    PureBranch branch;
    SpdcSourceSpec source;
    SingleQubitUnitary u_a;
    SingleQubitUnitary u_b;
    WaveplateTriple waveplates_a;
    WaveplateTriple waveplates_b;

    /// (U_A x U_B) applied to the source pair state.
    Vec4 forward() const;
};

/// |1 - 2|ad - bc|| below this routes to the maximally entangled branch.
inline constexpr double kMaximalSeam = 2e-11;
/// |ad - bc| below this routes to the product branch.
inline constexpr double kProductSeam = 1e-14;

PureRecipe solve_pure(const PureState2Q& target);
double verify_pure(const PureRecipe& recipe, const PureState2Q& target);

}  // namespace qforge
