#pragma once

// Named two-qubit state families used as compiler targets.

#include <array>
#include <string>
#include <variant>

#include "qforge/qmath.hpp"

namespace qforge {

struct MemsParams {
    double r;
};
struct WernerParams {
    double r;
};
struct CollinsGisinParams {
    double lambda;
    double theta;
};
struct BellDiagonalParams {
    std::array<double, 4> lambdas;  // weights of Phi+, Phi-, Psi+, Psi-
};
/// diag(|a|^2, |b|^2, |c|^2, |d|^2) with corner f a conj(d).
struct SingleStageParams {
    Vec4 amps;
    Complex f;
};

using FamilyParams =
    std::variant<MemsParams, WernerParams, CollinsGisinParams, BellDiagonalParams, SingleStageParams>;

std::string family_name(const FamilyParams& p);

DensityMatrix2Q mems(double r);
DensityMatrix2Q werner(double r);
DensityMatrix2Q collins_gisin(double lambda, double theta);
DensityMatrix2Q bell_diagonal(double l1, double l2, double l3, double l4);
DensityMatrix2Q family_d1(const Vec4& amps, Complex f);

DensityMatrix2Q family_density(const FamilyParams& p);

/// Largest tangle reachable at the given linear entropy, traced by mems(r).
double mems_boundary_tangle(double linear_entropy);

/// Bell states in the {HH, HV, VH, VV} basis.
Vec4 bell_phi_plus();
Vec4 bell_phi_minus();
Vec4 bell_psi_plus();
Vec4 bell_psi_minus();

}  // namespace qforge
