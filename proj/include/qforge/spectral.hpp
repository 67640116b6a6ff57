#pragma once

// Forward simulation of element chains on the joint polarization x frequency
// state of a downconverted pair, followed by the frequency trace.
//
// Two independent routes are provided:
//  * a quadrature route that samples the frequency deviation on a uniform
//    grid and integrates with the trapezoid rule, and
//  * a closed-form route that tracks the polarization amplitude attached to
//    each distinct linear-in-frequency phase and integrates the Gaussian
//    spectrum exactly.

#include <variant>
#include <vector>

#include "qforge/elements.hpp"
#include "qforge/qmath.hpp"

namespace qforge {

inline constexpr int kDefaultGridPoints = 2049;
inline constexpr double kDefaultGridHalfWidth = 6.0;  // in units of delta_eps

struct FrequencyGrid {
    Eigen::VectorXd points;   // frequency deviations eps_k, rad/s
    Eigen::VectorXd weights;  // trapezoid weights

    int size() const { return static_cast<int>(points.size()); }

    /// Uniform symmetric grid over [-half_width * delta_eps, +half_width * delta_eps].
    /// Throws InvalidArgument unless n is odd and >= 3.
    static FrequencyGrid uniform(const SpectralModel& sm, int n = kDefaultGridPoints,
                                 double half_width = kDefaultGridHalfWidth);
};

/// amps(j, k): amplitude of polarization basis state j at frequency eps_k.
struct JointSpectralState {
    Eigen::Matrix<Complex, 4, Eigen::Dynamic> amps;

    double norm_squared(const FrequencyGrid& grid) const;
};

struct LocalUnitaryStage {
    Arm arm;
    SingleQubitUnitary unitary;
};

struct WaveplateStage {
    Arm arm;
    WaveplateSpec waveplate;
};

struct DecohererStage {
    Arm arm;
    DecohererSpec decoherer;
};

using Stage = std::variant<LocalUnitaryStage, WaveplateStage, DecohererStage>;
using StageList = std::vector<Stage>;

enum class SimulationMode { Grid, Analytic };

/// Frequency amplitude A_si(eps) on the grid, normalized so that
/// sum_k w_k |A_si(eps_k)|^2 = 1.
Eigen::VectorXd spectral_amplitude(const SpectralModel& sm, const FrequencyGrid& grid);

JointSpectralState lift(const PureState2Q& psi, const SpectralModel& sm, const FrequencyGrid& grid);
JointSpectralState apply_local_unitary(const JointSpectralState& s, const SingleQubitUnitary& ua,
                                       const SingleQubitUnitary& ub);
JointSpectralState apply_decoherer(const JointSpectralState& s, Arm arm, const DecohererSpec& d,
                                   const SpectralModel& sm, const FrequencyGrid& grid);
DensityMatrix2Q trace_to_polarization(const JointSpectralState& s, const FrequencyGrid& grid);

JointSpectralState apply_stage(const JointSpectralState& s, const Stage& stage,
                               const SpectralModel& sm, const FrequencyGrid& grid);

DensityMatrix2Q simulate_chain(const PureState2Q& psi, const StageList& stages,
                               const SpectralModel& sm, const FrequencyGrid& grid);

/// Closed-form counterpart of simulate_chain: exact for a Gaussian spectrum
/// over the whole real line.
DensityMatrix2Q simulate_chain_analytic(const PureState2Q& psi, const StageList& stages,
                                        const SpectralModel& sm);

/// Unnormalized traced matrix from the closed-form route (used by the
/// compilers to mix coherent seeds).
Mat4 simulate_chain_analytic_matrix(const Vec4& seed, const StageList& stages,
                                    const SpectralModel& sm);

/// Unitary of a stage on its own arm (identity for decoherers).
SingleQubitUnitary stage_unitary(const Stage& stage);
Arm stage_arm(const Stage& stage);

}  // namespace qforge
