#pragma once

// Mixed-state synthesis recipes (Schemes I-IV), their forward simulation and
// resource accounting.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qforge/elements.hpp"
#include "qforge/families.hpp"
#include "qforge/qmath.hpp"
#include "qforge/spectral.hpp"

namespace qforge {

enum class Scheme { I, II, III, IV };

const char* to_string(Scheme s);
/// Accepts "I".."IV" and "1".."4".
Scheme parse_scheme(const std::string& s);

/// Physical constants a recipe is compiled against.
struct PhysicalConfig {
    SpectralModel spectral;
    double delta_n = 0.009;
    double base_index = 1.5;
};

/// Interferometric seed: the pump is split into an upper part
/// (v|V> + h|H>) generating a|HH> + d|VV> and a lower part generating
/// b|HH> + c|VV>, which a half-waveplate at 45 deg on `hwp_arm` turns into
/// b|HV> + c|VH>. Components are stored as (V, H) and are un-normalized.
struct PumpSplit {
    Vec2 upper;
    Vec2 lower;
    double lower_path_phase = 0.0;
    Arm hwp_arm = Arm::B;

    double intensity() const { return upper.squaredNorm() + lower.squaredNorm(); }
    /// Variable beam splitter transmission into the upper path.
    double upper_fraction() const;
    /// Coherent sum of the two paths, normalized.
    PureState2Q pair_state() const;
};

using Seed = std::variant<SpdcSourceSpec, PureState2Q, PumpSplit>;

struct Branch {
    double weight = 0.0;
    int timing_tag = 0;
    Seed seed;
    StageList stages;
    /// Fraction of the available pump delivered to this branch: attenuator
    /// transmission (Schemes I, IV) or cascade beam splitter (Scheme II).
    double pump_transmission = 1.0;
};

struct Recipe {
    Scheme scheme = Scheme::I;
    PhysicalConfig config;
    std::vector<Branch> branches;
    std::vector<std::string> notes;
};

struct HybridDecomposition {
    double p = 1.0;
    Recipe sigma_recipe;
    PureState2Q pure_part = PureState2Q::basis(kHH);
};

struct ResourceCount {
    int nlc = 0;
    int other_optics = 0;
    int controllable_params = 0;
};

/// Eigenvalues below this produce no branch.
inline constexpr double kDropWeight = 1e-12;

Recipe compile_scheme1(const DensityMatrix2Q& rho, const PhysicalConfig& cfg);
Recipe compile_scheme2(const DensityMatrix2Q& rho, const PhysicalConfig& cfg);
Recipe compile_scheme3(const FamilyParams& target, const PhysicalConfig& cfg);
Recipe compile_scheme4_bell_diagonal(double l1, double l2, double l3, double l4,
                                     const PhysicalConfig& cfg);

/// Dispatch on target kind. A raw matrix goes to Schemes I and II directly, to
/// Scheme IV if it is Bell-diagonal, and never to Scheme III; those pairings
/// throw UnsupportedTarget.
Recipe compile_density(Scheme s, const DensityMatrix2Q& rho, const PhysicalConfig& cfg);
Recipe compile_family(Scheme s, const FamilyParams& target, const PhysicalConfig& cfg);

/// Weights on (Phi+, Phi-, Psi+, Psi-) if rho is Bell-diagonal within 1e-10.
std::optional<std::array<double, 4>> bell_diagonal_weights(const DensityMatrix2Q& rho);

/// Single-stage parameters (seed amplitudes and f) a Scheme III compilation
/// targets for the family. Throws UnsupportedTarget for Bell-diagonal input.
SingleStageParams single_stage_target(const FamilyParams& target);

/// Scheme III branch for one single-stage target: seed compensated for the
/// decoherer phase, local waveplates, one decoherer per arm.
Branch single_stage_branch(const SingleStageParams& target, const PhysicalConfig& cfg);

/// The mixed/pure split of a Bell-diagonal state used by Scheme IV.
HybridDecomposition bell_diagonal_hybrid(double l1, double l2, double l3, double l4,
                                         const PhysicalConfig& cfg);

/// Polarization seed of a branch before any stage.
PureState2Q branch_seed_state(const Branch& b);

DensityMatrix2Q simulate_branch(const Branch& b, const PhysicalConfig& cfg, SimulationMode mode,
                                int grid_n = kDefaultGridPoints);
/// Incoherent sum over timing tags. Throws TimingCollision when two distinct
/// branches share a tag.
DensityMatrix2Q simulate_recipe(const Recipe& r, SimulationMode mode,
                                int grid_n = kDefaultGridPoints);

double verify_hybrid(const HybridDecomposition& h, const DensityMatrix2Q& target,
                     SimulationMode mode, int grid_n = kDefaultGridPoints);

ResourceCount recipe_cost(const Recipe& r);
/// Table I figures for the scheme (upper bounds for canonical compilations).
ResourceCount table_cost(Scheme s);

bool same_branch_content(const Branch& x, const Branch& y);

}  // namespace qforge
