#pragma once

// Optical element models: the two-crystal type-I SPDC source, waveplates,
// birefringent decoherers, attenuators and beam splitters.
//
// Units: angles in radians, lengths in micrometers, frequencies in rad/s.

#include <numbers>

#include "qforge/qmath.hpp"

namespace qforge {

inline constexpr double kSpeedOfLight = 2.99792458e14;  // micrometers per second

/// Full-dephasing floor: decoherer lengths never go below this many units of
/// c / (delta_eps |delta_n|).
inline constexpr double kFullDephasingFactor = 10.0;
/// Gaussian decoherence exponent cap; exp(-8^2 / 2) ~ 1.27e-14.
inline constexpr double kTauCap = 8.0;
/// |f| targets below this are realized as full dephasing at kTauCap.
inline constexpr double kFFloor = 1.3e-14;

enum class Arm { A, B };
enum class Polarization { H, V };

/// Pump polarization cos(theta)|V> + e^{i phi} sin(theta)|H>, producing the pair
/// cos(theta)|HH> + e^{i phi} sin(theta)|VV>.
struct SpdcSourceSpec {
    double theta = 0.0;
    double phi = 0.0;
};

struct WaveplateSpec {
    double retardance = std::numbers::pi;
    /// Angle of the slow (optic) axis from horizontal.
    double axis_angle = 0.0;

    static WaveplateSpec half(double angle) { return {std::numbers::pi, angle}; }
    static WaveplateSpec quarter(double angle) { return {std::numbers::pi / 2, angle}; }
};

/// A thick birefringent crystal. The polarization along `axis` sees index
/// base_index + delta_n, the orthogonal one sees base_index.
struct DecohererSpec {
    double length = 0.0;  // micrometers
    double delta_n = 0.009;
    Polarization axis = Polarization::V;
    double base_index = 1.5;
};

/// Gaussian downconversion spectrum |A_si(eps)|^2 of width delta_eps around
/// half the (monochromatic) pump frequency omega.
struct SpectralModel {
    double delta_eps = 0.0;  // rad/s
    double omega = 0.0;      // rad/s

    /// l_si = c / delta_eps in micrometers.
    double coherence_length() const { return kSpeedOfLight / delta_eps; }

    static SpectralModel from_lengths(double l_si_um, double pump_wavelength_nm);
};

struct AttenuatorSpec {
    double transmission = 1.0;
};

struct BeamSplitterSpec {
    double transmission = 0.5;
};

/// A general SU(2) as QWP -> HWP -> QWP in propagation order.
struct WaveplateTriple {
    WaveplateSpec first;
    WaveplateSpec second;
    WaveplateSpec third;

    SingleQubitUnitary unitary() const;
};

void validate(const SpdcSourceSpec& src);
void validate(const WaveplateSpec& wp);
void validate(const DecohererSpec& d);
void validate(const SpectralModel& sm);
void validate(const AttenuatorSpec& at);
void validate(const BeamSplitterSpec& bs);

/// Jones matrix R(t) diag(e^{i delta}, 1) R(-t) with t the slow-axis angle.
SingleQubitUnitary waveplate_unitary(const WaveplateSpec& wp);
WaveplateTriple su2_to_waveplates(const SingleQubitUnitary& u);

PureState2Q spdc_pair_state(const SpdcSourceSpec& src);

/// Pair state generated by an un-normalized pump (v_amp |V> + h_amp |H>):
/// v_amp |HH> + h_amp |VV>.
Vec4 spdc_from_pump(Complex v_amp, Complex h_amp);

/// Coherence factor multiplying the |HH><VV| element after one decoherer per
/// arm and the frequency trace.
Complex analytic_f(const DecohererSpec& d1, const DecohererSpec& d2, const SpectralModel& sm);

struct DecohererLengths {
    double l1;
    double l2;
};

/// L_min = kFullDephasingFactor * c / (delta_eps |delta_n|).
double full_dephasing_length(const SpectralModel& sm, double delta_n);
/// Lengths (L1 >= L2 = L_min) with |f| = target. Throws TargetOutOfRange
/// outside [kFFloor, 1].
DecohererLengths invert_f(double target_abs_f, const SpectralModel& sm, double delta_n);
/// Like invert_f but maps targets below kFFloor to full dephasing at kTauCap.
DecohererLengths decoherer_lengths_for(double target_abs_f, const SpectralModel& sm,
                                       double delta_n);

}  // namespace qforge
