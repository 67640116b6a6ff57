#include "qforge/elements.hpp"

#include <cmath>
#include <string>

#include "qforge/error.hpp"

namespace qforge {

namespace {

using std::numbers::pi;

std::string num(double x) {
    std::string s = std::to_string(x);
    return s;
}

Mat2 rotation(double t) {
    Mat2 r;
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return r;
}

double wrap_half_turn(double t) {
    double w = std::fmod(t, pi);
    if (w < 0) w += pi;
    return w;
}

// Bloch-sphere rotation of u: O_ij = Tr(s_i u s_j u^dagger) / 2.
Eigen::Matrix3d bloch_rotation(const Mat2& u) {
    std::array<Mat2, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, Complex(0, -1), Complex(0, 1), 0;
    s[2] << 1, 0, 0, -1;
    Eigen::Matrix3d o;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) o(i, j) = 0.5 * (s[i] * u * s[j] * u.adjoint()).trace().real();
    return o;
}

}  // namespace

SpectralModel SpectralModel::from_lengths(double l_si_um, double pump_wavelength_nm) {
    if (!(l_si_um > 0) || !(pump_wavelength_nm > 0)) {
        throw Error(ErrorCode::OutOfRange, "coherence length and pump wavelength must be positive");
    }
    return SpectralModel{kSpeedOfLight / l_si_um, 2.0 * pi * kSpeedOfLight / (pump_wavelength_nm * 1e-3)};
}

SingleQubitUnitary WaveplateTriple::unitary() const {
    return waveplate_unitary(third) * waveplate_unitary(second) * waveplate_unitary(first);
}

void validate(const SpdcSourceSpec& src) {
    if (!(src.theta >= 0.0 && src.theta <= pi / 2) || !(src.phi >= 0.0 && src.phi < 2 * pi)) {
        throw Error(ErrorCode::OutOfRange,
                    "SPDC source needs theta in [0, pi/2] and phi in [0, 2pi), got theta=" +
                        num(src.theta) + " phi=" + num(src.phi));
    }
}

void validate(const WaveplateSpec& wp) {
    if (!(wp.retardance > 0.0 && wp.retardance < 2 * pi) || !std::isfinite(wp.axis_angle)) {
        throw Error(ErrorCode::OutOfRange, "waveplate retardance must lie in (0, 2pi)");
    }
}

void validate(const DecohererSpec& d) {
    if (!(d.length >= 0.0) || !std::isfinite(d.length) || !std::isfinite(d.delta_n)) {
        throw Error(ErrorCode::OutOfRange, "decoherer length must be finite and >= 0");
    }
}

void validate(const SpectralModel& sm) {
    if (!(sm.delta_eps > 0.0) || !(sm.omega > 0.0) || !std::isfinite(sm.delta_eps) ||
        !std::isfinite(sm.omega)) {
        throw Error(ErrorCode::OutOfRange, "spectral model needs delta_eps > 0 and omega > 0");
    }
}

void validate(const AttenuatorSpec& at) {
    if (!(at.transmission >= 0.0 && at.transmission <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "attenuator transmission must lie in [0, 1]");
    }
}

void validate(const BeamSplitterSpec& bs) {
    if (!(bs.transmission >= 0.0 && bs.transmission <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "beam splitter transmission must lie in [0, 1]");
    }
}

SingleQubitUnitary waveplate_unitary(const WaveplateSpec& wp) {
    validate(wp);
    Mat2 retarder = Mat2::Zero();
    retarder(0, 0) = std::polar(1.0, wp.retardance);
    retarder(1, 1) = 1.0;
    Mat2 r = rotation(wp.axis_angle);
    return SingleQubitUnitary::from_matrix(r * retarder * r.transpose());
}

WaveplateTriple su2_to_waveplates(const SingleQubitUnitary& u) {
    // A waveplate at angle t rotates the Bloch sphere by -delta about
    // m(t) = (sin 2t, 0, cos 2t). Writing those rotations as Ry(2t) Rz(.) Ry(-2t)
    // collapses QWP(t3) HWP(t2) QWP(t1) into the Euler form
    // Ry(A) Rx(B) Ry(C) with A = 2 t3, C = -2 t1, B = 2 (2 t2 - t1 - t3).
    Eigen::Matrix3d o = bloch_rotation(u.matrix());
    double sin_b = std::hypot(o(0, 1), o(2, 1));
    double b = std::atan2(sin_b, o(1, 1));
    double a = 0.0;
    double c = 0.0;
    if (sin_b > 1e-12) {
        a = std::atan2(o(0, 1), o(2, 1));
        c = std::atan2(o(1, 0), -o(1, 2));
    } else if (o(1, 1) > 0) {
        a = std::atan2(o(0, 2), o(0, 0));  // O = Ry(A)
    } else {
        a = std::atan2(-o(0, 2), o(0, 0));  // O = Ry(A) Rx(pi)
    }
    double t3 = a / 2;
    double t1 = -c / 2;
    double t2 = (b / 2 + t1 + t3) / 2;
    return WaveplateTriple{WaveplateSpec::quarter(wrap_half_turn(t1)),
                           WaveplateSpec::half(wrap_half_turn(t2)),
                           WaveplateSpec::quarter(wrap_half_turn(t3))};
}

PureState2Q spdc_pair_state(const SpdcSourceSpec& src) {
    validate(src);
    return PureState2Q::normalized(spdc_from_pump(std::cos(src.theta), std::polar(std::sin(src.theta), src.phi)));
}

Vec4 spdc_from_pump(Complex v_amp, Complex h_amp) {
    Vec4 v = Vec4::Zero();
    v(kHH) = v_amp;
    v(kVV) = h_amp;
    return v;
}

Complex analytic_f(const DecohererSpec& d1, const DecohererSpec& d2, const SpectralModel& sm) {
    validate(d1);
    validate(d2);
    validate(sm);
    if (d1.delta_n != d2.delta_n || d1.axis != d2.axis) {
        throw Error(ErrorCode::MismatchedDecoherers, "decoherers must share delta_n and optic axis");
    }
    // An H optic axis swaps which basis state is slow.
    double dn = d1.axis == Polarization::V ? d1.delta_n : -d1.delta_n;
    double tau = dn * (d1.length - d2.length) * sm.delta_eps / kSpeedOfLight;
    double phase = -dn * (d1.length + d2.length) * sm.omega / (2.0 * kSpeedOfLight);
    return std::polar(std::exp(-0.5 * tau * tau), phase);
}

double full_dephasing_length(const SpectralModel& sm, double delta_n) {
    validate(sm);
    if (!(std::abs(delta_n) > 0.0)) {
        throw Error(ErrorCode::OutOfRange, "delta_n must be nonzero");
    }
    return kFullDephasingFactor * kSpeedOfLight / (sm.delta_eps * std::abs(delta_n));
}

DecohererLengths invert_f(double target_abs_f, const SpectralModel& sm, double delta_n) {
    if (!(target_abs_f >= kFFloor && target_abs_f <= 1.0)) {
        throw Error(ErrorCode::TargetOutOfRange,
                    "|f| target " + num(target_abs_f) + " outside [1.3e-14, 1]");
    }
    double l_min = full_dephasing_length(sm, delta_n);
    double unit = kSpeedOfLight / (sm.delta_eps * std::abs(delta_n));
    double tau = std::sqrt(2.0 * std::log(1.0 / target_abs_f));
    return DecohererLengths{l_min + unit * tau, l_min};
}

DecohererLengths decoherer_lengths_for(double target_abs_f, const SpectralModel& sm,
                                       double delta_n) {
    if (target_abs_f >= 0.0 && target_abs_f < kFFloor) {
        double l_min = full_dephasing_length(sm, delta_n);
        double unit = kSpeedOfLight / (sm.delta_eps * std::abs(delta_n));
        return DecohererLengths{l_min + unit * kTauCap, l_min};
    }
    return invert_f(target_abs_f, sm, delta_n);
}

}  // namespace qforge
