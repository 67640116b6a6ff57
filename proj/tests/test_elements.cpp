#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qforge/elements.hpp"
#include "qforge/error.hpp"
#include "qforge/random.hpp"

using namespace qforge;
using std::numbers::pi;

namespace {

// |Tr(a^dagger b)| / 2: 1 iff equal up to a global phase.
double phase_overlap(const Mat2& a, const Mat2& b) { return std::abs((a.adjoint() * b).trace()) / 2; }

SpectralModel default_model() { return SpectralModel::from_lengths(100.0, 351.0); }

}  // namespace

TEST(Waveplate, HalfWaveExamples) {
    Mat2 x;
    x << 0, 1, 1, 0;
    EXPECT_NEAR(phase_overlap(waveplate_unitary(WaveplateSpec::half(pi / 4)).matrix(), x), 1.0, 1e-12);
    Mat2 z;
    z << 1, 0, 0, -1;
    EXPECT_NEAR(phase_overlap(waveplate_unitary(WaveplateSpec::half(0)).matrix(), z), 1.0, 1e-12);
}

TEST(Waveplate, QuarterWaveAt45) {
    Vec2 out = waveplate_unitary(WaveplateSpec::quarter(pi / 4)).matrix() * Vec2(1, 0);
    Vec2 expect = Vec2(1, Complex(0, 1)) / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(expect.dot(out)), 1.0, 1e-12);
}

TEST(Waveplate, UnitaryAndValidated) {
    StateSampler rng(4);
    for (int t = 0; t < 200; ++t) {
        WaveplateSpec wp{rng.uniform(0.01, 2 * pi - 0.01), rng.uniform(-10, 10)};
        Mat2 u = waveplate_unitary(wp).matrix();
        EXPECT_LT((u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    }
    EXPECT_THROW(waveplate_unitary(WaveplateSpec{0.0, 0.0}), Error);
    EXPECT_THROW(waveplate_unitary(WaveplateSpec{2 * pi, 0.0}), Error);
}

TEST(Su2ToWaveplates, IdentityAndSwap) {
    auto id = su2_to_waveplates(SingleQubitUnitary::identity());
    EXPECT_NEAR(phase_overlap(id.unitary().matrix(), Mat2::Identity()), 1.0, 1e-12);
    auto hwp = waveplate_unitary(WaveplateSpec::half(pi / 4));
    EXPECT_NEAR(phase_overlap(su2_to_waveplates(hwp).unitary().matrix(), hwp.matrix()), 1.0, 1e-12);
}

TEST(Su2ToWaveplates, RandomRoundTrip) {
    StateSampler rng(1000);
    for (int t = 0; t < 1000; ++t) {
        SingleQubitUnitary u = rng.unitary();
        WaveplateTriple w = su2_to_waveplates(u);
        EXPECT_DOUBLE_EQ(w.first.retardance, pi / 2);
        EXPECT_DOUBLE_EQ(w.second.retardance, pi);
        EXPECT_DOUBLE_EQ(w.third.retardance, pi / 2);
        for (double a : {w.first.axis_angle, w.second.axis_angle, w.third.axis_angle}) {
            EXPECT_GE(a, 0.0);
            EXPECT_LT(a, pi);
        }
        ASSERT_GE(phase_overlap(w.unitary().matrix(), u.matrix()), 1 - 1e-10) << "sample " << t;
    }
}

TEST(Su2ToWaveplates, DegenerateEulerAngles) {
    // Pure Ry rotations hit the sin(B) = 0 branches.
    for (double a : {0.0, 0.3, 1.0, 2.5, pi}) {
        Mat2 ry;
        ry << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
        auto u = SingleQubitUnitary::from_matrix(ry);
        EXPECT_NEAR(phase_overlap(su2_to_waveplates(u).unitary().matrix(), ry), 1.0, 1e-10);
        Mat2 rx;
        rx << 0, Complex(0, -1), Complex(0, -1), 0;  // Rx(pi)
        auto v = SingleQubitUnitary::from_matrix(ry * rx);
        EXPECT_NEAR(phase_overlap(su2_to_waveplates(v).unitary().matrix(), v.matrix()), 1.0, 1e-10);
    }
}

TEST(Spdc, PairStates) {
    EXPECT_NEAR(overlap(spdc_pair_state({0, 0}).amplitudes(), Vec4(1, 0, 0, 0)), 1.0, 1e-15);
    Vec4 phi = Vec4(1, 0, 0, 1) / std::sqrt(2.0);
    EXPECT_NEAR(overlap(spdc_pair_state({pi / 4, 0}).amplitudes(), phi), 1.0, 1e-15);
    Vec4 v = spdc_pair_state({pi / 3, pi / 2}).amplitudes();
    EXPECT_NEAR(std::abs(v(0) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v(3) - Complex(0, std::sqrt(3.0) / 2)), 0.0, 1e-15);
    EXPECT_THROW(spdc_pair_state({-0.1, 0}), Error);
    EXPECT_THROW(spdc_pair_state({0.1, 2 * pi}), Error);
}

TEST(AnalyticF, Examples) {
    SpectralModel sm = default_model();
    DecohererSpec d{5000.0};
    EXPECT_NEAR(std::abs(analytic_f(d, d, sm)), 1.0, 1e-12);
    Complex zero = analytic_f(DecohererSpec{0.0}, DecohererSpec{0.0}, sm);
    EXPECT_EQ(zero, Complex(1.0, 0.0));
    double unit = kSpeedOfLight / (sm.delta_eps * 0.009);
    EXPECT_NEAR(std::abs(analytic_f(DecohererSpec{2000 + unit}, DecohererSpec{2000}, sm)), std::exp(-0.5), 1e-12);
    DecohererSpec h{100.0, 0.009, Polarization::H};
    EXPECT_THROW(analytic_f(d, h, sm), Error);
}

TEST(InvertF, Examples) {
    SpectralModel sm = default_model();
    double unit = kSpeedOfLight / (sm.delta_eps * 0.009);
    double lmin = full_dephasing_length(sm, 0.009);
    EXPECT_NEAR(lmin, 10 * unit, 1e-9);
    auto one = invert_f(1.0, sm, 0.009);
    EXPECT_DOUBLE_EQ(one.l1, lmin);
    EXPECT_DOUBLE_EQ(one.l2, lmin);
    auto six = invert_f(0.6, sm, 0.009);
    EXPECT_NEAR((six.l1 - six.l2) / unit, std::sqrt(2 * std::log(1 / 0.6)), 1e-12);
    EXPECT_NEAR((six.l1 - six.l2) / unit, 1.0108, 1e-4);
    EXPECT_THROW(invert_f(0.0, sm, 0.009), Error);
    EXPECT_THROW(invert_f(1.1, sm, 0.009), Error);
}

TEST(InvertF, RoundTripsThroughAnalyticF) {
    SpectralModel sm = default_model();
    for (double target : {1.0, 0.9, 0.5, 0.1, 1e-3, 1e-8, kFFloor}) {
        auto len = invert_f(target, sm, 0.009);
        double got = std::abs(analytic_f(DecohererSpec{len.l1}, DecohererSpec{len.l2}, sm));
        EXPECT_NEAR(got / target, 1.0, 1e-9) << target;
    }
    auto floor = decoherer_lengths_for(0.0, sm, 0.009);
    EXPECT_LE(std::abs(analytic_f(DecohererSpec{floor.l1}, DecohererSpec{floor.l2}, sm)), kFFloor);
}

TEST(SpectralModel, DerivedQuantities) {
    SpectralModel sm = default_model();
    EXPECT_NEAR(sm.coherence_length(), 100.0, 1e-12);
    EXPECT_NEAR(sm.omega / (2 * pi * kSpeedOfLight / 0.351), 1.0, 1e-14);
    EXPECT_THROW(SpectralModel::from_lengths(-1, 351), Error);
    EXPECT_THROW(validate(SpectralModel{0.0, 1.0}), Error);
}

TEST(Validate, ElementRanges) {
    EXPECT_THROW(validate(DecohererSpec{-1.0}), Error);
    EXPECT_THROW(validate(AttenuatorSpec{1.5}), Error);
    EXPECT_THROW(validate(BeamSplitterSpec{-0.1}), Error);
    EXPECT_NO_THROW(validate(BeamSplitterSpec{0.3}));
}
