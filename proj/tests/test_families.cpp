#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qforge/error.hpp"
#include "qforge/families.hpp"

using namespace qforge;

namespace {

Mat4 x_matrix(double d0, double d1, double d2, double d3, double corner, double inner) {
    Mat4 m = Mat4::Zero();
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    m(0, 3) = m(3, 0) = corner;
    m(1, 2) = m(2, 1) = inner;
    return m;
}

Mat4 projector(const Vec4& v) { return v * v.adjoint(); }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Mems, Examples) {
    EXPECT_LT(max_abs_diff(mems(2.0 / 3).matrix(), x_matrix(1.0 / 3, 1.0 / 3, 0, 1.0 / 3, 1.0 / 3, 0)), 1e-15);
    EXPECT_LT(max_abs_diff(mems(1.0).matrix(), projector(bell_phi_plus())), 1e-15);
    EXPECT_LT(max_abs_diff(mems(0.0).matrix(), x_matrix(1.0 / 3, 1.0 / 3, 0, 1.0 / 3, 0, 0)), 1e-15);
    EXPECT_EQ(code_of([] { mems(1.2); }), ErrorCode::OutOfRange);
}

TEST(Mems, BranchesMeetAtTwoThirds) {
    double r = 2.0 / 3;
    Mat4 lower = x_matrix(1.0 / 3, 1.0 / 3, 0, 1.0 / 3, r / 2, 0);
    Mat4 upper = x_matrix(r / 2, 1 - r, 0, r / 2, r / 2, 0);
    EXPECT_LT(max_abs_diff(lower, upper), 1e-15);
}

TEST(Mems, SweepTracesBoundary) {
    for (int i = 0; i <= 200; ++i) {
        double r = i / 200.0;
        DensityMatrix2Q rho = mems(r);
        EXPECT_NEAR(tangle(rho), mems_boundary_tangle(linear_entropy(rho)), 1e-8) << r;
        EXPECT_NEAR(tangle(rho), r * r, 1e-8) << r;
    }
    EXPECT_NEAR(mems_boundary_tangle(16.0 / 27), 4.0 / 9, 1e-12);
    EXPECT_NEAR(mems_boundary_tangle(0.0), 1.0, 1e-12);
    EXPECT_NEAR(mems_boundary_tangle(8.0 / 9), 0.0, 1e-12);
    EXPECT_EQ(mems_boundary_tangle(0.95), 0.0);
}

TEST(Werner, Examples) {
    EXPECT_LT(max_abs_diff(werner(1.0 / 3).matrix(), x_matrix(1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3, 1.0 / 6, 0)),
              1e-15);
    EXPECT_LT(max_abs_diff(werner(0.0).matrix(), Mat4::Identity() / 4), 1e-15);
    EXPECT_LT(max_abs_diff(werner(1.0).matrix(), projector(bell_phi_plus())), 1e-15);
    EXPECT_EQ(code_of([] { werner(2.0); }), ErrorCode::OutOfRange);
}

TEST(Werner, SeparabilityThreshold) {
    EXPECT_NEAR(min_partial_transpose_eigenvalue(werner(1.0 / 3)), 0.0, 1e-8);
    EXPECT_TRUE(ppt_separable(werner(1.0 / 3 - 1e-6)));
    EXPECT_FALSE(ppt_separable(werner(1.0 / 3 + 1e-6)));
    for (double r : {0.0, 0.1, 0.3, 1.0 / 3}) EXPECT_LT(tangle(werner(r)), 1e-12);
    for (double r : {0.34, 0.5, 0.9}) EXPECT_GT(tangle(werner(r)), 0.0);
}

TEST(CollinsGisin, Examples) {
    EXPECT_LT(max_abs_diff(collins_gisin(1.0, std::numbers::pi / 4).matrix(), projector(bell_phi_plus())), 1e-15);
    EXPECT_LT(max_abs_diff(collins_gisin(0.0, 0.3).matrix(), projector(Vec4(0, 1, 0, 0))), 1e-15);
    Mat4 m = collins_gisin(0.5, std::numbers::pi / 6).matrix();
    EXPECT_NEAR(m(0, 0).real(), 3.0 / 8, 1e-15);
    EXPECT_NEAR(m(1, 1).real(), 0.5, 1e-15);
    EXPECT_NEAR(m(3, 3).real(), 1.0 / 8, 1e-15);
    EXPECT_NEAR(m(0, 3).real(), std::sqrt(3.0) / 8, 1e-15);
}

TEST(BellDiagonal, Examples) {
    EXPECT_LT(max_abs_diff(bell_diagonal(1, 0, 0, 0).matrix(), projector(bell_phi_plus())), 1e-15);
    EXPECT_LT(max_abs_diff(bell_diagonal(0.25, 0.25, 0.25, 0.25).matrix(), Mat4::Identity() / 4), 1e-15);
    EXPECT_LT(max_abs_diff(bell_diagonal(0.4, 0.3, 0.2, 0.1).matrix(), x_matrix(0.35, 0.15, 0.15, 0.35, 0.05, 0.05)),
              1e-15);
    EXPECT_EQ(code_of([] { bell_diagonal(0.5, 0.5, 0.5, -0.5); }), ErrorCode::BadWeights);
    EXPECT_EQ(code_of([] { bell_diagonal(0.5, 0.3, 0.1, 0.0); }), ErrorCode::BadWeights);
}

TEST(BellDiagonal, MatchesBellMixture) {
    double l[4] = {0.1, 0.2, 0.3, 0.4};
    Mat4 m = l[0] * projector(bell_phi_plus()) + l[1] * projector(bell_phi_minus()) +
             l[2] * projector(bell_psi_plus()) + l[3] * projector(bell_psi_minus());
    EXPECT_LT(max_abs_diff(bell_diagonal(l[0], l[1], l[2], l[3]).matrix(), m), 1e-15);
}

TEST(FamilyD1, Examples) {
    Vec4 ad = Vec4(0.6, 0, 0, 0.8);
    EXPECT_LT(max_abs_diff(family_d1(ad, 1.0).matrix(), projector(ad)), 1e-15);
    Mat4 diag = family_d1(Vec4(0.5, 0.5, 0.5, 0.5), 0.0).matrix();
    EXPECT_LT(max_abs_diff(diag, Mat4::Identity() / 4), 1e-15);
    Vec4 third = Vec4(1, 1, 0, 1) / std::sqrt(3.0);
    EXPECT_LT(max_abs_diff(family_d1(third, 0.6).matrix(), mems(0.4).matrix()), 1e-15);
    EXPECT_EQ(code_of([] { family_d1(Vec4(1, 1, 0, 0), 0.5); }), ErrorCode::BadNorm);
    EXPECT_EQ(code_of([] { family_d1(Vec4(1, 0, 0, 0), 1.5); }), ErrorCode::BadF);
}

TEST(FamilyDensity, DispatchesOnParams) {
    EXPECT_EQ(family_density(WernerParams{0.5}).matrix(), werner(0.5).matrix());
    EXPECT_EQ(family_density(MemsParams{0.8}).matrix(), mems(0.8).matrix());
    EXPECT_EQ(family_name(CollinsGisinParams{0.5, 0.1}), "collins-gisin");
    EXPECT_EQ(family_name(BellDiagonalParams{{1, 0, 0, 0}}), "bell-diagonal");
}
