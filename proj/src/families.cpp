#include "qforge/families.hpp"

#include <cmath>
#include <string>

#include "qforge/error.hpp"

namespace qforge {

namespace {

void require_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
    }
}

Mat4 x_state(double d0, double d1, double d2, double d3, Complex corner, Complex inner) {
    Mat4 m = Mat4::Zero();
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    m(0, 3) = corner;
    m(3, 0) = std::conj(corner);
    m(1, 2) = inner;
    m(2, 1) = std::conj(inner);
    return m;
}

}  // namespace

std::string family_name(const FamilyParams& p) {
    struct Visitor {
        std::string operator()(const MemsParams&) const { return "mems"; }
        std::string operator()(const WernerParams&) const { return "werner"; }
        std::string operator()(const CollinsGisinParams&) const { return "collins-gisin"; }
        std::string operator()(const BellDiagonalParams&) const { return "bell-diagonal"; }
        std::string operator()(const SingleStageParams&) const { return "d1"; }
    };
    return std::visit(Visitor{}, p);
}

DensityMatrix2Q mems(double r) {
    require_unit(r, "MEMS r");
    if (r >= 2.0 / 3.0) return validate_density(x_state(r / 2, 1 - r, 0, r / 2, r / 2, 0));
    return validate_density(x_state(1.0 / 3, 1.0 / 3, 0, 1.0 / 3, r / 2, 0));
}

DensityMatrix2Q werner(double r) {
    require_unit(r, "Werner r");
    return validate_density(x_state((1 + r) / 4, (1 - r) / 4, (1 - r) / 4, (1 + r) / 4, r / 2, 0));
}

DensityMatrix2Q collins_gisin(double lambda, double theta) {
    require_unit(lambda, "Collins-Gisin lambda");
    if (!std::isfinite(theta)) throw Error(ErrorCode::OutOfRange, "Collins-Gisin theta must be finite");
    double c = std::cos(theta), s = std::sin(theta);
    return validate_density(x_state(lambda * c * c, 1 - lambda, 0, lambda * s * s, lambda * c * s, 0));
}

DensityMatrix2Q bell_diagonal(double l1, double l2, double l3, double l4) {
    double sum = l1 + l2 + l3 + l4;
    if (!(l1 >= 0 && l2 >= 0 && l3 >= 0 && l4 >= 0) || std::abs(sum - 1.0) > 1e-12) {
        throw Error(ErrorCode::BadWeights, "Bell-diagonal weights must be nonnegative and sum to 1");
    }
    return validate_density(x_state((l1 + l2) / 2, (l3 + l4) / 2, (l3 + l4) / 2, (l1 + l2) / 2,
                                    (l1 - l2) / 2, (l3 - l4) / 2));
}

DensityMatrix2Q family_d1(const Vec4& amps, Complex f) {
    double n = amps.squaredNorm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12) {
        throw Error(ErrorCode::BadNorm, "amplitudes must have unit norm, squared norm = " + std::to_string(n));
    }
    if (!(std::abs(f) <= 1.0 + 1e-15)) {
        throw Error(ErrorCode::BadF, "|f| must not exceed 1");
    }
    Complex a = amps(kHH), d = amps(kVV);
    Mat4 m = x_state(std::norm(amps(0)), std::norm(amps(1)), std::norm(amps(2)), std::norm(amps(3)),
                     f * a * std::conj(d), 0);
    // |f a d*| <= |a||d| keeps the corner block PSD; validation asserts it.
    m /= m.trace().real();
    return validate_density(m);
}

DensityMatrix2Q family_density(const FamilyParams& p) {
    struct Visitor {
        DensityMatrix2Q operator()(const MemsParams& x) const { return mems(x.r); }
        DensityMatrix2Q operator()(const WernerParams& x) const { return werner(x.r); }
        DensityMatrix2Q operator()(const CollinsGisinParams& x) const {
            return collins_gisin(x.lambda, x.theta);
        }
        DensityMatrix2Q operator()(const BellDiagonalParams& x) const {
            return bell_diagonal(x.lambdas[0], x.lambdas[1], x.lambdas[2], x.lambdas[3]);
        }
        DensityMatrix2Q operator()(const SingleStageParams& x) const { return family_d1(x.amps, x.f); }
    };
    return std::visit(Visitor{}, p);
}

double mems_boundary_tangle(double s) {
    if (!(s >= 0.0)) return 1.0;
    constexpr double kSeam = 16.0 / 27.0;  // entropy of mems(2/3)
    constexpr double kZero = 8.0 / 9.0;    // entropy of mems(0)
    if (s <= kSeam) {
        // rho_I: S = (8/3) r (1 - r), r in [2/3, 1].
        double r = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 1.5 * s)));
        return r * r;
    }
    if (s <= kZero) return 1.5 * (kZero - s);  // rho_II: S = 8/9 - 2 r^2 / 3
    return 0.0;
}

Vec4 bell_phi_plus() { return Vec4(1, 0, 0, 1) / std::sqrt(2.0); }
Vec4 bell_phi_minus() { return Vec4(1, 0, 0, -1) / std::sqrt(2.0); }
Vec4 bell_psi_plus() { return Vec4(0, 1, 1, 0) / std::sqrt(2.0); }
Vec4 bell_psi_minus() { return Vec4(0, 1, -1, 0) / std::sqrt(2.0); }

}  // namespace qforge
