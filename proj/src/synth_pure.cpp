#include "qforge/synth_pure.hpp"

#include <cmath>
#include <numbers>

#include "qforge/error.hpp"

namespace qforge {

namespace {

using std::numbers::pi;

double wrap_turn(double phi) {
    double w = std::fmod(phi, 2 * pi);
    if (w < 0) w += 2 * pi;
    if (w >= 2 * pi) w = 0.0;
    return w;
}

Complex unit_phase(Complex z) {
    double r = std::abs(z);
    return r > 0 ? z / r : Complex(1.0, 0.0);
}

// Source settings realizing alpha|HH> + beta|VV> up to a global phase.
SpdcSourceSpec source_for(Complex alpha, Complex beta) {
    double theta = std::atan2(std::abs(beta), std::abs(alpha));
    double phi = (std::abs(alpha) > 0 && std::abs(beta) > 0) ? std::arg(beta) - std::arg(alpha) : 0.0;
    return SpdcSourceSpec{theta, wrap_turn(phi)};
}

Mat2 su2_from_row(Complex u, Complex v) {
    Mat2 m;
    m << u, v, -std::conj(v), std::conj(u);
    return m;
}

PureRecipe make_recipe(PureBranch branch, SpdcSourceSpec src, const Mat2& ua, const Mat2& ub) {
    auto ua_ = SingleQubitUnitary::from_matrix(ua, 1e-10);
    auto ub_ = SingleQubitUnitary::from_matrix(ub, 1e-10);
    return PureRecipe{branch, src, ua_, ub_, su2_to_waveplates(ua_), su2_to_waveplates(ub_)};
}

PureRecipe solve_product(const Vec4& t) {
    // M = p q^T with unit p and q; take p from the heaviest column.
    Mat2 m;
    m << t(kHH), t(kHV), t(kVH), t(kVV);
    int col = m.col(0).squaredNorm() >= m.col(1).squaredNorm() ? 0 : 1;
    Vec2 p = m.col(col).normalized();
    Vec2 q = (p.adjoint() * m).transpose();
    q.normalize();
    // Columns: the factor and its orthogonal complement.
    Mat2 ua, ub;
    ua << p(0), -std::conj(p(1)), p(1), std::conj(p(0));
    ub << q(0), -std::conj(q(1)), q(1), std::conj(q(0));
    return make_recipe(PureBranch::Product, SpdcSourceSpec{0.0, 0.0}, ua, ub);
}

PureRecipe solve_general(const Vec4& t, Complex x) {
    const Complex a = t(kHH), b = t(kHV), c = t(kVH), d = t(kVV);
    double ax = std::abs(x);
    // Schmidt coefficients; the minus root for alpha, written to avoid
    // cancellation when |x| is small.
    double s = std::sqrt((1.0 - 2.0 * ax) * (1.0 + 2.0 * ax));
    double alpha = ax * std::sqrt(2.0 / (1.0 + s));
    Complex beta = x / alpha;
    double den = -s;  // |alpha|^2 - |beta|^2

    // z1 = u1 u2, z2 = v1 v2, z3 = v1 conj(u2), z4 = u1 conj(v2).
    Complex z1 = (a * alpha - std::conj(d) * beta) / den;
    Complex z2 = (std::conj(d) * alpha - a * std::conj(beta)) / den;
    Complex z3 = (-std::conj(c) * alpha - b * std::conj(beta)) / den;
    Complex z4 = (-b * alpha - std::conj(c) * beta) / den;

    // Read (u1, v1) with u1 real from whichever pair of z's is better conditioned.
    double n13 = std::sqrt(std::norm(z1) + std::norm(z3));
    double n24 = std::sqrt(std::norm(z2) + std::norm(z4));
    double u1 = 0.0;
    Complex v1;
    if (n13 >= n24) {
        u1 = std::abs(z1) / n13;
        v1 = z3 * unit_phase(z1) / n13;
    } else {
        u1 = std::abs(z4) / n24;
        v1 = z2 * unit_phase(z4) / n24;
    }
    Complex u2 = u1 * z1 + v1 * std::conj(z3);
    Complex v2 = u1 * std::conj(z4) + std::conj(v1) * z2;
    double n2 = std::sqrt(std::norm(u2) + std::norm(v2));
    u2 /= n2;
    v2 /= n2;

    return make_recipe(PureBranch::General, source_for(alpha, beta), su2_from_row(u1, v1),
                       su2_from_row(u2, v2));
}

PureRecipe solve_maximal(const Vec4& t, Complex x) {
    const Complex a = t(kHH), b = t(kHV), c = t(kVH), d = t(kVV);
    if (std::norm(b) + std::norm(c) <= 1e-12) {
        return make_recipe(PureBranch::MaximalDiagonal, source_for(a, d), Mat2::Identity(),
                           Mat2::Identity());
    }
    if (std::norm(a) + std::norm(d) <= 1e-12) {
        // b|HH> + c|VV> followed by an H <-> V exchange on arm B.
        Mat2 swap;
        swap << 0, 1, 1, 0;
        return make_recipe(PureBranch::MaximalExchange, source_for(b, c), Mat2::Identity(), swap);
    }
    // e^{i gamma} = a / conj(d) = -b / conj(c), both equal to the phase of ad - bc.
    Complex g = unit_phase(x);
    Mat2 ua;
    ua << 1.0, g, -std::conj(g), 1.0;
    ua /= std::sqrt(2.0);
    Mat2 ub;
    ub << std::conj(d) - c, std::conj(d) + c, -d - std::conj(c), d - std::conj(c);
    // The two columns are orthogonal with norm sqrt(2(|c|^2 + |d|^2)).
    ub /= std::sqrt(2.0 * (std::norm(c) + std::norm(d)));
    return make_recipe(PureBranch::MaximalGeneral, source_for(g, 1.0), ua, ub);
}

}  // namespace

const char* to_string(PureBranch b) {
    switch (b) {
        case PureBranch::Product: return "product";
        case PureBranch::General: return "general";
        case PureBranch::MaximalDiagonal: return "maximal-diagonal";
        case PureBranch::MaximalExchange: return "maximal-exchange";
        case PureBranch::MaximalGeneral: return "maximal-general";
    }
    return "unknown";
}

Vec4 PureRecipe::forward() const {
    return apply_local(u_a, u_b, spdc_pair_state(source).amplitudes());
}

PureRecipe solve_pure(const PureState2Q& target) {
    const Vec4& t = target.amplitudes();
    double n = t.squaredNorm();
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw Error(ErrorCode::NotNormalized, "target is not unit norm");
    }
    Complex x = t(kHH) * t(kVV) - t(kHV) * t(kVH);
    double ax = std::abs(x);
    if (ax < kProductSeam) return solve_product(t);
    if (std::abs(1.0 - 2.0 * ax) < kMaximalSeam) return solve_maximal(t, x);
    return solve_general(t, x);
}

double verify_pure(const PureRecipe& recipe, const PureState2Q& target) {
    return overlap(target.amplitudes(), recipe.forward());
}

}  // namespace qforge
