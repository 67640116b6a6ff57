#include "qforge/random.hpp"

#include <cmath>

namespace qforge {

Complex StateSampler::gaussian() {
    double re = normal_(rng_);
    double im = normal_(rng_);
    return {re, im};
}

PureState2Q StateSampler::pure() {
    Vec4 v;
    for (int i = 0; i < 4; ++i) v(i) = gaussian();
    return PureState2Q::normalized(v);
}

DensityMatrix2Q StateSampler::density() {
    Mat4 g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = gaussian();
    Mat4 m = g * g.adjoint();
    m /= m.trace().real();
    return validate_density(0.5 * (m + m.adjoint()));
}

SingleQubitUnitary StateSampler::unitary() {
    Mat2 g;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) g(r, c) = gaussian();
    Eigen::HouseholderQR<Mat2> qr(g);
    Mat2 q = qr.householderQ();
    Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so Q is Haar distributed.
    for (int i = 0; i < 2; ++i) {
        Complex d = r(i, i);
        if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
    }
    return SingleQubitUnitary::from_matrix(q, 1e-10);
}

std::array<double, 4> StateSampler::simplex() {
    std::exponential_distribution<double> expo(1.0);
    std::array<double, 4> w{};
    double total = 0.0;
    for (auto& x : w) {
        x = expo(rng_);
        total += x;
    }
    for (auto& x : w) x /= total;
    // Absorb rounding so the weights sum to one as closely as possible.
    w[3] = 1.0 - w[0] - w[1] - w[2];
    if (w[3] < 0.0) w[3] = 0.0;
    return w;
}

double StateSampler::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng_);
}

}  // namespace qforge
