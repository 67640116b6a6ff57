#include "qforge/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qforge/error.hpp"

namespace qforge {

namespace {

constexpr double kSqrtClamp = 1e-14;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Rotates v so that its first component of (near-)largest magnitude is real
// positive. Components within 1e-12 of the maximum count as ties and the
// earliest one wins, which keeps the choice stable under noise.
Vec4 fix_phase(const Vec4& v) {
    double biggest = v.cwiseAbs().maxCoeff();
    for (int i = 0; i < 4; ++i) {
        if (std::abs(v(i)) >= biggest - 1e-12) {
            Complex phase = std::conj(v(i)) / std::abs(v(i));
            return v * phase;
        }
    }
    return v;
}

Mat4 spin_flip() {
    Mat2 sy;
    sy << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
    return kron(sy, sy);
}

}  // namespace

PureState2Q PureState2Q::from_amplitudes(const Vec4& amp) {
    double n = amp.squaredNorm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
        throw Error(ErrorCode::NotNormalized, "squared norm " + fmt(n) + " != 1");
    }
    return PureState2Q(amp);
}

PureState2Q PureState2Q::normalized(const Vec4& amp) {
    double n = amp.norm();
    if (!std::isfinite(n) || n == 0.0) {
        throw Error(ErrorCode::NotNormalized, "cannot normalize a zero or non-finite vector");
    }
    return PureState2Q(amp / n);
}

PureState2Q PureState2Q::basis(int index) {
    Vec4 v = Vec4::Zero();
    v(index) = 1.0;
    return PureState2Q(v);
}

Mat2 PureState2Q::coefficient_matrix() const {
    Mat2 m;
    m << amp_(kHH), amp_(kHV), amp_(kVH), amp_(kVV);
    return m;
}

DensityMatrix2Q DensityMatrix2Q::projector(const PureState2Q& psi) {
    const Vec4& v = psi.amplitudes();
    return DensityMatrix2Q(v * v.adjoint());
}

SingleQubitUnitary SingleQubitUnitary::from_matrix(const Mat2& u, double tol) {
    double dev = (u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff();
    if (!std::isfinite(dev) || dev > tol) {
        throw Error(ErrorCode::NotUnitary, "u^dagger u deviates from identity by " + fmt(dev));
    }
    return SingleQubitUnitary(u);
}

SingleQubitUnitary SingleQubitUnitary::identity() { return SingleQubitUnitary(Mat2::Identity()); }

Mat4 CanonicalDecomposition::reconstruct() const {
    Mat4 m = Mat4::Zero();
    for (int i = 0; i < 4; ++i) {
        const Vec4& v = eigenstates[i].amplitudes();
        m += eigenvalues[i] * (v * v.adjoint());
    }
    return m;
}

DensityMatrix2Q validate_density(const Mat4& m) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::NotHermitian, "matrix has non-finite entries");
    }
    double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTolerance) {
        throw Error(ErrorCode::NotHermitian, "max |m - m^dagger| = " + fmt(herm));
    }
    Mat4 h = 0.5 * (m + m.adjoint());
    double tr = h.trace().real();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        throw Error(ErrorCode::TraceNotOne, "trace = " + fmt(tr));
    }
    Eigen::SelfAdjointEigenSolver<Mat4> es(h);
    Eigen::Vector4d ev = es.eigenvalues();
    if (ev.minCoeff() < -kPsdTolerance) {
        throw Error(ErrorCode::NotPositive, "min eigenvalue = " + fmt(ev.minCoeff()));
    }
    if (ev.minCoeff() < 0.0) {
        Eigen::Vector4d clamped = ev.cwiseMax(0.0);
        clamped /= clamped.sum();
        const auto& vecs = es.eigenvectors();
        h = vecs * clamped.cast<Complex>().asDiagonal() * vecs.adjoint();
        h = 0.5 * (h + h.adjoint());
    }
    return DensityMatrix2Q(h);
}

CanonicalDecomposition canonical_decompose(const DensityMatrix2Q& rho) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho.matrix());
    // Eigen returns ascending eigenvalues.
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    double total = ev.sum();
    std::array<double, 4> lambdas{};
    std::array<Vec4, 4> vecs;
    for (int i = 0; i < 4; ++i) {
        lambdas[i] = ev(3 - i) / total;
        vecs[i] = fix_phase(es.eigenvectors().col(3 - i));
    }
    return CanonicalDecomposition{
        lambdas,
        {PureState2Q::normalized(vecs[0]), PureState2Q::normalized(vecs[1]),
         PureState2Q::normalized(vecs[2]), PureState2Q::normalized(vecs[3])}};
}

SchmidtForm schmidt_decompose(const PureState2Q& psi) {
    // psi's coefficient matrix M = U_A diag(alpha, beta) U_B^T, so an SVD
    // M = W S X^dagger gives U_A = W and U_B = conj(X).
    Eigen::JacobiSVD<Mat2> svd(psi.coefficient_matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Vector2d s = svd.singularValues();
    Mat2 ua = svd.matrixU();
    Mat2 ub = svd.matrixV().conjugate();
    return SchmidtForm{s(0), Complex(s(1), 0.0), SingleQubitUnitary::from_matrix(ua, 1e-10),
                       SingleQubitUnitary::from_matrix(ub, 1e-10)};
}

Mat4 psd_sqrt(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (m + m.adjoint()));
    Eigen::Vector4d ev = es.eigenvalues();
    for (int i = 0; i < 4; ++i) ev(i) = ev(i) < kSqrtClamp ? 0.0 : std::sqrt(ev(i));
    return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix2Q& rho, const DensityMatrix2Q& sigma) {
    // Tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(sigma) sqrt(rho).
    // Singular values avoid amplifying round-off in the null space.
    Mat4 x = psd_sqrt(sigma.matrix()) * psd_sqrt(rho.matrix());
    Eigen::JacobiSVD<Mat4> svd(x);
    double f = svd.singularValues().sum();
    return std::clamp(f * f, 0.0, 1.0);
}

double concurrence(const DensityMatrix2Q& rho) {
    // Square roots of the eigenvalues of rho * rho_tilde are the singular
    // values of sqrt(rho) * sqrt(rho_tilde).
    Mat4 flip = spin_flip();
    Mat4 sr = psd_sqrt(rho.matrix());
    Mat4 sr_tilde = flip * sr.conjugate() * flip;
    Eigen::JacobiSVD<Mat4> svd(sr * sr_tilde);
    Eigen::Vector4d l = svd.singularValues();  // descending
    return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

double tangle(const DensityMatrix2Q& rho) {
    double c = concurrence(rho);
    return c * c;
}

double purity(const DensityMatrix2Q& rho) {
    const Mat4& m = rho.matrix();
    return (m * m).trace().real();
}

double linear_entropy(const DensityMatrix2Q& rho) {
    return std::clamp(4.0 / 3.0 * (1.0 - purity(rho)), 0.0, 1.0);
}

Mat4 partial_transpose_b(const Mat4& m) {
    Mat4 out;
    for (int a1 = 0; a1 < 2; ++a1)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2)
                    out(2 * a1 + b1, 2 * a2 + b2) = m(2 * a1 + b2, 2 * a2 + b1);
    return out;
}

double min_partial_transpose_eigenvalue(const DensityMatrix2Q& rho) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(partial_transpose_b(rho.matrix()),
                                           Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool ppt_separable(const DensityMatrix2Q& rho) {
    return min_partial_transpose_eigenvalue(rho) >= -kPsdTolerance;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Vec4 apply_local(const SingleQubitUnitary& ua, const SingleQubitUnitary& ub, const Vec4& v) {
    return kron(ua.matrix(), ub.matrix()) * v;
}

double overlap(const Vec4& a, const Vec4& b) { return std::abs(a.dot(b)); }

double max_abs_diff(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace qforge
