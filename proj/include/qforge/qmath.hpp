#pragma once

// Two-qubit polarization states, their decompositions, and the entanglement
// and mixedness metrics used throughout the compiler.
//
// Basis ordering is {HH, HV, VH, VV}: index = 2 * (arm A bit) + (arm B bit),
// with H = 0 and V = 1. Tensor products are Kronecker products with arm A as
// the slow index.

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace qforge {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr int kHH = 0;
inline constexpr int kHV = 1;
inline constexpr int kVH = 2;
inline constexpr int kVV = 3;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Unit-norm two-photon polarization amplitudes (a, b, c, d).
class PureState2Q {
  public:
    /// Throws NotNormalized unless the norm is 1 within 1e-12.
    static PureState2Q from_amplitudes(const Vec4& amp);
    /// Rescales to unit norm. Throws NotNormalized on a zero vector.
    static PureState2Q normalized(const Vec4& amp);
    static PureState2Q basis(int index);

    const Vec4& amplitudes() const noexcept { return amp_; }
    Complex operator[](int i) const { return amp_(i); }

    /// 2x2 coefficient matrix with arm A as row index.
    Mat2 coefficient_matrix() const;

  private:
    explicit PureState2Q(const Vec4& amp) : amp_(amp) {}
    Vec4 amp_;
};

/// Validated 4x4 density matrix. Only constructible through validate_density
/// or the projector factory.
class DensityMatrix2Q {
  public:
    static DensityMatrix2Q projector(const PureState2Q& psi);

    const Mat4& matrix() const noexcept { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }

  private:
    friend DensityMatrix2Q validate_density(const Mat4& m);
    explicit DensityMatrix2Q(const Mat4& m) : m_(m) {}
    Mat4 m_;
};

class SingleQubitUnitary {
  public:
    /// Throws NotUnitary if u^dagger u deviates from identity by more than tol.
    static SingleQubitUnitary from_matrix(const Mat2& u, double tol = 1e-12);
    static SingleQubitUnitary identity();

    const Mat2& matrix() const noexcept { return u_; }
    SingleQubitUnitary adjoint() const { return SingleQubitUnitary(u_.adjoint()); }
    SingleQubitUnitary operator*(const SingleQubitUnitary& rhs) const {
        return SingleQubitUnitary(u_ * rhs.u_);
    }

  private:
    explicit SingleQubitUnitary(const Mat2& u) : u_(u) {}
    Mat2 u_;
};

struct CanonicalDecomposition {
    std::array<double, 4> eigenvalues;          // descending, nonnegative
    std::array<PureState2Q, 4> eigenstates;     // orthonormal

    Mat4 reconstruct() const;
};

/// psi = (u_a x u_b)(alpha |HH> + beta |VV>) up to a global phase.
struct SchmidtForm {
    double alpha;
    Complex beta;
    SingleQubitUnitary u_a;
    SingleQubitUnitary u_b;
};

DensityMatrix2Q validate_density(const Mat4& m);
CanonicalDecomposition canonical_decompose(const DensityMatrix2Q& rho);
SchmidtForm schmidt_decompose(const PureState2Q& psi);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix2Q& rho, const DensityMatrix2Q& sigma);
/// Squared Wootters concurrence.
double tangle(const DensityMatrix2Q& rho);
double concurrence(const DensityMatrix2Q& rho);
double purity(const DensityMatrix2Q& rho);
/// (4/3)(1 - Tr rho^2); 0 for pure states, 1 for I/4.
double linear_entropy(const DensityMatrix2Q& rho);

Mat4 partial_transpose_b(const Mat4& m);
double min_partial_transpose_eigenvalue(const DensityMatrix2Q& rho);
bool ppt_separable(const DensityMatrix2Q& rho);

// Small helpers shared by the other modules.
Mat4 kron(const Mat2& a, const Mat2& b);
Vec4 apply_local(const SingleQubitUnitary& ua, const SingleQubitUnitary& ub, const Vec4& v);
/// |<a|b>| for unit vectors.
double overlap(const Vec4& a, const Vec4& b);
/// Largest absolute entry difference.
double max_abs_diff(const Mat4& a, const Mat4& b);
/// Principal square root of a Hermitian PSD matrix; eigenvalues below 1e-14
/// are treated as zero.
Mat4 psd_sqrt(const Mat4& m);

}  // namespace qforge
