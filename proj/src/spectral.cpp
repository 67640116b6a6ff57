#include "qforge/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "qforge/error.hpp"

namespace qforge {

namespace {

int arm_bit(int basis_index, Arm arm) {
    return arm == Arm::A ? (basis_index >> 1) & 1 : basis_index & 1;
}

double index_for(int basis_index, Arm arm, const DecohererSpec& d) {
    Polarization p = arm_bit(basis_index, arm) == 0 ? Polarization::H : Polarization::V;
    return p == d.axis ? d.base_index + d.delta_n : d.base_index;
}

// Photon frequency on an arm is omega/2 + sign * eps.
double arm_sign(Arm arm) { return arm == Arm::A ? 1.0 : -1.0; }

Mat4 arm_operator(Arm arm, const SingleQubitUnitary& u) {
    return arm == Arm::A ? kron(u.matrix(), Mat2::Identity()) : kron(Mat2::Identity(), u.matrix());
}

// A polarization vector multiplying exp(i * slope * eps).
struct PhaseTerm {
    double slope;
    Vec4 amp;
};

void merge_terms(std::vector<PhaseTerm>& terms, double delta_eps) {
    std::sort(terms.begin(), terms.end(),
              [](const PhaseTerm& x, const PhaseTerm& y) { return x.slope < y.slope; });
    std::vector<PhaseTerm> merged;
    for (auto& t : terms) {
        if (t.amp.squaredNorm() == 0.0) continue;
        if (!merged.empty() && std::abs(t.slope - merged.back().slope) * delta_eps < 1e-12) {
            merged.back().amp += t.amp;
        } else {
            merged.push_back(t);
        }
    }
    terms = std::move(merged);
}

}  // namespace

FrequencyGrid FrequencyGrid::uniform(const SpectralModel& sm, int n, double half_width) {
    validate(sm);
    if (n < 3 || n % 2 == 0) {
        throw Error(ErrorCode::InvalidArgument, "grid size must be odd and >= 3, got " + std::to_string(n));
    }
    if (!(half_width > 0)) throw Error(ErrorCode::InvalidArgument, "grid half width must be positive");
    FrequencyGrid g;
    g.points.resize(n);
    g.weights.resize(n);
    double span = half_width * sm.delta_eps;
    double h = 2.0 * span / (n - 1);
    int mid = n / 2;
    for (int k = 0; k < n; ++k) {
        g.points(k) = (k - mid) * h;  // exactly symmetric about zero
        g.weights(k) = (k == 0 || k == n - 1) ? 0.5 * h : h;
    }
    return g;
}

double JointSpectralState::norm_squared(const FrequencyGrid& grid) const {
    return (amps.cwiseAbs2() * grid.weights).sum();
}

Eigen::VectorXd spectral_amplitude(const SpectralModel& sm, const FrequencyGrid& grid) {
    Eigen::VectorXd density(grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        double x = grid.points(k) / sm.delta_eps;
        density(k) = std::exp(-0.5 * x * x);
    }
    density /= density.dot(grid.weights);
    return density.cwiseSqrt();
}

JointSpectralState lift(const PureState2Q& psi, const SpectralModel& sm, const FrequencyGrid& grid) {
    Eigen::VectorXd a = spectral_amplitude(sm, grid);
    JointSpectralState s;
    s.amps = psi.amplitudes() * a.cast<Complex>().transpose();
    return s;
}

JointSpectralState apply_local_unitary(const JointSpectralState& s, const SingleQubitUnitary& ua,
                                       const SingleQubitUnitary& ub) {
    JointSpectralState out;
    out.amps = kron(ua.matrix(), ub.matrix()) * s.amps;
    return out;
}

JointSpectralState apply_decoherer(const JointSpectralState& s, Arm arm, const DecohererSpec& d,
                                   const SpectralModel& sm, const FrequencyGrid& grid) {
    validate(d);
    JointSpectralState out = s;
    if (d.length == 0.0) return out;
    double sign = arm_sign(arm);
    for (int j = 0; j < 4; ++j) {
        double kl = index_for(j, arm, d) * d.length / kSpeedOfLight;
        for (int k = 0; k < grid.size(); ++k) {
            double w = 0.5 * sm.omega + sign * grid.points(k);
            out.amps(j, k) *= std::polar(1.0, kl * w);
        }
    }
    return out;
}

DensityMatrix2Q trace_to_polarization(const JointSpectralState& s, const FrequencyGrid& grid) {
    Mat4 rho = s.amps * grid.weights.cast<Complex>().asDiagonal() * s.amps.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    // Quadrature leaves the trace at 1 up to round-off; remove that residue.
    rho /= rho.trace().real();
    return validate_density(rho);
}

SingleQubitUnitary stage_unitary(const Stage& stage) {
    if (auto* lu = std::get_if<LocalUnitaryStage>(&stage)) return lu->unitary;
    if (auto* wp = std::get_if<WaveplateStage>(&stage)) return waveplate_unitary(wp->waveplate);
    return SingleQubitUnitary::identity();
}

Arm stage_arm(const Stage& stage) {
    return std::visit([](const auto& s) { return s.arm; }, stage);
}

JointSpectralState apply_stage(const JointSpectralState& s, const Stage& stage,
                               const SpectralModel& sm, const FrequencyGrid& grid) {
    if (auto* dec = std::get_if<DecohererStage>(&stage)) {
        return apply_decoherer(s, dec->arm, dec->decoherer, sm, grid);
    }
    JointSpectralState out;
    out.amps = arm_operator(stage_arm(stage), stage_unitary(stage)) * s.amps;
    return out;
}

DensityMatrix2Q simulate_chain(const PureState2Q& psi, const StageList& stages,
                               const SpectralModel& sm, const FrequencyGrid& grid) {
    JointSpectralState s = lift(psi, sm, grid);
    for (const auto& stage : stages) s = apply_stage(s, stage, sm, grid);
    return trace_to_polarization(s, grid);
}

Mat4 simulate_chain_analytic_matrix(const Vec4& seed, const StageList& stages,
                                    const SpectralModel& sm) {
    validate(sm);
    std::vector<PhaseTerm> terms{{0.0, seed}};
    for (const auto& stage : stages) {
        if (auto* dec = std::get_if<DecohererStage>(&stage)) {
            const DecohererSpec& d = dec->decoherer;
            validate(d);
            if (d.length == 0.0) continue;
            double sign = arm_sign(dec->arm);
            std::vector<PhaseTerm> next;
            next.reserve(terms.size() * 2);
            for (const auto& t : terms) {
                // Split each term by the index its polarization sees on this arm.
                for (int bit = 0; bit < 2; ++bit) {
                    PhaseTerm part{t.slope, Vec4::Zero()};
                    double n = 0.0;
                    for (int j = 0; j < 4; ++j) {
                        if (arm_bit(j, dec->arm) != bit) continue;
                        n = index_for(j, dec->arm, d);
                        part.amp(j) = t.amp(j);
                    }
                    double kl = n * d.length / kSpeedOfLight;
                    part.amp *= std::polar(1.0, kl * 0.5 * sm.omega);
                    part.slope += sign * kl;
                    next.push_back(part);
                }
            }
            terms = std::move(next);
            merge_terms(terms, sm.delta_eps);
        } else {
            Mat4 op = arm_operator(stage_arm(stage), stage_unitary(stage));
            for (auto& t : terms) t.amp = op * t.amp;
        }
    }
    // Gaussian characteristic function: int |A|^2 e^{i k eps} = exp(-k^2 delta^2 / 2).
    Mat4 rho = Mat4::Zero();
    for (const auto& p : terms) {
        for (const auto& q : terms) {
            double dk = (p.slope - q.slope) * sm.delta_eps;
            rho += std::exp(-0.5 * dk * dk) * (p.amp * q.amp.adjoint());
        }
    }
    return rho;
}

DensityMatrix2Q simulate_chain_analytic(const PureState2Q& psi, const StageList& stages,
                                        const SpectralModel& sm) {
    Mat4 rho = simulate_chain_analytic_matrix(psi.amplitudes(), stages, sm);
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return validate_density(rho);
}

}  // namespace qforge
