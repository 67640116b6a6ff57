#include "qforge/compilers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qforge/error.hpp"
#include "qforge/synth_pure.hpp"

namespace qforge {

namespace {

using std::numbers::pi;

constexpr const char* kIncoherentNote =
    "branches with distinct timing tags are mixed incoherently: path delays between them must "
    "exceed the pump coherence length";

void append_waveplates(StageList& stages, Arm arm, const WaveplateTriple& t) {
    stages.emplace_back(WaveplateStage{arm, t.first});
    stages.emplace_back(WaveplateStage{arm, t.second});
    stages.emplace_back(WaveplateStage{arm, t.third});
}

// Branch realizing a pure state: SPDC settings followed by QWP-HWP-QWP per arm.
Branch pure_branch(const PureState2Q& psi, double weight, int tag) {
    PureRecipe pr = solve_pure(psi);
    Branch b;
    b.weight = weight;
    b.timing_tag = tag;
    b.seed = pr.source;
    append_waveplates(b.stages, Arm::A, pr.waveplates_a);
    append_waveplates(b.stages, Arm::B, pr.waveplates_b);
    return b;
}

DecohererSpec decoherer(double length, const PhysicalConfig& cfg) {
    return DecohererSpec{length, cfg.delta_n, Polarization::V, cfg.base_index};
}

bool same_unitary(const SingleQubitUnitary& x, const SingleQubitUnitary& y) {
    return x.matrix() == y.matrix();
}

bool same_stage(const Stage& x, const Stage& y) {
    if (x.index() != y.index()) return false;
    if (auto* a = std::get_if<LocalUnitaryStage>(&x)) {
        auto& b = std::get<LocalUnitaryStage>(y);
        return a->arm == b.arm && same_unitary(a->unitary, b.unitary);
    }
    if (auto* a = std::get_if<WaveplateStage>(&x)) {
        auto& b = std::get<WaveplateStage>(y);
        return a->arm == b.arm && a->waveplate.retardance == b.waveplate.retardance &&
               a->waveplate.axis_angle == b.waveplate.axis_angle;
    }
    auto& a = std::get<DecohererStage>(x);
    auto& b = std::get<DecohererStage>(y);
    return a.arm == b.arm && a.decoherer.length == b.decoherer.length &&
           a.decoherer.delta_n == b.decoherer.delta_n && a.decoherer.axis == b.decoherer.axis &&
           a.decoherer.base_index == b.decoherer.base_index;
}

bool same_seed(const Seed& x, const Seed& y) {
    if (x.index() != y.index()) return false;
    if (auto* a = std::get_if<SpdcSourceSpec>(&x)) {
        auto& b = std::get<SpdcSourceSpec>(y);
        return a->theta == b.theta && a->phi == b.phi;
    }
    if (auto* a = std::get_if<PureState2Q>(&x)) {
        return a->amplitudes() == std::get<PureState2Q>(y).amplitudes();
    }
    auto& a = std::get<PumpSplit>(x);
    auto& b = std::get<PumpSplit>(y);
    return a.upper == b.upper && a.lower == b.lower && a.lower_path_phase == b.lower_path_phase &&
           a.hwp_arm == b.hwp_arm;
}

}  // namespace

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::I: return "I";
        case Scheme::II: return "II";
        case Scheme::III: return "III";
        case Scheme::IV: return "IV";
    }
    return "?";
}

Scheme parse_scheme(const std::string& s) {
    if (s == "I" || s == "1") return Scheme::I;
    if (s == "II" || s == "2") return Scheme::II;
    if (s == "III" || s == "3") return Scheme::III;
    if (s == "IV" || s == "4") return Scheme::IV;
    throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + s + "'");
}

double PumpSplit::upper_fraction() const {
    double total = intensity();
    return total > 0 ? upper.squaredNorm() / total : 0.0;
}

PureState2Q PumpSplit::pair_state() const {
    Vec4 up = spdc_from_pump(upper(0), upper(1));
    Vec4 low = spdc_from_pump(lower(0), lower(1));
    SingleQubitUnitary hwp = waveplate_unitary(WaveplateSpec::half(pi / 4));
    SingleQubitUnitary id = SingleQubitUnitary::identity();
    low = hwp_arm == Arm::A ? apply_local(hwp, id, low) : apply_local(id, hwp, low);
    return PureState2Q::normalized(up + std::polar(1.0, lower_path_phase) * low);
}

bool same_branch_content(const Branch& x, const Branch& y) {
    if (x.weight != y.weight || x.timing_tag != y.timing_tag ||
        x.pump_transmission != y.pump_transmission || x.stages.size() != y.stages.size()) {
        return false;
    }
    if (!same_seed(x.seed, y.seed)) return false;
    for (std::size_t i = 0; i < x.stages.size(); ++i)
        if (!same_stage(x.stages[i], y.stages[i])) return false;
    return true;
}

Recipe compile_scheme1(const DensityMatrix2Q& rho, const PhysicalConfig& cfg) {
    CanonicalDecomposition cd = canonical_decompose(rho);
    Recipe r;
    r.scheme = Scheme::I;
    r.config = cfg;
    r.notes.emplace_back(kIncoherentNote);
    double lead = cd.eigenvalues[0];
    for (int i = 0; i < 4; ++i) {
        if (cd.eigenvalues[i] < kDropWeight) continue;
        Branch b = pure_branch(cd.eigenstates[i], cd.eigenvalues[i], i);
        b.pump_transmission = cd.eigenvalues[i] / lead;
        r.branches.push_back(std::move(b));
    }
    return r;
}

Recipe compile_scheme2(const DensityMatrix2Q& rho, const PhysicalConfig& cfg) {
    CanonicalDecomposition cd = canonical_decompose(rho);
    Recipe r;
    r.scheme = Scheme::II;
    r.config = cfg;
    r.notes.emplace_back(kIncoherentNote);
    r.notes.emplace_back("upper and lower pump paths of one branch are balanced for coherence");
    // The lower path's half-waveplate contributes a global sign; the
    // interferometer phase cancels it.
    SingleQubitUnitary hwp = waveplate_unitary(WaveplateSpec::half(pi / 4));
    double path_phase = -std::arg(hwp.matrix()(1, 0));
    double remaining = 1.0;
    for (int i = 0; i < 4; ++i) {
        double lambda = cd.eigenvalues[i];
        if (lambda < kDropWeight) continue;
        const Vec4& v = cd.eigenstates[i].amplitudes();
        double s = std::sqrt(lambda);
        PumpSplit split;
        split.upper = Vec2(s * v(kHH), s * v(kVV));
        split.lower = Vec2(s * v(kHV), s * v(kVH));
        split.lower_path_phase = path_phase;
        split.hwp_arm = Arm::B;
        Branch b;
        b.weight = lambda;
        b.timing_tag = i;
        b.seed = split;
        b.pump_transmission = std::clamp(lambda / remaining, 0.0, 1.0);
        remaining -= lambda;
        r.branches.push_back(std::move(b));
    }
    return r;
}

SingleStageParams single_stage_target(const FamilyParams& target) {
    struct Visitor {
        SingleStageParams operator()(const MemsParams& p) const {
            double r = p.r;
            if (!(r >= 0 && r <= 1)) throw Error(ErrorCode::OutOfRange, "MEMS r must lie in [0, 1]");
            if (r >= 2.0 / 3.0) {
                return {Vec4(std::sqrt(r / 2), std::sqrt(1 - r), 0, std::sqrt(r / 2)), 1.0};
            }
            double third = std::sqrt(1.0 / 3.0);
            double f = 1.5 * r;  // r <= 2/3 keeps this <= 1
            if (f > 1.0) throw Error(ErrorCode::OutOfRange, "MEMS II |f| exceeds 1");
            return {Vec4(third, third, 0, third), f};
        }
        SingleStageParams operator()(const WernerParams& p) const {
            double r = p.r;
            if (!(r >= 0 && r <= 1)) throw Error(ErrorCode::OutOfRange, "Werner r must lie in [0, 1]");
            double hi = std::sqrt((1 + r) / 4), lo = std::sqrt((1 - r) / 4);
            return {Vec4(hi, lo, lo, hi), std::clamp(2 * r / (1 + r), 0.0, 1.0)};
        }
        SingleStageParams operator()(const CollinsGisinParams& p) const {
            double l = p.lambda;
            if (!(l >= 0 && l <= 1) || !std::isfinite(p.theta)) {
                throw Error(ErrorCode::OutOfRange, "Collins-Gisin lambda must lie in [0, 1]");
            }
            return {Vec4(std::sqrt(l) * std::cos(p.theta), std::sqrt(1 - l), 0,
                         std::sqrt(l) * std::sin(p.theta)),
                    1.0};
        }
        SingleStageParams operator()(const BellDiagonalParams&) const {
            throw Error(ErrorCode::UnsupportedTarget,
                        "Bell-diagonal targets need the hybrid scheme (IV)");
        }
        SingleStageParams operator()(const SingleStageParams& p) const {
            family_d1(p.amps, p.f);  // validates norm and |f|
            return p;
        }
    };
    return std::visit(Visitor{}, target);
}

Branch single_stage_branch(const SingleStageParams& target, const PhysicalConfig& cfg) {
    double abs_f = std::min(std::abs(target.f), 1.0);
    DecohererLengths len = decoherer_lengths_for(abs_f, cfg.spectral, cfg.delta_n);
    DecohererSpec d1 = decoherer(len.l1, cfg);
    DecohererSpec d2 = decoherer(len.l2, cfg);
    Complex f_actual = analytic_f(d1, d2, cfg.spectral);

    // The decoherers imprint a known phase on the |HH><VV| coherence; rotate
    // the seed's VV amplitude so the traced corner carries the target phase.
    Vec4 seed = target.amps;
    if (abs_f >= kFFloor) {
        Complex ratio = target.f / f_actual;
        seed(kVV) *= std::conj(ratio / std::abs(ratio));
    }
    Branch b = pure_branch(PureState2Q::normalized(seed), 1.0, 0);
    b.stages.emplace_back(DecohererStage{Arm::A, d1});
    b.stages.emplace_back(DecohererStage{Arm::B, d2});
    return b;
}

Recipe compile_scheme3(const FamilyParams& target, const PhysicalConfig& cfg) {
    SingleStageParams ss = single_stage_target(target);
    Recipe r;
    r.scheme = Scheme::III;
    r.config = cfg;
    r.notes.emplace_back("single decoherence stage targeting " + family_name(target));
    r.branches.push_back(single_stage_branch(ss, cfg));
    return r;
}

namespace {

struct BellSplit {
    double mixed_weight;
    double pure_weight;
    SingleStageParams mixed;
    Vec4 pure;
};

BellSplit split_bell_diagonal(double l1, double l2, double l3, double l4) {
    bell_diagonal(l1, l2, l3, l4);  // validates weights
    BellSplit s{};
    s.pure_weight = std::abs(l3 - l4);
    s.mixed_weight = 1.0 - s.pure_weight;
    double w = std::max(s.mixed_weight, kDropWeight);
    double ad = (l1 + l2) / 2 / w;
    double bc = std::min(l3, l4) / w;
    Complex f = (l1 + l2) > 0 ? (l1 - l2) / (l1 + l2) : 0.0;
    Vec4 amps(std::sqrt(ad), std::sqrt(bc), std::sqrt(bc), std::sqrt(ad));
    s.mixed = SingleStageParams{amps / amps.norm(), f};
    double sgn = l3 >= l4 ? 1.0 : -1.0;
    s.pure = Vec4(0, 1, sgn, 0) / std::sqrt(2.0);
    return s;
}

}  // namespace

Recipe compile_scheme4_bell_diagonal(double l1, double l2, double l3, double l4,
                                     const PhysicalConfig& cfg) {
    BellSplit s = split_bell_diagonal(l1, l2, l3, l4);
    Recipe r;
    r.scheme = Scheme::IV;
    r.config = cfg;
    r.notes.emplace_back(kIncoherentNote);
    // The heavier branch runs at full pump; the lighter one is attenuated.
    double heavy = std::max(s.mixed_weight, s.pure_weight);
    if (s.mixed_weight >= kDropWeight) {
        Branch mixed = single_stage_branch(s.mixed, cfg);
        mixed.weight = s.mixed_weight;
        mixed.timing_tag = 0;
        mixed.pump_transmission = s.mixed_weight / heavy;
        r.branches.push_back(std::move(mixed));
    }
    if (s.pure_weight >= kDropWeight) {
        Branch pure = pure_branch(PureState2Q::normalized(s.pure), s.pure_weight, 1);
        pure.pump_transmission = s.pure_weight / heavy;
        r.branches.push_back(std::move(pure));
    }
    return r;
}

HybridDecomposition bell_diagonal_hybrid(double l1, double l2, double l3, double l4,
                                         const PhysicalConfig& cfg) {
    BellSplit s = split_bell_diagonal(l1, l2, l3, l4);
    Recipe sigma;
    sigma.scheme = Scheme::III;
    sigma.config = cfg;
    sigma.branches.push_back(single_stage_branch(s.mixed, cfg));
    return HybridDecomposition{s.mixed_weight, std::move(sigma), PureState2Q::normalized(s.pure)};
}

std::optional<std::array<double, 4>> bell_diagonal_weights(const DensityMatrix2Q& rho) {
    const std::array<Vec4, 4> bell{bell_phi_plus(), bell_phi_minus(), bell_psi_plus(), bell_psi_minus()};
    std::array<double, 4> w{};
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        w[k] = std::max(0.0, bell[k].dot(rho.matrix() * bell[k]).real());
        sum += w[k];
    }
    for (double& x : w) x /= sum;
    Mat4 rebuilt = Mat4::Zero();
    for (int k = 0; k < 4; ++k) rebuilt += w[k] * bell[k] * bell[k].adjoint();
    if (max_abs_diff(rebuilt, rho.matrix()) > 1e-10) return std::nullopt;
    return w;
}

Recipe compile_density(Scheme s, const DensityMatrix2Q& rho, const PhysicalConfig& cfg) {
    switch (s) {
        case Scheme::I: return compile_scheme1(rho, cfg);
        case Scheme::II: return compile_scheme2(rho, cfg);
        case Scheme::III:
            throw Error(ErrorCode::UnsupportedTarget, "Scheme III takes a family target, not a raw matrix");
        case Scheme::IV:
            if (auto w = bell_diagonal_weights(rho)) return compile_scheme4_bell_diagonal((*w)[0], (*w)[1], (*w)[2], (*w)[3], cfg);
            throw Error(ErrorCode::UnsupportedTarget, "Scheme IV compiles Bell-diagonal targets only");
    }
    throw Error(ErrorCode::InvalidArgument, "unknown scheme");
}

Recipe compile_family(Scheme s, const FamilyParams& target, const PhysicalConfig& cfg) {
    if (s == Scheme::III) return compile_scheme3(target, cfg);
    if (s == Scheme::IV) {
        if (auto* b = std::get_if<BellDiagonalParams>(&target)) {
            const auto& l = b->lambdas;
            return compile_scheme4_bell_diagonal(l[0], l[1], l[2], l[3], cfg);
        }
    }
    return compile_density(s, family_density(target), cfg);
}

PureState2Q branch_seed_state(const Branch& b) {
    struct Visitor {
        PureState2Q operator()(const SpdcSourceSpec& s) const { return spdc_pair_state(s); }
        PureState2Q operator()(const PureState2Q& p) const { return p; }
        PureState2Q operator()(const PumpSplit& p) const { return p.pair_state(); }
    };
    return std::visit(Visitor{}, b.seed);
}

DensityMatrix2Q simulate_branch(const Branch& b, const PhysicalConfig& cfg, SimulationMode mode,
                                int grid_n) {
    PureState2Q seed = branch_seed_state(b);
    if (mode == SimulationMode::Analytic) return simulate_chain_analytic(seed, b.stages, cfg.spectral);
    FrequencyGrid grid = FrequencyGrid::uniform(cfg.spectral, grid_n);
    return simulate_chain(seed, b.stages, cfg.spectral, grid);
}

DensityMatrix2Q simulate_recipe(const Recipe& r, SimulationMode mode, int grid_n) {
    if (r.branches.empty()) throw Error(ErrorCode::BadWeights, "recipe has no branches");
    double total = 0.0;
    for (const auto& b : r.branches) {
        if (!(b.weight >= 0.0)) throw Error(ErrorCode::BadWeights, "branch weight must be nonnegative");
        total += b.weight;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw Error(ErrorCode::BadWeights, "branch weights sum to " + std::to_string(total));
    }
    for (std::size_t i = 0; i < r.branches.size(); ++i)
        for (std::size_t j = i + 1; j < r.branches.size(); ++j)
            if (r.branches[i].timing_tag == r.branches[j].timing_tag &&
                !same_branch_content(r.branches[i], r.branches[j])) {
                throw Error(ErrorCode::TimingCollision,
                            "branches " + std::to_string(i) + " and " + std::to_string(j) +
                                " share timing tag " + std::to_string(r.branches[i].timing_tag));
            }
    Mat4 rho = Mat4::Zero();
    for (const auto& b : r.branches) rho += b.weight * simulate_branch(b, r.config, mode, grid_n).matrix();
    rho /= total;
    return validate_density(0.5 * (rho + rho.adjoint()));
}

double verify_hybrid(const HybridDecomposition& h, const DensityMatrix2Q& target,
                     SimulationMode mode, int grid_n) {
    if (!(h.p >= 0.0 && h.p <= 1.0)) throw Error(ErrorCode::OutOfRange, "hybrid weight p must lie in [0, 1]");
    Mat4 pure = DensityMatrix2Q::projector(h.pure_part).matrix();
    Mat4 mixed = h.p > 0 ? simulate_recipe(h.sigma_recipe, mode, grid_n).matrix() : Mat4::Zero();
    Mat4 rho = h.p * mixed + (1.0 - h.p) * pure;
    return fidelity(validate_density(0.5 * (rho + rho.adjoint())), target);
}

ResourceCount table_cost(Scheme s) {
    switch (s) {
        case Scheme::I: return {8, 38, 15};
        case Scheme::II: return {2, 48, 15};
        case Scheme::III: return {2, 10, 10};
        case Scheme::IV: return {4, 26, 12};
    }
    return {};
}

ResourceCount recipe_cost(const Recipe& r) {
    ResourceCount rc;
    rc.controllable_params = table_cost(r.scheme).controllable_params;
    int sets = r.scheme == Scheme::II ? 1 : static_cast<int>(r.branches.size());
    rc.nlc = 2 * sets;
    for (std::size_t i = 0; i < r.branches.size(); ++i) {
        const Branch& b = r.branches[i];
        if (std::holds_alternative<SpdcSourceSpec>(b.seed)) {
            rc.other_optics += 2;  // pump HWP + QWP setting theta, phi
        } else if (std::holds_alternative<PumpSplit>(b.seed)) {
            // Two pump preparations, variable splitter, lower-arm HWP, recombiner.
            rc.other_optics += 4 + 1 + 1 + 1;
        }
        for (const auto& st : b.stages) {
            rc.other_optics += std::holds_alternative<LocalUnitaryStage>(st) ? 3 : 1;
        }
        if (i > 0) {
            rc.other_optics += 1;  // attenuator or cascade beam splitter
        }
    }
    return rc;
}

}  // namespace qforge
