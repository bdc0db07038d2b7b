#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "lopt/interferometer.hpp"
#include "lopt/truncated.hpp"

namespace lopt {

/// Inefficient single-rail qubit: rho = E |phi><phi| + (1-E) |0><0| with
/// |phi> = gamma |0> + beta |1>.
struct SingleRailQubit {
    Complex gamma{1, 0};
    Complex beta{0, 0};
    double efficiency = 1.0;  // E

    SingleRailQubit() = default;
    SingleRailQubit(Complex g, Complex b, double e) : gamma(g), beta(b), efficiency(e) {
        if (std::abs(std::norm(g) + std::norm(b) - 1.0) > 1e-12)
            throw std::invalid_argument("SingleRailQubit: |gamma|^2 + |beta|^2 must be 1");
        if (!(e >= 0.0 && e <= 1.0))
            throw std::invalid_argument("SingleRailQubit: E must be in [0,1]");
    }

    static SingleRailQubit photon(double e) { return SingleRailQubit(0, 1, e); }
    static SingleRailQubit vacuum() { return SingleRailQubit(1, 0, 1.0); }
};

/// Generalized efficiency |beta|^2 E / (1 - |gamma|^2 E); 0 when the
/// one-photon content vanishes.
inline double generalized_efficiency(const SingleRailQubit& q) {
    const double num = std::norm(q.beta) * q.efficiency;
    if (num <= 0.0) return 0.0;
    // 1 - |gamma|^2 E rewritten via |gamma|^2 + |beta|^2 = 1; exact at E = 1
    // and at gamma = 0 where the direct form picks up rounding noise.
    return num / (num + (1.0 - q.efficiency));
}

/// Unnormalized density operator on the {|0>, |1>} sector.
struct QubitDensity {
    double rho00 = 0.0;
    double rho11 = 0.0;
    Complex rho01{0, 0};

    double trace() const { return rho00 + rho11; }

    void add_pure(Complex vac, Complex one, double weight = 1.0) {
        rho00 += weight * std::norm(vac);
        rho11 += weight * std::norm(one);
        rho01 += weight * vac * std::conj(one);
    }
};

/// Generalized efficiency of an arbitrary vacuum/one-photon density matrix:
/// writing rho = E |phi><phi| + (1-E)|0><0| gives
/// calE = rho11 / (1 - |rho01|^2 / rho11) after normalization.
inline double generalized_efficiency(const QubitDensity& d) {
    const double tr = d.trace();
    if (!(tr > 0.0) || d.rho11 <= 0.0) return 0.0;
    const double r11 = d.rho11 / tr;
    const double cross = std::norm(d.rho01 / tr) / r11;
    return r11 / (1.0 - cross);
}

/// <Q|0> and <Q|1> in the dimensionless-quadrature convention. Only the
/// ratio <Q|1>/<Q|0> = sqrt(2) Q enters the Table conditions.
inline double quadrature_overlap(double q, int n) {
    if (n != 0 && n != 1) throw std::invalid_argument("quadrature_overlap: n must be 0 or 1");
    return quadrature_wavefunction(n, q);
}

/// Scheme knobs; which fields matter depends on the scheme id.
struct SchemeParams {
    int id = 1;          // 1..4
    Complex t{1, 0};     // first beam splitter transmission
    Complex r{0, 0};     // first beam splitter reflectivity
    Complex t2{1, 0};    // second beam splitter (scheme 4)
    Complex r2{0, 0};
    double q = 0.0;      // homodyne result (scheme 1)
    Complex alpha{0, 0}; // coherent amplitude (scheme 2)
};

/// The 2x2 mode map used by the schemes: first input column (r, t),
/// second column (-t*, r*). This is beam_splitter(r, -t*) in the
/// interferometer module's convention; it is the phase choice that
/// reproduces the four closed-form rows below, so the oracle and the
/// closed forms agree by construction.
inline Matrix scheme_bs_matrix(Complex t, Complex r) {
    return beam_splitter(r, -std::conj(t)).lambda();
}

struct PureBranchAmplitudes {
    Complex vac{0, 0};
    Complex one{0, 0};
};

/// Closed-form unnormalized output amplitudes for a pure branch:
///   1: (g <Q|0> + b r <Q|1>)|0> + b t <Q|0>|1>
///   2: (b r - alpha g t*)|0> + b alpha (|r|^2 - |t|^2)|1>
///   3: (b1 g2 r - g1 b2 t*)|0> + b1 b2 (|r|^2 - |t|^2)|1>
///   4: r2 (b1 g2 t + g1 b2 r*)|0> + 2 r* t r2 t2 b1 b2 |1>
/// Scheme 2 is the first-order-in-alpha limit object; the truncated oracle
/// quantifies its O(alpha^2) residue.
inline PureBranchAmplitudes scheme_closed_form(const SchemeParams& p, Complex g1, Complex b1,
                                               Complex g2 = Complex(1, 0),
                                               Complex b2 = Complex(0, 0)) {
    PureBranchAmplitudes out;
    const double rr = std::norm(p.r);
    const double tt = std::norm(p.t);
    switch (p.id) {
        case 1:
            out.vac = g1 * quadrature_overlap(p.q, 0) + b1 * p.r * quadrature_overlap(p.q, 1);
            out.one = b1 * p.t * quadrature_overlap(p.q, 0);
            break;
        case 2:
            out.vac = b1 * p.r - p.alpha * g1 * std::conj(p.t);
            out.one = b1 * p.alpha * (rr - tt);
            break;
        case 3:
            out.vac = b1 * g2 * p.r - g1 * b2 * std::conj(p.t);
            out.one = b1 * b2 * (rr - tt);
            break;
        case 4:
            out.vac = p.r2 * (b1 * g2 * p.t + g1 * b2 * std::conj(p.r));
            out.one = 2.0 * std::conj(p.r) * p.t * p.r2 * p.t2 * b1 * b2;
            break;
        default:
            throw std::invalid_argument("scheme_closed_form: id must be 1..4");
    }
    return out;
}

/// Residual of the Table single-photon condition; zero iff the condition
/// holds (equivalently, the pure-branch vacuum amplitude vanishes).
inline double scheme_condition_residual(const SchemeParams& p, Complex g1, Complex b1,
                                        Complex g2 = Complex(1, 0),
                                        Complex b2 = Complex(0, 0)) {
    PureBranchAmplitudes a = scheme_closed_form(p, g1, b1, g2, b2);
    return std::abs(a.vac);
}

/// Beam-splitter choice with real positive t satisfying the scheme-2
/// condition r / t* = gamma alpha / beta.
inline void scheme2_condition_bs(Complex gamma, Complex beta, Complex alpha, Complex& t,
                                 Complex& r) {
    if (beta == Complex(0, 0)) throw std::invalid_argument("scheme2_condition_bs: beta = 0");
    const Complex ratio = gamma * alpha / beta;
    const double tv = 1.0 / std::sqrt(1.0 + std::norm(ratio));
    t = Complex(tv, 0);
    r = ratio * tv;
}

/// Same for scheme 3: r / t* = gamma1 beta2 / (beta1 gamma2).
inline void scheme3_condition_bs(Complex g1, Complex b1, Complex g2, Complex b2, Complex& t,
                                 Complex& r) {
    if (b1 == Complex(0, 0) || g2 == Complex(0, 0))
        throw std::invalid_argument("scheme3_condition_bs: degenerate inputs");
    const Complex ratio = g1 * b2 / (b1 * g2);
    const double tv = 1.0 / std::sqrt(1.0 + std::norm(ratio));
    t = Complex(tv, 0);
    r = ratio * tv;
}

/// Scheme 4 first splitter at condition t / r* = -gamma1 beta2 / (beta1 gamma2),
/// with real positive r.
inline void scheme4_condition_bs(Complex g1, Complex b1, Complex g2, Complex b2, Complex& t,
                                 Complex& r) {
    if (b1 == Complex(0, 0) || g2 == Complex(0, 0))
        throw std::invalid_argument("scheme4_condition_bs: degenerate inputs");
    const Complex ratio = -g1 * b2 / (b1 * g2);
    const double rv = 1.0 / std::sqrt(1.0 + std::norm(ratio));
    r = Complex(rv, 0);
    t = ratio * rv;
}

struct SchemeResult {
    Complex vac_amp{0, 0};  // all-coherent-branch unnormalized amplitudes
    Complex one_amp{0, 0};
    double success_prob = 0.0;
    double output_efficiency = 0.0;  // generalized efficiency of the output
    bool condition_met = false;
    QubitDensity density;
};

namespace detail {

struct Branch {
    Complex gamma;
    Complex beta;
    double weight;
};

inline std::vector<Branch> branches_of(const SingleRailQubit& q) {
    std::vector<Branch> b;
    if (q.efficiency > 0.0) b.push_back({q.gamma, q.beta, q.efficiency});
    if (q.efficiency < 1.0) b.push_back({Complex(1, 0), Complex(0, 0), 1.0 - q.efficiency});
    return b;
}

}  // namespace detail

/// Evaluates a scheme on (possibly inefficient) inputs: each input's
/// vacuum admixture is propagated as a separate pure branch, the branch
/// outputs are mixed, and the result is conditioned on the scheme's
/// detection pattern. Schemes 1 and 2 use only the first qubit.
inline SchemeResult scheme_output(const SchemeParams& p, const SingleRailQubit& in1,
                                  const SingleRailQubit& in2 = SingleRailQubit::vacuum()) {
    const bool two_qubits = (p.id == 3 || p.id == 4);
    SchemeResult res;
    for (const auto& b1 : detail::branches_of(in1)) {
        if (!two_qubits) {
            const auto a = scheme_closed_form(p, b1.gamma, b1.beta);
            res.density.add_pure(a.vac, a.one, b1.weight);
        } else {
            for (const auto& b2 : detail::branches_of(in2)) {
                const auto a = scheme_closed_form(p, b1.gamma, b1.beta, b2.gamma, b2.beta);
                res.density.add_pure(a.vac, a.one, b1.weight * b2.weight);
            }
        }
    }
    const auto lead = scheme_closed_form(p, in1.gamma, in1.beta, in2.gamma, in2.beta);
    res.vac_amp = lead.vac;
    res.one_amp = lead.one;
    res.success_prob = res.density.trace();
    res.output_efficiency = generalized_efficiency(res.density);
    const double scale = std::max({std::abs(lead.one), std::abs(lead.vac), 1e-300});
    res.condition_met = std::abs(lead.vac) <= 1e-10 * scale;
    return res;
}

/// Exact truncated-Fock simulation of one pure branch of a scheme;
/// independent oracle for the closed forms above. Returns unnormalized
/// vacuum and one-photon amplitudes of the conditioned output mode.
inline PureBranchAmplitudes scheme_oracle_branch(const SchemeParams& p, Complex g1, Complex b1,
                                                 Complex g2, Complex b2, int cutoff,
                                                 double* tail_norm = nullptr) {
    double tail = 0.0;
    PureBranchAmplitudes out;
    switch (p.id) {
        case 1: {
            TruncatedState st = TruncatedState::vacuum(2, cutoff);
            st.set_mode_qubit(0, g1, b1);
            st.apply_beam_splitter(0, 1, scheme_bs_matrix(p.t, p.r));
            const TruncatedState cond = st.project_quadrature(0, p.q);
            out.vac = cond.amplitude({0});
            out.one = cond.amplitude({1});
            tail = cond.clipped_norm2();
            break;
        }
        case 2: {
            TruncatedState st = TruncatedState::vacuum(2, cutoff);
            st.set_mode_qubit(0, g1, b1);
            st.displace(1, p.alpha);
            tail = st.tail_norm2(1);
            st.apply_beam_splitter(0, 1, scheme_bs_matrix(p.t, p.r));
            const TruncatedState cond = st.project_fock(0, 1);
            out.vac = cond.amplitude({0});
            out.one = cond.amplitude({1});
            tail += cond.clipped_norm2();
            break;
        }
        case 3: {
            TruncatedState st = TruncatedState::vacuum(2, cutoff);
            st.set_mode_qubit(0, g1, b1);
            st.set_mode_qubit(1, g2, b2);
            st.apply_beam_splitter(0, 1, scheme_bs_matrix(p.t, p.r));
            const TruncatedState cond = st.project_fock(0, 1);
            out.vac = cond.amplitude({0});
            out.one = cond.amplitude({1});
            break;
        }
        case 4: {
            TruncatedState st = TruncatedState::vacuum(3, cutoff);
            st.set_mode_qubit(0, g1, b1);
            st.set_mode_qubit(1, g2, b2);
            st.apply_beam_splitter(0, 1, scheme_bs_matrix(p.t, p.r));
            // Second splitter: mode 1 -> r2 (detected leg) + t2 (output leg).
            st.apply_beam_splitter(1, 2, scheme_bs_matrix(p.t2, p.r2));
            const TruncatedState no_photon = st.project_fock(0, 0);
            const TruncatedState cond = no_photon.project_fock(0, 1);
            out.vac = cond.amplitude({0});
            out.one = cond.amplitude({1});
            break;
        }
        default:
            throw std::invalid_argument("scheme_oracle_branch: id must be 1..4");
    }
    if (tail_norm) *tail_norm = tail;
    return out;
}

/// Oracle evaluation of a full (mixed-input) scheme, mirroring scheme_output.
inline SchemeResult scheme_oracle(const SchemeParams& p, const SingleRailQubit& in1,
                                  const SingleRailQubit& in2 = SingleRailQubit::vacuum(),
                                  int cutoff = 8) {
    const bool two_qubits = (p.id == 3 || p.id == 4);
    SchemeResult res;
    for (const auto& b1 : detail::branches_of(in1)) {
        if (!two_qubits) {
            const auto a = scheme_oracle_branch(p, b1.gamma, b1.beta, 1, 0, cutoff);
            res.density.add_pure(a.vac, a.one, b1.weight);
        } else {
            for (const auto& b2 : detail::branches_of(in2)) {
                const auto a =
                    scheme_oracle_branch(p, b1.gamma, b1.beta, b2.gamma, b2.beta, cutoff);
                res.density.add_pure(a.vac, a.one, b1.weight * b2.weight);
            }
        }
    }
    const auto lead = scheme_oracle_branch(p, in1.gamma, in1.beta, in2.gamma, in2.beta, cutoff);
    res.vac_amp = lead.vac;
    res.one_amp = lead.one;
    res.success_prob = res.density.trace();
    res.output_efficiency = generalized_efficiency(res.density);
    const double scale = std::max({std::abs(lead.one), std::abs(lead.vac), 1e-300});
    res.condition_met = std::abs(lead.vac) <= 1e-10 * scale;
    return res;
}

}  // namespace lopt
