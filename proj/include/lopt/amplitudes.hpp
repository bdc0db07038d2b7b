#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>

#include "lopt/fock_basis.hpp"
#include "lopt/interferometer.hpp"
#include "lopt/permanent.hpp"

namespace lopt {

/// Measurement state chi on the N-1 detector modes, restricted to a single
/// total-photon-number sector D.
class ProjectionState {
  public:
    /// Amplitudes over the lexicographic-descending occupation basis of
    /// (modes, total) — must be normalized.
    ProjectionState(int modes, int total, Eigen::VectorXcd amplitudes)
        : modes_(modes), total_(total), basis_(enumerate_occupations(modes, total)),
          amps_(std::move(amplitudes)) {
        if (static_cast<std::size_t>(amps_.size()) != basis_.size())
            throw std::invalid_argument("ProjectionState: amplitude count mismatch");
        if (std::abs(amps_.squaredNorm() - 1.0) > 1e-12)
            throw std::invalid_argument("ProjectionState: amplitudes not normalized");
    }

    /// Detector outcome: a single Fock pattern n_bar.
    static ProjectionState fock(const OccupationVector& nbar) {
        const auto basis = enumerate_occupations(nbar.modes(), nbar.total());
        Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis.size());
        amps(static_cast<Eigen::Index>(basis.index_of(nbar))) = 1.0;
        return ProjectionState(nbar.modes(), nbar.total(), std::move(amps));
    }

    static ProjectionState vacuum(int modes) {
        return fock(OccupationVector(std::vector<int>(modes, 0)));
    }

    int modes() const { return modes_; }
    int total() const { return total_; }
    const OccupationBasis& basis() const { return basis_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }

    Complex amplitude(const OccupationVector& nbar) const {
        if (!basis_.contains(nbar)) return Complex(0, 0);
        return amps_(static_cast<Eigen::Index>(basis_.index_of(nbar)));
    }

    /// Weighted vector with components chi_nbar * (nbar!)^{-1/2}; this is the
    /// vector the Gamma matrices act on.
    Eigen::VectorXcd weighted_vector() const {
        Eigen::VectorXcd w(amps_.size());
        for (Eigen::Index k = 0; k < amps_.size(); ++k)
            w(k) = amps_(k) / std::sqrt(static_cast<double>(basis_.at(k).factorial_weight()));
        return w;
    }

  private:
    int modes_;
    int total_;
    OccupationBasis basis_;
    Eigen::VectorXcd amps_;
};

/// Haar-like random chi: independent complex Gaussian amplitudes over the
/// (modes, total) sector, normalized.
inline ProjectionState random_projection_state(int modes, int total, Rng& rng) {
    const auto basis = enumerate_occupations(modes, total);
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index k = 0; k < amps.size(); ++k)
        amps(k) = Complex(rng.next_gaussian(), rng.next_gaussian());
    amps /= amps.norm();
    return ProjectionState(modes, total, std::move(amps));
}

/// Lambda[n, s]: column i of lambda repeated s_i times, row j repeated n_j
/// times. Square of dimension sum(s); requires sum(n) == sum(s).
inline Matrix repeated_matrix(const Interferometer& itf, const OccupationVector& n,
                              const InputPattern& s) {
    const int N = itf.dim();
    if (n.modes() != N || s.modes() != N)
        throw std::invalid_argument("repeated_matrix: length mismatch with interferometer");
    const int tot = s.weight();
    if (n.total() != tot) throw std::invalid_argument("repeated_matrix: photon total mismatch");
    Matrix out(tot, tot);
    int row = 0;
    for (int j = 0; j < N; ++j)
        for (int rep = 0; rep < n.counts[j]; ++rep, ++row) {
            int col = 0;
            for (int i = 0; i < N; ++i)
                if (s.bits[i]) out(row, col++) = itf.lambda()(j, i);
        }
    return out;
}

/// S_{s,n} = per(Lambda[n,s]) when totals match, exactly 0 otherwise.
inline Complex amplitude_S(const Interferometer& itf, const InputPattern& s,
                           const OccupationVector& n) {
    if (n.total() != s.weight()) return Complex(0, 0);
    return permanent_ryser(repeated_matrix(itf, n, s));
}

/// T^{(n1)}_{s,chi} = sum_nbar chi*_nbar (n1! nbar!)^{-1/2} S_{s,(n1,nbar)}.
/// Vanishes identically unless sum(s) = D + n1.
inline Complex amplitude_T(const Interferometer& itf, const InputPattern& s,
                           const ProjectionState& chi, int n1) {
    const int N = itf.dim();
    if (chi.modes() != N - 1)
        throw std::invalid_argument("amplitude_T: chi must live on N-1 detector modes");
    if (n1 < 0) throw std::invalid_argument("amplitude_T: n1 must be >= 0");
    if (s.weight() != chi.total() + n1) return Complex(0, 0);
    const double n1f = static_cast<double>(factorial(n1));
    Complex t(0, 0);
    for (std::size_t k = 0; k < chi.basis().size(); ++k) {
        const OccupationVector& nbar = chi.basis().at(k);
        const Complex c = chi.amplitudes()(static_cast<Eigen::Index>(k));
        if (c == Complex(0, 0)) continue;
        std::vector<int> full(static_cast<std::size_t>(N));
        full[0] = n1;
        for (int j = 0; j < N - 1; ++j) full[static_cast<std::size_t>(j) + 1] = nbar.counts[j];
        const OccupationVector n(full);
        const double w = 1.0 / std::sqrt(n1f * static_cast<double>(nbar.factorial_weight()));
        t += std::conj(c) * w * amplitude_S(itf, s, n);
    }
    return t;
}

/// Gamma^{(n1)} for a fixed detected total D: rows indexed by input patterns
/// s with sum(s) = D + n1, columns by detector occupations nbar with
/// total D; entry(s, nbar) = conj(per(Lambda[(n1,nbar), s])).
struct GammaMatrix {
    int n1 = 0;
    int total_detected = 0;
    PatternBasis rows;
    OccupationBasis cols;
    Matrix entries;  // rows.size() x cols.size()
};

inline GammaMatrix build_gamma(const Interferometer& itf, int total_detected, int n1) {
    const int N = itf.dim();
    if (n1 < 0 || n1 > 2) throw std::invalid_argument("build_gamma: n1 must be 0, 1, or 2");
    if (total_detected < 0) throw std::invalid_argument("build_gamma: negative detected total");
    GammaMatrix g;
    g.n1 = n1;
    g.total_detected = total_detected;
    g.rows = enumerate_patterns(N, total_detected + n1);  // empty when D+n1 > N
    g.cols = enumerate_occupations(N - 1, total_detected);
    g.entries = Matrix(g.rows.size(), g.cols.size());
    for (std::size_t a = 0; a < g.rows.size(); ++a) {
        const InputPattern& s = g.rows.at(a);
        for (std::size_t b = 0; b < g.cols.size(); ++b) {
            const OccupationVector& nbar = g.cols.at(b);
            std::vector<int> full(static_cast<std::size_t>(N));
            full[0] = n1;
            for (int j = 0; j < N - 1; ++j) full[static_cast<std::size_t>(j) + 1] = nbar.counts[j];
            g.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                std::conj(amplitude_S(itf, s, OccupationVector(full)));
        }
    }
    return g;
}

}  // namespace lopt
