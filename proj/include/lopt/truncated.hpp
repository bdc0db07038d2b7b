#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "lopt/fock_basis.hpp"
#include "lopt/permanent.hpp"

namespace lopt {

/// Dimensionless-quadrature eigenfunction value <Q|n>, computed by the
/// stable normalized-Hermite recurrence.
inline double quadrature_wavefunction(int n, double q) {
    if (n < 0) throw std::invalid_argument("quadrature_wavefunction: n must be >= 0");
    const double psi0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * q * q);
    if (n == 0) return psi0;
    double prev = psi0;
    double cur = std::sqrt(2.0) * q * psi0;
    for (int k = 2; k <= n; ++k) {
        const double next =
            std::sqrt(2.0 / k) * q * cur - std::sqrt(static_cast<double>(k - 1) / k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Few-mode pure state in a truncated Fock space, at most `cutoff` photons
/// per mode. Dense amplitude tensor, mode 0 fastest.
class TruncatedState {
  public:
    TruncatedState(int modes, int cutoff)
        : modes_(modes), cutoff_(cutoff), amps_(Eigen::VectorXcd::Zero(dim())) {
        if (modes < 1 || modes > 6) throw std::invalid_argument("TruncatedState: 1..6 modes");
        if (cutoff < 1 || cutoff > 30) throw std::invalid_argument("TruncatedState: bad cutoff");
    }

    static TruncatedState vacuum(int modes, int cutoff) {
        TruncatedState s(modes, cutoff);
        s.amps_(0) = 1.0;
        return s;
    }

    /// (gamma |0> + beta |1>) in the given mode of an existing state.
    void set_mode_qubit(int mode, Complex gamma, Complex beta) {
        check_mode(mode);
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim());
        for (Eigen::Index i = 0; i < amps_.size(); ++i) {
            if (amps_(i) == Complex(0, 0)) continue;
            if (level_of(i, mode) != 0)
                throw std::logic_error("set_mode_qubit: mode already populated");
            next(i) += gamma * amps_(i);
            next(with_level(i, mode, 1)) += beta * amps_(i);
        }
        amps_ = std::move(next);
    }

    int modes() const { return modes_; }
    int cutoff() const { return cutoff_; }

    Eigen::Index dim() const {
        Eigen::Index d = 1;
        for (int m = 0; m < modes_; ++m) d *= cutoff_ + 1;
        return d;
    }

    Complex amplitude(const std::vector<int>& occ) const {
        if (static_cast<int>(occ.size()) != modes_)
            throw std::invalid_argument("amplitude: occupation length mismatch");
        Eigen::Index idx = 0, stride = 1;
        for (int m = 0; m < modes_; ++m) {
            if (occ[m] < 0 || occ[m] > cutoff_) return Complex(0, 0);
            idx += occ[m] * stride;
            stride *= cutoff_ + 1;
        }
        return amps_(idx);
    }

    double norm2() const { return amps_.squaredNorm(); }

    /// Norm lost to cutoff clipping so far (beam-splitter overflow).
    double clipped_norm2() const { return clipped_; }

    /// Population of the top two levels of one mode; cheap truncation-tail
    /// estimate after a displacement.
    double tail_norm2(int mode) const {
        check_mode(mode);
        double t = 0.0;
        for (Eigen::Index i = 0; i < amps_.size(); ++i)
            if (level_of(i, mode) >= cutoff_ - 1) t += std::norm(amps_(i));
        return t;
    }

    /// exp(alpha a^dag - alpha* a) on one mode, via the exponential of the
    /// truncated generator (exactly unitary on the truncated space).
    void displace(int mode, Complex alpha) {
        check_mode(mode);
        const int d = cutoff_ + 1;
        Matrix gen = Matrix::Zero(d, d);
        for (int n = 0; n < d - 1; ++n) {
            const double s = std::sqrt(static_cast<double>(n + 1));
            gen(n + 1, n) = alpha * s;              // a^dag
            gen(n, n + 1) = -std::conj(alpha) * s;  // -alpha* a
        }
        apply_single_mode(mode, gen.exp());
    }

    /// Beam splitter on (mode_a, mode_b): a^dag -> u(0,0) a^dag + u(1,0) b^dag,
    /// b^dag -> u(0,1) a^dag + u(1,1) b^dag, expanded binomially per sector.
    void apply_beam_splitter(int mode_a, int mode_b, const Matrix& u) {
        check_mode(mode_a);
        check_mode(mode_b);
        if (mode_a == mode_b) throw std::invalid_argument("apply_beam_splitter: same mode");
        if (u.rows() != 2 || u.cols() != 2 || unitarity_deviation(u) > 1e-12)
            throw std::invalid_argument("apply_beam_splitter: u must be 2x2 unitary");
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim());
        for (Eigen::Index i = 0; i < amps_.size(); ++i) {
            const Complex a = amps_(i);
            if (a == Complex(0, 0)) continue;
            const int m = level_of(i, mode_a);
            const int n = level_of(i, mode_b);
            // tgamma instead of the exact integer factorial: sector totals
            // m + n can exceed 20 at high cutoffs.
            const double base = std::sqrt(std::tgamma(m + 1.0) * std::tgamma(n + 1.0));
            for (int j = 0; j <= m; ++j) {
                for (int k = 0; k <= n; ++k) {
                    const int na = j + k;
                    const int nb = m + n - j - k;
                    const Complex coeff = static_cast<double>(binomial(m, j) * binomial(n, k)) *
                                          pow_int(u(0, 0), j) * pow_int(u(1, 0), m - j) *
                                          pow_int(u(0, 1), k) * pow_int(u(1, 1), n - k);
                    if (coeff == Complex(0, 0)) continue;
                    const Complex amp =
                        a * coeff * std::sqrt(std::tgamma(na + 1.0) * std::tgamma(nb + 1.0)) / base;
                    if (na > cutoff_ || nb > cutoff_) {
                        clipped_ += std::norm(amp);
                        continue;
                    }
                    next(with_level(with_level(i, mode_a, na), mode_b, nb)) += amp;
                }
            }
        }
        amps_ = std::move(next);
    }

    /// Projects one mode onto <n|; returns the unnormalized conditional
    /// state on the remaining modes. Success probability is its norm2().
    TruncatedState project_fock(int mode, int n) const {
        check_mode(mode);
        if (n < 0 || n > cutoff_) throw std::invalid_argument("project_fock: bad photon number");
        TruncatedState out(std::max(modes_ - 1, 1), cutoff_);
        out.amps_.setZero();
        for (Eigen::Index i = 0; i < amps_.size(); ++i) {
            if (amps_(i) == Complex(0, 0)) continue;
            if (level_of(i, mode) != n) continue;
            out.amps_(drop_mode(i, mode)) += amps_(i);
        }
        out.clipped_ = clipped_;
        return out;
    }

    /// Projects one mode onto the quadrature functional <Q| (delta-normalized).
    TruncatedState project_quadrature(int mode, double q) const {
        check_mode(mode);
        TruncatedState out(std::max(modes_ - 1, 1), cutoff_);
        out.amps_.setZero();
        for (Eigen::Index i = 0; i < amps_.size(); ++i) {
            if (amps_(i) == Complex(0, 0)) continue;
            out.amps_(drop_mode(i, mode)) +=
                quadrature_wavefunction(level_of(i, mode), q) * amps_(i);
        }
        out.clipped_ = clipped_;
        return out;
    }

  private:
    static Complex pow_int(Complex b, int e) {
        Complex r(1, 0);
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }

    void check_mode(int mode) const {
        if (mode < 0 || mode >= modes_) throw std::out_of_range("TruncatedState: bad mode index");
    }

    int level_of(Eigen::Index idx, int mode) const {
        Eigen::Index stride = 1;
        for (int m = 0; m < mode; ++m) stride *= cutoff_ + 1;
        return static_cast<int>((idx / stride) % (cutoff_ + 1));
    }

    Eigen::Index with_level(Eigen::Index idx, int mode, int level) const {
        Eigen::Index stride = 1;
        for (int m = 0; m < mode; ++m) stride *= cutoff_ + 1;
        return idx + (level - level_of(idx, mode)) * stride;
    }

    Eigen::Index drop_mode(Eigen::Index idx, int mode) const {
        Eigen::Index lo_stride = 1;
        for (int m = 0; m < mode; ++m) lo_stride *= cutoff_ + 1;
        const Eigen::Index lo = idx % lo_stride;
        const Eigen::Index hi = idx / (lo_stride * (cutoff_ + 1));
        return lo + hi * lo_stride;
    }

    void apply_single_mode(int mode, const Matrix& op) {
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim());
        for (Eigen::Index i = 0; i < amps_.size(); ++i) {
            if (amps_(i) == Complex(0, 0)) continue;
            const int n = level_of(i, mode);
            for (int m = 0; m <= cutoff_; ++m) {
                const Complex c = op(m, n);
                if (c != Complex(0, 0)) next(with_level(i, mode, m)) += c * amps_(i);
            }
        }
        amps_ = std::move(next);
    }

    int modes_;
    int cutoff_;
    Eigen::VectorXcd amps_;
    double clipped_ = 0.0;
};

}  // namespace lopt
