#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "lopt/permanent.hpp"
#include "lopt/rng.hpp"

namespace lopt {

inline constexpr double kUnitarityTol = 1e-12;

/// Max-entry deviation of m†m from the identity.
inline double unitarity_deviation(const Matrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    const Matrix g = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    return g.cwiseAbs().maxCoeff();
}

/// Lossless N-mode transformation: a unitary mode map acting on creation
/// operators as a_in_i^dag -> sum_k lambda(k,i) a_out_k^dag.
class Interferometer {
  public:
    static Interferometer validate(const Matrix& lambda) {
        if (lambda.rows() != lambda.cols())
            throw std::invalid_argument("Interferometer: matrix not square");
        const double dev = unitarity_deviation(lambda);
        if (!(dev <= kUnitarityTol))
            throw std::invalid_argument("Interferometer: not unitary, max |L^dag L - I| = " +
                                        std::to_string(dev));
        return Interferometer(lambda);
    }

    int dim() const { return static_cast<int>(lambda_.rows()); }
    const Matrix& lambda() const { return lambda_; }

  private:
    explicit Interferometer(Matrix m) : lambda_(std::move(m)) {}
    Matrix lambda_;
};

/// Haar-uniform n x n unitary: complex-Gaussian fill, QR, then each column
/// of Q multiplied by the phase of the matching diagonal entry of R so R's
/// diagonal becomes positive. Without the phase fix the result is not Haar.
inline Interferometer haar_random(int n, const RandomSeed& seed) {
    if (n < 1) throw std::invalid_argument("haar_random: n must be >= 1");
    Rng rng(derive_seed(seed));
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0) ? d / a : Complex(1, 0);
    }
    return Interferometer::validate(q);
}

inline Interferometer haar_random(int n, std::uint64_t raw_seed) {
    return haar_random(n, RandomSeed{raw_seed, 0});
}

/// 2-mode unitary [[t, r], [-conj(r), conj(t)]]; requires |t|^2+|r|^2 = 1.
inline Interferometer beam_splitter(Complex t, Complex r) {
    const double norm = std::norm(t) + std::norm(r);
    if (std::abs(norm - 1.0) > kUnitarityTol)
        throw std::invalid_argument("beam_splitter: |t|^2 + |r|^2 must be 1");
    Matrix m(2, 2);
    m(0, 0) = t;
    m(0, 1) = r;
    m(1, 0) = -std::conj(r);
    m(1, 1) = std::conj(t);
    return Interferometer::validate(m);
}

/// Inner block placed on the listed modes, identity elsewhere.
inline Interferometer embed(const Interferometer& inner, int total_modes,
                            const std::vector<int>& modes) {
    const int k = inner.dim();
    if (static_cast<int>(modes.size()) != k)
        throw std::invalid_argument("embed: mode list size must match inner dimension");
    std::vector<bool> seen(total_modes, false);
    for (int m : modes) {
        if (m < 0 || m >= total_modes) throw std::out_of_range("embed: mode index out of range");
        if (seen[m]) throw std::invalid_argument("embed: duplicate mode index");
        seen[m] = true;
    }
    Matrix out = Matrix::Identity(total_modes, total_modes);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) out(modes[a], modes[b]) = inner.lambda()(a, b);
    return Interferometer::validate(out);
}

/// first, then second (matrix product second * first).
inline Interferometer compose(const Interferometer& second, const Interferometer& first) {
    if (second.dim() != first.dim()) throw std::invalid_argument("compose: dimension mismatch");
    return Interferometer::validate(second.lambda() * first.lambda());
}

/// Unitary whose first row is conj(phi), completed by a Householder
/// reflection. Maps the mode carrying phi onto the first output mode.
inline Matrix householder_completion(const Eigen::VectorXcd& phi) {
    const int n = static_cast<int>(phi.size());
    double norm2 = phi.squaredNorm();
    if (std::abs(norm2 - 1.0) > kUnitarityTol)
        throw std::invalid_argument("householder_completion: phi not normalized");
    const double a0 = std::abs(phi(0));
    const Complex sigma = (a0 > 0) ? phi(0) / a0 : Complex(1, 0);
    Eigen::VectorXcd w = phi;
    w(0) += sigma;
    Matrix h = Matrix::Identity(n, n) - (2.0 / w.squaredNorm()) * (w * w.adjoint());
    // h phi = -sigma e1; fix the phase of the first row so omega phi = e1.
    h.row(0) *= -std::conj(sigma);
    return h;
}

/// Rewrites projection of modes 2..N onto the one-photon state
/// chi = sum_i phi_i a_i^dag |0> as extra processing: returns
/// embed(omega) * base where omega's first row is conj(phi). Projecting the
/// new mode 2 onto |1> and modes 3..N onto vacuum is then equivalent to the
/// original chi projection.
inline Interferometer absorb_single_photon_projection(const Eigen::VectorXcd& phi,
                                                      const Interferometer& base) {
    const int n = base.dim();
    if (static_cast<int>(phi.size()) != n - 1)
        throw std::invalid_argument("absorb_single_photon_projection: phi must have N-1 entries");
    const Matrix omega = householder_completion(phi);
    std::vector<int> modes(n - 1);
    for (int i = 0; i < n - 1; ++i) modes[i] = i + 1;
    const Interferometer omega_emb = embed(Interferometer::validate(omega), n, modes);
    return compose(omega_emb, base);
}

}  // namespace lopt
