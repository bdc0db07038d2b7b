#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>

#include "lopt/amplitudes.hpp"
#include "lopt/interferometer.hpp"
#include "lopt/rng.hpp"

namespace lopt {

inline constexpr double kNullSpaceTol = 1e-10;
inline constexpr double kViolationTol = 1e-8;

/// One scan trial: eigenvalue summary of the conjecture matrix
/// M = G0^dag G0 + G2^dag G2 / 2 - G1^dag G1 for a Haar-sampled lambda.
struct ConjectureReport {
    int n = 0;
    int total_detected = 0;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    int dim = 0;
    double min_eig = 0.0;
    double matrix_norm = 0.0;
    int null_dim = 0;
    std::optional<double> null_min_eig;
    double ms = 0.0;
    bool violation = false;  // min_eig < -kViolationTol * matrix_norm
};

/// M over the detector occupation basis with total D; sectors with
/// D + n1 > N contribute nothing. Symmetrized before return.
inline Matrix conjecture_matrix(const Interferometer& itf, int total_detected) {
    const int N = itf.dim();
    if (total_detected < 0 || total_detected > N)
        throw std::invalid_argument("conjecture_matrix: D out of range");
    const auto cols = enumerate_occupations(N - 1, total_detected);
    Matrix m = Matrix::Zero(cols.size(), cols.size());
    const double w[3] = {1.0, -1.0, 0.5};
    for (int n1 = 0; n1 <= 2; ++n1) {
        if (total_detected + n1 > N) continue;
        const GammaMatrix g = build_gamma(itf, total_detected, n1);
        if (g.rows.size() == 0) continue;
        m += w[n1] * (g.entries.adjoint() * g.entries);
    }
    return 0.5 * (m + Matrix(m.adjoint()));
}

/// Smallest eigenvalue of a Hermitian matrix (dense solver over the full
/// spectrum). Rejects inputs that are not Hermitian within tolerance.
inline double hermitian_min_eigenvalue(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_min_eigenvalue: not square");
    if (m.rows() == 0) return 0.0;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - Matrix(m.adjoint())).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("hermitian_min_eigenvalue: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

struct NullSpaceResult {
    int null_dim = 0;
    std::optional<double> min_eig;  // of (G0^dag G0 - G1^dag G1) restricted to null(G2)
};

/// Restricts G0^dag G0 - G1^dag G1 to the numerical null space of G2
/// (eigenvectors of G2^dag G2 with eigenvalue <= tol * ||G2^dag G2||).
inline NullSpaceResult null_space_test(const Interferometer& itf, int total_detected,
                                       double tol = kNullSpaceTol) {
    if (!(tol > 0)) throw std::invalid_argument("null_space_test: tol must be > 0");
    const int N = itf.dim();
    const auto cols = enumerate_occupations(N - 1, total_detected);
    const Eigen::Index dim = static_cast<Eigen::Index>(cols.size());

    auto gram = [&](int n1) -> Matrix {
        if (total_detected + n1 > N) return Matrix::Zero(dim, dim);
        const GammaMatrix g = build_gamma(itf, total_detected, n1);
        if (g.rows.size() == 0) return Matrix::Zero(dim, dim);
        return g.entries.adjoint() * g.entries;
    };

    const Matrix a2 = gram(2);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a2 + Matrix(a2.adjoint())));
    const double top = es.eigenvalues().size() ? es.eigenvalues().maxCoeff() : 0.0;
    const double thresh = tol * std::max(top, 0.0);

    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < dim; ++k)
        if (es.eigenvalues()(k) <= thresh) keep.push_back(k);

    NullSpaceResult r;
    r.null_dim = static_cast<int>(keep.size());
    if (keep.empty()) return r;  // vacuously satisfied

    Matrix basis(dim, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
        basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);

    const Matrix restricted = basis.adjoint() * (gram(0) - gram(1)) * basis;
    r.min_eig = hermitian_min_eigenvalue(0.5 * (restricted + Matrix(restricted.adjoint())));
    return r;
}

/// Evaluates one (N, D, trial) scan point with a seed derived from the
/// master seed, so any subset of the scan grid reproduces identically.
inline ConjectureReport scan_trial(int n, int total_detected, std::uint64_t trial,
                                   std::uint64_t master_seed, bool with_null_space = true,
                                   double null_tol = kNullSpaceTol) {
    const auto t0 = std::chrono::steady_clock::now();
    ConjectureReport rep;
    rep.n = n;
    rep.total_detected = total_detected;
    rep.trial = trial;
    rep.seed = derive_seed(master_seed, static_cast<std::uint64_t>(n),
                           static_cast<std::uint64_t>(total_detected), trial);
    const Interferometer itf = haar_random(n, rep.seed);
    const Matrix m = conjecture_matrix(itf, total_detected);
    rep.dim = static_cast<int>(m.rows());
    rep.matrix_norm = (m.rows() > 0) ? m.cwiseAbs().maxCoeff() : 0.0;
    rep.min_eig = hermitian_min_eigenvalue(m);
    rep.violation = rep.min_eig < -kViolationTol * std::max(rep.matrix_norm, 1e-300);
    if (with_null_space) {
        const NullSpaceResult ns = null_space_test(itf, total_detected, null_tol);
        rep.null_dim = ns.null_dim;
        rep.null_min_eig = ns.min_eig;
    }
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

struct ScanConfig {
    int n_min = 4;
    int n_max = 6;
    // When d_min < 0 the per-N range defaults to 2..N-2; the analytic
    // sectors D in {0, 1, N-1, N} are skipped unless include_analytic.
    int d_min = -1;
    int d_max = -1;
    std::uint64_t trials = 100;
    std::uint64_t master_seed = 0;
    bool include_analytic = false;
    bool with_null_space = true;
    double null_tol = kNullSpaceTol;
};

inline std::vector<int> scan_sectors(const ScanConfig& cfg, int n) {
    std::vector<int> ds;
    int lo = cfg.d_min >= 0 ? cfg.d_min : (cfg.include_analytic ? 0 : 2);
    int hi = cfg.d_max >= 0 ? cfg.d_max : (cfg.include_analytic ? n : n - 2);
    for (int d = lo; d <= hi && d <= n; ++d) {
        if (!cfg.include_analytic && (d == 0 || d == 1 || d == n - 1 || d == n)) continue;
        ds.push_back(d);
    }
    return ds;
}

/// Runs the full scan grid, emitting reports in (N, D, trial) order.
inline void scan(const ScanConfig& cfg, const std::function<void(const ConjectureReport&)>& sink) {
    if (cfg.trials < 1) throw std::invalid_argument("scan: trials must be >= 1");
    for (int n = cfg.n_min; n <= cfg.n_max; ++n)
        for (int d : scan_sectors(cfg, n))
            for (std::uint64_t t = 0; t < cfg.trials; ++t)
                sink(scan_trial(n, d, t, cfg.master_seed, cfg.with_null_space, cfg.null_tol));
}

}  // namespace lopt
