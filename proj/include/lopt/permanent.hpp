#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lopt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Permanent via Ryser's inclusion-exclusion with Gray-code subset
/// iteration: one row-sum update per subset, O(2^n * n) total.
/// per(0x0) = 1 (empty product convention).
inline Complex permanent_ryser(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("permanent_ryser: matrix not square");
    const int n = static_cast<int>(m.rows());
    if (n > 20) throw std::invalid_argument("permanent_ryser: dimension > 20 unsupported");
    if (n == 0) return Complex(1.0, 0.0);

    // Accumulate in long double; the alternating signs cancel heavily.
    using CL = std::complex<long double>;
    std::vector<CL> rowsum(n, CL(0, 0));
    CL total(0, 0);
    std::uint64_t gray_prev = 0;
    const std::uint64_t count = std::uint64_t(1) << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t diff = gray ^ gray_prev;  // exactly one bit
        const int j = std::countr_zero(diff);
        const long double sgn_col = (gray & diff) ? 1.0L : -1.0L;
        for (int i = 0; i < n; ++i) {
            const Complex a = m(i, j);
            rowsum[i] += CL(sgn_col * a.real(), sgn_col * a.imag());
        }
        CL prod(1, 0);
        for (int i = 0; i < n; ++i) prod *= rowsum[i];
        // (-1)^(n - |S|)
        const int popc = std::popcount(gray);
        total += ((n - popc) & 1) ? -prod : prod;
        gray_prev = gray;
    }
    return Complex(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

/// Brute-force permanent over all n! permutations. Test oracle only;
/// refuses n > 9.
inline Complex permanent_naive(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("permanent_naive: matrix not square");
    const int n = static_cast<int>(m.rows());
    if (n > 9) throw std::invalid_argument("permanent_naive: dimension > 9 refused (cost guard)");
    if (n == 0) return Complex(1.0, 0.0);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::complex<long double> total(0, 0);
    do {
        std::complex<long double> prod(1, 0);
        for (int i = 0; i < n; ++i) {
            const Complex a = m(i, perm[i]);
            prod *= std::complex<long double>(a.real(), a.imag());
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Complex(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

}  // namespace lopt
