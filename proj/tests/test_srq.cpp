#include <doctest.h>

#include "lopt/rng.hpp"
#include "lopt/srq.hpp"

using namespace lopt;

TEST_CASE("generalized efficiency of pure and mixed qubits") {
    CHECK(generalized_efficiency(SingleRailQubit::photon(0.7)) == doctest::Approx(0.7));
    CHECK(generalized_efficiency(SingleRailQubit::vacuum()) == doctest::Approx(0.0));
    // Any pure superposition has unit generalized efficiency.
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(generalized_efficiency(SingleRailQubit(s, s, 1.0)) == doctest::Approx(1.0));

    const Complex g(0.6, 0.0), b(0.0, 0.8);
    const double e = 0.4;
    const SingleRailQubit q(g, b, e);
    const double want = std::norm(b) * e / (1.0 - std::norm(g) * e);
    CHECK(generalized_efficiency(q) == doctest::Approx(want).epsilon(1e-14));

    // Density form recovers the same number from the mixture decomposition.
    QubitDensity d;
    d.add_pure(g, b, e);
    d.add_pure(Complex(1, 0), Complex(0, 0), 1.0 - e);
    CHECK(generalized_efficiency(d) == doctest::Approx(want).epsilon(1e-12));

    CHECK_THROWS_AS(SingleRailQubit(1.0, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(SingleRailQubit(0.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("quadrature wavefunctions") {
    const double q = 0.83;
    CHECK(quadrature_wavefunction(0, 0.0) ==
          doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-14));
    CHECK(quadrature_wavefunction(1, q) / quadrature_wavefunction(0, q) ==
          doctest::Approx(std::sqrt(2.0) * q).epsilon(1e-13));
    const double want2 = (2.0 * q * q - 1.0) / std::sqrt(2.0) * quadrature_wavefunction(0, q);
    CHECK(quadrature_wavefunction(2, q) == doctest::Approx(want2).epsilon(1e-13));
    CHECK_THROWS_AS(quadrature_overlap(0.0, 2), std::invalid_argument);
}

TEST_CASE("displaced vacuum has Poisson amplitudes") {
    const Complex alpha(0.4, -0.3);
    TruncatedState st = TruncatedState::vacuum(1, 20);
    st.displace(0, alpha);
    const double g = std::exp(-0.5 * std::norm(alpha));
    Complex pow(1, 0);
    double fact = 1.0;
    for (int n = 0; n <= 6; ++n) {
        CHECK(std::abs(st.amplitude({n}) - g * pow / std::sqrt(fact)) < 1e-12);
        pow *= alpha;
        fact *= n + 1;
    }
    CHECK(st.norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("displacements commute through a beam splitter with rotated amplitudes") {
    const Complex a0(0.3, 0.1), a1(-0.2, 0.25);
    const Matrix u = scheme_bs_matrix(Complex(0.8, 0.1), std::sqrt(1.0 - std::norm(Complex(0.8, 0.1))));

    TruncatedState left = TruncatedState::vacuum(2, 16);
    left.displace(0, a0);
    left.displace(1, a1);
    left.apply_beam_splitter(0, 1, u);

    TruncatedState right = TruncatedState::vacuum(2, 16);
    right.displace(0, u(0, 0) * a0 + u(0, 1) * a1);
    right.displace(1, u(1, 0) * a0 + u(1, 1) * a1);

    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            CHECK(std::abs(left.amplitude({m, n}) - right.amplitude({m, n})) < 1e-9);
}

TEST_CASE("condition solvers zero the vacuum amplitude") {
    const Complex gg1(0.6, 0.2);
    const Complex bb1(std::sqrt(1.0 - std::norm(gg1)), 0);
    const Complex g2(0.48, -0.36);
    const Complex bb2(std::sqrt(1.0 - std::norm(g2)), 0);

    SchemeParams p2;
    p2.id = 2;
    p2.alpha = Complex(0.05, 0.02);
    scheme2_condition_bs(gg1, bb1, p2.alpha, p2.t, p2.r);
    CHECK(scheme_condition_residual(p2, gg1, bb1) < 1e-14);

    SchemeParams p3;
    p3.id = 3;
    scheme3_condition_bs(gg1, bb1, g2, bb2, p3.t, p3.r);
    CHECK(scheme_condition_residual(p3, gg1, bb1, g2, bb2) < 1e-14);
    CHECK(std::abs(std::norm(p3.t) + std::norm(p3.r) - 1.0) < 1e-14);

    SchemeParams p4;
    p4.id = 4;
    p4.t2 = Complex(0.6, 0);
    p4.r2 = Complex(0, 0.8);
    scheme4_condition_bs(gg1, bb1, g2, bb2, p4.t, p4.r);
    CHECK(scheme_condition_residual(p4, gg1, bb1, g2, bb2) < 1e-14);

    CHECK_THROWS_AS(scheme2_condition_bs(1.0, 0.0, 0.1, p2.t, p2.r), std::invalid_argument);
}

namespace {

SchemeParams random_params(int id, Rng& rng) {
    SchemeParams p;
    p.id = id;
    const Complex t(rng.next_gaussian(), rng.next_gaussian());
    const double tn = std::abs(t);
    const double th = rng.next_unit();
    p.t = t / tn * std::sqrt(th);
    p.r = std::exp(Complex(0, rng.next_unit())) * std::sqrt(1.0 - th);
    const double th2 = rng.next_unit();
    p.t2 = std::sqrt(th2);
    p.r2 = std::exp(Complex(0, rng.next_unit())) * std::sqrt(1.0 - th2);
    p.q = rng.next_gaussian();
    p.alpha = 0.3 * Complex(rng.next_gaussian(), rng.next_gaussian());
    return p;
}

std::pair<Complex, Complex> random_qubit_amps(Rng& rng) {
    Complex g(rng.next_gaussian(), rng.next_gaussian());
    Complex b(rng.next_gaussian(), rng.next_gaussian());
    const double n = std::sqrt(std::norm(g) + std::norm(b));
    return {g / n, b / n};
}

}  // namespace

TEST_CASE("closed forms match the truncated-Fock oracle") {
    Rng rng(2718);
    for (int rep = 0; rep < 8; ++rep) {
        const auto [g1, b1] = random_qubit_amps(rng);
        const auto [g2, b2] = random_qubit_amps(rng);
        for (int id : {1, 3, 4}) {
            const SchemeParams p = random_params(id, rng);
            const auto closed = scheme_closed_form(p, g1, b1, g2, b2);
            const auto oracle = scheme_oracle_branch(p, g1, b1, g2, b2, 8);
            CHECK(std::abs(closed.vac - oracle.vac) < 1e-10);
            CHECK(std::abs(closed.one - oracle.one) < 1e-10);
        }
    }
}

TEST_CASE("scheme 2 closed form is the small-displacement limit") {
    Rng rng(31415);
    const auto [g1, b1] = random_qubit_amps(rng);
    SchemeParams p = random_params(2, rng);
    double prev_err = 0.0;
    for (double a : {1e-1, 1e-2, 1e-3}) {
        p.alpha = Complex(a, 0.3 * a);
        const auto closed = scheme_closed_form(p, g1, b1);
        const auto oracle = scheme_oracle_branch(p, g1, b1, 1, 0, 12);
        const double err = std::abs(closed.vac - oracle.vac) + std::abs(closed.one - oracle.one);
        CHECK(err < 10.0 * std::abs(p.alpha));
        if (prev_err > 0.0) CHECK(err < prev_err);  // shrinks with alpha
        prev_err = err;
    }
}

TEST_CASE("scheme_output mixes input branches consistently with the oracle") {
    Rng rng(9001);
    const auto [g1, b1] = random_qubit_amps(rng);
    const auto [g2, b2] = random_qubit_amps(rng);
    const SingleRailQubit in1(g1, b1, 0.7);
    const SingleRailQubit in2(g2, b2, 0.85);
    for (int id : {3, 4}) {
        const SchemeParams p = random_params(id, rng);
        const auto fast = scheme_output(p, in1, in2);
        const auto slow = scheme_oracle(p, in1, in2);
        CHECK(fast.success_prob == doctest::Approx(slow.success_prob).epsilon(1e-9));
        CHECK(fast.output_efficiency == doctest::Approx(slow.output_efficiency).epsilon(1e-9));
    }
}

TEST_CASE("scheme 3 on identical pure qubits at condition never succeeds") {
    const Complex g(0.6, 0), b(0.8, 0);
    SchemeParams p;
    p.id = 3;
    scheme3_condition_bs(g, b, g, b, p.t, p.r);
    // Condition forces a balanced splitter, so |r|^2 - |t|^2 = 0 and both
    // output amplitudes vanish.
    const auto res = scheme_output(p, SingleRailQubit(g, b, 1.0), SingleRailQubit(g, b, 1.0));
    CHECK(res.success_prob < 1e-14);
}
