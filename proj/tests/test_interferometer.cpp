#include <doctest.h>

#include "lopt/amplitudes.hpp"
#include "lopt/interferometer.hpp"

using namespace lopt;

TEST_CASE("validate: accepts unitaries, rejects the rest") {
    CHECK_NOTHROW(Interferometer::validate(Matrix::Identity(3, 3)));
    Matrix bad(2, 2);
    bad << 1, 0, 0, 2;
    CHECK_THROWS_AS(Interferometer::validate(bad), std::invalid_argument);
    CHECK_NOTHROW(Interferometer::validate(haar_random(5, 123).lambda()));
}

TEST_CASE("haar_random: determinism and n = 1 phase") {
    const auto a = haar_random(5, RandomSeed{42, 3});
    const auto b = haar_random(5, RandomSeed{42, 3});
    CHECK(a.lambda() == b.lambda());  // byte-exact
    const auto c = haar_random(5, RandomSeed{42, 4});
    CHECK(a.lambda() != c.lambda());

    const auto phase = haar_random(1, 99);
    CHECK(std::abs(std::abs(phase.lambda()(0, 0)) - 1.0) < 1e-14);
}

TEST_CASE("haar_random: first moment E|U_ij|^2 = 1/n at n = 4") {
    const int n = 4, samples = 10000;
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
    for (int t = 0; t < samples; ++t)
        mean += haar_random(n, RandomSeed{2024, static_cast<std::uint64_t>(t)})
                    .lambda()
                    .cwiseAbs2();
    mean /= samples;
    // Var|U_ij|^2 = (n-1)/(n^2 (n+1)) = 0.0375; 3 sigma of the sample mean.
    const double tol = 3.0 * std::sqrt(0.0375 / samples);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(std::abs(mean(i, j) - 0.25) < tol);
}

TEST_CASE("beam_splitter") {
    CHECK(beam_splitter(1, 0).lambda() == Matrix::Identity(2, 2));
    const double s = 1.0 / std::sqrt(2.0);
    const auto half = beam_splitter(s, s);
    CHECK(unitarity_deviation(half.lambda()) < 1e-14);
    CHECK_THROWS_AS(beam_splitter(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("embed: identity, composition, order sensitivity") {
    const auto id2 = Interferometer::validate(Matrix::Identity(2, 2));
    CHECK(embed(id2, 4, {1, 2}).lambda() == Matrix::Identity(4, 4));

    const double s = 1.0 / std::sqrt(2.0);
    const auto half = beam_splitter(s, s);
    const auto a = embed(half, 3, {0, 1});
    const auto b = embed(half, 3, {1, 2});
    CHECK(unitarity_deviation(compose(b, a).lambda()) < 1e-12);
    CHECK((compose(b, a).lambda() - compose(a, b).lambda()).cwiseAbs().maxCoeff() > 1e-3);

    CHECK_THROWS_AS(embed(id2, 4, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(embed(id2, 4, {1, 7}), std::out_of_range);
}

TEST_CASE("householder completion has the requested first row") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::VectorXcd phi(4);
        for (int i = 0; i < 4; ++i) phi(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
        phi /= phi.norm();
        const Matrix omega = householder_completion(phi);
        CHECK(unitarity_deviation(omega) < 1e-13);
        CHECK((omega.row(0).transpose() - phi.conjugate()).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("absorb_single_photon_projection: phi = e1 leaves the base unchanged") {
    const auto base = haar_random(4, 17);
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(3);
    phi(0) = 1.0;
    const auto combined = absorb_single_photon_projection(phi, base);
    CHECK((combined.lambda() - base.lambda()).cwiseAbs().maxCoeff() < 1e-13);
}

namespace {

// T^(n1) computed through the composite lambda with detector pattern
// (1, 0, ..., 0) must equal T^(n1) through the base lambda with the
// one-photon chi built from phi.
void check_absorb_equivalence(int n, std::uint64_t seed) {
    Rng rng(seed);
    const auto base = haar_random(n, RandomSeed{seed, 1});
    Eigen::VectorXcd phi(n - 1);
    for (int i = 0; i < n - 1; ++i) phi(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
    phi /= phi.norm();
    const auto combined = absorb_single_photon_projection(phi, base);

    // D = 1 occupation basis of N-1 modes is e_0, e_1, ... in this order,
    // so chi's amplitude vector is exactly phi.
    const ProjectionState chi(n - 1, 1, phi);
    std::vector<int> first(n - 1, 0);
    first[0] = 1;
    const ProjectionState detector = ProjectionState::fock(OccupationVector(first));

    for (int n1 = 0; n1 <= 2; ++n1) {
        const auto patterns = enumerate_patterns(n, 1 + n1);
        for (std::size_t k = 0; k < patterns.size(); ++k) {
            const Complex via_composite = amplitude_T(combined, patterns.at(k), detector, n1);
            const Complex via_chi = amplitude_T(base, patterns.at(k), chi, n1);
            CHECK(std::abs(via_composite - via_chi) < 1e-12);
        }
    }
}

}  // namespace

TEST_CASE("absorb_single_photon_projection: equivalence with direct chi projection") {
    check_absorb_equivalence(3, 21);
    check_absorb_equivalence(5, 22);
    for (std::uint64_t s = 0; s < 10; ++s) check_absorb_equivalence(4, 100 + s);
}

TEST_CASE("N = 3 equal-superposition example") {
    const auto base = haar_random(3, 77);
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd phi(2);
    phi << s, s;
    const auto combined = absorb_single_photon_projection(phi, base);
    const ProjectionState chi(2, 1, phi);
    const ProjectionState detector = ProjectionState::fock(OccupationVector({1, 0}));
    for (int n1 = 0; n1 <= 2; ++n1) {
        const auto patterns = enumerate_patterns(3, 1 + n1);
        for (std::size_t k = 0; k < patterns.size(); ++k)
            CHECK(std::abs(amplitude_T(combined, patterns.at(k), detector, n1) -
                           amplitude_T(base, patterns.at(k), chi, n1)) < 1e-12);
    }
}
