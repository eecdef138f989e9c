#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qcoh/coherence.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/random_states.hpp"
#include "qcoh/spin_models.hpp"
#include "qcoh/states.hpp"

using namespace qcoh;

namespace {

PureState bell_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return PureState({r, 0.0, 0.0, r}, {2, 2});
}

PureState ghz_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return PureState({r, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, r}, {2, 2, 2});
}

PureState plus_plus() {
    return PureState({0.5, 0.5, 0.5, 0.5}, {2, 2});
}

} // namespace

TEST_CASE("square-root QJSD basics") {
    const DensityMatrix bell = projector(bell_state());
    const DensityMatrix mixed = DensityMatrix::maximally_mixed({2, 2});

    CHECK(qjsd(bell, bell) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(qjsd(bell, mixed) == doctest::Approx(0.5487949406953985).epsilon(1e-12));
    CHECK(coherence_distance(bell, mixed) ==
          doctest::Approx(0.7408069523805770).epsilon(1e-12));
    CHECK(qjsd(bell, mixed) == doctest::Approx(qjsd(mixed, bell)).epsilon(1e-13));

    CHECK_THROWS_AS(qjsd(bell, DensityMatrix::maximally_mixed({2})),
                    DimensionMismatchError);
}

TEST_CASE("total coherence depends only on the spectrum for pure states") {
    // Any pure state sits at the same distance from the maximally mixed state.
    const double two_site = 0.7408069523805770;
    const double three_site = 0.8467096235951848;

    CHECK(total_coherence(projector(bell_state())) ==
          doctest::Approx(two_site).epsilon(1e-12));
    CHECK(total_coherence(projector(plus_plus())) ==
          doctest::Approx(two_site).epsilon(1e-10));
    CHECK(total_coherence(projector(ghz_state())) ==
          doctest::Approx(three_site).epsilon(1e-10));
    CHECK(total_coherence(projector(dm_ground_state(1.0))) ==
          doctest::Approx(three_site).epsilon(1e-10));

    CHECK(total_coherence(DensityMatrix::maximally_mixed({2, 2})) ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("product of marginals") {
    // Middle site of the D = 1 block state holds 2/3 excitation, the edges 1/6.
    const DensityMatrix rho = projector(dm_ground_state(1.0));
    const DensityMatrix pi = product_of_marginals(rho);
    const double p1[2] = {5.0 / 6.0, 1.0 / 6.0};
    const double p2[2] = {1.0 / 3.0, 2.0 / 3.0};
    for (std::size_t idx = 0; idx < 8; ++idx) {
        const double expect =
            p1[(idx >> 2) & 1] * p2[(idx >> 1) & 1] * p1[idx & 1];
        CHECK(pi.matrix()(idx, idx).real() == doctest::Approx(expect).epsilon(1e-12));
        for (std::size_t col = 0; col < 8; ++col)
            if (col != idx) CHECK(std::abs(pi.matrix()(idx, col)) < 1e-12);
    }

    // For a product state the marginal product reproduces the state itself.
    const DensityMatrix prod = projector(plus_plus());
    CHECK(product_of_marginals(prod).matrix().max_abs_diff(prod.matrix()) < 1e-12);

    CHECK_THROWS_AS(product_of_marginals(DensityMatrix::maximally_mixed({2})),
                    InvalidParamError);
}

TEST_CASE("coherence triple of the two-site block state at g = 1") {
    const CoherenceTriple t = coherence_triple(projector(itf_ground_state(1.0)));
    CHECK(t.total == doctest::Approx(0.7408069523805770).epsilon(1e-10));
    CHECK(t.local == doctest::Approx(0.4476574191793937).epsilon(1e-10));
    CHECK(t.collective == doctest::Approx(0.5583234531037393).epsilon(1e-10));
    CHECK(t.total <= t.local + t.collective + 1e-9);
}

TEST_CASE("coherence triple of the three-site block state at D = 1") {
    const CoherenceTriple t = coherence_triple(projector(dm_ground_state(1.0)));
    CHECK(t.total == doctest::Approx(0.8467096235951848).epsilon(1e-10));
    CHECK(t.local == doctest::Approx(0.4376702319030935).epsilon(1e-10));
    CHECK(t.collective == doctest::Approx(0.7403394765207199).epsilon(1e-10));
}

TEST_CASE("local part cross-checked against a diagonal-entropy oracle") {
    // Both the marginal product and the maximally mixed state are diagonal,
    // so the local coherence reduces to Shannon entropies of classical vectors.
    const DensityMatrix rho = projector(dm_ground_state(1.0));
    const DensityMatrix pi = product_of_marginals(rho);

    std::vector<double> diag(8), mix(8);
    for (std::size_t k = 0; k < 8; ++k) {
        diag[k] = pi.matrix()(k, k).real();
        mix[k] = 0.5 * (diag[k] + 0.125);
    }
    const double t_local = oracles::shannon_bits(mix) -
                           0.5 * (oracles::shannon_bits(diag) + 3.0);
    CHECK(local_coherence(rho) == doctest::Approx(std::sqrt(t_local)).epsilon(1e-10));
}

TEST_CASE("basis-diagonal pure states carry no collective coherence") {
    std::vector<cplx> amps(8, 0.0);
    amps[2] = cplx{0.0, 1.0}; // i|010>
    const CoherenceTriple t = coherence_triple(projector(PureState(amps, {2, 2, 2})));
    CHECK(t.total == doctest::Approx(0.8467096235951846).epsilon(1e-10));
    CHECK(t.local == doctest::Approx(t.total).epsilon(1e-9));
    CHECK(t.collective == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("cut coherence") {
    const DensityMatrix ghz = projector(ghz_state());
    CHECK(cut_coherence(ghz, {{0}, {1, 2}}) ==
          doctest::Approx(0.7408069523805770).epsilon(1e-10));

    const DensityMatrix pair = partial_trace(ghz, {0, 1});
    CHECK(cut_coherence(pair, {{0}, {1}}) ==
          doctest::Approx(0.5579230452841439).epsilon(1e-10));

    // All singleton groups reproduce the collective coherence exactly.
    const DensityMatrix rho = projector(dm_ground_state(0.7));
    CHECK(cut_coherence(rho, {{0}, {1}, {2}}) == collective_coherence(rho));

    // Non-contiguous grouping is accepted.
    const double outer = cut_coherence(rho, {{0, 2}, {1}});
    CHECK(outer >= 0.0);
    CHECK(outer <= total_coherence(rho) + 1e-9);

    CHECK_THROWS_AS(cut_coherence(rho, {{0}, {1}}), BadPartitionError);
    CHECK_THROWS_AS(cut_coherence(rho, {{0}, {1}, {1}}), BadPartitionError);
    CHECK_THROWS_AS(cut_coherence(rho, {{0}, {1}, {2}, {3}}), BadPartitionError);
}

TEST_CASE("monogamy report on reference states") {
    // Product basis state: everything vanishes.
    const PureState zzz({1, 0, 0, 0, 0, 0, 0, 0}, {2, 2, 2});
    const MonogamyReport zero = monogamy(projector(zzz));
    CHECK(zero.headcut == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(zero.pairwise.at("1:2") == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(zero.pairwise.at("1:3") == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(zero.m == doctest::Approx(0.0).epsilon(1e-6));

    const MonogamyReport ghz = monogamy(projector(ghz_state()));
    CHECK(ghz.pairwise.at("1:2") == doctest::Approx(0.5579230452841437).epsilon(1e-10));
    CHECK(ghz.pairwise.at("1:3") == doctest::Approx(0.5579230452841437).epsilon(1e-10));
    CHECK(ghz.headcut == doctest::Approx(0.7408069523805770).epsilon(1e-10));
    CHECK(ghz.m == doctest::Approx(0.3750391381877104).epsilon(1e-9));

    const MonogamyReport dm = monogamy(projector(dm_ground_state(1.0)));
    CHECK(dm.pairwise.at("1:2") == doctest::Approx(0.4942045826108992).epsilon(1e-10));
    CHECK(dm.pairwise.at("1:3") == doctest::Approx(0.3365891945075543).epsilon(1e-10));
    CHECK(dm.headcut == doctest::Approx(0.5832153656245090).epsilon(1e-10));
    CHECK(dm.m == doctest::Approx(0.2475784114939444).epsilon(1e-9));
    CHECK(dm.m > 0.0);

    CHECK_THROWS_AS(monogamy(projector(bell_state())), InvalidParamError);
}

TEST_CASE("tripartite decomposition bound") {
    for (double d : {0.3, 1.0, 2.0}) {
        const TripartiteBound b = tripartite_bound_check(projector(dm_ground_state(d)));
        CHECK(b.holds);
        CHECK(b.lhs <= b.rhs + 1e-9);
    }
    CHECK(tripartite_bound_check(projector(ghz_state())).holds);

    StateSampler sampler(99);
    for (int trial = 0; trial < 25; ++trial)
        CHECK(tripartite_bound_check(sampler.random_density({2, 2, 2})).holds);

    CHECK_THROWS_AS(tripartite_bound_check(projector(bell_state())),
                    InvalidParamError);
}

TEST_CASE("distance obeys metric axioms on random samples") {
    StateSampler sampler(314159);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix a = sampler.random_density({2, 2});
        const DensityMatrix b = sampler.random_density({2, 2});
        const DensityMatrix c = sampler.random_density({2, 2});
        const double ab = coherence_distance(a, b);
        const double bc = coherence_distance(b, c);
        const double ac = coherence_distance(a, c);
        CHECK(ab >= 0.0);
        CHECK(ab == doctest::Approx(coherence_distance(b, a)).epsilon(1e-12));
        CHECK(ac <= ab + bc + 1e-9);
        CHECK(coherence_distance(a, a) <= 1e-7);
    }
}

TEST_CASE("all three coherences are invariant under local unitaries") {
    StateSampler sampler(271828);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = sampler.random_density({2, 2, 2});
        const ComplexMatrix u = sampler.random_local_unitary({2, 2, 2});
        const ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
        const CoherenceTriple before = coherence_triple(rho);
        const CoherenceTriple after =
            coherence_triple(DensityMatrix(rotated, {2, 2, 2}));
        CHECK(std::abs(before.total - after.total) < 1e-9);
        CHECK(std::abs(before.local - after.local) < 1e-9);
        CHECK(std::abs(before.collective - after.collective) < 1e-9);
    }
}

TEST_CASE("trade-off relation on random states") {
    StateSampler sampler(6061);
    for (int trial = 0; trial < 50; ++trial) {
        const CoherenceTriple mixed = coherence_triple(sampler.random_density({2, 2}));
        CHECK(mixed.total <= mixed.local + mixed.collective + 1e-9);
        const CoherenceTriple pure =
            coherence_triple(projector(sampler.random_pure({2, 2, 2})));
        CHECK(pure.total <= pure.local + pure.collective + 1e-9);
    }
}
