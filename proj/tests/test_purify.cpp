#include <doctest.h>

#include <cmath>
#include <random>

#include "gmms/errors.hpp"
#include "gmms/metrics.hpp"
#include "gmms/purify.hpp"
#include "gmms/special.hpp"
#include "gmms/states.hpp"
#include "support/oracles.hpp"

using namespace gmms;

TEST_CASE("g_purify: vacuum, thermal, cvmms coefficient formulas") {
    const FockDensityOperator vac = thermal_state(0.0, FockCutoff{4});
    const SchmidtPureState pvac = g_purify(vac);
    CHECK(pvac.coefficients[0] == cplx{1.0});
    for (int n = 1; n <= 4; ++n) CHECK(pvac.coefficients[n] == cplx{});

    const FockCutoff cutoff{auto_cutoff(GmmsSpec::thermal(1.0))};
    const SchmidtPureState pth = g_purify(thermal_state(1.0, cutoff));
    for (int n = 0; n < cutoff.dim(); ++n)
        CHECK(pth.coefficients[n].real() ==
              doctest::Approx(std::sqrt(std::pow(0.5, n + 1))).epsilon(1e-13));

    const FockCutoff ccut{auto_cutoff(GmmsSpec::cvmms(1.0))};
    const FockDensityOperator cv = cvmms_state(1.0, ccut);
    const SchmidtPureState pcv = g_purify(cv);
    for (int n = 0; n < ccut.dim(); ++n)
        CHECK(pcv.coefficients[n].real() ==
              doctest::Approx(std::sqrt(regularized_lower_gamma(n + 1, 1.0))).epsilon(1e-13));
}

TEST_CASE("g_purify round trip recovers the input entrywise") {
    const FockCutoff cutoff{auto_cutoff(GmmsSpec::cvmms(1.0))};
    const FockDensityOperator cv = cvmms_state(1.0, cutoff);
    const FockDensityOperator back = partial_trace_B(g_purify(cv));
    for (int i = 0; i < cutoff.dim(); ++i)
        for (int j = 0; j < cutoff.dim(); ++j) CHECK(std::abs(back(i, j) - cv(i, j)) < 1e-13);
}

TEST_CASE("g_purify rejects non-diagonal input and deep negativity") {
    std::vector<cplx> m{{0.6, 0.0}, {0.2, 0.0}, {0.2, 0.0}, {0.4, 0.0}};
    const FockDensityOperator nd = FockDensityOperator::from_matrix(FockCutoff{1}, m);
    CHECK_THROWS_AS(g_purify(nd), PreconditionError);

    // weights inside (-psd_floor, 0) clamp to zero instead
    ToleranceProfile tol;
    const FockDensityOperator noisy =
        FockDensityOperator::from_diagonal(FockCutoff{1}, {{1.0, -5e-11}}, tol);
    const SchmidtPureState p = g_purify(noisy, tol);
    CHECK(p.coefficients[1] == cplx{});
}

TEST_CASE("tmsv: no squeezing, head weight, alternating sign") {
    const SchmidtPureState zero = tmsv(0.0, FockCutoff{4});
    CHECK(zero.coefficients[0] == cplx{1.0});
    for (int n = 1; n <= 4; ++n) CHECK(zero.coefficients[n] == cplx{});

    const FockCutoff cutoff{160};
    const SchmidtPureState one = tmsv(1.0, cutoff);
    CHECK(std::norm(one.coefficients[0]) == doctest::Approx(0.41997434161402607).epsilon(1e-14));
    const double lambda = std::tanh(1.0);
    for (int n = 0; n < 10; ++n) {
        CHECK(one.coefficients[n].real() * ((n % 2) ? -1.0 : 1.0) > 0.0);
        CHECK(std::abs(one.coefficients[n]) ==
              doctest::Approx(std::sqrt(1.0 - lambda * lambda) * std::pow(lambda, n)).epsilon(1e-13));
    }

    CHECK_THROWS_AS(tmsv(2.0, FockCutoff{40}), TruncationError);
}

TEST_CASE("apply_ancilla_unitary: identity, diagonal phases, HJW invariance") {
    const FockCutoff cutoff{30};
    const SchmidtPureState gamma = tmsv(0.7, cutoff);

    const TwoModePureState same = apply_ancilla_unitary(gamma, AncillaUnitary::identity(cutoff));
    const TwoModePureState direct = to_two_mode(gamma);
    for (std::size_t i = 0; i < same.amplitudes.size(); ++i)
        CHECK(std::abs(same.amplitudes[i] - direct.amplitudes[i]) < 1e-15);

    // (-1)^n phases on B turn the alternating TMSV into g_purify(thermal)
    std::vector<cplx> phases(cutoff.dim());
    for (int n = 0; n < cutoff.dim(); ++n) phases[n] = (n % 2) ? -1.0 : 1.0;
    const TwoModePureState flipped =
        apply_ancilla_unitary(gamma, AncillaUnitary::diagonal_phases(cutoff, phases));
    const double nbar = std::sinh(0.7) * std::sinh(0.7);
    const SchmidtPureState want = g_purify(thermal_state(nbar, cutoff));
    for (int n = 0; n < cutoff.dim(); ++n) {
        const cplx got = flipped.amplitudes[static_cast<std::size_t>(n) * cutoff.dim() + n];
        CHECK(std::abs(got - want.coefficients[n]) < 1e-13);
    }
}

TEST_CASE("random ancilla unitaries never move the reduced state (dense oracle)") {
    const FockCutoff cutoff{8};
    std::mt19937_64 rng(55);
    const SchmidtPureState gamma = tmsv(0.6, FockCutoff{40});
    // re-embed at the small cutoff so the dense d^4 oracle stays cheap
    std::vector<cplx> c(gamma.coefficients.begin(), gamma.coefficients.begin() + cutoff.dim());
    const SchmidtPureState small{cutoff, std::move(c)};

    const auto before = oracles::dense_reduced_A(small);
    for (int trial = 0; trial < 10; ++trial) {
        const AncillaUnitary u = oracles::random_unitary(cutoff, rng);
        const TwoModePureState moved = apply_ancilla_unitary(small, u);
        const auto after = oracles::dense_reduced_A(moved.amplitudes, cutoff.dim());
        const FockDensityOperator reduced = reduced_state_A(moved);
        for (int i = 0; i < cutoff.dim(); ++i)
            for (int j = 0; j < cutoff.dim(); ++j) {
                const std::size_t idx = static_cast<std::size_t>(i) * cutoff.dim() + j;
                CHECK(std::abs(after[idx] - before[idx]) < 1e-12);
                CHECK(std::abs(reduced(i, j) - after[idx]) < 1e-12);
            }
    }
}

TEST_CASE("non-unitary ancilla matrices are rejected") {
    const FockCutoff cutoff{2};
    std::vector<cplx> not_u{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0},
                            {0.5, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(AncillaUnitary(cutoff, not_u), PreconditionError);
}

TEST_CASE("verify_purification: pass, deliberate mismatch, definitional round trips") {
    const FockCutoff cutoff{auto_cutoff(GmmsSpec::thermal(std::sinh(1.0) * std::sinh(1.0)))};
    const SchmidtPureState gamma = tmsv(1.0, cutoff);
    const double nbar = std::sinh(1.0) * std::sinh(1.0);

    const PurificationReport good = verify_purification(gamma, thermal_state(nbar, cutoff), 1e-10);
    CHECK(good.pass);
    CHECK(good.max_abs_deviation < 1e-12);

    const PurificationReport bad = verify_purification(gamma, thermal_state(1.0, cutoff), 1e-10);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_abs_deviation > 1e-2);

    const ToleranceProfile tol;
    const auto families = {
        thermal_state(1.0, FockCutoff{auto_cutoff(GmmsSpec::thermal(1.0))}),
        cvmms_state(2.0, FockCutoff{auto_cutoff(GmmsSpec::cvmms(2.0))}),
        truncate_offdiagonal(
            quadrature_gmms(1.0, 0.2, 0.0, FockCutoff{auto_cutoff(GmmsSpec::squeezed(1.0, 0.2, 0.0))}),
            tol)
            .first,
        truncate_offdiagonal(
            riemann_gmms(1.0, 0.1, FockCutoff{auto_cutoff(GmmsSpec::riemann(1.0, 0.1))}), tol)
            .first,
    };
    for (const FockDensityOperator& rho : families)
        CHECK(verify_purification(g_purify(rho), rho, 1e-12).pass);
}

TEST_CASE("purifying preserves the entropy (MMS-MES correspondence)") {
    for (const double nbar : {0.5, 1.0, 2.5}) {
        const FockCutoff cutoff{auto_cutoff(GmmsSpec::thermal(nbar))};
        const FockDensityOperator rho = thermal_state(nbar, cutoff);
        const FockDensityOperator reduced = partial_trace_B(g_purify(rho));
        CHECK(std::abs(entropy(reduced) - entropy(rho)) < 1e-12);
    }
}
