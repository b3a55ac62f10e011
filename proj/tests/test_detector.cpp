#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "pmap/detector.hpp"
#include "pmap/pauli.hpp"
#include "pmap/states.hpp"

using namespace pmap;

namespace {

// Phi_N built from the oracle: explicit representative subsets, projection on
// each listed qubit, plus kappa * Tr * I.
ComplexMatrix phi_oracle(const ComplexMatrix& rho, int n, const std::vector<std::vector<int>>& subsets, double kappa) {
    ComplexMatrix out = ComplexMatrix::identity(rho.dim()) * (kappa * rho.trace());
    for (const auto& s : subsets) {
        ComplexMatrix t = rho;
        for (int q : s) t = oracle::apply_on_qubit(t, q, n, oracle::projection);
        out += t;
    }
    return out;
}

const std::vector<std::vector<int>> kReps3 = {{0}, {1}, {2}};
const std::vector<std::vector<int>> kReps4 = {{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}};

}  // namespace

TEST(PhiSpec, TermsAndKappa) {
    EXPECT_EQ(phi_spec(3).terms.size(), 3u);
    EXPECT_DOUBLE_EQ(phi_spec(3).kappa, 0.5);
    EXPECT_EQ(phi_spec(4).terms.size(), 7u);
    EXPECT_DOUBLE_EQ(phi_spec(4).kappa, 1.5);
    EXPECT_EQ(phi_spec(5).terms.size(), 15u);
    EXPECT_DOUBLE_EQ(phi_spec(5).kappa, 3.5);
    EXPECT_DOUBLE_EQ(kappa_for(2), 0.0);
    EXPECT_THROW(phi_spec(1), std::invalid_argument);
}

TEST(PhiSpec, FourQubitTermsFollowRepresentatives) {
    const auto spec = phi_spec(4);
    for (std::size_t i = 0; i < kReps4.size(); ++i) {
        std::vector<int> slots;
        for (const auto& [q, m] : spec.terms[i].assignment) {
            EXPECT_EQ(m.kind(), MapKind::Projection);
            slots.push_back(q);
        }
        EXPECT_EQ(slots, kReps4[i]);
    }
}

TEST(ApplyPhi, MaximallyMixed) {
    EXPECT_LT(max_abs_diff(apply_phi(phi_spec(3), maximally_mixed(3)), ComplexMatrix::identity(8) * 0.875), 1e-15);
}

TEST(ApplyPhi, GhzTraceAndMinimum) {
    const auto out = apply_phi(phi_spec(3), ghz(3));
    EXPECT_NEAR(out.trace().real(), 7.0, 1e-14);
    EXPECT_NEAR(min_eigenvalue(out), -0.25, 1e-12);
    EXPECT_THROW(apply_phi(phi_spec(3), ComplexMatrix(4)), std::invalid_argument);
}

TEST(ApplyPhi, MatchesOracle) {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 5; ++i) {
        const auto r3 = oracle::random_density(8, rng);
        EXPECT_LT(max_abs_diff(apply_phi(phi_spec(3), r3), phi_oracle(r3, 3, kReps3, 0.5)), 1e-14);
        const auto r4 = oracle::random_density(16, rng);
        EXPECT_LT(max_abs_diff(apply_phi(phi_spec(4), r4), phi_oracle(r4, 4, kReps4, 1.5)), 1e-14);
    }
}

TEST(ApplyPhi, Linear) {
    std::mt19937_64 rng(52);
    const auto spec = phi_spec(3);
    const auto a = oracle::random_matrix(8, rng);
    const auto b = oracle::random_matrix(8, rng);
    const Complex s(0.3, -1.2);
    EXPECT_LT(max_abs_diff(apply_phi(spec, a + s * b), apply_phi(spec, a) + s * apply_phi(spec, b)), 1e-13);
}

TEST(Detect, Examples) {
    const auto g4 = detect(ghz(4));
    EXPECT_NEAR(g4.min_eigenvalue, -0.625, 1e-9);
    EXPECT_TRUE(g4.detected);

    ComplexMatrix zero(8);
    zero(0, 0) = 1.0;
    const auto prod = detect(DensityState(zero));
    EXPECT_GE(prod.min_eigenvalue, 0.0);
    EXPECT_FALSE(prod.detected);

    const auto w = detect(w_state(), pauli::X());
    EXPECT_NEAR(w.min_eigenvalue, -0.074, 0.001);
    EXPECT_TRUE(w.detected);

    EXPECT_NEAR(detect(ghz(3, GhzPhase::Minus)).min_eigenvalue, -0.25, 1e-12);
    EXPECT_FALSE(detect(w_state()).detected);
}

TEST(Detect, KappaOptimalityProbe) {
    // |phi+>|0> is biseparable; at kappa = 1/2 Phi_3 is exactly on the edge.
    std::vector<Complex> v(8);
    v[0b000] = v[0b110] = 1.0 / std::sqrt(2.0);
    const DensityState probe(ComplexMatrix::outer(v));
    EXPECT_NEAR(detect(probe).min_eigenvalue, 0.0, 1e-12);
    PhiSpec low = phi_spec(3);
    low.kappa = 0.4;
    EXPECT_NEAR(detect_with(low, probe).min_eigenvalue, -0.1, 1e-12);
}

TEST(Detect, TwoQubitMapsAgreeOnWerner) {
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto a = detect_with(bipartite_spec(), werner(p)).spectrum;
        const auto b = detect_with(phi_spec(2), werner(p)).spectrum;
        const double expected[] = {(1 - 2 * p) / 4, 0.25, 0.25, (1 + 2 * p) / 4};
        std::vector<double> e(expected, expected + 4);
        std::sort(e.begin(), e.end());
        for (int i = 0; i < 4; ++i) {
            EXPECT_NEAR(a[i], e[i], 1e-12);
            EXPECT_NEAR(b[i], e[i], 1e-12);
        }
    }
}

TEST(Threshold, Ghz3MatchesLinearCrossing) {
    // x (-3/4) + (1 - x) 3/8 + 1/2 = 0  =>  x = 7/9.
    EXPECT_NEAR(noise_threshold(ghz(3)), 7.0 / 9.0, 1e-6);
}

TEST(Threshold, Ghz4AndW) {
    EXPECT_NEAR(noise_threshold(ghz(4)), 0.756, 0.005);
    const double w = noise_threshold(w_state(), pauli::X());
    EXPECT_GE(w, 0.91);
    EXPECT_LE(w, 0.95);
    EXPECT_NEAR(w, 0.921664, 1e-6);
}

TEST(Threshold, Werner) { EXPECT_NEAR(noise_threshold_with(bipartite_spec(), werner(1.0)), 0.5, 1e-6); }

TEST(Threshold, Errors) {
    EXPECT_THROW(noise_threshold(w_state()), std::invalid_argument);
    // Negative kappa makes the output on I/8 negative too: no sign change on [0, 1].
    PhiSpec shifted = phi_spec(3);
    shifted.kappa = -0.5;
    EXPECT_THROW(noise_threshold_with(shifted, ghz(3)), std::invalid_argument);
}

TEST(Sweep, LinearGrid) {
    const auto g = linear_grid(0.0, 1.0, 4);
    EXPECT_EQ(g, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_THROW(linear_grid(0, 1, 0), std::invalid_argument);
}

TEST(Sweep, GenGhz) {
    const auto rows = sweep_gen_ghz({0.0, std::numbers::pi / 4});
    EXPECT_GE(rows[0].min_eigenvalue, 0.0);
    EXPECT_NEAR(rows[1].min_eigenvalue, -0.25, 1e-12);
    const auto full = sweep_gen_ghz(linear_grid(0.0, std::numbers::pi / 2, 158));
    const auto x = gen_ghz_crossings(full);
    ASSERT_EQ(x.size(), 2u);
    EXPECT_NEAR(x[0], 0.43, 0.01);
    EXPECT_NEAR(x[1], 1.13, 0.01);
    // gen_ghz(theta) and gen_ghz(pi/2 - theta) differ by a bit flip on every qubit.
    EXPECT_NEAR(x[0] + x[1], std::numbers::pi / 2, 1e-9);
}

TEST(BoundAnalytic, FormulaArithmetic) {
    auto e = bound_entangled_eigs_analytic(0, 0);
    std::sort(e.begin(), e.end());
    const double expected[] = {-0.75, -0.75, -0.75, 0.75, 0.75, 31.0 / 12, 31.0 / 12, 31.0 / 12};
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(e[i], expected[i], 1e-15);
    EXPECT_NEAR(bound_entangled_eigs_analytic(0.25, 0.25)[0], 0.0, 1e-15);
    EXPECT_NEAR(bound_entangled_eigs_analytic(0.1, 0.1)[0], -0.45, 1e-15);
    EXPECT_GT(bound_entangled_eigs_analytic(0.3, 0.3)[0], 0.0);
    EXPECT_NEAR(bound_entangled_eigs_analytic(0.0, 0.9)[3], 0.25 * (3 - 16.2), 1e-14);
    EXPECT_THROW(bound_entangled_eigs_analytic(0.7, 0.7), std::invalid_argument);
}

TEST(BoundAnalytic, ReferenceRegions) {
    EXPECT_TRUE(bound_entangled_reference_regions(0.1, 0.1)[0]);
    EXPECT_FALSE(bound_entangled_reference_regions(0.3, 0.3)[0]);
    EXPECT_TRUE(bound_entangled_reference_regions(0.0, 0.9)[1]);
    EXPECT_FALSE(bound_entangled_reference_regions(0.0, 0.1)[1]);
    EXPECT_TRUE(bound_entangled_reference_regions(0.5, 0.1)[2]);
    EXPECT_FALSE(bound_entangled_reference_regions(0.1, 0.0)[2]);
}

TEST(BoundAnalytic, ClosedFormMatchesSpectrum) {
    const auto grid = linear_grid(0, 1, 20);
    for (const auto& row : sweep_bound_entangled(grid, grid)) {
        if (!row.valid) continue;
        EXPECT_LT(row.closed_form_mismatch, 1e-9) << row.p1 << ", " << row.p2;
    }
}

TEST(BoundAnalytic, SweepLayout) {
    const auto rows = sweep_bound_entangled({0.0, 0.5, 1.0}, {0.0, 0.75});
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_DOUBLE_EQ(rows[1].p1, 0.0);
    EXPECT_DOUBLE_EQ(rows[1].p2, 0.75);
    EXPECT_TRUE(rows[1].valid);
    EXPECT_FALSE(rows[3].valid);  // (0.5, 0.75) leaves the simplex
    EXPECT_FALSE(rows[3].skip_reason.empty());
    EXPECT_TRUE(rows[4].valid);
}

TEST(GAbcd, Sweep) {
    const double r = 1 / std::numbers::sqrt2;
    const auto ghz_row = sweep_g_abcd({r}, {0.0}, 0.0);
    ASSERT_EQ(ghz_row.size(), 1u);
    EXPECT_NEAR(ghz_row[0].min_eigenvalue, -0.625, 1e-9);

    const auto b_only = sweep_g_abcd({0.0}, {0.0}, 0.6);
    EXPECT_NEAR(b_only[0].min_eigenvalue, 0.375, 1e-12);
    EXPECT_TRUE(sweep_g_abcd({0.0}, {0.0}, 0.0).empty());

    // Frozen regression value.
    const auto mid = sweep_g_abcd({0.5}, {0.2}, 0.6);
    EXPECT_NEAR(mid[0].min_eigenvalue, 0.345236070511158, 1e-12);
    const auto rho = g_abcd(0.5, 0.6, 0.2, 0.5);
    EXPECT_NEAR(min_eigenvalue(phi_oracle(rho.matrix(), 4, kReps4, 1.5)), mid[0].min_eigenvalue, 1e-12);

    const auto rows = sweep_g_abcd(linear_grid(-1, 1, 2), linear_grid(-1, 1, 3), 0.6);
    ASSERT_EQ(rows.size(), 12u);
    EXPECT_EQ(rows[0].parameters.size(), 4u);
    EXPECT_DOUBLE_EQ(rows[1].parameters[2].second, -1.0 / 3);
    EXPECT_DOUBLE_EQ(rows[1].parameters[3].second, rows[1].parameters[0].second);
}

TEST(GAbcd, FrozenCsvAgreesWithOracle) {
    std::ifstream in(std::string(PMAP_TEST_DATA) + "/gabcd_b0.6.csv");
    ASSERT_TRUE(in);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "a,b,c,d,min_eigenvalue");
    int row = 0;
    while (std::getline(in, line)) {
        if (row++ % 83 != 0) continue;
        double v[5];
        char comma;
        std::istringstream ss(line);
        ss >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3] >> comma >> v[4];
        const auto rho = g_abcd(v[0], v[1], v[2], v[3]);
        EXPECT_NEAR(min_eigenvalue(phi_oracle(rho.matrix(), 4, kReps4, 1.5)), v[4], 1e-12) << line;
    }
    EXPECT_EQ(row, 41 * 41);
}
