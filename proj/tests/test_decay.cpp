#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "npspec/decay.hpp"
#include "npspec/nystrom.hpp"

using namespace npspec;

namespace {

Spectrum ellipse_spectrum(int n) {
    return spectrum(assemble(symmetrize(grunsky_table_recursive(make_ellipse(0.5), n))));
}

}  // namespace

TEST_CASE("order_eigenvalues is a permutation with the documented layout") {
    Spectrum raw;
    raw.size = 3;
    raw.eigenvalues = {-0.125, 0.25, 0.125, -0.25, 0.0625, -0.0625};
    const Spectrum ordered = order_eigenvalues(raw);
    const std::vector<double> expected = {0.25, -0.25, 0.125, -0.125, 0.0625, -0.0625};
    CHECK(ordered.eigenvalues == expected);

    auto sorted_raw = raw.eigenvalues;
    auto sorted_out = ordered.eigenvalues;
    std::sort(sorted_raw.begin(), sorted_raw.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    CHECK(sorted_raw == sorted_out);  // multiset unchanged

    const Spectrum zeros = order_eigenvalues(Spectrum{2, {0.0, 0.0, 0.0, 0.0}, {}, 0.5, 0.0});
    CHECK(zeros.eigenvalues == std::vector<double>{0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("order_eigenvalues reports oracle pairing jitter") {
    Spectrum raw;
    raw.size = 2;
    raw.eigenvalues = {0.25, -0.2500000031, 0.125, -0.1249999942};
    const Spectrum ordered = order_eigenvalues(raw);
    CHECK(ordered.pairing_residual == doctest::Approx(5.8e-9).epsilon(0.1));
    CHECK(ordered.eigenvalues[0] == 0.25);
}

TEST_CASE("exponential fit on the ellipse is exact") {
    const Spectrum spec = ellipse_spectrum(24);
    const DecayReport report = fit_decay(spec, DecayModel::Exponential, 1, 12);
    CHECK(std::abs(report.slope - std::log(0.5)) < 1e-10);
    CHECK(report.residual < 1e-9);
    CHECK(std::abs(std::exp(report.intercept) - 0.5) < 1e-9);
}

TEST_CASE("fit rejects zero eigenvalues") {
    const Spectrum disk =
        spectrum(assemble(symmetrize(grunsky_table_recursive(make_disk(), 8))));
    CHECK_THROWS_AS((void)fit_decay(disk, DecayModel::Power, 1, 4),
                    std::invalid_argument);
}

TEST_CASE("power fit slope for the beta=4 powerlaw preset") {
    const ExteriorMap map = make_powerlaw(0.2, 4.0, 64);
    const Spectrum spec =
        spectrum(assemble(symmetrize(grunsky_table_recursive(map, 64))));
    const DecayReport report = fit_decay(spec, DecayModel::Power, 4, 24);
    CHECK(report.slope <= -1.5 + 0.3);
}

TEST_CASE("bound constants") {
    SUBCASE("ellipse: geometric decay beats any power envelope") {
        const Spectrum spec = ellipse_spectrum(20);
        const double c = bound_constant(spec, 1.0, 0.5, 1, 20);
        CHECK(c > 0.0);
        for (int k = 1; k <= 20; ++k) {
            const double magnitude = std::abs(spec.eigenvalues[2 * k - 1]);
            CHECK(magnitude <= c * std::pow(k, -1.0) + 1e-15);
        }
    }
    SUBCASE("disk constant is zero") {
        const Spectrum disk =
            spectrum(assemble(symmetrize(grunsky_table_recursive(make_disk(), 8))));
        CHECK(bound_constant(disk, 1.0, 0.5, 1, 8) == 0.0);
    }
    SUBCASE("precondition p + alpha > 1/2") {
        const Spectrum spec = ellipse_spectrum(8);
        CHECK_THROWS_AS((void)bound_constant(spec, 0.0, 0.25, 1, 4),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)bound_constant(spec, -1.0, 0.5, 1, 4),
                        std::invalid_argument);
    }
    SUBCASE("plateau under window doubling on the powerlaw preset") {
        const ExteriorMap map = make_powerlaw(0.2, 4.0, 64);
        const Spectrum spec =
            spectrum(assemble(symmetrize(grunsky_table_recursive(map, 64))));
        const double c16 = bound_constant(spec, 1.0, 0.5, 1, 16);
        const double c32 = bound_constant(spec, 1.0, 0.5, 1, 32);
        CHECK(c32 <= c16 * 1.1);
        CHECK(c32 >= c16);  // growing windows can only raise the max
    }
}

TEST_CASE("lemma constant") {
    SUBCASE("ellipse closed form") {
        // the inner sum is diagonal: M = max_s 0.25^s s^{2(p+alpha)}
        const GrunskyTable table = grunsky_table_recursive(make_ellipse(0.5), 64);
        const LemmaConstantReport report = lemma_constant(table, 1.0, 0.5, 16);
        double expected = 0.0;
        for (int s = 1; s <= 16; ++s) {
            expected = std::max(expected, std::pow(0.25, s) * std::pow(s, 3.0));
        }
        CHECK(std::abs(report.m_constant - expected) < 1e-10);
        CHECK(report.worst_pair.first == 2);
        CHECK(report.worst_pair.second == 2);
    }
    SUBCASE("disk constant is zero") {
        const GrunskyTable table = grunsky_table_recursive(make_disk(), 32);
        CHECK(lemma_constant(table, 1.0, 0.5, 8).m_constant == 0.0);
    }
    SUBCASE("plateau when S doubles on the powerlaw preset") {
        const GrunskyTable table = grunsky_table_recursive(make_powerlaw(0.2, 4.0, 64), 64);
        const double m16 = lemma_constant(table, 1.0, 0.5, 16).m_constant;
        const double m32 = lemma_constant(table, 1.0, 0.5, 32).m_constant;
        CHECK(m32 <= 1.1 * m16);
        CHECK(m32 >= m16);
    }
}

TEST_CASE("tail versus eigenvalue study") {
    SUBCASE("ellipse: the two sides coincide") {
        const SymmetrizedGrunsky mu =
            symmetrize(grunsky_table_recursive(make_ellipse(0.5), 20));
        const auto rows = tail_vs_eigenvalue_study(mu, {1, 3, 5, 9});
        for (const auto& row : rows) {
            CHECK(std::abs(row.lambda - row.tail) < 1e-12);
            CHECK(row.tail == doctest::Approx(0.5 * std::pow(0.5, row.n_cut + 1))
                                  .epsilon(1e-12));
        }
    }
    SUBCASE("disk: zero on both sides") {
        const SymmetrizedGrunsky mu = symmetrize(grunsky_table_recursive(make_disk(), 8));
        for (const auto& row : tail_vs_eigenvalue_study(mu, {0, 2, 4})) {
            CHECK(row.tail == 0.0);
            CHECK(row.lambda == 0.0);
        }
    }
    SUBCASE("powerlaw: strict inequality observed") {
        const SymmetrizedGrunsky mu =
            symmetrize(grunsky_table_recursive(make_powerlaw(0.2, 4.0, 64), 48));
        for (const auto& row : tail_vs_eigenvalue_study(mu, {8, 16, 32})) {
            CHECK(row.lambda <= row.tail + 1e-10);
            CHECK(row.lambda < row.tail);
        }
    }
}

TEST_CASE("ordering an oracle spectrum keeps Weyl-Courant consistency") {
    const ExteriorMap map = make_ellipse(0.5);
    const Spectrum oracle = oracle_spectrum(build_kernel_matrix(map, 256), 8);
    const Spectrum ordered = order_eigenvalues(oracle);
    for (std::size_t i = 0; i + 1 < ordered.eigenvalues.size(); i += 2) {
        CHECK(std::abs(ordered.eigenvalues[i]) >=
              std::abs(ordered.eigenvalues[i + 1]) - 1e-12);
    }
}
