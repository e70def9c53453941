#include <doctest.h>

#include <cmath>

#include "npspec/layer_potential.hpp"
#include "npspec/np_spectrum.hpp"

using namespace npspec;

TEST_CASE("boundary classifier") {
    const ExteriorMap map = make_ellipse(0.5);
    const BoundaryClassifier classifier(map);
    CHECK(classifier.classify(Complex(0.0, 0.0)) == Side::Interior);
    CHECK(classifier.classify(Complex(1.2, 0.0)) == Side::Interior);
    CHECK(classifier.classify(Complex(2.0, 0.0)) == Side::Exterior);
    CHECK(classifier.classify(Complex(0.0, 0.7)) == Side::Exterior);
    CHECK(classifier.classify(Complex(1.5, 0.0)) == Side::Boundary);
}

TEST_CASE("map inversion by Newton iteration") {
    const ExteriorMap map = make_ellipse(0.5);
    for (const double rho : {0.01, 0.3, 1.2}) {
        for (int j = 0; j < 7; ++j) {
            const Complex w = std::polar(std::exp(rho), kTwoPi * j / 7.0);
            const Complex z = map.evaluate(w);
            CHECK(std::abs(invert_map(map, z) - w) < 1e-10);
        }
    }
    CHECK_THROWS_AS((void)invert_map(map, Complex(0.0, 0.0)), std::runtime_error);
}

TEST_CASE("single layer values") {
    SUBCASE("m = 0 is ln gamma inside and rho outside") {
        for (const double gamma : {1.0, 1.7}) {
            const ExteriorMap map = make_disk(gamma);
            const GrunskyTable table = grunsky_table_recursive(map, 8);
            const LayerPotentialEvaluator eval(map, table);
            CHECK(eval.interior(0, Complex(0.0, 0.0)).value ==
                  Complex(std::log(gamma), 0.0));
            const double rho = map.rho0() + 0.4;
            CHECK(eval.exterior(0, rho, 1.1).value == Complex(rho, 0.0));
        }
    }
    SUBCASE("disk exterior collapses to one term") {
        const ExteriorMap map = make_disk();
        const GrunskyTable table = grunsky_table_recursive(map, 8);
        const LayerPotentialEvaluator eval(map, table);
        const double rho = 0.35, theta = 0.9;
        const Complex expected = -0.5 * std::exp(Complex(-rho, theta));
        CHECK(std::abs(eval.exterior(1, rho, theta).value - expected) < 1e-14);
        // m < 0 takes the conjugate route
        CHECK(std::abs(eval.exterior(-1, rho, theta).value - std::conj(expected)) <
              1e-14);
    }
    SUBCASE("ellipse interior at the origin") {
        const ExteriorMap map = make_ellipse(0.5);
        const GrunskyTable table = grunsky_table_recursive(map, 8);
        const LayerPotentialEvaluator eval(map, table);
        CHECK(std::abs(eval.interior(1, Complex(0.0, 0.0)).value) < 1e-15);
        CHECK_THROWS_AS((void)eval.interior(1, Complex(5.0, 0.0)),
                        std::invalid_argument);
    }
    SUBCASE("at_point dispatches and stays continuous across the boundary") {
        const ExteriorMap map = make_ellipse(0.5);
        const GrunskyTable table = grunsky_table_recursive(map, 64);
        const LayerPotentialEvaluator eval(map, table);
        const PotentialEvaluation inside = eval.at_point(2, Complex(1.49, 0.0));
        const PotentialEvaluation outside = eval.at_point(2, Complex(1.51, 0.0));
        CHECK(inside.side == Side::Interior);
        CHECK(outside.side == Side::Exterior);
        CHECK(std::abs(inside.value - outside.value) < 2e-2);
        CHECK(eval.at_point(2, Complex(1.5, 0.0)).side == Side::Boundary);
    }
}

TEST_CASE("exterior series truncation is controlled by the geometric bound") {
    const ExteriorMap map = make_powerlaw(0.2, 3.0, 64);
    const GrunskyTable table = grunsky_table_recursive(map, 128);
    const LayerPotentialEvaluator eval(map, table);
    const double delta = 0.25;
    const Complex reference = eval.exterior(3, delta, 0.7, 128).value;
    double previous_bound = 1e300;
    for (int terms = 4; terms <= 32; terms *= 2) {
        const PotentialEvaluation trunc = eval.exterior(3, delta, 0.7, terms);
        CHECK(std::abs(trunc.value - reference) <= trunc.tail_bound + 1e-15);
        // bound decays geometrically at rate e^{-delta}
        CHECK(trunc.tail_bound < previous_bound);
        previous_bound = trunc.tail_bound;
    }
    const PotentialEvaluation a = eval.exterior(3, delta, 0.7, 10);
    const PotentialEvaluation b = eval.exterior(3, delta, 0.7, 11);
    CHECK(b.tail_bound / a.tail_bound == doctest::Approx(std::exp(-delta)).epsilon(1e-10));
}

TEST_CASE("continuity residuals") {
    SUBCASE("m = 0 residual is exactly eps") {
        const ExteriorMap map = make_ellipse(0.5);
        const GrunskyTable table = grunsky_table_recursive(map, 16);
        const LayerPotentialEvaluator eval(map, table);
        CHECK(eval.continuity_residual(0, 32, 1e-3) == doctest::Approx(1e-3).epsilon(1e-10));
    }
    SUBCASE("disk residual is second order") {
        const ExteriorMap map = make_disk();
        const GrunskyTable table = grunsky_table_recursive(map, 16);
        const LayerPotentialEvaluator eval(map, table);
        CHECK(eval.continuity_residual(1, 64, 1e-3) <= 2e-3);
        CHECK(eval.continuity_residual(1, 64, 1e-3) <= 1e-6);  // actually O(eps^2)
    }
    SUBCASE("ellipse residual is first order with ratio near 2") {
        const ExteriorMap map = make_ellipse(0.5);
        const GrunskyTable table = grunsky_table_recursive(map, 256);
        const LayerPotentialEvaluator eval(map, table);
        const double r1 = eval.continuity_residual(2, 256, 1e-3);
        const double r2 = eval.continuity_residual(2, 256, 5e-4);
        CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.15));
    }
}

TEST_CASE("np_via_jump matches the matrix action") {
    SUBCASE("ellipse m = 1 action is 0.25 zeta_{-1}") {
        const ExteriorMap map = make_ellipse(0.5);
        const GrunskyTable table = grunsky_table_recursive(map, 256);
        const LayerPotentialEvaluator eval(map, table);
        for (int j = 0; j < 8; ++j) {
            const double theta = kTwoPi * j / 8.0;
            const JumpProbe probe = eval.np_via_jump(1, theta, 2e-4);
            const double h = map.scale_factor(0.0, theta);
            const Complex expected = 0.25 * std::exp(Complex(0.0, -theta)) / h;
            CHECK(std::abs(probe.value - expected) < 1e-6);
            CHECK(probe.converged);
        }
    }
    SUBCASE("disk action vanishes for m >= 1") {
        const ExteriorMap map = make_disk();
        const GrunskyTable table = grunsky_table_recursive(map, 64);
        const LayerPotentialEvaluator eval(map, table);
        CHECK(std::abs(eval.np_via_jump(2, 0.7, 1e-4).value) < 1e-10);
    }
    SUBCASE("m = 0 recovers zeta_0 / 2") {
        const ExteriorMap map = make_ellipse(0.5);
        const GrunskyTable table = grunsky_table_recursive(map, 64);
        const LayerPotentialEvaluator eval(map, table);
        const double theta = 0.3;
        const JumpProbe probe = eval.np_via_jump(0, theta, 1e-4);
        const Complex expected = 0.5 / map.scale_factor(0.0, theta);
        CHECK(std::abs(probe.value - expected) < 1e-9);
    }
    SUBCASE("pipeline closure against apply on the powerlaw preset") {
        const ExteriorMap map = make_powerlaw(0.2, 4.0, 64);
        const GrunskyTable table = grunsky_table_recursive(map, 256);
        const LayerPotentialEvaluator eval(map, table);
        const TruncatedNPMatrix mat =
            assemble(symmetrize(grunsky_table_recursive(map, 64)));
        // apply to the zeta_1 unit vector and evaluate through the basis
        DensityCoefficients phi;
        phi.plus = Eigen::VectorXcd::Zero(64);
        phi.minus = Eigen::VectorXcd::Zero(64);
        phi.plus(0) = 1.0;
        const DensityCoefficients image = apply(mat, phi);
        for (const double theta : {0.0, 1.1, 2.9, 4.4}) {
            const double h = map.scale_factor(0.0, theta);
            Complex through_matrix = 0.0;
            for (int k = 1; k <= 64; ++k) {
                through_matrix += image.minus(k - 1) * std::sqrt(static_cast<double>(k)) *
                                  std::exp(Complex(0.0, -k * theta)) / h;
                through_matrix += image.plus(k - 1) * std::sqrt(static_cast<double>(k)) *
                                  std::exp(Complex(0.0, k * theta)) / h;
            }
            const JumpProbe probe = eval.np_via_jump(1, theta, 2e-4);
            CHECK(std::abs(probe.value - through_matrix) < 1e-5);
        }
    }
    SUBCASE("negative m takes the conjugate block") {
        const ExteriorMap map = make_ellipse(0.5);
        const GrunskyTable table = grunsky_table_recursive(map, 128);
        const LayerPotentialEvaluator eval(map, table);
        const double theta = 1.3;
        const JumpProbe probe = eval.np_via_jump(-1, theta, 2e-4);
        CHECK(std::abs(probe.value - eval.matrix_action(-1, theta)) < 1e-6);
    }
}
