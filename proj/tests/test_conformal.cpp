#include <doctest.h>

#include <cmath>
#include <random>

#include "npspec/conformal.hpp"
#include "npspec/types.hpp"

using namespace npspec;

namespace {

// central finite differences of Psi along rho and theta, for checking the
// analytic scale factor against an independent route
double fd_scale_factor(const ExteriorMap& map, double rho, double theta, double step) {
    const auto at = [&](double r, double t) {
        return map.evaluate(std::polar(std::exp(r), t));
    };
    const Complex drho = (at(rho + step, theta) - at(rho - step, theta)) / (2.0 * step);
    return std::abs(drho);
}

}  // namespace

TEST_CASE("ellipse map evaluation") {
    const ExteriorMap map = make_ellipse(0.5);
    CHECK(map.evaluate(1.0) == Complex(1.5, 0.0));
    CHECK(std::abs(map.evaluate(Complex(0.0, 1.0)) - Complex(0.0, 0.5)) < 1e-15);
    const ExteriorMap disk = make_disk();
    CHECK(disk.evaluate(Complex(0.3, 2.0)) == Complex(0.3, 2.0));
    CHECK_THROWS_AS((void)map.evaluate(Complex(0.2, 0.0)), std::domain_error);
}

TEST_CASE("derivatives of the Laurent series") {
    const ExteriorMap map = make_ellipse(0.5);
    const auto [first, second] = map.derivatives(1.0);
    CHECK(std::abs(first - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(second - Complex(1.0, 0.0)) < 1e-15);

    const ExteriorMap disk = make_disk();
    const auto [d1, d2] = disk.derivatives(2.0);
    CHECK(d1 == Complex(1.0, 0.0));
    CHECK(d2 == Complex(0.0, 0.0));

    const ExteriorMap two(1.0, 0.0, {Complex(0.3, 0.0), Complex(0.1, 0.0)});
    CHECK(std::abs(two.derivatives(1.0).first - Complex(0.5, 0.0)) < 1e-15);

    // termwise differentiation against central differences of evaluate
    const double step = 1e-6;
    const Complex w(1.3, 0.4);
    const Complex fd =
        (two.evaluate(w + step) - two.evaluate(w - step)) / (2.0 * step);
    CHECK(std::abs(two.derivatives(w).first - fd) < 1e-9);
}

TEST_CASE("scale factor") {
    const ExteriorMap disk = make_disk();
    CHECK(disk.scale_factor(0.0, 0.3) == doctest::Approx(1.0).epsilon(1e-14));
    const ExteriorMap map = make_ellipse(0.5);
    CHECK(map.scale_factor(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(map.scale_factor(0.0, kPi / 2) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_THROWS_AS((void)map.scale_factor(-0.5, 0.0), std::domain_error);
}

TEST_CASE("conformality: finite differences match the scale factor") {
    const ExteriorMap map(1.0, Complex(0.1, -0.2),
                          {Complex(0.2, 0.1), Complex(0.0, -0.15), Complex(0.05, 0.0)});
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> rho_dist(0.05, 1.5);
    std::uniform_real_distribution<double> theta_dist(0.0, kTwoPi);
    for (int trial = 0; trial < 25; ++trial) {
        const double rho = rho_dist(rng);
        const double theta = theta_dist(rng);
        const double analytic = map.scale_factor(rho, theta);
        const double numeric = fd_scale_factor(map, rho, theta, 1e-5);
        CHECK(std::abs(analytic - numeric) / analytic < 1e-8);
    }
}

TEST_CASE("boundary samples on the unit circle") {
    const ExteriorMap disk = make_disk();
    const auto samples = disk.boundary_samples(4);
    REQUIRE(samples.size() == 4);
    const Complex expected[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(samples[j].point - expected[j]) < 1e-15);
        CHECK(samples[j].h == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(samples[j].normal - expected[j]) < 1e-14);
        CHECK(samples[j].curvature == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("boundary samples on the ellipse") {
    const ExteriorMap map = make_ellipse(0.5);
    const auto samples = map.boundary_samples(4);
    CHECK(std::abs(samples[0].point - Complex(1.5, 0.0)) < 1e-15);
    CHECK(std::abs(samples[0].normal - Complex(1.0, 0.0)) < 1e-14);
    // closed-form curvature A/B^2 and B/A^2 at the axis endpoints
    CHECK(samples[0].curvature == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(samples[1].curvature == doctest::Approx(0.5 / 2.25).epsilon(1e-10));
    for (const auto& s : samples) {
        CHECK(std::abs(std::abs(s.normal) - 1.0) < 1e-12);
    }
}

TEST_CASE("boundary integral of h converges to the arclength at order >= 2") {
    const ExteriorMap map = make_ellipse(0.5);
    // dense trapezoid of h(rho0, theta) as the arclength reference
    const int dense = 4096;
    double reference = 0.0;
    for (int j = 0; j < dense; ++j) {
        reference += map.scale_factor(0.0, kTwoPi * j / dense);
    }
    reference *= kTwoPi / dense;

    const auto polygon_length = [&](int n) {
        const auto samples = map.boundary_samples(n);
        double length = 0.0;
        for (int j = 0; j < n; ++j) {
            length += std::abs(samples[(j + 1) % n].point - samples[j].point);
        }
        return length;
    };
    const double e64 = std::abs(polygon_length(64) - reference);
    const double e128 = std::abs(polygon_length(128) - reference);
    const double e256 = std::abs(polygon_length(256) - reference);
    CHECK(e64 / e128 > 3.0);
    CHECK(e128 / e256 > 3.0);
}

TEST_CASE("univalence margins") {
    const ExteriorMap ellipse = make_ellipse(0.5);
    CHECK(ellipse.univalence().necessary_margin == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(ellipse.univalence().sufficient_margin == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ellipse.univalence().verdict == UnivalenceReport::Verdict::Pass);

    const ExteriorMap disk = make_disk();
    CHECK(disk.univalence().necessary_margin == doctest::Approx(1.0));
    CHECK(disk.univalence().sufficient_margin == doctest::Approx(1.0));

    // a_9 = 0.34 pushes the area sum just past gamma^2
    std::vector<Complex> a(9, 0.0);
    a[8] = 0.34;
    const auto report = univalence_check(1.0, 0.0, a);
    CHECK(report.verdict == UnivalenceReport::Verdict::Fail);
    CHECK(report.necessary_margin == doctest::Approx(1.0 - 9 * 0.34 * 0.34).epsilon(1e-12));
    CHECK_THROWS_AS(ExteriorMap(1.0, 0.0, a), std::invalid_argument);
}

TEST_CASE("domain document parsing") {
    const ExteriorMap map =
        parse_domain(R"({"gamma": 1.0, "a0": [0.0, 0.0], "a": [[0.5, 0.0]]})");
    CHECK(map.gamma() == 1.0);
    REQUIRE(map.coefficients().size() == 1);
    CHECK(map.coefficients()[0] == Complex(0.5, 0.0));

    CHECK_THROWS_AS((void)parse_domain("not json"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_domain(R"({"gamma": -1, "a0": [0,0], "a": []})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)parse_domain(R"({"gamma": 1, "a0": [0,0], "a": [[2.0, 0]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)parse_domain(R"({"gamma": 1, "a0": 3, "a": []})"),
                    std::invalid_argument);

    // round trip through the JSON emitter
    const ExteriorMap again = parse_domain(domain_to_json(map));
    CHECK(again.gamma() == map.gamma());
    CHECK(again.coefficients() == map.coefficients());
}

TEST_CASE("preset parsing") {
    const ExteriorMap ellipse = parse_preset("ellipse:a=0.5,gamma=1");
    CHECK(ellipse.coefficients().size() == 1);
    const ExteriorMap powerlaw = parse_preset("powerlaw:c=0.2,beta=4,L=64,gamma=1");
    CHECK(powerlaw.coefficients().size() == 64);
    CHECK(std::abs(powerlaw.coefficients()[1] - Complex(0.2 / 16.0, 0.0)) < 1e-15);
    CHECK(parse_preset("disk").coefficients().empty());

    const ExteriorMap random_map = parse_preset("random:seed=7,L=16");
    CHECK(random_map.univalence().verdict == UnivalenceReport::Verdict::Pass);
    // deterministic for a fixed seed
    const ExteriorMap again = parse_preset("random:seed=7,L=16");
    CHECK(random_map.coefficients() == again.coefficients());

    CHECK_THROWS_AS((void)parse_preset("hexagon"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_preset("ellipse:radius=2"), std::invalid_argument);
}
