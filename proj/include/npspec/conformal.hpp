#pragma once

#include <string>
#include <utility>
#include <vector>

#include "npspec/types.hpp"

namespace npspec {

/// Result of the coefficient-based injectivity tests for an exterior map.
///
/// `necessary_margin` is gamma^2 - sum_k k|a_k|^2 gamma^{-2k}; a negative
/// value contradicts the area theorem and the map cannot be univalent.
/// `sufficient_margin` is 1 - sum_k k|a_k| gamma^{-(k+1)}; a positive value
/// certifies injectivity on |w| >= gamma via the difference-quotient bound.
struct UnivalenceReport {
    enum class Verdict { Pass, PassUnproven, Fail };
    Verdict verdict = Verdict::Fail;
    double necessary_margin = 0.0;
    double sufficient_margin = 0.0;

    bool accepted() const { return verdict != Verdict::Fail; }
    bool proven() const { return verdict == Verdict::Pass; }
};

/// One point of a discretized boundary, carrying the curvilinear metric data.
struct BoundarySample {
    double theta = 0.0;      // parameter angle in [0, 2pi)
    Complex point;           // Psi(gamma e^{i theta})
    double h = 0.0;          // scale factor |Psi'| * gamma > 0
    Complex normal;          // outward unit normal
    double curvature = 0.0;  // signed curvature (positive for a convex arc)
};

/// Exterior conformal map Psi(w) = w + a0 + sum_{k>=1} a_k w^{-k} from
/// {|w| > gamma} onto the complement of a bounded simply connected domain.
///
/// The coefficient list is finite; every a_k beyond the stored length is
/// exactly zero. Construction rejects gamma <= 0 and coefficient sets that
/// violate the area-theorem necessary condition.
class ExteriorMap {
public:
    ExteriorMap(double gamma, Complex a0, std::vector<Complex> coefficients);

    double gamma() const { return gamma_; }
    double rho0() const;  // ln(gamma), derived
    Complex a0() const { return a0_; }
    const std::vector<Complex>& coefficients() const { return a_; }
    const UnivalenceReport& univalence() const { return univalence_; }

    /// Psi(w); requires |w| >= gamma (throws std::domain_error otherwise).
    Complex evaluate(Complex w) const;

    /// (Psi'(w), Psi''(w)) by termwise differentiation of the Laurent series.
    std::pair<Complex, Complex> derivatives(Complex w) const;

    /// h(rho, theta) = |Psi'(e^{rho + i theta})| e^rho. Throws on a cusp
    /// (|Psi'| below tolerance) and for rho < rho0.
    double scale_factor(double rho, double theta) const;

    /// n equispaced boundary samples theta_j = 2 pi j / n with the point,
    /// scale factor, outward normal and curvature at each node. n >= 4.
    std::vector<BoundarySample> boundary_samples(int n) const;

private:
    double gamma_;
    Complex a0_;
    std::vector<Complex> a_;
    UnivalenceReport univalence_;
};

/// Computes both injectivity margins for arbitrary coefficient data,
/// before an ExteriorMap is constructed from it.
UnivalenceReport univalence_check(double gamma, const Complex& a0,
                                  const std::vector<Complex>& coefficients);
inline UnivalenceReport univalence_check(const ExteriorMap& map) {
    return map.univalence();
}

/// Parses the JSON domain document {"gamma": g, "a0": [re, im],
/// "a": [[re, im], ...]}. Throws std::invalid_argument on schema errors,
/// gamma <= 0, or an area-theorem violation (message reports the sum).
ExteriorMap parse_domain(const std::string& text);
ExteriorMap load_domain(const std::string& path);

/// Serializes a map back to the canonical JSON document.
std::string domain_to_json(const ExteriorMap& map);

// Preset factories addressable from the CLI.
ExteriorMap make_disk(double gamma = 1.0);
ExteriorMap make_ellipse(double a, double gamma = 1.0);
ExteriorMap make_powerlaw(double c, double beta, int length, double gamma = 1.0);
ExteriorMap make_random(std::uint64_t seed, int length, double eta = 0.7,
                        double gamma = 1.0);

/// Parses a preset string such as "disk", "ellipse:a=0.5,gamma=1",
/// "powerlaw:c=0.2,beta=4,L=64,gamma=1" or "random:seed=7,L=16,eta=0.7".
ExteriorMap parse_preset(const std::string& spec);

}  // namespace npspec
