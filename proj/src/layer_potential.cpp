#include "npspec/layer_potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace npspec {

BoundaryClassifier::BoundaryClassifier(const ExteriorMap& map, int n_polygon)
    : boundary_tolerance_(1e-8) {
    const auto samples = map.boundary_samples(n_polygon);
    polygon_.reserve(samples.size());
    for (const auto& s : samples) polygon_.push_back(s.point);
}

double BoundaryClassifier::distance(Complex z) const {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = polygon_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a = polygon_[i];
        const Complex b = polygon_[(i + 1) % n];
        const Complex ab = b - a;
        const double len2 = std::norm(ab);
        double t = len2 > 0.0 ? std::real(std::conj(ab) * (z - a)) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::abs(z - (a + t * ab)));
    }
    return best;
}

Side BoundaryClassifier::classify(Complex z) const {
    if (distance(z) < boundary_tolerance_) return Side::Boundary;
    double winding = 0.0;
    const std::size_t n = polygon_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a = polygon_[i] - z;
        const Complex b = polygon_[(i + 1) % n] - z;
        winding += std::arg(b / a);
    }
    return std::abs(winding) > kPi ? Side::Interior : Side::Exterior;
}

Complex invert_map(const ExteriorMap& map, Complex z) {
    Complex w = z - map.a0();
    const double gamma = map.gamma();
    if (std::abs(w) < 1.05 * gamma) {
        w = (std::abs(w) > 0.0 ? w / std::abs(w) : Complex(1.0, 0.0)) * 1.05 * gamma;
    }
    const double target = 1e-13 * (1.0 + std::abs(z));
    for (int iter = 0; iter < 100; ++iter) {
        const Complex residual = map.evaluate(w) - z;
        if (std::abs(residual) < target) return w;
        const Complex dpsi = map.derivatives(w).first;
        if (std::abs(dpsi) < 1e-14) break;
        Complex next = w - residual / dpsi;
        if (std::abs(next) < gamma) next = next / std::abs(next) * gamma;
        w = next;
    }
    if (std::abs(map.evaluate(w) - z) < 1e-9 * (1.0 + std::abs(z))) return w;
    throw std::runtime_error("invert_map: Newton iteration did not converge");
}

LayerPotentialEvaluator::LayerPotentialEvaluator(const ExteriorMap& map,
                                                 const GrunskyTable& table)
    : map_(map), table_(table), faber_(faber_table(map, table.size)), classifier_(map) {}

PotentialEvaluation LayerPotentialEvaluator::interior(int m, Complex z) const {
    if (classifier_.classify(z) == Side::Exterior) {
        throw std::invalid_argument("interior: point lies outside the domain");
    }
    PotentialEvaluation out;
    out.side = Side::Interior;
    if (m == 0) {
        out.value = std::log(map_.gamma());
        return out;
    }
    const int ma = std::abs(m);
    if (ma > table_.size) throw std::invalid_argument("interior: |m| exceeds table size");
    const Complex fm = faber_.evaluate(ma, z);
    const Complex value =
        -fm / (2.0 * std::sqrt(static_cast<double>(ma)) * std::pow(map_.gamma(), ma));
    out.value = m > 0 ? value : std::conj(value);
    return out;
}

PotentialEvaluation LayerPotentialEvaluator::exterior_series(int m_abs, bool conjugate,
                                                             double rho, double theta,
                                                             int max_terms) const {
    const double gamma = map_.gamma();
    const double rho0 = map_.rho0();
    const double delta = rho - rho0;
    const int cap = max_terms > 0 ? std::min(max_terms, table_.size) : table_.size;

    // sum_k c_{m,k} e^{-k(rho + i theta)}, truncated when the geometric
    // tail bound |c_{m,k}| <= sqrt(m) gamma^{m+k} certifies < 1e-13
    Complex series = 0.0;
    int used = 0;
    double tail = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= cap; ++k) {
        series += table_.at(m_abs, k) * std::exp(Complex(-k * rho, -k * theta));
        used = k;
        if (delta > 0.0) {
            tail = 0.5 * std::exp(-(k + 1) * delta) / (1.0 - std::exp(-delta));
            if (max_terms <= 0 && tail < 1e-13) break;
        }
    }
    const double sqrt_m = std::sqrt(static_cast<double>(m_abs));
    const Complex far_term =
        std::pow(gamma, 2 * m_abs) * std::exp(Complex(-m_abs * rho, m_abs * theta));
    Complex value = -(series + far_term) / (2.0 * sqrt_m * std::pow(gamma, m_abs));
    if (conjugate) value = std::conj(value);

    PotentialEvaluation out;
    out.value = value;
    out.side = Side::Exterior;
    out.terms_used = used;
    out.tail_bound = tail;
    return out;
}

PotentialEvaluation LayerPotentialEvaluator::exterior(int m, double rho, double theta,
                                                      int max_terms) const {
    if (rho < map_.rho0() - 1e-12) {
        throw std::invalid_argument("exterior: rho must be >= rho0");
    }
    if (m == 0) {
        PotentialEvaluation out;
        out.value = rho;  // ln|w|
        out.side = Side::Exterior;
        return out;
    }
    const int ma = std::abs(m);
    if (ma > table_.size) throw std::invalid_argument("exterior: |m| exceeds table size");
    return exterior_series(ma, m < 0, rho, theta, max_terms);
}

PotentialEvaluation LayerPotentialEvaluator::at_point(int m, Complex z) const {
    const Side side = classifier_.classify(z);
    if (side == Side::Interior) return interior(m, z);
    if (side == Side::Boundary) {
        // the single layer potential is continuous across the boundary;
        // evaluate the interior-limit formula and flag the point
        PotentialEvaluation out;
        if (m == 0) {
            out.value = std::log(map_.gamma());
        } else {
            const int ma = std::abs(m);
            if (ma > table_.size) {
                throw std::invalid_argument("at_point: |m| exceeds table size");
            }
            const Complex fm = faber_.evaluate(ma, z);
            const Complex value = -fm / (2.0 * std::sqrt(static_cast<double>(ma)) *
                                         std::pow(map_.gamma(), ma));
            out.value = m > 0 ? value : std::conj(value);
        }
        out.side = Side::Boundary;
        return out;
    }
    const Complex w = invert_map(map_, z);
    return exterior(m, std::log(std::abs(w)), std::arg(w));
}

double LayerPotentialEvaluator::continuity_residual(int m, int n_samples,
                                                    double eps) const {
    if (n_samples < 4) throw std::invalid_argument("continuity_residual: n >= 4");
    if (!(eps > 0.0)) throw std::invalid_argument("continuity_residual: eps > 0");
    const auto samples = map_.boundary_samples(n_samples);
    const double rho0 = map_.rho0();
    double worst = 0.0;
    for (const auto& s : samples) {
        const Complex outside = exterior(m, rho0 + eps, s.theta).value;
        const Complex probe = s.point - eps * s.h * s.normal;
        const Complex inside = interior(m, probe).value;
        worst = std::max(worst, std::abs(outside - inside));
    }
    return worst;
}

Complex LayerPotentialEvaluator::exterior_rho_derivative(int m_abs, bool conjugate,
                                                         double rho,
                                                         double theta) const {
    const double gamma = map_.gamma();
    Complex series = 0.0;
    for (int k = 1; k <= table_.size; ++k) {
        series += static_cast<double>(k) * table_.at(m_abs, k) *
                  std::exp(Complex(-k * rho, -k * theta));
    }
    const double sqrt_m = std::sqrt(static_cast<double>(m_abs));
    const Complex far_term = static_cast<double>(m_abs) * std::pow(gamma, 2 * m_abs) *
                             std::exp(Complex(-m_abs * rho, m_abs * theta));
    Complex value = (series + far_term) / (2.0 * sqrt_m * std::pow(gamma, m_abs));
    return conjugate ? std::conj(value) : value;
}

JumpProbe LayerPotentialEvaluator::np_via_jump(int m, double theta, double eps) const {
    if (!(eps > 0.0)) throw std::invalid_argument("np_via_jump: eps > 0");
    const double rho0 = map_.rho0();
    const int ma = std::abs(m);
    if (ma > table_.size) throw std::invalid_argument("np_via_jump: |m| exceeds table size");

    // exterior one-sided derivative (1/h) dS/drho at rho0 + e, extrapolated
    const auto probe = [&](double e) -> Complex {
        const double rho = rho0 + e;
        const double h = map_.scale_factor(rho, theta);
        if (m == 0) return 1.0 / h;  // S = rho outside
        return exterior_rho_derivative(ma, m < 0, rho, theta) / h;
    };
    const Complex f1 = probe(eps);
    const Complex f2 = probe(0.5 * eps);
    const Complex f3 = probe(0.25 * eps);
    const Complex r1 = 2.0 * f2 - f1;
    const Complex r2 = 2.0 * f3 - f2;
    const Complex ext = (4.0 * r2 - r1) / 3.0;

    JumpProbe out;
    const double d1 = std::abs(f1 - f2);
    const double d2 = std::abs(f2 - f3);
    out.richardson_ratio = d2 > 0.0 ? d1 / d2 : 2.0;
    out.converged = d1 < 1e-12 || (out.richardson_ratio > 1.2 && out.richardson_ratio < 3.5);

    // interior one-sided derivative along the outward normal, exact
    Complex inner = 0.0;
    if (m != 0) {
        const Complex w = std::polar(map_.gamma(), theta);
        const Complex z = map_.evaluate(w);
        const Complex dpsi = map_.derivatives(w).first;
        const Complex normal = w * dpsi / std::abs(w * dpsi);
        const Complex dfm = faber_.evaluate_derivative(ma, z);
        const Complex directional = -dfm * normal / (2.0 * std::sqrt(static_cast<double>(ma)) *
                                                     std::pow(map_.gamma(), ma));
        inner = m > 0 ? directional : std::conj(directional);
    }

    out.value = 0.5 * (ext + inner);
    return out;
}

Complex LayerPotentialEvaluator::matrix_action(int m, double theta) const {
    const int ma = std::abs(m);
    if (ma == 0) {
        return 0.5 / map_.scale_factor(map_.rho0(), theta);
    }
    if (ma > table_.size) {
        throw std::invalid_argument("matrix_action: |m| exceeds table size");
    }
    const double gamma = map_.gamma();
    const double h = map_.scale_factor(map_.rho0(), theta);
    Complex sum = 0.0;
    for (int k = 1; k <= table_.size; ++k) {
        // mu_{k,m} = sqrt(m/k) c_{k,m}
        const Complex mu =
            std::sqrt(static_cast<double>(ma) / static_cast<double>(k)) * table_.at(k, ma);
        const Complex g = 0.5 * mu * std::pow(gamma, -(ma + k));
        const double sqrt_k = std::sqrt(static_cast<double>(k));
        if (m > 0) {
            sum += g * sqrt_k * std::exp(Complex(0.0, -k * theta));  // zeta_{-k}
        } else {
            sum += std::conj(g) * sqrt_k * std::exp(Complex(0.0, k * theta));  // zeta_k
        }
    }
    return sum / h;
}

PotentialEvaluation single_layer(const ExteriorMap& map, const GrunskyTable& table,
                                 int m, Complex z) {
    return LayerPotentialEvaluator(map, table).at_point(m, z);
}

PotentialEvaluation single_layer_exterior(const ExteriorMap& map,
                                          const GrunskyTable& table, int m, double rho,
                                          double theta) {
    return LayerPotentialEvaluator(map, table).exterior(m, rho, theta);
}

double continuity_residual(const ExteriorMap& map, const GrunskyTable& table, int m,
                           int n_samples, double eps) {
    return LayerPotentialEvaluator(map, table).continuity_residual(m, n_samples, eps);
}

JumpProbe np_via_jump(const ExteriorMap& map, const GrunskyTable& table, int m,
                      double theta, double eps) {
    return LayerPotentialEvaluator(map, table).np_via_jump(m, theta, eps);
}

}  // namespace npspec
