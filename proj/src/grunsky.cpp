#include "npspec/grunsky.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace npspec {

Complex FaberTable::evaluate(int m, Complex z) const {
    const auto& row = coeffs.at(static_cast<std::size_t>(m));
    Complex value = 0.0;
    for (auto it = row.rbegin(); it != row.rend(); ++it) value = value * z + *it;
    return value;
}

Complex FaberTable::evaluate_derivative(int m, Complex z) const {
    const auto& row = coeffs.at(static_cast<std::size_t>(m));
    Complex value = 0.0;
    for (std::size_t j = row.size(); j-- > 1;) {
        value = value * z + static_cast<double>(j) * row[j];
    }
    return value;
}

FaberTable faber_table(const ExteriorMap& map, int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("faber_table: degree must be >= 0");
    FaberTable table;
    table.max_degree = max_degree;
    table.coeffs.resize(static_cast<std::size_t>(max_degree) + 1);
    table.coeffs[0] = {Complex(1.0, 0.0)};
    const auto& a = map.coefficients();
    const auto coeff = [&](int s) -> Complex {
        if (s == 0) return map.a0();
        if (s <= static_cast<int>(a.size())) return a[static_cast<std::size_t>(s - 1)];
        return 0.0;
    };
    // F_{n+1}(z) = z F_n(z) - sum_{s=0}^{n} a_s F_{n-s}(z) - n a_n
    for (int n = 0; n < max_degree; ++n) {
        std::vector<Complex> next(static_cast<std::size_t>(n) + 2, Complex(0.0, 0.0));
        const auto& fn = table.coeffs[static_cast<std::size_t>(n)];
        for (std::size_t j = 0; j < fn.size(); ++j) next[j + 1] = fn[j];
        for (int s = 0; s <= n; ++s) {
            const Complex as = coeff(s);
            if (as == Complex(0.0, 0.0)) continue;
            const auto& f = table.coeffs[static_cast<std::size_t>(n - s)];
            for (std::size_t j = 0; j < f.size(); ++j) next[j] -= as * f[j];
        }
        next[0] -= static_cast<double>(n) * coeff(n);
        table.coeffs[static_cast<std::size_t>(n) + 1] = std::move(next);
    }
    return table;
}

Eigen::MatrixXcd faber_values(const ExteriorMap& map, int max_degree,
                              const std::vector<Complex>& z) {
    if (max_degree < 0) throw std::invalid_argument("faber_values: degree must be >= 0");
    const auto n_points = static_cast<Eigen::Index>(z.size());
    Eigen::MatrixXcd values(max_degree + 1, n_points);
    values.row(0).setOnes();
    const auto& a = map.coefficients();
    const auto coeff = [&](int s) -> Complex {
        if (s == 0) return map.a0();
        if (s <= static_cast<int>(a.size())) return a[static_cast<std::size_t>(s - 1)];
        return 0.0;
    };
    for (int n = 0; n < max_degree; ++n) {
        for (Eigen::Index j = 0; j < n_points; ++j) {
            Complex next = z[static_cast<std::size_t>(j)] * values(n, j);
            const int s_hi = std::min<int>(n, static_cast<int>(a.size()));
            next -= map.a0() * values(n, j);
            for (int s = 1; s <= s_hi; ++s) {
                next -= a[static_cast<std::size_t>(s - 1)] * values(n - s, j);
            }
            next -= static_cast<double>(n) * coeff(n);
            values(n + 1, j) = next;
        }
    }
    return values;
}

GrunskyTable grunsky_table_recursive(const ExteriorMap& map, int n) {
    if (n < 1) throw std::invalid_argument("grunsky_table_recursive: N must be >= 1");
    const auto& a = map.coefficients();
    const int ncoeff = static_cast<int>(a.size());
    const auto coeff = [&](int s) -> Complex {
        return (s >= 1 && s <= ncoeff) ? a[static_cast<std::size_t>(s - 1)] : Complex(0.0, 0.0);
    };

    // Column k is valid for rows m <= 2N-1-(k-1); column 1 seeds the rest.
    const int rows = 2 * n - 1;
    Eigen::MatrixXcd work = Eigen::MatrixXcd::Zero(rows, n);
    for (int m = 1; m <= rows; ++m) {
        work(m - 1, 0) = static_cast<double>(m) * coeff(m);
    }
    for (int k = 1; k < n; ++k) {
        const int row_limit = rows - k;
        for (int m = 1; m <= row_limit; ++m) {
            Complex value = work(m, k - 1) - coeff(m + k);
            const int s_lo = std::max(1, m - ncoeff);
            for (int s = s_lo; s <= m - 1; ++s) {
                value += coeff(m - s) * work(s - 1, k - 1);
            }
            const int t_lo = std::max(1, k - ncoeff);
            for (int s = t_lo; s <= k - 1; ++s) {
                value -= coeff(k - s) * work(m - 1, s - 1);
            }
            work(m - 1, k) = value;
        }
    }

    GrunskyTable table;
    table.size = n;
    table.gamma = map.gamma();
    table.c = work.topRows(n);
    return table;
}

GrunskyTable grunsky_table_by_composition(const ExteriorMap& map, int n,
                                          double radius, int n_samples) {
    if (n < 1) throw std::invalid_argument("grunsky_table_by_composition: N must be >= 1");
    const double gamma = map.gamma();
    if (radius <= 0.0) {
        // keep R^{2N} modest so the F_m(Psi(w)) - w^m cancellation stays
        // well below the extraction tolerance
        radius = gamma * (1.0 + 3.5 / static_cast<double>(n));
    }
    if (radius <= gamma) {
        throw std::invalid_argument("grunsky_table_by_composition: R must exceed gamma");
    }
    if (n_samples <= 0) n_samples = std::max(64, 8 * n);
    if (n_samples < 4 * n) {
        throw std::invalid_argument("grunsky_table_by_composition: need >= 4N samples");
    }

    std::vector<Complex> w(static_cast<std::size_t>(n_samples));
    std::vector<Complex> z(static_cast<std::size_t>(n_samples));
    for (int j = 0; j < n_samples; ++j) {
        w[static_cast<std::size_t>(j)] = std::polar(radius, kTwoPi * j / n_samples);
        z[static_cast<std::size_t>(j)] = map.evaluate(w[static_cast<std::size_t>(j)]);
    }
    const Eigen::MatrixXcd faber = faber_values(map, n, z);

    GrunskyTable table;
    table.size = n;
    table.gamma = gamma;
    table.c.resize(n, n);

    std::vector<Complex> wpow(static_cast<std::size_t>(n_samples), Complex(1.0, 0.0));
    std::vector<Complex> g(static_cast<std::size_t>(n_samples));
    for (int m = 1; m <= n; ++m) {
        for (int j = 0; j < n_samples; ++j) {
            wpow[static_cast<std::size_t>(j)] *= w[static_cast<std::size_t>(j)];
            g[static_cast<std::size_t>(j)] =
                faber(m, j) - wpow[static_cast<std::size_t>(j)];
        }
        // c_{m,k} R^{-k} is the coefficient of e^{-ik theta}
        for (int k = 1; k <= n; ++k) {
            Complex acc = 0.0;
            for (int j = 0; j < n_samples; ++j) {
                const double phase = kTwoPi * j * static_cast<double>(k) / n_samples;
                acc += g[static_cast<std::size_t>(j)] * std::polar(1.0, phase);
            }
            table.c(m - 1, k - 1) =
                acc * std::pow(radius, static_cast<double>(k)) / static_cast<double>(n_samples);
        }
    }

    // flag likely aliasing: last-column magnitudes that have not decayed
    // below the wrap-around attenuation (gamma/R)^{n_samples - N}
    double worst = 0.0;
    for (int m = 1; m <= n; ++m) {
        const double normalized =
            std::abs(table.c(m - 1, n - 1)) * std::pow(gamma, -(m + n));
        worst = std::max(worst, normalized);
    }
    const double attenuation =
        std::pow(gamma / radius, static_cast<double>(n_samples - n));
    table.aliasing_warning = worst * attenuation > 1e-12;
    return table;
}

double grunsky_identity_residual(const GrunskyTable& table) {
    double worst = 0.0;
    for (int m = 1; m <= table.size; ++m) {
        for (int k = 1; k <= table.size; ++k) {
            const double res =
                std::abs(static_cast<double>(m) * table.at(k, m) -
                         static_cast<double>(k) * table.at(m, k));
            worst = std::max(worst, res);
        }
    }
    return worst;
}

SymmetrizedGrunsky symmetrize(const GrunskyTable& table) {
    const double max_c = table.c.cwiseAbs().maxCoeff();
    const double tolerance = 1e-10 * (1.0 + max_c);
    double worst = 0.0;
    int worst_m = 1, worst_k = 1;
    for (int m = 1; m <= table.size; ++m) {
        for (int k = 1; k <= table.size; ++k) {
            const double res =
                std::abs(static_cast<double>(m) * table.at(k, m) -
                         static_cast<double>(k) * table.at(m, k));
            if (res > worst) {
                worst = res;
                worst_m = m;
                worst_k = k;
            }
        }
    }
    if (worst > tolerance) {
        throw std::invalid_argument(
            "symmetrize: Grunsky identity residual " + std::to_string(worst) +
            " at (m,k)=(" + std::to_string(worst_m) + "," + std::to_string(worst_k) +
            ") exceeds tolerance");
    }

    SymmetrizedGrunsky sym;
    sym.size = table.size;
    sym.gamma = table.gamma;
    sym.mu.resize(table.size, table.size);
    double residual = 0.0;
    for (int m = 1; m <= table.size; ++m) {
        for (int k = m; k <= table.size; ++k) {
            const double md = static_cast<double>(m);
            const double kd = static_cast<double>(k);
            const Complex from_mk = std::sqrt(kd / md) * table.at(m, k);
            const Complex from_km = std::sqrt(md / kd) * table.at(k, m);
            const Complex value = 0.5 * (from_mk + from_km);
            residual = std::max(residual, std::abs(from_mk - from_km));
            sym.mu(m - 1, k - 1) = value;
            sym.mu(k - 1, m - 1) = value;
        }
    }
    sym.symmetrization_residual = residual;
    return sym;
}

std::vector<double> row_l2_report(const SymmetrizedGrunsky& mu) {
    std::vector<double> rows(static_cast<std::size_t>(mu.size), 0.0);
    for (int m = 1; m <= mu.size; ++m) {
        double sum = 0.0;
        for (int k = 1; k <= mu.size; ++k) {
            const double term =
                std::abs(mu.at(m, k)) * std::pow(mu.gamma, -(m + k));
            sum += term * term;
        }
        rows[static_cast<std::size_t>(m - 1)] = sum;
    }
    return rows;
}

}  // namespace npspec
