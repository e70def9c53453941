#pragma once

#include <Eigen/Core>
#include <vector>

#include "npspec/conformal.hpp"
#include "npspec/types.hpp"

namespace npspec {

/// Monomial coefficients of the Faber polynomials F_0 ... F_N of a map.
/// Row m holds the coefficients of F_m in ascending degree; every row is
/// monic. Note that monomial evaluation of high-degree rows is badly
/// conditioned near the domain; value-space evaluation (faber_values) is
/// the stable route there.
struct FaberTable {
    int max_degree = 0;
    std::vector<std::vector<Complex>> coeffs;

    /// Horner evaluation of F_m at z.
    Complex evaluate(int m, Complex z) const;
    /// Horner evaluation of F_m'(z).
    Complex evaluate_derivative(int m, Complex z) const;
};

/// Grunsky coefficients c_{m,k}, 1 <= m,k <= N, of an exterior map,
/// accessed with 1-based indices to match the generating relation
/// F_m(Psi(w)) - w^m = sum_k c_{m,k} w^{-k}.
struct GrunskyTable {
    int size = 0;
    double gamma = 1.0;
    Eigen::MatrixXcd c;
    bool aliasing_warning = false;  // set by the composition path only

    Complex at(int m, int k) const { return c(m - 1, k - 1); }
};

/// Symmetrized coefficients mu_{m,k} = sqrt(k/m) c_{m,k} with
/// mu_{m,k} = mu_{k,m} exact by construction.
struct SymmetrizedGrunsky {
    int size = 0;
    double gamma = 1.0;
    Eigen::MatrixXcd mu;
    double symmetrization_residual = 0.0;  // worst disagreement of the two formulas

    Complex at(int m, int k) const { return mu(m - 1, k - 1); }
};

FaberTable faber_table(const ExteriorMap& map, int max_degree);

/// Values of F_0(z_j) ... F_N(z_j) at arbitrary points, computed by running
/// the defining recursion on values instead of monomial coefficients.
/// Returned matrix has row m = values of F_m. Stable for large degrees.
Eigen::MatrixXcd faber_values(const ExteriorMap& map, int max_degree,
                              const std::vector<Complex>& z);

/// Fills c_{m,k} for 1 <= m,k <= N by the coefficient recursion; the first
/// column is seeded to length 2N-1 so every dependency is available.
GrunskyTable grunsky_table_recursive(const ExteriorMap& map, int n);

/// Independent oracle: evaluates F_m(Psi(w)) - w^m on the circle |w| = R
/// and extracts the negative-power Fourier coefficients. Pass radius <= 0
/// or n_samples <= 0 to get the conditioned defaults R = gamma (1 + 3.5/N)
/// and 8N samples.
GrunskyTable grunsky_table_by_composition(const ExteriorMap& map, int n,
                                          double radius = 0.0,
                                          int n_samples = 0);

/// max_{m,k} |m c_{k,m} - k c_{m,k}|, the (absolute) identity residual.
double grunsky_identity_residual(const GrunskyTable& table);

/// Symmetrizes a table; rejects tables whose identity residual exceeds
/// 1e-10 (1 + max |c|), naming the worst (m, k) pair.
SymmetrizedGrunsky symmetrize(const GrunskyTable& table);

/// Row sums sum_k |mu_{m,k} gamma^{-(m+k)}|^2, one entry per row m;
/// each must be <= 1 for a univalent map.
std::vector<double> row_l2_report(const SymmetrizedGrunsky& mu);

}  // namespace npspec
