#pragma once

#include <Eigen/Core>
#include <vector>

#include "npspec/grunsky.hpp"
#include "npspec/types.hpp"

namespace npspec {

/// Takagi factorization A = U diag(sigma) U^T of a complex symmetric
/// matrix, with U unitary and sigma >= 0 in decreasing order.
struct TakagiFactorization {
    Eigen::MatrixXcd u;
    Eigen::VectorXd sigma;
};

TakagiFactorization takagi(const Eigen::MatrixXcd& a);

/// The N x N block G_{k,m} = mu_{k,m} / (2 gamma^{m+k}) representing the
/// NP operator on span{zeta_{+-k}}: K*[zeta_m] = sum_k G_{k,m} zeta_{-k}
/// and K*[zeta_{-m}] = sum_k conj(G_{k,m}) zeta_k.
struct TruncatedNPMatrix {
    int size = 0;
    double gamma = 1.0;
    Eigen::MatrixXcd g;
};

/// Coefficients of a mean-zero density sum b_m zeta_m, m in
/// {-N..-1, 1..N}; plus(i) = b_{i+1}, minus(i) = b_{-(i+1)}.
/// The K^{-1/2} norm of the density is the l2 norm of the coefficients.
struct DensityCoefficients {
    Eigen::VectorXcd plus;
    Eigen::VectorXcd minus;

    double norm() const;
};

/// Eigenvalues ordered as +s_1, -s_1, +s_2, -s_2, ... with s_1 >= s_2 >= ...,
/// so |lambda_{2k-1}| = |lambda_{2k}| holds exactly. vectors[i] stacks the
/// coefficients of the i-th eigenfunction over (zeta_1..zeta_N,
/// zeta_{-1}..zeta_{-N}); empty for oracle-derived spectra. The eigenvalue
/// 1/2 of the constant-flux direction zeta_0 is reported out of band.
struct Spectrum {
    int size = 0;
    std::vector<double> eigenvalues;
    std::vector<Eigen::VectorXcd> vectors;
    double zeta0_eigenvalue = 0.5;
    double pairing_residual = 0.0;  // nonzero only for oracle input

    double sigma(int i) const { return eigenvalues[2 * static_cast<std::size_t>(i)]; }
};

/// Assembles G from symmetrized coefficients. Rejects inputs failing the
/// row-l2 bound and results violating the operator-norm bound
/// sigma_max <= 1/2 + 1e-12.
TruncatedNPMatrix assemble(const SymmetrizedGrunsky& mu);

/// Full spectrum of the truncated operator via the Takagi factorization of
/// G; every returned pair is residual-checked against the matrix action.
Spectrum spectrum(const TruncatedNPMatrix& mat);

/// Applies the truncated operator to density coefficients.
DensityCoefficients apply(const TruncatedNPMatrix& mat,
                          const DensityCoefficients& phi);

/// Operator norm of the rows k = n_cut+1 .. N of G: the norm of
/// (I - P_{n_cut}) K* within the computed window. Dominates |lambda_{2k+1}|
/// for every k >= n_cut by the rank-based min-max inequality.
double tail_norm(const SymmetrizedGrunsky& mu, int n_cut);
double tail_norm(const TruncatedNPMatrix& mat, int n_cut);

/// K*[zeta_0] = (1/2) zeta_0 regardless of the domain.
constexpr double zeta0_action() { return 0.5; }

/// The Hermitian 2N x 2N block matrix [[0, conj(G)], [G, 0]] acting on
/// stacked (plus, minus) coefficients; used by cross-check tests.
Eigen::MatrixXcd full_operator(const TruncatedNPMatrix& mat);

}  // namespace npspec
