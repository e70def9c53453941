#include "npspec/np_spectrum.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace npspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Takagi factor S (with L = S S^T) of a small unitary symmetric block.
// Real and imaginary parts of such a block are commuting real symmetric
// matrices, so one orthogonal basis diagonalizes both; the phases of the
// joint diagonal give S.
Eigen::MatrixXcd unitary_symmetric_takagi(Eigen::MatrixXcd l) {
    const Eigen::Index d = l.rows();
    l = 0.5 * (l + l.transpose()).eval();
    const Eigen::MatrixXd x = l.real();
    const Eigen::MatrixXd y = l.imag();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ex(x);
    Eigen::MatrixXd q = ex.eigenvectors();
    const Eigen::VectorXd xvals = ex.eigenvalues();

    // split degenerate x-eigenspaces with y
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index stop = start + 1;
        while (stop < d && std::abs(xvals(stop) - xvals(start)) < 1e-8) ++stop;
        if (stop - start > 1) {
            const Eigen::MatrixXd block =
                q.middleCols(start, stop - start).transpose() * y *
                q.middleCols(start, stop - start);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ey(
                0.5 * (block + block.transpose()));
            q.middleCols(start, stop - start) =
                (q.middleCols(start, stop - start) * ey.eigenvectors()).eval();
        }
        start = stop;
    }

    const Eigen::MatrixXcd diag = q.transpose() * l * q;
    double offdiag = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            if (i != j) offdiag = std::max(offdiag, std::abs(diag(i, j)));
        }
    }
    if (offdiag > 1e-8) {
        throw std::runtime_error(
            "takagi: failed to diagonalize a degenerate singular block");
    }
    Eigen::VectorXcd phases(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        phases(i) = std::polar(1.0, 0.5 * std::arg(diag(i, i)));
    }
    return q * phases.asDiagonal();
}

}  // namespace

TakagiFactorization takagi(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("takagi: matrix must be square");
    const Eigen::Index n = a.rows();
    const Eigen::MatrixXcd sym = 0.5 * (a + a.transpose());

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sym, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sigma = svd.singularValues();
    const Eigen::MatrixXcd& w = svd.matrixU();
    const Eigen::MatrixXcd& v = svd.matrixV();
    const double sigma0 = n > 0 ? sigma(0) : 0.0;

    const double zero_tol = 8.0 * static_cast<double>(n) * kEps * std::max(sigma0, 1e-300);
    const double cluster_tol = std::max(1e-14, 1e3 * kEps * sigma0);

    TakagiFactorization result;
    result.sigma = sigma;
    result.u.resize(n, n);

    Eigen::Index start = 0;
    while (start < n) {
        if (sigma(start) <= zero_tol) {
            // null space: G conj(v) = 0 already, no phase correction needed
            result.u.middleCols(start, n - start) =
                v.middleCols(start, n - start).conjugate();
            break;
        }
        Eigen::Index stop = start + 1;
        while (stop < n && sigma(stop - 1) - sigma(stop) < cluster_tol &&
               sigma(stop) > zero_tol) {
            ++stop;
        }
        const Eigen::Index d = stop - start;
        const Eigen::MatrixXcd wc = w.middleCols(start, d);
        const Eigen::MatrixXcd vc = v.middleCols(start, d);
        if (d == 1) {
            Complex lambda = (vc.adjoint() * wc.conjugate())(0, 0);
            lambda /= std::abs(lambda);
            result.u.col(start) = wc * std::sqrt(lambda);
        } else {
            const Eigen::MatrixXcd lambda = vc.adjoint() * wc.conjugate();
            result.u.middleCols(start, d) = wc * unitary_symmetric_takagi(lambda);
        }
        start = stop;
    }

    const double residual =
        (result.u * sigma.asDiagonal() * result.u.transpose() - sym)
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-10 * std::max(1.0, sigma0)) {
        throw std::runtime_error("takagi: factorization residual " +
                                 std::to_string(residual) + " too large");
    }
    return result;
}

double DensityCoefficients::norm() const {
    return std::sqrt(plus.squaredNorm() + minus.squaredNorm());
}

TruncatedNPMatrix assemble(const SymmetrizedGrunsky& mu) {
    const auto rows = row_l2_report(mu);
    for (std::size_t m = 0; m < rows.size(); ++m) {
        if (rows[m] > 1.0 + 1e-12) {
            throw std::invalid_argument(
                "assemble: row " + std::to_string(m + 1) +
                " violates the l2 bound: " + std::to_string(rows[m]) + " > 1");
        }
    }
    TruncatedNPMatrix mat;
    mat.size = mu.size;
    mat.gamma = mu.gamma;
    mat.g.resize(mu.size, mu.size);
    for (int k = 1; k <= mu.size; ++k) {
        for (int m = 1; m <= mu.size; ++m) {
            mat.g(k - 1, m - 1) = mu.at(k, m) * 0.5 * std::pow(mu.gamma, -(m + k));
        }
    }
    const double top = Eigen::JacobiSVD<Eigen::MatrixXcd>(mat.g).singularValues()(0);
    if (top > 0.5 + 1e-12) {
        throw std::runtime_error(
            "assemble: sigma_max(G) = " + std::to_string(top) +
            " violates the operator-norm bound ||K*|| <= 1/2");
    }
    return mat;
}

Eigen::MatrixXcd full_operator(const TruncatedNPMatrix& mat) {
    const int n = mat.size;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    h.topRightCorner(n, n) = mat.g.conjugate();
    h.bottomLeftCorner(n, n) = mat.g;
    return h;
}

DensityCoefficients apply(const TruncatedNPMatrix& mat, const DensityCoefficients& phi) {
    if (phi.plus.size() != mat.size || phi.minus.size() != mat.size) {
        throw std::invalid_argument("apply: coefficient dimension mismatch");
    }
    DensityCoefficients out;
    out.plus = mat.g.conjugate() * phi.minus;
    out.minus = mat.g * phi.plus;
    return out;
}

Spectrum spectrum(const TruncatedNPMatrix& mat) {
    const int n = mat.size;
    const TakagiFactorization factor = takagi(mat.g);

    Spectrum spec;
    spec.size = n;
    spec.eigenvalues.reserve(static_cast<std::size_t>(2 * n));
    spec.vectors.reserve(static_cast<std::size_t>(2 * n));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        const double s = factor.sigma(i);
        const Eigen::VectorXcd u = factor.u.col(i);
        for (const double sign : {1.0, -1.0}) {
            Eigen::VectorXcd vec(2 * n);
            vec.head(n) = u.conjugate() * inv_sqrt2;
            vec.tail(n) = sign * u * inv_sqrt2;
            // fix the phase: first nonzero coefficient real positive
            for (Eigen::Index j = 0; j < vec.size(); ++j) {
                if (std::abs(vec(j)) > 1e-12) {
                    vec *= std::polar(1.0, -std::arg(vec(j)));
                    break;
                }
            }
            spec.eigenvalues.push_back(sign * s);
            spec.vectors.push_back(std::move(vec));
        }
    }

    // residual check of every returned pair against the block action
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        const Eigen::VectorXcd& vec = spec.vectors[i];
        DensityCoefficients phi;
        phi.plus = vec.head(n);
        phi.minus = vec.tail(n);
        const DensityCoefficients image = apply(mat, phi);
        const double lambda = spec.eigenvalues[i];
        const double residual =
            std::sqrt((image.plus - lambda * phi.plus).squaredNorm() +
                      (image.minus - lambda * phi.minus).squaredNorm());
        if (residual > 1e-10) {
            throw std::runtime_error("spectrum: eigenpair residual " +
                                     std::to_string(residual) + " exceeds 1e-10");
        }
    }
    return spec;
}

double tail_norm(const TruncatedNPMatrix& mat, int n_cut) {
    if (n_cut < 0 || n_cut >= mat.size) {
        throw std::invalid_argument("tail_norm: require 0 <= N_cut < N");
    }
    if (n_cut == 0) {
        return Eigen::JacobiSVD<Eigen::MatrixXcd>(mat.g).singularValues()(0);
    }
    const Eigen::MatrixXcd block = mat.g.bottomRows(mat.size - n_cut);
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(block).singularValues()(0);
}

double tail_norm(const SymmetrizedGrunsky& mu, int n_cut) {
    return tail_norm(assemble(mu), n_cut);
}

}  // namespace npspec
