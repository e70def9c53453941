#include "npspec/nystrom.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace npspec {

KernelMatrix build_kernel_matrix(const ExteriorMap& map, int n) {
    if (n < 4) throw std::invalid_argument("build_kernel_matrix: n must be >= 4");
    KernelMatrix kernel;
    kernel.size = n;
    kernel.nodes = map.boundary_samples(n);
    kernel.a.resize(n, n);

    const double weight = kTwoPi / static_cast<double>(n);
    const double scale = std::abs(kernel.nodes[0].point) + map.gamma();
    for (int i = 0; i < n; ++i) {
        const auto& xi = kernel.nodes[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const auto& xj = kernel.nodes[static_cast<std::size_t>(j)];
            if (i == j) {
                // smooth-curve diagonal limit of the kernel
                kernel.a(i, j) = xi.curvature / (4.0 * kPi) * xi.h * weight;
                continue;
            }
            const Complex d = xi.point - xj.point;
            const double dist2 = std::norm(d);
            if (dist2 < 1e-28 * scale * scale) {
                throw std::runtime_error("build_kernel_matrix: coincident nodes " +
                                         std::to_string(i) + ", " + std::to_string(j));
            }
            const double numer = std::real(d * std::conj(xi.normal));
            kernel.a(i, j) = numer / (kTwoPi * dist2) * xj.h * weight;
        }
    }
    return kernel;
}

Spectrum oracle_spectrum(const KernelMatrix& kernel, int count) {
    if (count < 1 || count > kernel.size) {
        throw std::invalid_argument("oracle_spectrum: require 1 <= count <= n");
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(kernel.a);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("oracle_spectrum: eigensolver did not converge");
    }
    const Eigen::VectorXcd values = solver.eigenvalues();

    double imag_residue = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        imag_residue = std::max(imag_residue, std::abs(values(i).imag()));
    }
    if (imag_residue > 1e-9) {
        throw std::runtime_error(
            "oracle_spectrum: imaginary residue " + std::to_string(imag_residue) +
            " exceeds 1e-9 (quadrature too coarse)");
    }

    std::vector<double> real_values(static_cast<std::size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        real_values[static_cast<std::size_t>(i)] = values(i).real();
    }

    // separate the constant-flux eigenvalue (the one near 1/2)
    const auto zeta0_it =
        std::min_element(real_values.begin(), real_values.end(),
                         [](double a, double b) { return std::abs(a - 0.5) < std::abs(b - 0.5); });
    const double zeta0 = *zeta0_it;
    real_values.erase(zeta0_it);

    std::sort(real_values.begin(), real_values.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });

    Spectrum spec;
    spec.size = count / 2;
    spec.zeta0_eigenvalue = zeta0;
    const std::size_t take =
        std::min(static_cast<std::size_t>(count), real_values.size());
    spec.eigenvalues.assign(real_values.begin(),
                            real_values.begin() + static_cast<std::ptrdiff_t>(take));
    // put the positive member of each (+,-) pair first and record jitter
    double jitter = 0.0;
    for (std::size_t i = 0; i + 1 < spec.eigenvalues.size(); i += 2) {
        if (spec.eigenvalues[i] < spec.eigenvalues[i + 1]) {
            std::swap(spec.eigenvalues[i], spec.eigenvalues[i + 1]);
        }
        jitter = std::max(jitter, std::abs(std::abs(spec.eigenvalues[i]) -
                                           std::abs(spec.eigenvalues[i + 1])));
    }
    spec.pairing_residual = jitter;
    return spec;
}

CompareReport compare(const Spectrum& a, const Spectrum& b, int count) {
    if (static_cast<int>(a.eigenvalues.size()) < count ||
        static_cast<int>(b.eigenvalues.size()) < count) {
        throw std::invalid_argument("compare: both spectra need at least `count` entries");
    }
    CompareReport report;
    report.count = count;
    for (int i = 0; i < count; ++i) {
        const double ma = std::abs(a.eigenvalues[static_cast<std::size_t>(i)]);
        const double mb = std::abs(b.eigenvalues[static_cast<std::size_t>(i)]);
        const double dev = std::abs(ma - mb);
        if (dev > report.max_abs_dev) {
            report.max_abs_dev = dev;
            report.worst_rank = i + 1;
        }
        const double denom = std::max(std::max(ma, mb), 1e-30);
        report.max_rel_dev = std::max(report.max_rel_dev, dev / denom);
    }
    return report;
}

}  // namespace npspec
