#pragma once

#include <Eigen/Core>
#include <vector>

#include "npspec/conformal.hpp"
#include "npspec/np_spectrum.hpp"
#include "npspec/types.hpp"

namespace npspec {

/// Periodic-trapezoid discretization of the NP kernel on the parametrized
/// boundary: A_{ij} = K(x_i, x_j) h_j (2 pi / n) with the smooth-curve
/// diagonal limit K(x, x) = kappa(x) / (4 pi).
struct KernelMatrix {
    int size = 0;
    Eigen::MatrixXd a;
    std::vector<BoundarySample> nodes;
};

KernelMatrix build_kernel_matrix(const ExteriorMap& map, int n);

/// Dense nonsymmetric eigensolve of the kernel matrix. The eigenvalue
/// nearest 1/2 (the constant-flux direction) is separated into
/// zeta0_eigenvalue; the remaining values are ordered by decreasing
/// magnitude with the +/- pairing residual reported. Throws when the
/// imaginary residue exceeds 1e-9 (quadrature too coarse).
Spectrum oracle_spectrum(const KernelMatrix& kernel, int count);

struct CompareReport {
    int count = 0;
    double max_abs_dev = 0.0;
    double max_rel_dev = 0.0;
    int worst_rank = -1;  // 1-based rank of the worst absolute deviation
};

/// Rank-paired deviation of the top `count` eigenvalue magnitudes.
CompareReport compare(const Spectrum& a, const Spectrum& b, int count);

}  // namespace npspec
