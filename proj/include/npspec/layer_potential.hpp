#pragma once

#include <vector>

#include "npspec/conformal.hpp"
#include "npspec/grunsky.hpp"
#include "npspec/types.hpp"

namespace npspec {

enum class Side { Interior, Exterior, Boundary };

struct PotentialEvaluation {
    Complex value;
    Side side = Side::Interior;
    int terms_used = 0;
    double tail_bound = 0.0;  // geometric bound on the dropped series tail
};

/// Result of the two-sided normal-derivative probe of the NP action.
struct JumpProbe {
    Complex value;                   // extrapolated K*[zeta_m](theta)
    double richardson_ratio = 0.0;   // ~2 when the extrapolation is trusted
    bool converged = true;
};

/// Point classifier for the closed boundary curve, backed by a sampled
/// polygon and its winding number.
class BoundaryClassifier {
public:
    explicit BoundaryClassifier(const ExteriorMap& map, int n_polygon = 1024);

    Side classify(Complex z) const;
    double distance(Complex z) const;

private:
    std::vector<Complex> polygon_;
    double boundary_tolerance_;
};

/// Solves Psi(w) = z for |w| >= gamma by Newton iteration; throws
/// std::runtime_error when the iteration fails (e.g. interior target).
Complex invert_map(const ExteriorMap& map, Complex z);

/// Evaluates the single layer potentials S[zeta_m] on either side of the
/// boundary through the series representation (exterior) and the Faber
/// polynomials (interior and boundary limit).
class LayerPotentialEvaluator {
public:
    LayerPotentialEvaluator(const ExteriorMap& map, const GrunskyTable& table);

    /// S[zeta_m](z) for z in the closed interior (membership enforced).
    PotentialEvaluation interior(int m, Complex z) const;

    /// S[zeta_m] at exterior curvilinear coordinates (rho, theta),
    /// rho >= rho0. max_terms = 0 means adaptive truncation at the
    /// 1e-13 tail bound (capped at the table size).
    PotentialEvaluation exterior(int m, double rho, double theta,
                                 int max_terms = 0) const;

    /// Classifies z and dispatches; boundary-tolerance points are
    /// evaluated as the (continuous) interior limit and flagged.
    PotentialEvaluation at_point(int m, Complex z) const;

    /// max over theta samples of |S[zeta_m](rho0+eps exterior) -
    /// S[zeta_m](interior probe at distance ~eps)|; tends to 0 as eps -> 0.
    double continuity_residual(int m, int n_samples, double eps) const;

    /// K*[zeta_m](theta) as the mean of the two one-sided normal
    /// derivatives of S[zeta_m], with Richardson extrapolation in the
    /// exterior boundary-limit step.
    JumpProbe np_via_jump(int m, double theta, double eps) const;

    /// The same action computed from the coefficient matrix:
    /// sum_k G_{k,m} zeta_{-k}(theta) (conjugate block for m < 0).
    Complex matrix_action(int m, double theta) const;

    const BoundaryClassifier& classifier() const { return classifier_; }

private:
    PotentialEvaluation exterior_series(int m_abs, bool conjugate, double rho,
                                        double theta, int max_terms) const;
    Complex exterior_rho_derivative(int m_abs, bool conjugate, double rho,
                                    double theta) const;

    const ExteriorMap& map_;
    const GrunskyTable& table_;
    FaberTable faber_;
    BoundaryClassifier classifier_;
};

// Free-function forms of the evaluator operations.
PotentialEvaluation single_layer(const ExteriorMap& map,
                                 const GrunskyTable& table, int m, Complex z);
PotentialEvaluation single_layer_exterior(const ExteriorMap& map,
                                          const GrunskyTable& table, int m,
                                          double rho, double theta);
double continuity_residual(const ExteriorMap& map, const GrunskyTable& table,
                           int m, int n_samples, double eps);
JumpProbe np_via_jump(const ExteriorMap& map, const GrunskyTable& table, int m,
                      double theta, double eps);

}  // namespace npspec
