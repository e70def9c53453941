#pragma once

#include <string>
#include <vector>

#include "npspec/grunsky.hpp"
#include "npspec/np_spectrum.hpp"

namespace npspec {

enum class DecayModel { Power, Exponential };

/// Least-squares fit of log |lambda_{2k}| against log k (power model) or
/// k (exponential model) over a k-index window, plus the smallest constant
/// realizing the power-law envelope on that window when requested.
struct DecayReport {
    DecayModel model = DecayModel::Power;
    double slope = 0.0;
    double intercept = 0.0;
    int k_lo = 0;
    int k_hi = 0;
    double residual = 0.0;        // max log-domain deviation
    double bound_constant = 0.0;  // 0 until computed for a (p, alpha)
};

struct LemmaConstantReport {
    double m_constant = 0.0;
    int s_max = 0;
    std::pair<int, int> worst_pair{0, 0};
};

struct TailStudyRow {
    int n_cut = 0;
    double tail = 0.0;
    double lambda = 0.0;  // |lambda_{2 n_cut + 1}| of the window spectrum
};

/// Reorders eigenvalues as 0.5 > |l_1| = |l_2| >= |l_3| = |l_4| >= ...
/// without changing the multiset; pairing jitter (oracle input) is
/// measured and reported.
Spectrum order_eigenvalues(const Spectrum& raw);

/// Fits the decay law over k in [k_lo, k_hi]; throws when a zero
/// eigenvalue lies inside the range.
DecayReport fit_decay(const Spectrum& spec, DecayModel model, int k_lo,
                      int k_hi);

/// Smallest C with |lambda_{2k}| <= C k^{-(p+alpha-1/2)} on the window,
/// i.e. max_k |lambda_{2k}| k^{p+alpha-1/2}. Requires p >= 0,
/// alpha in (0,1) and p + alpha > 1/2.
double bound_constant(const Spectrum& spec, double p, double alpha, int k_lo,
                      int k_hi);

/// Smallest M with |sum_k c_{s,k} conj(c_{k,r}) gamma^{-(s+r+2k)}| <=
/// M s^{-(p+alpha)} r^{-(p+alpha)} over the grid 1 <= s,r <= s_max;
/// the inner sum runs over the full table.
LemmaConstantReport lemma_constant(const GrunskyTable& table, double p,
                                   double alpha, int s_max);

/// Per cut N: tail norm of the window operator and |lambda_{2N+1}| of the
/// window spectrum; the rank-based inequality lambda <= tail must hold.
std::vector<TailStudyRow> tail_vs_eigenvalue_study(
    const SymmetrizedGrunsky& mu, const std::vector<int>& cuts);

}  // namespace npspec
