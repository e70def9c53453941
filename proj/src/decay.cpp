#include "npspec/decay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace npspec {

Spectrum order_eigenvalues(const Spectrum& raw) {
    Spectrum out = raw;
    std::vector<std::size_t> perm(raw.eigenvalues.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(raw.eigenvalues[i]) > std::abs(raw.eigenvalues[j]);
    });
    for (std::size_t i = 0; i < perm.size(); ++i) {
        out.eigenvalues[i] = raw.eigenvalues[perm[i]];
        if (!raw.vectors.empty()) out.vectors[i] = raw.vectors[perm[i]];
    }
    // positive member first within each pair; report the magnitude jitter
    double jitter = 0.0;
    for (std::size_t i = 0; i + 1 < out.eigenvalues.size(); i += 2) {
        if (out.eigenvalues[i] < out.eigenvalues[i + 1]) {
            std::swap(out.eigenvalues[i], out.eigenvalues[i + 1]);
            if (!out.vectors.empty()) std::swap(out.vectors[i], out.vectors[i + 1]);
        }
        jitter = std::max(jitter, std::abs(std::abs(out.eigenvalues[i]) -
                                           std::abs(out.eigenvalues[i + 1])));
    }
    out.pairing_residual = std::max(raw.pairing_residual, jitter);
    return out;
}

namespace {

double pair_magnitude(const Spectrum& spec, int k) {
    const std::size_t index = 2 * static_cast<std::size_t>(k) - 1;  // lambda_{2k}
    if (index >= spec.eigenvalues.size()) {
        throw std::invalid_argument("eigenvalue index 2k = " + std::to_string(2 * k) +
                                    " beyond the computed window");
    }
    return std::abs(spec.eigenvalues[index]);
}

}  // namespace

DecayReport fit_decay(const Spectrum& spec, DecayModel model, int k_lo, int k_hi) {
    if (k_lo < 1 || k_hi < k_lo) throw std::invalid_argument("fit_decay: bad range");
    const int count = k_hi - k_lo + 1;
    if (count < 2) throw std::invalid_argument("fit_decay: need at least two points");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::vector<double> xs, ys;
    xs.reserve(static_cast<std::size_t>(count));
    ys.reserve(static_cast<std::size_t>(count));
    for (int k = k_lo; k <= k_hi; ++k) {
        const double magnitude = pair_magnitude(spec, k);
        if (magnitude <= 0.0) {
            throw std::invalid_argument("fit_decay: zero eigenvalue at k = " +
                                        std::to_string(k) + " inside the fit range");
        }
        const double x = model == DecayModel::Power ? std::log(static_cast<double>(k))
                                                    : static_cast<double>(k);
        const double y = std::log(magnitude);
        xs.push_back(x);
        ys.push_back(y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = count * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) throw std::invalid_argument("fit_decay: degenerate range");

    DecayReport report;
    report.model = model;
    report.k_lo = k_lo;
    report.k_hi = k_hi;
    report.slope = (count * sxy - sx * sy) / denom;
    report.intercept = (sy - report.slope * sx) / count;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        report.residual = std::max(
            report.residual, std::abs(ys[i] - (report.slope * xs[i] + report.intercept)));
    }
    return report;
}

double bound_constant(const Spectrum& spec, double p, double alpha, int k_lo, int k_hi) {
    if (p < 0.0 || !(alpha > 0.0 && alpha < 1.0) || !(p + alpha > 0.5)) {
        throw std::invalid_argument(
            "bound_constant: require p >= 0, alpha in (0,1), p + alpha > 1/2");
    }
    if (k_lo < 1 || k_hi < k_lo) throw std::invalid_argument("bound_constant: bad range");
    const double exponent = p + alpha - 0.5;
    double constant = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        constant = std::max(constant, pair_magnitude(spec, k) *
                                          std::pow(static_cast<double>(k), exponent));
    }
    return constant;
}

LemmaConstantReport lemma_constant(const GrunskyTable& table, double p, double alpha,
                                   int s_max) {
    if (s_max < 1) throw std::invalid_argument("lemma_constant: S must be >= 1");
    if (table.size < s_max) {
        throw std::invalid_argument("lemma_constant: table smaller than S");
    }
    const double exponent = p + alpha;
    LemmaConstantReport report;
    report.s_max = s_max;
    for (int s = 1; s <= s_max; ++s) {
        for (int r = 1; r <= s_max; ++r) {
            Complex sum = 0.0;
            for (int k = 1; k <= table.size; ++k) {
                sum += table.at(s, k) * std::conj(table.at(k, r)) *
                       std::pow(table.gamma, -(s + r + 2 * k));
            }
            const double value = std::abs(sum) *
                                 std::pow(static_cast<double>(s), exponent) *
                                 std::pow(static_cast<double>(r), exponent);
            if (value > report.m_constant) {
                report.m_constant = value;
                report.worst_pair = {s, r};
            }
        }
    }
    return report;
}

std::vector<TailStudyRow> tail_vs_eigenvalue_study(const SymmetrizedGrunsky& mu,
                                                   const std::vector<int>& cuts) {
    const TruncatedNPMatrix mat = assemble(mu);
    const Spectrum spec = spectrum(mat);
    std::vector<TailStudyRow> rows;
    rows.reserve(cuts.size());
    for (int cut : cuts) {
        if (cut < 0 || cut >= mu.size) {
            throw std::invalid_argument("tail study: require 0 <= N_cut < N");
        }
        TailStudyRow row;
        row.n_cut = cut;
        row.tail = tail_norm(mat, cut);
        row.lambda = std::abs(spec.eigenvalues[2 * static_cast<std::size_t>(cut)]);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace npspec
