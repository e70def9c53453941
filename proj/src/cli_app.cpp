#include "npspec/cli_app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "npspec/conformal.hpp"
#include "npspec/csv.hpp"
#include "npspec/decay.hpp"
#include "npspec/grunsky.hpp"
#include "npspec/layer_potential.hpp"
#include "npspec/manifest.hpp"
#include "npspec/np_spectrum.hpp"
#include "npspec/nystrom.hpp"

namespace npspec::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct DomainOptions {
    std::string domain_path;
    std::string preset;

    ExteriorMap load() const {
        if (!domain_path.empty()) return load_domain(domain_path);
        return parse_preset(preset);
    }
    std::string description() const {
        return !domain_path.empty() ? "file:" + domain_path : "preset:" + preset;
    }
};

void add_domain_options(CLI::App* cmd, DomainOptions& opts) {
    auto* domain = cmd->add_option("--domain", opts.domain_path,
                                   "domain spec document (JSON)");
    auto* preset = cmd->add_option("--preset", opts.preset,
                                   "preset such as ellipse:a=0.5,gamma=1");
    domain->excludes(preset);
    preset->excludes(domain);
    cmd->callback([&opts, cmd]() {
        if (opts.domain_path.empty() && opts.preset.empty()) {
            throw CLI::RequiredError(cmd->get_name() + ": --domain or --preset");
        }
    });
}

RunManifest make_manifest(const std::string& subcommand, const ExteriorMap& map,
                          const DomainOptions& opts) {
    RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.domain_digest = domain_digest(map);
    manifest.timestamp = iso8601_now();
    manifest.add("domain", opts.description());
    return manifest;
}

GrunskyTable table_for(const ExteriorMap& map, int n, const std::string& method) {
    if (method == "composition") return grunsky_table_by_composition(map, n);
    return grunsky_table_recursive(map, n);
}

// ---------------------------------------------------------------- grunsky

int cmd_grunsky(const DomainOptions& domain, int n, const std::string& method,
                const std::string& out_path) {
    const ExteriorMap map = domain.load();
    const GrunskyTable table = table_for(map, n, method);
    const SymmetrizedGrunsky mu = symmetrize(table);

    CsvWriter csv(out_path);
    csv.header({"m", "k", "re_c", "im_c", "re_mu_normalized", "im_mu_normalized"});
    for (int m = 1; m <= n; ++m) {
        for (int k = 1; k <= n; ++k) {
            const Complex c = table.at(m, k);
            const Complex mu_norm = mu.at(m, k) * std::pow(map.gamma(), -(m + k));
            csv.field(m);
            csv.field(k);
            csv.field(c.real());
            csv.field(c.imag());
            csv.field(mu_norm.real());
            csv.field(mu_norm.imag());
            csv.end_row();
        }
    }

    RunManifest manifest = make_manifest("grunsky", map, domain);
    manifest.add("N", std::to_string(n));
    manifest.add("method", method);
    manifest.add("out", out_path);
    write_manifest_sidecar(manifest, out_path);
    if (table.aliasing_warning) {
        std::cerr << "warning: composition table may be contaminated by aliasing\n";
    }
    std::cout << "identity_residual = " << fmt(grunsky_identity_residual(table)) << '\n';
    std::cout << "symmetrization_residual = " << fmt(mu.symmetrization_residual) << '\n';
    return kExitOk;
}

// --------------------------------------------------------------- spectrum

int cmd_spectrum(const DomainOptions& domain, int n, const std::string& out_path,
                 const std::string& vectors_path) {
    const ExteriorMap map = domain.load();
    const SymmetrizedGrunsky mu = symmetrize(grunsky_table_recursive(map, n));
    const Spectrum spec = spectrum(assemble(mu));

    CsvWriter csv(out_path);
    csv.header({"k", "lambda", "abs_lambda"});
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        csv.field(static_cast<long long>(i + 1));
        csv.field(spec.eigenvalues[i]);
        csv.field(std::abs(spec.eigenvalues[i]));
        csv.end_row();
    }

    RunManifest manifest = make_manifest("spectrum", map, domain);
    manifest.add("N", std::to_string(n));
    manifest.add("out", out_path);
    if (!vectors_path.empty()) manifest.add("vectors", vectors_path);
    write_manifest_sidecar(manifest, out_path);

    if (!vectors_path.empty()) {
        CsvWriter vec_csv(vectors_path);
        vec_csv.header({"eigen_index", "coeff_index", "re", "im"});
        for (std::size_t i = 0; i < spec.vectors.size(); ++i) {
            const Eigen::VectorXcd& v = spec.vectors[i];
            for (int j = 0; j < n; ++j) {
                vec_csv.field(static_cast<long long>(i + 1));
                vec_csv.field(j + 1);
                vec_csv.field(v(j).real());
                vec_csv.field(v(j).imag());
                vec_csv.end_row();
            }
            for (int j = 0; j < n; ++j) {
                vec_csv.field(static_cast<long long>(i + 1));
                vec_csv.field(-(j + 1));
                vec_csv.field(v(n + j).real());
                vec_csv.field(v(n + j).imag());
                vec_csv.end_row();
            }
        }
        write_manifest_sidecar(manifest, vectors_path);
    }
    std::cout << "zeta0_eigenvalue = " << fmt(spec.zeta0_eigenvalue) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- tailnorm

int cmd_tailnorm(const DomainOptions& domain, int n, const std::string& cuts_text,
                 const std::string& out_path) {
    const ExteriorMap map = domain.load();
    const SymmetrizedGrunsky mu = symmetrize(grunsky_table_recursive(map, n));
    const TruncatedNPMatrix mat = assemble(mu);

    std::vector<int> cuts;
    std::stringstream stream(cuts_text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) cuts.push_back(std::stoi(item));
    }
    if (cuts.empty()) throw std::invalid_argument("tailnorm: --cuts list is empty");

    CsvWriter csv(out_path);
    csv.header({"N_cut", "tail_norm"});
    for (int cut : cuts) {
        csv.field(cut);
        csv.field(tail_norm(mat, cut));
        csv.end_row();
    }

    RunManifest manifest = make_manifest("tailnorm", map, domain);
    manifest.add("N", std::to_string(n));
    manifest.add("cuts", cuts_text);
    manifest.add("out", out_path);
    write_manifest_sidecar(manifest, out_path);
    return kExitOk;
}

// ------------------------------------------------------------------ oracle

int cmd_oracle(const DomainOptions& domain, int n, int count,
               const std::string& out_path) {
    const ExteriorMap map = domain.load();
    const KernelMatrix kernel = build_kernel_matrix(map, n);
    const Spectrum spec = oracle_spectrum(kernel, count);

    CsvWriter csv(out_path);
    csv.header({"k", "lambda", "abs_lambda"});
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        csv.field(static_cast<long long>(i + 1));
        csv.field(spec.eigenvalues[i]);
        csv.field(std::abs(spec.eigenvalues[i]));
        csv.end_row();
    }

    RunManifest manifest = make_manifest("oracle", map, domain);
    manifest.add("n", std::to_string(n));
    manifest.add("count", std::to_string(count));
    manifest.add("out", out_path);
    write_manifest_sidecar(manifest, out_path);

    std::cout << "zeta0_eigenvalue = " << fmt(spec.zeta0_eigenvalue) << '\n';
    std::cout << "pairing_residual = " << fmt(spec.pairing_residual) << '\n';
    return kExitOk;
}

// ----------------------------------------------------------------- compare

int cmd_compare(const DomainOptions& domain, int n_series, int n_quad, int count,
                double tol_scale) {
    const ExteriorMap map = domain.load();
    const Spectrum series = spectrum(assemble(symmetrize(grunsky_table_recursive(map, n_series))));
    const Spectrum oracle = oracle_spectrum(build_kernel_matrix(map, n_quad), count);
    const CompareReport report = compare(series, oracle, count);

    const double tolerance = 1e-6 * tol_scale;
    std::cout << "count = " << report.count << '\n';
    std::cout << "max_abs_dev = " << fmt(report.max_abs_dev) << '\n';
    std::cout << "max_rel_dev = " << fmt(report.max_rel_dev) << '\n';
    std::cout << "worst_rank = " << report.worst_rank << '\n';
    std::cout << "tolerance = " << fmt(tolerance) << '\n';
    std::cout << "within_tolerance = " << (report.max_abs_dev <= tolerance ? "yes" : "no")
              << '\n';
    return kExitOk;
}

// --------------------------------------------------------------- potential

int cmd_potential(const DomainOptions& domain, int m, int grid,
                  const std::string& out_path) {
    const ExteriorMap map = domain.load();
    const int table_size = std::max(64, std::abs(m) + 16);
    const GrunskyTable table = grunsky_table_recursive(map, table_size);
    const LayerPotentialEvaluator evaluator(map, table);

    // bounding box of the sampled boundary, inflated by 30%
    const auto samples = map.boundary_samples(256);
    double x_lo = samples[0].point.real(), x_hi = x_lo;
    double y_lo = samples[0].point.imag(), y_hi = y_lo;
    for (const auto& s : samples) {
        x_lo = std::min(x_lo, s.point.real());
        x_hi = std::max(x_hi, s.point.real());
        y_lo = std::min(y_lo, s.point.imag());
        y_hi = std::max(y_hi, s.point.imag());
    }
    const double pad_x = 0.3 * (x_hi - x_lo);
    const double pad_y = 0.3 * (y_hi - y_lo);
    x_lo -= pad_x;
    x_hi += pad_x;
    y_lo -= pad_y;
    y_hi += pad_y;

    CsvWriter csv(out_path);
    csv.header({"x", "y", "re_s", "im_s"});
    for (int iy = 0; iy < grid; ++iy) {
        const double y = y_lo + (y_hi - y_lo) * iy / std::max(1, grid - 1);
        for (int ix = 0; ix < grid; ++ix) {
            const double x = x_lo + (x_hi - x_lo) * ix / std::max(1, grid - 1);
            const PotentialEvaluation eval = evaluator.at_point(m, Complex(x, y));
            csv.field(x);
            csv.field(y);
            csv.field(eval.value.real());
            csv.field(eval.value.imag());
            csv.end_row();
        }
    }

    RunManifest manifest = make_manifest("potential", map, domain);
    manifest.add("m", std::to_string(m));
    manifest.add("grid", std::to_string(grid));
    manifest.add("out", out_path);
    write_manifest_sidecar(manifest, out_path);
    return kExitOk;
}

// ------------------------------------------------------------ validate-jump

int cmd_validate_jump(const DomainOptions& domain, int m, double eps, int n_samples) {
    const ExteriorMap map = domain.load();
    const GrunskyTable table = grunsky_table_recursive(map, 256);
    const LayerPotentialEvaluator evaluator(map, table);

    const double res1 = evaluator.continuity_residual(m, n_samples, eps);
    const double res2 = evaluator.continuity_residual(m, n_samples, 0.5 * eps);

    double jump_dev = 0.0;
    double worst_ratio = 0.0;
    bool converged = true;
    for (int j = 0; j < n_samples; ++j) {
        const double theta = kTwoPi * j / n_samples;
        const JumpProbe probe = evaluator.np_via_jump(m, theta, eps);
        jump_dev = std::max(jump_dev,
                            std::abs(probe.value - evaluator.matrix_action(m, theta)));
        worst_ratio = std::max(worst_ratio, probe.richardson_ratio);
        converged = converged && probe.converged;
    }

    std::cout << "m = " << m << '\n';
    std::cout << "eps = " << fmt(eps) << '\n';
    std::cout << "continuity_residual_eps = " << fmt(res1) << '\n';
    std::cout << "continuity_residual_eps_half = " << fmt(res2) << '\n';
    std::cout << "richardson_ratio = " << fmt(res2 > 0.0 ? res1 / res2 : 0.0) << '\n';
    std::cout << "np_via_jump_max_dev = " << fmt(jump_dev) << '\n';
    std::cout << "extrapolation_converged = " << (converged ? "yes" : "no") << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------- decay

int cmd_decay(const DomainOptions& domain, int n, const std::string& model_name,
              double p, double alpha, int k_lo, int k_hi, const std::string& out_path) {
    const ExteriorMap map = domain.load();
    const SymmetrizedGrunsky mu = symmetrize(grunsky_table_recursive(map, n));
    const TruncatedNPMatrix mat = assemble(mu);
    const Spectrum spec = spectrum(mat);

    const DecayModel model =
        model_name == "power" ? DecayModel::Power : DecayModel::Exponential;

    if (k_hi <= 0) k_hi = n / 2;
    if (k_lo <= 0) {
        // auto range: keep clear of the window-truncation noise floor
        k_lo = 1;
        const double floor = 1e3 * (tail_norm(mat, n - 1) + 1e-15);
        while (k_hi > k_lo + 1 &&
               std::abs(spec.eigenvalues[2 * static_cast<std::size_t>(k_hi) - 1]) < floor) {
            --k_hi;
        }
    }

    DecayReport report = fit_decay(spec, model, k_lo, k_hi);
    report.bound_constant = bound_constant(spec, p, alpha, k_lo, k_hi);

    CsvWriter csv(out_path);
    csv.header({"k", "abs_lambda_2k", "fitted", "bound"});
    for (int k = k_lo; k <= k_hi; ++k) {
        const double magnitude =
            std::abs(spec.eigenvalues[2 * static_cast<std::size_t>(k) - 1]);
        const double x = model == DecayModel::Power ? std::log(static_cast<double>(k))
                                                    : static_cast<double>(k);
        csv.field(k);
        csv.field(magnitude);
        csv.field(std::exp(report.slope * x + report.intercept));
        csv.field(report.bound_constant *
                  std::pow(static_cast<double>(k), -(p + alpha - 0.5)));
        csv.end_row();
    }

    RunManifest manifest = make_manifest("decay", map, domain);
    manifest.add("N", std::to_string(n));
    manifest.add("model", model_name);
    manifest.add("p", fmt(p));
    manifest.add("alpha", fmt(alpha));
    manifest.add("k_lo", std::to_string(k_lo));
    manifest.add("k_hi", std::to_string(k_hi));
    manifest.add("out", out_path);
    write_manifest_sidecar(manifest, out_path);

    std::cout << "slope = " << fmt(report.slope) << '\n';
    std::cout << "intercept = " << fmt(report.intercept) << '\n';
    std::cout << "residual = " << fmt(report.residual) << '\n';
    std::cout << "bound_constant = " << fmt(report.bound_constant) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const DomainOptions& domain, int n) {
    const ExteriorMap map = domain.load();
    int failures = 0;
    const auto check = [&failures](const std::string& name, bool ok,
                                   const std::string& detail) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << detail << ")\n";
        if (!ok) ++failures;
    };

    const GrunskyTable recursive = grunsky_table_recursive(map, n);
    const GrunskyTable composed = grunsky_table_by_composition(map, n);
    const double max_c = 1.0 + recursive.c.cwiseAbs().maxCoeff();

    const double identity = grunsky_identity_residual(recursive);
    check("grunsky-identity", identity <= 1e-10 * max_c, "residual " + fmt(identity));

    const double method_dev = (recursive.c - composed.c).cwiseAbs().maxCoeff();
    check("recursion-vs-composition", method_dev <= 1e-9, "max dev " + fmt(method_dev));

    const SymmetrizedGrunsky mu = symmetrize(recursive);
    double worst_row = 0.0;
    for (double row : row_l2_report(mu)) worst_row = std::max(worst_row, row);
    check("row-l2-bound", worst_row <= 1.0 + 1e-12, "max row sum " + fmt(worst_row));

    const TruncatedNPMatrix mat = assemble(mu);
    const Spectrum spec = spectrum(mat);
    const double sigma_max = spec.eigenvalues.empty() ? 0.0 : std::abs(spec.eigenvalues[0]);
    check("operator-norm-bound", sigma_max <= 0.5 + 1e-12, "sigma_max " + fmt(sigma_max));

    double symmetry = 0.0;
    for (std::size_t i = 0; i + 1 < spec.eigenvalues.size(); i += 2) {
        symmetry = std::max(symmetry,
                            std::abs(spec.eigenvalues[i] + spec.eigenvalues[i + 1]));
    }
    check("spectral-symmetry", symmetry <= 1e-12, "max |l+ + l-| " + fmt(symmetry));

    double weyl_worst = 0.0;
    bool weyl_ok = true;
    for (int cut = 0; cut < n; ++cut) {
        const double lambda = std::abs(spec.eigenvalues[2 * static_cast<std::size_t>(cut)]);
        const double tail = tail_norm(mat, cut);
        weyl_worst = std::max(weyl_worst, lambda - tail);
        weyl_ok = weyl_ok && lambda <= tail + 1e-10;
    }
    check("weyl-courant", weyl_ok, "worst excess " + fmt(weyl_worst));

    const GrunskyTable jump_table = grunsky_table_recursive(map, std::max(n, 128));
    const LayerPotentialEvaluator evaluator(map, jump_table);
    double jump_dev = 0.0;
    for (int m = 1; m <= 4; ++m) {
        for (int j = 0; j < 16; ++j) {
            const double theta = kTwoPi * j / 16;
            const JumpProbe probe = evaluator.np_via_jump(m, theta, 2e-4);
            jump_dev = std::max(jump_dev,
                                std::abs(probe.value - evaluator.matrix_action(m, theta)));
        }
    }
    check("jump-relation", jump_dev <= 1e-5, "max dev " + fmt(jump_dev));

    const Spectrum oracle = oracle_spectrum(build_kernel_matrix(map, 256), 6);
    const CompareReport report = compare(spec, oracle, 6);
    check("oracle-comparison", report.max_abs_dev <= 1e-6,
          "max abs dev " + fmt(report.max_abs_dev));

    std::cout << (failures == 0 ? "validate: all checks passed\n"
                                : "validate: " + std::to_string(failures) + " failures\n");
    return failures == 0 ? kExitOk : kExitValidationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Spectrum of the two-dimensional Neumann-Poincare operator from "
                 "exterior conformal map coefficients"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // shared state filled by the chosen subcommand
    DomainOptions domain;
    int n = 32;
    int n_quad = 256;
    int count = 10;
    int m = 1;
    int grid = 64;
    int k_lo = 0, k_hi = 0;
    int jump_samples = 64;
    double p = 1.0, alpha = 0.5;
    double eps = 1e-3;
    double tol_scale = 1.0;
    std::string out_path, vectors_path, method = "recursive", model = "power";
    std::string cuts;
    std::uint64_t seed = 0;

    const auto add_common = [&](CLI::App* cmd, bool with_out) {
        add_domain_options(cmd, domain);
        cmd->add_option("--seed", seed, "seed for randomized checks");
        cmd->add_option("--tol-scale", tol_scale,
                        "tolerance multiplier for exploratory reports");
        if (with_out) cmd->add_option("--out", out_path, "output CSV path")->required();
    };

    auto* grunsky_cmd = app.add_subcommand("grunsky", "emit Grunsky coefficient tables");
    add_common(grunsky_cmd, true);
    grunsky_cmd->add_option("-N", n, "table size")->required();
    grunsky_cmd->add_option("--method", method, "recursive|composition")
        ->check(CLI::IsMember({"recursive", "composition"}));

    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of the NP operator");
    add_common(spectrum_cmd, true);
    spectrum_cmd->add_option("-N", n, "truncation size")->required();
    spectrum_cmd->add_option("--vectors", vectors_path, "also emit eigenvector coefficients");

    auto* tailnorm_cmd = app.add_subcommand("tailnorm", "projection tail norms");
    add_common(tailnorm_cmd, true);
    tailnorm_cmd->add_option("-N", n, "window size")->required();
    tailnorm_cmd->add_option("--cuts", cuts, "comma-separated list of N_cut values")
        ->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "Nystrom reference spectrum");
    add_common(oracle_cmd, true);
    oracle_cmd->add_option("-n", n_quad, "quadrature size")->required();
    oracle_cmd->add_option("--count", count, "eigenvalues to keep");

    auto* compare_cmd = app.add_subcommand("compare", "series vs oracle deviation report");
    add_common(compare_cmd, false);
    compare_cmd->add_option("-N", n, "series truncation size")->required();
    compare_cmd->add_option("-n", n_quad, "quadrature size")->required();
    compare_cmd->add_option("--count", count, "ranks to compare");

    auto* potential_cmd = app.add_subcommand("potential", "grid evaluation of S[zeta_m]");
    add_common(potential_cmd, true);
    potential_cmd->add_option("-m", m, "basis index")->required();
    potential_cmd->add_option("--grid", grid, "grid resolution");

    auto* jump_cmd = app.add_subcommand("validate-jump", "jump-relation residual report");
    add_common(jump_cmd, false);
    jump_cmd->add_option("-m", m, "basis index")->required();
    jump_cmd->add_option("--eps", eps, "offset for the boundary limit");
    jump_cmd->add_option("--samples", jump_samples, "theta samples");

    auto* decay_cmd = app.add_subcommand("decay", "decay-law fit and bound constants");
    add_common(decay_cmd, true);
    decay_cmd->add_option("-N", n, "truncation size")->required();
    decay_cmd->add_option("--model", model, "power|exp")
        ->check(CLI::IsMember({"power", "exp"}));
    decay_cmd->add_option("--p", p, "smoothness exponent p");
    decay_cmd->add_option("--alpha", alpha, "Holder exponent alpha");
    decay_cmd->add_option("--k-lo", k_lo, "fit range start (0 = auto)");
    decay_cmd->add_option("--k-hi", k_hi, "fit range end (0 = N/2)");

    auto* validate_cmd = app.add_subcommand("validate", "full invariant sweep");
    add_common(validate_cmd, false);
    validate_cmd->add_option("-N", n, "truncation size");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsageError;
    }

    try {
        if (grunsky_cmd->parsed()) return cmd_grunsky(domain, n, method, out_path);
        if (spectrum_cmd->parsed()) return cmd_spectrum(domain, n, out_path, vectors_path);
        if (tailnorm_cmd->parsed()) return cmd_tailnorm(domain, n, cuts, out_path);
        if (oracle_cmd->parsed()) return cmd_oracle(domain, n_quad, count, out_path);
        if (compare_cmd->parsed())
            return cmd_compare(domain, n, n_quad, count, tol_scale);
        if (potential_cmd->parsed()) return cmd_potential(domain, m, grid, out_path);
        if (jump_cmd->parsed()) return cmd_validate_jump(domain, m, eps, jump_samples);
        if (decay_cmd->parsed())
            return cmd_decay(domain, n, model, p, alpha, k_lo, k_hi, out_path);
        if (validate_cmd->parsed()) return cmd_validate(domain, n);
        std::cerr << "error: no subcommand given\n";
        return kExitUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomainError;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumericalError;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace npspec::cli
