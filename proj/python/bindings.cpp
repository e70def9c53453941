#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "npspec/conformal.hpp"
#include "npspec/decay.hpp"
#include "npspec/grunsky.hpp"
#include "npspec/layer_potential.hpp"
#include "npspec/manifest.hpp"
#include "npspec/np_spectrum.hpp"
#include "npspec/nystrom.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace npspec;

PYBIND11_MODULE(_npspec, m) {
    m.doc() = "Neumann-Poincare spectra from exterior conformal map coefficients";
    m.attr("__version__") = kVersion;

    py::class_<UnivalenceReport>(m, "UnivalenceReport")
        .def_readonly("necessary_margin", &UnivalenceReport::necessary_margin)
        .def_readonly("sufficient_margin", &UnivalenceReport::sufficient_margin)
        .def_property_readonly("verdict",
                               [](const UnivalenceReport& r) {
                                   switch (r.verdict) {
                                       case UnivalenceReport::Verdict::Pass:
                                           return "pass";
                                       case UnivalenceReport::Verdict::PassUnproven:
                                           return "pass-unproven";
                                       default:
                                           return "fail";
                                   }
                               })
        .def("__repr__", [](const UnivalenceReport& r) {
            return "UnivalenceReport(necessary=" + std::to_string(r.necessary_margin) +
                   ", sufficient=" + std::to_string(r.sufficient_margin) + ")";
        });

    py::class_<BoundarySample>(m, "BoundarySample")
        .def_readonly("theta", &BoundarySample::theta)
        .def_readonly("point", &BoundarySample::point)
        .def_readonly("h", &BoundarySample::h)
        .def_readonly("normal", &BoundarySample::normal)
        .def_readonly("curvature", &BoundarySample::curvature);

    py::class_<ExteriorMap>(m, "ExteriorMap")
        .def(py::init<double, Complex, std::vector<Complex>>(), "gamma"_a, "a0"_a,
             "a"_a)
        .def_property_readonly("gamma", &ExteriorMap::gamma)
        .def_property_readonly("rho0", &ExteriorMap::rho0)
        .def_property_readonly("a0", &ExteriorMap::a0)
        .def_property_readonly("a", &ExteriorMap::coefficients)
        .def_property_readonly("univalence", &ExteriorMap::univalence)
        .def("evaluate", &ExteriorMap::evaluate, "w"_a)
        .def("derivatives", &ExteriorMap::derivatives, "w"_a)
        .def("scale_factor", &ExteriorMap::scale_factor, "rho"_a, "theta"_a)
        .def("boundary_samples", &ExteriorMap::boundary_samples, "n"_a)
        .def_static("from_json", &parse_domain, "text"_a)
        .def_static("from_file", &load_domain, "path"_a)
        .def_static("from_preset", &parse_preset, "spec"_a)
        .def("to_json", &domain_to_json)
        .def("digest", &domain_digest);

    m.def("make_disk", &make_disk, "gamma"_a = 1.0);
    m.def("make_ellipse", &make_ellipse, "a"_a, "gamma"_a = 1.0);
    m.def("make_powerlaw", &make_powerlaw, "c"_a, "beta"_a, "L"_a, "gamma"_a = 1.0);
    m.def("make_random", &make_random, "seed"_a, "L"_a, "eta"_a = 0.7, "gamma"_a = 1.0);

    py::class_<FaberTable>(m, "FaberTable")
        .def_readonly("max_degree", &FaberTable::max_degree)
        .def_readonly("coeffs", &FaberTable::coeffs)
        .def("evaluate", &FaberTable::evaluate, "m"_a, "z"_a);

    py::class_<GrunskyTable>(m, "GrunskyTable")
        .def_readonly("size", &GrunskyTable::size)
        .def_readonly("gamma", &GrunskyTable::gamma)
        .def_readonly("c", &GrunskyTable::c)
        .def_readonly("aliasing_warning", &GrunskyTable::aliasing_warning)
        .def("at", &GrunskyTable::at, "m"_a, "k"_a);

    py::class_<SymmetrizedGrunsky>(m, "SymmetrizedGrunsky")
        .def_readonly("size", &SymmetrizedGrunsky::size)
        .def_readonly("gamma", &SymmetrizedGrunsky::gamma)
        .def_readonly("mu", &SymmetrizedGrunsky::mu)
        .def_readonly("symmetrization_residual",
                      &SymmetrizedGrunsky::symmetrization_residual)
        .def("at", &SymmetrizedGrunsky::at, "m"_a, "k"_a);

    m.def("faber_table", &faber_table, "map"_a, "max_degree"_a);
    m.def("grunsky_table_recursive", &grunsky_table_recursive, "map"_a, "n"_a);
    m.def("grunsky_table_by_composition", &grunsky_table_by_composition, "map"_a,
          "n"_a, "radius"_a = 0.0, "n_samples"_a = 0);
    m.def("grunsky_identity_residual", &grunsky_identity_residual, "table"_a);
    m.def("symmetrize", &symmetrize, "table"_a);
    m.def("row_l2_report", &row_l2_report, "mu"_a);

    py::class_<TruncatedNPMatrix>(m, "TruncatedNPMatrix")
        .def_readonly("size", &TruncatedNPMatrix::size)
        .def_readonly("gamma", &TruncatedNPMatrix::gamma)
        .def_readonly("g", &TruncatedNPMatrix::g);

    py::class_<DensityCoefficients>(m, "DensityCoefficients")
        .def(py::init([](Eigen::VectorXcd plus, Eigen::VectorXcd minus) {
                 DensityCoefficients d;
                 d.plus = std::move(plus);
                 d.minus = std::move(minus);
                 return d;
             }),
             "plus"_a, "minus"_a)
        .def_readonly("plus", &DensityCoefficients::plus)
        .def_readonly("minus", &DensityCoefficients::minus)
        .def("norm", &DensityCoefficients::norm);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("size", &Spectrum::size)
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("vectors", &Spectrum::vectors)
        .def_readonly("zeta0_eigenvalue", &Spectrum::zeta0_eigenvalue)
        .def_readonly("pairing_residual", &Spectrum::pairing_residual);

    m.def("assemble", &assemble, "mu"_a);
    m.def("spectrum", &spectrum, "mat"_a);
    m.def("apply", &apply, "mat"_a, "phi"_a);
    m.def("tail_norm",
          py::overload_cast<const SymmetrizedGrunsky&, int>(&tail_norm), "mu"_a,
          "n_cut"_a);
    m.def("zeta0_action", []() { return zeta0_action(); });
    m.def("full_operator", &full_operator, "mat"_a);

    py::class_<KernelMatrix>(m, "KernelMatrix")
        .def_readonly("size", &KernelMatrix::size)
        .def_readonly("a", &KernelMatrix::a)
        .def_readonly("nodes", &KernelMatrix::nodes);

    py::class_<CompareReport>(m, "CompareReport")
        .def_readonly("count", &CompareReport::count)
        .def_readonly("max_abs_dev", &CompareReport::max_abs_dev)
        .def_readonly("max_rel_dev", &CompareReport::max_rel_dev)
        .def_readonly("worst_rank", &CompareReport::worst_rank);

    m.def("build_kernel_matrix", &build_kernel_matrix, "map"_a, "n"_a);
    m.def("oracle_spectrum", &oracle_spectrum, "kernel"_a, "count"_a);
    m.def("compare", &compare, "a"_a, "b"_a, "count"_a);

    py::enum_<Side>(m, "Side")
        .value("interior", Side::Interior)
        .value("exterior", Side::Exterior)
        .value("boundary", Side::Boundary);

    py::class_<PotentialEvaluation>(m, "PotentialEvaluation")
        .def_readonly("value", &PotentialEvaluation::value)
        .def_readonly("side", &PotentialEvaluation::side)
        .def_readonly("terms_used", &PotentialEvaluation::terms_used)
        .def_readonly("tail_bound", &PotentialEvaluation::tail_bound);

    py::class_<JumpProbe>(m, "JumpProbe")
        .def_readonly("value", &JumpProbe::value)
        .def_readonly("richardson_ratio", &JumpProbe::richardson_ratio)
        .def_readonly("converged", &JumpProbe::converged);

    py::class_<LayerPotentialEvaluator>(m, "LayerPotentialEvaluator")
        .def(py::init<const ExteriorMap&, const GrunskyTable&>(), "map"_a, "table"_a,
             py::keep_alive<1, 2>(), py::keep_alive<1, 3>())
        .def("interior", &LayerPotentialEvaluator::interior, "m"_a, "z"_a)
        .def("exterior", &LayerPotentialEvaluator::exterior, "m"_a, "rho"_a,
             "theta"_a, "max_terms"_a = 0)
        .def("at_point", &LayerPotentialEvaluator::at_point, "m"_a, "z"_a)
        .def("continuity_residual", &LayerPotentialEvaluator::continuity_residual,
             "m"_a, "n_samples"_a, "eps"_a)
        .def("np_via_jump", &LayerPotentialEvaluator::np_via_jump, "m"_a, "theta"_a,
             "eps"_a)
        .def("matrix_action", &LayerPotentialEvaluator::matrix_action, "m"_a,
             "theta"_a);

    m.def("single_layer", &single_layer, "map"_a, "table"_a, "m"_a, "z"_a);
    m.def("single_layer_exterior", &single_layer_exterior, "map"_a, "table"_a, "m"_a,
          "rho"_a, "theta"_a);
    m.def("continuity_residual", &continuity_residual, "map"_a, "table"_a, "m"_a,
          "n_samples"_a, "eps"_a);
    m.def("np_via_jump", &np_via_jump, "map"_a, "table"_a, "m"_a, "theta"_a, "eps"_a);
    m.def("invert_map", &invert_map, "map"_a, "z"_a);

    py::enum_<DecayModel>(m, "DecayModel")
        .value("power", DecayModel::Power)
        .value("exponential", DecayModel::Exponential);

    py::class_<DecayReport>(m, "DecayReport")
        .def_readonly("model", &DecayReport::model)
        .def_readonly("slope", &DecayReport::slope)
        .def_readonly("intercept", &DecayReport::intercept)
        .def_readonly("k_lo", &DecayReport::k_lo)
        .def_readonly("k_hi", &DecayReport::k_hi)
        .def_readonly("residual", &DecayReport::residual)
        .def_readonly("bound_constant", &DecayReport::bound_constant);

    py::class_<LemmaConstantReport>(m, "LemmaConstantReport")
        .def_readonly("m_constant", &LemmaConstantReport::m_constant)
        .def_readonly("s_max", &LemmaConstantReport::s_max)
        .def_readonly("worst_pair", &LemmaConstantReport::worst_pair);

    py::class_<TailStudyRow>(m, "TailStudyRow")
        .def_readonly("n_cut", &TailStudyRow::n_cut)
        .def_readonly("tail", &TailStudyRow::tail)
        .def_readonly("lambda_", &TailStudyRow::lambda);

    m.def("order_eigenvalues", &order_eigenvalues, "raw"_a);
    m.def("fit_decay", &fit_decay, "spec"_a, "model"_a, "k_lo"_a, "k_hi"_a);
    m.def("bound_constant", &bound_constant, "spec"_a, "p"_a, "alpha"_a, "k_lo"_a,
          "k_hi"_a);
    m.def("lemma_constant", &lemma_constant, "table"_a, "p"_a, "alpha"_a, "s_max"_a);
    m.def("tail_vs_eigenvalue_study", &tail_vs_eigenvalue_study, "mu"_a, "cuts"_a);
}
