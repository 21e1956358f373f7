#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csamp/aliasing.hpp"
#include "csamp/config.hpp"
#include "csamp/contour.hpp"
#include "csamp/lemmas.hpp"
#include "csamp/rmcf.hpp"
#include "csamp/spectral.hpp"

namespace py = pybind11;
using namespace csamp;

namespace {

ContinuousStateSpace plant_from_arrays(const ComplexMatrix& a, const ComplexMatrix& b,
                                       const ComplexMatrix& c, const ComplexMatrix& d) {
    return make_plant(a, b, c, d);
}

py::dict gain_analysis_dict(const GainAnalysis& ga) {
    py::dict out;
    out["eta"] = eta_value(ga.eta);
    out["K_eff_star"] = ga.k_eff_star;
    out["K_max"] = ga.k_max ? py::object(py::float_(*ga.k_max)) : py::object(py::none());
    out["regime_ok"] = ga.regime_ok;
    out["gap_class"] = ga.gap_class == GapClass::dramatic ? "dramatic" : "ordinary";
    return out;
}

}  // namespace

PYBIND11_MODULE(_csamp, m) {
    m.doc() = "Corrected impulse-invariance sampling toolkit";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("expm", &expm, py::arg("a"), py::arg("t") = 1.0);
    m.def(
        "resolvent",
        [](const ComplexMatrix& a, Complex s) { return resolvent(a, s); },
        py::arg("a"), py::arg("s"));
    m.def("spectral_radius", &spectral_radius, py::arg("m"));

    m.def(
        "spectral_decomposition",
        [](const ComplexMatrix& a, int circle_nodes) {
            const SpectralDecomposition sd = spectral_decomposition(a, {}, circle_nodes);
            py::list clusters;
            for (const SpectralCluster& c : sd.clusters) {
                py::dict d;
                d["eigenvalue"] = c.eigenvalue;
                d["multiplicity"] = c.multiplicity;
                d["projection"] = c.projection;
                clusters.append(d);
            }
            return clusters;
        },
        py::arg("a"), py::arg("circle_nodes") = 64);

    py::class_<DiscreteStateSpace>(m, "DiscreteStateSpace")
        .def_readonly("A", &DiscreteStateSpace::a)
        .def_readonly("B", &DiscreteStateSpace::b)
        .def_readonly("C", &DiscreteStateSpace::c)
        .def_readonly("D", &DiscreteStateSpace::d)
        .def_readonly("Ts", &DiscreteStateSpace::ts)
        .def_property_readonly("eta",
                               [](const DiscreteStateSpace& s) { return eta_value(s.eta); });

    m.def(
        "discretize_corrected",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
           const ComplexMatrix& d, double ts) {
            return discretize_corrected(plant_from_arrays(a, b, c, d), ts);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("ts"));
    m.def(
        "discretize_right_limit",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
           const ComplexMatrix& d, double ts) {
            return discretize_right_limit(plant_from_arrays(a, b, c, d), ts);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("ts"));
    m.def(
        "transfer_eval_d",
        [](const DiscreteStateSpace& dss, Complex z) { return transfer_eval_d(dss, z); },
        py::arg("model"), py::arg("z"));
    m.def(
        "transfer_eval_c",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
           const ComplexMatrix& d, Complex s) {
            return transfer_eval_c(plant_from_arrays(a, b, c, d), s);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("s"));
    m.def(
        "sampled_value",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
           const ComplexMatrix& d, double t, double u0) {
            return sampled_value(plant_from_arrays(a, b, c, d), t, make_heaviside(u0));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("t"),
        py::arg("u0") = 0.5);

    m.def(
        "aliasing_sum",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
           const ComplexMatrix& d, Complex s, double ts, long long n) {
            const AliasingEvaluation e =
                aliasing_sum(plant_from_arrays(a, b, c, d), s, ts, n);
            py::dict out;
            out["s"] = e.s;
            out["N"] = e.n_terms;
            out["value"] = e.value;
            out["tail_bound"] = e.tail_bound;
            out["omega_s"] = e.omega_s;
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("s"), py::arg("ts"),
        py::arg("n") = 10000);

    m.def(
        "kernel_expansion_check",
        [](Complex sigma, double ts, long long n) {
            const KernelCheck k = kernel_expansion_check(sigma, ts, n);
            return py::make_tuple(k.lhs, k.rhs, k.gap);
        },
        py::arg("sigma"), py::arg("ts"), py::arg("n"));
    m.def("cotangent_check", &cotangent_check, py::arg("x"), py::arg("n"));
    m.def(
        "half_part_check",
        [](Complex st, long long n) {
            const HalfPartCheck h = half_part_check(st, n);
            return py::make_tuple(h.paper_gap, h.corrected_gap);
        },
        py::arg("s_times_t"), py::arg("n") = 1);
    m.def("higher_order_term", &higher_order_term, py::arg("r"), py::arg("x"),
          py::arg("ts"), py::arg("m_terms"));

    m.def(
        "bromwich_resolvent_t0",
        [](const ComplexMatrix& a, double c, double half_height, int nodes) {
            return bromwich_resolvent_t0(a, BromwichLine{c, half_height, nodes});
        },
        py::arg("a"), py::arg("c"), py::arg("half_height") = 1e4, py::arg("nodes") = 1400);
    m.def(
        "bromwich_resolvent_t",
        [](const ComplexMatrix& a, double t, double c, double half_height, int nodes) {
            return bromwich_resolvent_t(a, t, BromwichLine{c, half_height, nodes});
        },
        py::arg("a"), py::arg("t"), py::arg("c"), py::arg("half_height") = 1e3,
        py::arg("nodes") = 20000);
    m.def(
        "riesz_projection",
        [](const ComplexMatrix& a, Complex center, double radius, int nodes) {
            return riesz_projection(a, CircleContour{center, radius, nodes});
        },
        py::arg("a"), py::arg("center"), py::arg("radius"), py::arg("nodes") = 64);

    py::class_<RmcfPlant>(m, "RmcfPlant")
        .def(py::init([](double sigma, double omega, double zero, double gain) {
                 return make_rmcf_plant(sigma, omega, zero, gain);
             }),
             py::arg("sigma"), py::arg("omega"), py::arg("zero"), py::arg("gain"))
        .def_readonly("sigma", &RmcfPlant::sigma)
        .def_readonly("omega", &RmcfPlant::omega)
        .def_readonly("zero", &RmcfPlant::zero)
        .def_readonly("gain", &RmcfPlant::gain);

    m.def("build_rmcf", [](const RmcfPlant& p) {
        const ContinuousStateSpace ss = build_rmcf(p);
        return py::make_tuple(ss.a, ss.b, ss.c, ss.d);
    });
    m.def("closed_loop_matrix", &closed_loop_matrix, py::arg("plant"), py::arg("ts"),
          py::arg("k_eff"));
    m.def("critical_gain_eff", &critical_gain_eff, py::arg("plant"), py::arg("ts"));
    m.def("critical_gain_eff_bisect", &critical_gain_eff_bisect, py::arg("plant"),
          py::arg("ts"), py::arg("iterations") = 200);
    m.def(
        "gain_map",
        [](double k, double eta, double g) {
            return gain_map(k, eta == 0.5 ? Eta::corrected : Eta::right_limit, g);
        },
        py::arg("k"), py::arg("eta"), py::arg("g"));
    m.def(
        "gain_unmap",
        [](double k_eff, double eta, double g) -> py::object {
            const auto r =
                gain_unmap(k_eff, eta == 0.5 ? Eta::corrected : Eta::right_limit, g);
            return r ? py::object(py::float_(*r)) : py::object(py::none());
        },
        py::arg("k_eff"), py::arg("eta"), py::arg("g"));
    m.def(
        "stability_gap_report",
        [](const RmcfPlant& p, double ts) {
            const StabilityGapReport rep = stability_gap_report(p, ts);
            py::dict out;
            out["corrected"] = gain_analysis_dict(rep.corrected);
            out["right_limit"] = gain_analysis_dict(rep.right_limit);
            out["K_eff_star_bisect"] = rep.k_eff_star_bisect;
            out["boundary_radius_err"] = rep.boundary_radius_err;
            out["json"] = report_to_json(rep);
            return out;
        },
        py::arg("plant"), py::arg("ts"));
    m.def("search_dramatic_gap", [](double ts) -> py::object {
        const auto p = search_dramatic_gap(ts);
        return p ? py::cast(*p) : py::object(py::none());
    }, py::arg("ts") = 1.0);

    m.def("run_lemma_suite", [](double lemma_tol_override) {
        RunConfig config;
        config.lemma_tol_override = lemma_tol_override;
        const std::vector<LemmaReport> reports = run_all(config);
        py::list out;
        for (const LemmaReport& r : reports) {
            py::dict d;
            d["id"] = r.id;
            d["final_gap"] = r.final_gap;
            d["tolerance"] = r.tolerance;
            d["verdict"] = verdict_name(r.verdict);
            out.append(d);
        }
        return out;
    }, py::arg("lemma_tol_override") = 0.0);
}
