#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "hyplab/fixpoint.hpp"
#include "hyplab/metrics.hpp"
#include "hyplab/perturbation.hpp"
#include "hyplab/witness.hpp"

namespace py = pybind11;
using namespace hyplab;

namespace {

using ModelPtr = std::shared_ptr<SpaceModel>;

Point to_point(const std::vector<double>& v) { return Point(v); }

ModelPtr make_model(const std::string& kind, int dim) {
    if (kind == "euclidean") return std::make_shared<SpaceModel>(SpaceModel::euclidean(dim));
    if (kind == "half_space") return std::make_shared<SpaceModel>(SpaceModel::half_space(dim));
    if (kind == "l1") return std::make_shared<SpaceModel>(SpaceModel::l1(dim));
    if (kind == "hyperboloid2") return std::make_shared<SpaceModel>(SpaceModel::hyperboloid2());
    throw invalid_input("unknown model kind: " + kind);
}

Gauge make_gauge(const std::string& kind, double s) {
    if (kind == "log") return make_log_gauge();
    if (kind == "power") return make_power_gauge();
    if (kind == "psi") return make_psi_gauge(s);
    throw invalid_input("unknown gauge kind: " + kind);
}

py::dict metric_dict(const MetricValue& v) {
    py::dict d;
    d["value"] = v.value;
    d["tail_bound"] = v.tail_bound;
    d["budget_used"] = v.budget_used;
    return d;
}

}  // namespace

PYBIND11_MODULE(_hyplab, mod) {
    mod.doc() = "nonexpansive-mapping laboratory on unbounded geodesic spaces";

    py::register_exception<invalid_input>(mod, "InvalidInput");

    py::class_<SpaceModel, ModelPtr>(mod, "SpaceModel")
        .def_static("create", &make_model, py::arg("kind"), py::arg("dim") = 1)
        .def_property_readonly("name", &SpaceModel::name)
        .def_property_readonly("dim", &SpaceModel::dim)
        .def_property_readonly("tolerance", &SpaceModel::tolerance)
        .def("origin", [](const SpaceModel& m) { return m.origin().coords; })
        .def("contains",
             [](const SpaceModel& m, const std::vector<double>& p, double tol) {
                 return m.contains(to_point(p), tol);
             },
             py::arg("p"), py::arg("tol") = 1e-9)
        .def("dist",
             [](const SpaceModel& m, const std::vector<double>& x, const std::vector<double>& y) {
                 return m.dist(to_point(x), to_point(y));
             })
        .def("combine",
             [](const SpaceModel& m, const std::vector<double>& x, const std::vector<double>& y,
                double lam) { return m.combine(to_point(x), to_point(y), lam).coords; })
        .def("point_at_distance",
             [](const SpaceModel& m, const std::vector<double>& from, double d) {
                 RayResult r = m.point_at_distance(to_point(from), d);
                 return py::make_tuple(r.point.coords, r.fallback);
             })
        .def("ball_sampler",
             [](const SpaceModel& m, const std::vector<double>& c, double radius,
                std::size_t count, std::uint64_t seed) {
                 std::vector<std::vector<double>> out;
                 for (Point& p : m.ball_sampler(to_point(c), radius, count, seed))
                     out.push_back(std::move(p.coords));
                 return out;
             })
        .def("verify_hyperbolicity", [](const SpaceModel& m, std::size_t n, std::uint64_t seed) {
            AxiomReport r = m.verify_hyperbolicity(n, seed);
            py::dict d;
            d["samples"] = r.samples;
            d["max_violation"] = r.max_violation;
            d["tolerance"] = r.tolerance;
            d["passed"] = r.passed;
            return d;
        });

    py::class_<NonexpMap>(mod, "NonexpMap")
        .def_static("identity", [](ModelPtr m) { return NonexpMap::identity(m); })
        .def_static("constant",
                    [](ModelPtr m, const std::vector<double>& v) {
                        return NonexpMap::constant(m, to_point(v));
                    })
        .def_static("affine",
                    [](ModelPtr m, double a, const std::vector<double>& b) {
                        return NonexpMap::affine(m, a, b);
                    })
        .def_static("from_callable",
                    [](ModelPtr m, std::function<std::vector<double>(std::vector<double>)> fn,
                       double lip) {
                        auto wrapped = [fn](const Point& x) { return Point(fn(x.coords)); };
                        return NonexpMap::from_function(m, wrapped, lip, "python");
                    })
        .def_property_readonly("claimed_lip", &NonexpMap::claimed_lip)
        .def_property_readonly("provenance", &NonexpMap::provenance)
        .def("__call__",
             [](const NonexpMap& f, const std::vector<double>& x) { return f(to_point(x)).coords; });

    mod.def("contract_toward",
            [](const NonexpMap& f, const std::vector<double>& theta, double gamma) {
                return contract_toward(f, to_point(theta), gamma);
            });
    mod.def("radial_collapse",
            [](ModelPtr m, const std::vector<double>& z, double R, double eps) {
                return radial_collapse(m, to_point(z), R, eps);
            });

    mod.def("series_metric",
            [](const NonexpMap& f, const NonexpMap& g, const std::vector<double>& theta,
               const std::string& gauge, double s, std::size_t N, std::size_t budget,
               std::uint64_t seed) {
                return metric_dict(
                    series_metric(f, g, to_point(theta), make_gauge(gauge, s), N, budget, seed));
            },
            py::arg("f"), py::arg("g"), py::arg("theta"), py::arg("gauge") = "log",
            py::arg("s") = 2.0, py::arg("N") = 60, py::arg("budget") = 1000, py::arg("seed") = 1);
    mod.def("weighted_sup_metric",
            [](const NonexpMap& f, const NonexpMap& g, const std::vector<double>& theta, double s,
               std::size_t budget, std::uint64_t seed) {
                return metric_dict(weighted_sup_metric(f, g, to_point(theta), s, budget, seed));
            },
            py::arg("f"), py::arg("g"), py::arg("theta"), py::arg("s") = 2.0,
            py::arg("budget") = 1000, py::arg("seed") = 1);

    mod.def("iterate",
            [](const NonexpMap& f, const std::vector<double>& x0, double tol,
               std::size_t max_iter) {
                FixedPointReport r = iterate(f, to_point(x0), tol, max_iter);
                py::dict d;
                d["iterations"] = r.iterations;
                d["final_point"] = r.final_point.coords;
                d["residual"] = r.residual;
                d["converged"] = r.converged;
                if (r.error_bound) d["error_bound"] = *r.error_bound;
                return d;
            },
            py::arg("f"), py::arg("x0"), py::arg("tol") = 1e-8,
            py::arg("max_iter") = std::size_t{1000000});

    mod.def("ball_invariance_witness",
            [](const NonexpMap& f, double r, const std::vector<double>& theta,
               const std::string& family, const std::string& gauge, double s) {
                MetricFamily mf =
                    family == "weighted" ? MetricFamily::WeightedSup : MetricFamily::Series;
                return ball_invariance_witness(f, r, to_point(theta), mf, make_gauge(gauge, s), s);
            },
            py::arg("f"), py::arg("r"), py::arg("theta"), py::arg("family") = "series",
            py::arg("gauge") = "log", py::arg("s") = 2.0);

    py::class_<PorosityWitness>(mod, "PorosityWitness")
        .def_property_readonly("radius", [](const PorosityWitness& w) { return w.radius; })
        .def_property_readonly("M_f", [](const PorosityWitness& w) { return w.M_f; })
        .def_property_readonly("center_dist_bound",
                               [](const PorosityWitness& w) { return w.center_dist_bound; })
        .def_property_readonly("params", [](const PorosityWitness& w) { return w.params; })
        .def_property_readonly("center", [](const PorosityWitness& w) { return w.center_g; });

    mod.def("verify_witness",
            [](const PorosityWitness& w, std::size_t members, std::uint64_t seed,
               std::size_t budget) {
                WitnessReport r = verify_witness(w, members, seed, budget);
                py::dict d;
                d["center_certified"] = r.center_certified;
                d["passes"] = r.passes;
                d["failures"] = r.failures;
                d["all_passed"] = r.all_passed;
                d["center_distance_estimate"] = r.center_distance_estimate;
                d["center_distance_bound"] = r.center_distance_bound;
                return d;
            },
            py::arg("w"), py::arg("members") = 20, py::arg("seed") = 1, py::arg("budget") = 1000);
}
