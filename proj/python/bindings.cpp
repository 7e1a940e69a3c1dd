#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entsurv/entanglement.hpp"
#include "entsurv/errors.hpp"
#include "entsurv/est.hpp"
#include "entsurv/gaussian.hpp"
#include "entsurv/lindblad.hpp"
#include "entsurv/models.hpp"
#include "entsurv/qmat.hpp"
#include "entsurv/run.hpp"

namespace py = pybind11;
using namespace entsurv;

namespace {

est::SolveOptions options(std::optional<double> horizon) {
    est::SolveOptions o;
    o.horizon = horizon;
    return o;
}

py::list table_rows(const run::Table& t) {
    py::list rows;
    for (const auto& row : t.rows) {
        py::dict d;
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            d[py::str(t.columns[i])] = std::visit(
                [](const auto& v) -> py::object {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, std::monostate>) {
                        return py::none();
                    } else {
                        return py::cast(v);
                    }
                },
                row[i]);
        }
        rows.append(d);
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "entanglement survival times of open-system dynamics";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
    py::register_exception<ContractError>(m, "ContractError", error.ptr());
    py::register_exception<MultiplicityError>(m, "MultiplicityError", error.ptr());
    py::register_exception<RangeError>(m, "RangeError", error.ptr());
    py::register_exception<UsageError>(m, "UsageError", error.ptr());

    // ---- matrices and generators
    m.def("matexp", &qmat::matexp, py::arg("a"), py::arg("t") = 1.0);

    py::class_<lindblad::LindbladSpec>(m, "LindbladSpec")
        .def(py::init([](qmat::ComplexMatrix h, std::vector<qmat::ComplexMatrix> ls, double gamma, double omega) {
                 return lindblad::LindbladSpec{std::move(h), std::move(ls), gamma, omega};
             }),
             py::arg("hamiltonian"), py::arg("lindblad_ops"), py::arg("gamma") = 1.0, py::arg("omega") = 0.0)
        .def_readwrite("hamiltonian", &lindblad::LindbladSpec::hamiltonian)
        .def_readwrite("lindblad_ops", &lindblad::LindbladSpec::lindblad_ops)
        .def_readwrite("gamma", &lindblad::LindbladSpec::gamma)
        .def_readwrite("omega", &lindblad::LindbladSpec::omega)
        .def("validate", &lindblad::LindbladSpec::validate);

    py::class_<lindblad::SuperOp>(m, "SuperOp")
        .def_readonly("matrix", &lindblad::SuperOp::matrix)
        .def_readonly("dim", &lindblad::SuperOp::dim);

    m.def("build_generator", &lindblad::build_generator, py::arg("spec"));
    m.def("scale", &lindblad::scale, py::arg("gen"), py::arg("q"));
    m.def("conjugate", &lindblad::conjugate, py::arg("gen"), py::arg("u"));

    // ---- entanglement
    m.def(
        "choi", [](const qmat::ComplexMatrix& channel) { return entanglement::choi(channel).matrix; },
        py::arg("channel"));
    m.def(
        "negativity", [](const qmat::ComplexMatrix& rho) { return entanglement::negativity({rho, 2}); },
        py::arg("rho"));
    m.def(
        "partial_transpose", [](const qmat::ComplexMatrix& rho) { return entanglement::partial_transpose(rho); },
        py::arg("rho"));
    m.def(
        "esd_certified",
        [](const lindblad::SuperOp& gen) {
            return entanglement::esd_criterion(gen).verdict == entanglement::EsdVerdict::FiniteCertified;
        },
        py::arg("gen"));

    // ---- solver
    py::enum_<est::EstStatus>(m, "EstStatus")
        .value("Finite", est::EstStatus::Finite)
        .value("Divergent", est::EstStatus::Divergent)
        .value("MaxHorizonExceeded", est::EstStatus::MaxHorizonExceeded);

    py::class_<est::EstResult>(m, "EstResult")
        .def_readonly("status", &est::EstResult::status)
        .def_readonly("t_ent", &est::EstResult::t_ent)
        .def_readonly("t_rescaled", &est::EstResult::t_rescaled)
        .def_readonly("iterations", &est::EstResult::iterations)
        .def_readonly("residual", &est::EstResult::residual)
        .def_readonly("note", &est::EstResult::note)
        .def_property_readonly("finite", &est::EstResult::finite)
        .def("__repr__", [](const est::EstResult& r) {
            return "EstResult(" + std::string(est::to_string(r.status)) +
                   (r.finite() ? ", t_rescaled=" + std::to_string(r.t_rescaled) : "") + ")";
        });

    m.def(
        "solve_est",
        [](const lindblad::SuperOp& gen, double gamma, std::optional<double> horizon) {
            return est::solve_est(gen, gamma, options(horizon));
        },
        py::arg("gen"), py::arg("gamma") = 1.0, py::arg("horizon") = py::none());

    // ---- qubit models
    m.def(
        "phase_flip",
        [](double kappa, double theta, double phi, double gamma) {
            return lindblad::build_generator(models::phase_flip_spec({kappa, theta, phi}, gamma));
        },
        py::arg("kappa"), py::arg("theta") = 1.5707963267948966, py::arg("phi") = 0.0, py::arg("gamma") = 1.0);
    m.def(
        "gad",
        [](double n_mean, double kappa, double theta, double gamma) {
            return lindblad::build_generator(models::gad_spec({n_mean, kappa, theta}, gamma));
        },
        py::arg("n_mean"), py::arg("kappa") = 0.0, py::arg("theta") = 1.5707963267948966, py::arg("gamma") = 1.0);
    m.def(
        "depolarizing",
        [](double kappa, double theta, double gamma) {
            return lindblad::build_generator(models::depolarizing_spec(kappa, theta, gamma));
        },
        py::arg("kappa") = 0.0, py::arg("theta") = 1.5707963267948966, py::arg("gamma") = 1.0);

    m.def("pf_negativity", &models::pf_negativity, py::arg("kappa"), py::arg("tau"));
    m.def("pf_est_root", &models::pf_est_root, py::arg("kappa"), py::arg("tau_max") = 200.0);
    m.def(
        "pf_bounds",
        [](double kappa) {
            const auto b = models::pf_bounds(kappa);
            return py::make_tuple(b.lower, b.upper);
        },
        py::arg("kappa"));

    py::enum_<models::SeriesRegime>(m, "SeriesRegime")
        .value("Small", models::SeriesRegime::Small)
        .value("Critical", models::SeriesRegime::Critical)
        .value("Large", models::SeriesRegime::Large);
    m.def("pf_series", &models::pf_series, py::arg("kappa"), py::arg("regime"));
    m.def("lambert_w", &models::lambert_w, py::arg("x"));
    m.def("gad_negativity", &models::gad_negativity, py::arg("n_mean"), py::arg("tau"));
    m.def("gad_est_dissipative", &models::gad_est_dissipative, py::arg("n_mean"));
    m.def("depolarizing_est", &models::depolarizing_est);

    // ---- Gaussian channels
    py::class_<gaussian::GaussianChannel>(m, "GaussianChannel")
        .def(py::init([](const gaussian::Matrix2& f, const gaussian::Matrix2& g) {
                 return gaussian::GaussianChannel{f, g, std::nullopt};
             }),
             py::arg("f"), py::arg("g"))
        .def_readonly("f", &gaussian::GaussianChannel::f)
        .def_readonly("g", &gaussian::GaussianChannel::g)
        .def_property_readonly("det_f", [](const gaussian::GaussianChannel& ch) { return gaussian::det_f(ch); });

    py::enum_<gaussian::ChannelClass>(m, "ChannelClass")
        .value("A", gaussian::ChannelClass::A)
        .value("B1", gaussian::ChannelClass::B1)
        .value("B2", gaussian::ChannelClass::B2)
        .value("C", gaussian::ChannelClass::C)
        .value("D", gaussian::ChannelClass::D);

    py::class_<gaussian::Classification>(m, "Classification")
        .def_readonly("cls", &gaussian::Classification::cls)
        .def_readonly("k", &gaussian::Classification::k)
        .def_readonly("q", &gaussian::Classification::q)
        .def_readonly("warning", &gaussian::Classification::warning);

    py::class_<gaussian::GaussianModelParams>(m, "GaussianModelParams")
        .def(py::init([](double n_mean, double kappa, double theta, double gamma) {
                 return gaussian::GaussianModelParams{n_mean, kappa, theta, gamma};
             }),
             py::arg("n_mean") = 0.0, py::arg("kappa") = 0.0, py::arg("theta") = 0.0, py::arg("gamma") = 1.0)
        .def_readwrite("n_mean", &gaussian::GaussianModelParams::n_mean)
        .def_readwrite("kappa", &gaussian::GaussianModelParams::kappa)
        .def_readwrite("theta", &gaussian::GaussianModelParams::theta)
        .def_readwrite("gamma", &gaussian::GaussianModelParams::gamma);

    m.def("is_cpt", &gaussian::is_cpt, py::arg("channel"));
    m.def("classify", &gaussian::classify, py::arg("channel"));
    m.def("is_eb", py::overload_cast<const gaussian::GaussianChannel&>(&gaussian::is_eb), py::arg("channel"));
    m.def("compose", &gaussian::compose, py::arg("first"), py::arg("second"));
    m.def("model_fg", &gaussian::model_fg, py::arg("params"), py::arg("t"));
    m.def(
        "gaussian_est",
        [](const gaussian::GaussianModelParams& p, std::optional<double> horizon) {
            return gaussian::gaussian_est(p, options(horizon));
        },
        py::arg("params"), py::arg("horizon") = py::none());
    m.def("gaussian_asymptote", &gaussian::gaussian_asymptote, py::arg("n_mean"), py::arg("theta"));

    // ---- tables
    m.def(
        "sweep",
        [](const std::string& model, std::vector<double> kappas, std::vector<double> thetas,
           std::vector<double> n_means, double gamma, unsigned workers) {
            run::RunConfig cfg;
            cfg.model = run::parse_model(model);
            cfg.kappas = std::move(kappas);
            cfg.thetas = std::move(thetas);
            cfg.n_means = std::move(n_means);
            cfg.gamma = gamma;
            cfg.workers = workers;
            py::gil_scoped_release release;
            auto table = run::run_sweep(cfg);
            py::gil_scoped_acquire acquire;
            return table_rows(table);
        },
        py::arg("model"), py::arg("kappas"), py::arg("thetas") = std::vector<double>{1.5707963267948966},
        py::arg("n_means") = std::vector<double>{0.0}, py::arg("gamma") = 1.0, py::arg("workers") = 1);
    m.def("figure_ids", &run::figure_ids);
    m.def(
        "figure_csv",
        [](const std::string& id, unsigned workers) {
            py::gil_scoped_release release;
            return run::to_csv(run::figure_table(id, workers));
        },
        py::arg("id"), py::arg("workers") = 1);
}
