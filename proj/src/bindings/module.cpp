#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmetro/bounds.hpp"
#include "qmetro/config.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/protocols.hpp"
#include "qmetro/scaling.hpp"

namespace py = pybind11;
using namespace qmetro;

namespace {

NoiseModel make_model(double theta, double lambda, double beta, double omega_c,
                      const std::string& rate_kind, bool secular,
                      const std::vector<double>& rate_grid,
                      const std::vector<double>& rate_values) {
    NoiseModel m;
    m.theta = theta;
    m.lambda = lambda;
    m.beta = beta;
    m.omega_c = omega_c;
    m.secular = secular;
    if (rate_kind == "tcl-ohmic") {
        m.rate_kind = RateKind::TclOhmic;
    } else if (rate_kind == "semigroup") {
        m.rate_kind = RateKind::Semigroup;
    } else if (rate_kind == "custom") {
        m.rate_kind = RateKind::Custom;
        m.rate_grid = rate_grid;
        m.rate_values = rate_values;
    } else {
        throw ConfigError("rate_kind must be tcl-ohmic, semigroup or custom");
    }
    m.validate();
    return m;
}

SweepEngine engine_of(const std::string& s) { return engine_from_string(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Precision limits for noisy single-qubit frequency estimation";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "QmetroError");

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init(&make_model), py::arg("theta") = M_PI / 2, py::arg("lambda_") = 0.1,
             py::arg("beta") = 1.0, py::arg("omega_c") = 100.0,
             py::arg("rate_kind") = "tcl-ohmic", py::arg("secular") = false,
             py::arg("rate_grid") = std::vector<double>{},
             py::arg("rate_values") = std::vector<double>{})
        .def_readwrite("theta", &NoiseModel::theta)
        .def_readwrite("beta", &NoiseModel::beta)
        .def_readwrite("omega_c", &NoiseModel::omega_c)
        .def_readwrite("secular", &NoiseModel::secular)
        .def_property(
            "lambda_", [](const NoiseModel& n) { return n.lambda; },
            [](NoiseModel& n, double v) { n.lambda = v; });

    py::class_<TimeOptimum>(m, "TimeOptimum")
        .def_readonly("t_opt", &TimeOptimum::t_opt)
        .def_readonly("bound", &TimeOptimum::bound);

    py::class_<McResult>(m, "McResult")
        .def_readonly("mse", &McResult::mse)
        .def_readonly("bias", &McResult::bias);

    py::class_<BoundResult>(m, "BoundResult")
        .def_readonly("n_probes", &BoundResult::n_probes)
        .def_readonly("t", &BoundResult::t)
        .def_readonly("value", &BoundResult::value)
        .def_readonly("objective_evals", &BoundResult::objective_evals)
        .def_readonly("converged", &BoundResult::converged)
        .def_readonly("beta_norm", &BoundResult::beta_norm);

    py::class_<QcrbResult>(m, "QcrbResult")
        .def_readonly("t_opt", &QcrbResult::t_opt)
        .def_readonly("value", &QcrbResult::value)
        .def_readonly("boundary", &QcrbResult::boundary);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("n_probes", &SweepRow::n_probes)
        .def_readonly("t_opt", &SweepRow::t_opt)
        .def_readonly("bound_times_t", &SweepRow::bound_times_t)
        .def_readonly("boundary", &SweepRow::boundary);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("exponent", &FitResult::exponent)
        .def_readonly("intercept", &FitResult::intercept)
        .def_readonly("residual", &FitResult::residual)
        .def_readonly("window_min", &FitResult::window_min)
        .def_readonly("window_max", &FitResult::window_max);

    // states and distances
    m.def("trace_distance", [](const Mat& a, const Mat& b) {
        return trace_distance(DensityMatrix(a), DensityMatrix(b));
    });
    m.def("fidelity",
          [](const Mat& a, const Mat& b) { return fidelity(DensityMatrix(a), DensityMatrix(b)); });
    m.def("bures_distance", [](const Mat& a, const Mat& b) {
        return bures_distance(DensityMatrix(a), DensityMatrix(b));
    });
    m.def("statistical_distance", &statistical_distance);

    // dynamics
    m.def("rate_ohmic", &rate_ohmic, py::arg("t"), py::arg("model"));
    m.def("decoherence_integral", &decoherence_integral, py::arg("t"), py::arg("model"));
    m.def(
        "propagate_channel",
        [](const NoiseModel& model, double omega0, double t, int steps) {
            ChannelWithDerivative c = propagate_channel(model, omega0, t, steps);
            return py::make_tuple(c.map.m, c.dmap.m);
        },
        py::arg("model"), py::arg("omega0"), py::arg("t"), py::arg("steps") = 0,
        "Returns (map, dmap) as 4x4 column-stacking superoperator matrices");
    m.def(
        "evolve_state",
        [](const NoiseModel& model, double omega0, const Mat& rho0,
           const std::vector<double>& grid) {
            auto states = evolve_state(model, omega0, DensityMatrix(rho0), grid);
            std::vector<Mat> out;
            for (const auto& s : states) out.push_back(s.matrix());
            return out;
        },
        py::arg("model"), py::arg("omega0"), py::arg("rho0"), py::arg("t_grid"));

    // fisher
    m.def("classical_fi", [](const std::vector<double>& probs,
                             const std::vector<double>& dprobs) {
        ParamProbability p;
        p.probs = probs;
        p.dprobs = dprobs;
        return classical_fi(p);
    });
    m.def("crb", &crb, py::arg("fi"), py::arg("nu"));
    m.def("sld", [](const Mat& rho, const Mat& drho) { return sld(DensityMatrix(rho), drho); });
    m.def("qfi", [](const Mat& rho, const Mat& drho) {
        QfiResult q = qfi(DensityMatrix(rho), drho);
        return py::make_tuple(q.value, q.sld);
    });
    m.def("qfi_pure", &qfi_pure, py::arg("psi"), py::arg("dpsi"));

    // bounds
    m.def(
        "cqfi_n1",
        [](const NoiseModel& model, double omega0, double t, int restarts, std::uint64_t seed) {
            BoundOptions opts;
            opts.restarts = restarts;
            opts.seed = seed;
            return cqfi_n1(kraus_at(propagate_channel(model, omega0, t)), opts);
        },
        py::arg("model"), py::arg("omega0"), py::arg("t"), py::arg("restarts") = 20,
        py::arg("seed") = 12345);
    m.def(
        "cqfi_upper",
        [](const NoiseModel& model, double omega0, double t, int n, int restarts,
           std::uint64_t seed) {
            BoundOptions opts;
            opts.restarts = restarts;
            opts.seed = seed;
            return cqfi_upper(kraus_at(propagate_channel(model, omega0, t)), n, opts);
        },
        py::arg("model"), py::arg("omega0"), py::arg("t"), py::arg("n"), py::arg("restarts") = 20,
        py::arg("seed") = 12345);
    m.def(
        "qcrb_over_time",
        [](const NoiseModel& model, double omega0, int n, double t_lo, double t_hi,
           double total_time, int restarts, std::uint64_t seed) {
            BoundOptions opts;
            opts.restarts = restarts;
            opts.seed = seed;
            return qcrb_over_time(model, omega0, n, t_lo, t_hi, total_time, opts);
        },
        py::arg("model"), py::arg("omega0"), py::arg("n"), py::arg("t_lo"), py::arg("t_hi"),
        py::arg("total_time"), py::arg("restarts") = 6, py::arg("seed") = 12345);

    // protocols
    m.def("ramsey_survival", &ramsey_survival);
    m.def("dephasing_probs", &dephasing_probs, py::arg("omega0"), py::arg("t"), py::arg("gamma"),
          py::arg("n"), py::arg("entangled"));
    m.def("dephasing_crb", &dephasing_crb, py::arg("omega0"), py::arg("t"), py::arg("gamma"),
          py::arg("n"), py::arg("total_time"), py::arg("entangled"));
    m.def("dephasing_optimum", &dephasing_optimum, py::arg("gamma"), py::arg("n"),
          py::arg("total_time"), py::arg("entangled"));
    m.def("pc_ghz_survival", &pc_ghz_survival, py::arg("n"), py::arg("t"), py::arg("model"),
          py::arg("omega0"));
    m.def("pc_zeno_optimum", &pc_zeno_optimum, py::arg("n"), py::arg("model"),
          py::arg("total_time"));
    m.def(
        "parity_expectation_ghz",
        [](const NoiseModel& model, double omega0, double t, int n) {
            ParityExpectation p = parity_expectation_ghz(propagate_channel(model, omega0, t), n);
            return py::make_tuple(p.mean, p.dmean);
        },
        py::arg("model"), py::arg("omega0"), py::arg("t"), py::arg("n"));
    m.def(
        "parity_precision",
        [](const NoiseModel& model, double omega0, double t, int n, double total_time) {
            return parity_precision(propagate_channel(model, omega0, t), n, total_time);
        },
        py::arg("model"), py::arg("omega0"), py::arg("t"), py::arg("n"), py::arg("total_time"));
    m.def("toy_model_sample", &toy_model_sample, py::arg("theta"), py::arg("sigma_eta"),
          py::arg("omega0"), py::arg("t"), py::arg("samples"), py::arg("seed"));
    m.def("nep", &nep, py::arg("signal_slope"), py::arg("noise_std"), py::arg("conversion"));
    m.def(
        "mle_monte_carlo",
        [](const std::function<double(double)>& p, double omega0, double bracket,
           std::uint64_t seed, long repetitions, int replications) {
            McConfig cfg;
            cfg.seed = seed;
            cfg.repetitions = repetitions;
            cfg.replications = replications;
            return mle_monte_carlo(p, omega0, bracket, cfg);
        },
        py::arg("p_of_omega"), py::arg("omega0"), py::arg("bracket_halfwidth"),
        py::arg("seed") = 1, py::arg("repetitions") = 100000, py::arg("replications") = 200);
    m.def("make_dephasing_channel_superop", [](double gamma, double omega0, double t) {
        ChannelWithDerivative c = make_dephasing_channel(gamma, omega0, t);
        return py::make_tuple(c.map.m, c.dmap.m);
    });

    // scaling
    m.def("geometric_n_grid", &geometric_n_grid, py::arg("n_min"), py::arg("n_max"),
          py::arg("points"));
    m.def(
        "sweep",
        [](const NoiseModel& model, double omega0, const std::vector<int>& n_grid,
           const std::string& engine, double total_time, double t_lo, double t_hi,
           std::uint64_t seed, int workers, int restarts) {
            SweepSpec spec;
            spec.model = model;
            spec.omega0 = omega0;
            spec.n_grid = n_grid;
            spec.engine = engine_of(engine);
            spec.total_time = total_time;
            spec.t_lo = t_lo;
            spec.t_hi = t_hi;
            spec.seed = seed;
            spec.workers = workers;
            spec.bound_restarts = restarts;
            return sweep(spec);
        },
        py::arg("model"), py::arg("omega0"), py::arg("n_grid"), py::arg("engine"),
        py::arg("total_time") = 1.0, py::arg("t_lo") = 0.0, py::arg("t_hi") = 0.0,
        py::arg("seed") = 12345, py::arg("workers") = 1, py::arg("restarts") = 6);
    m.def("fit_exponent", &fit_exponent, py::arg("table"), py::arg("tail_fraction") = 0.5);
    m.def("fit_topt_exponent", &fit_topt_exponent, py::arg("table"),
          py::arg("tail_fraction") = 0.5);
}
