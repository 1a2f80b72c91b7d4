#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qsalloc/analytic.hpp"
#include "qsalloc/combinatorics.hpp"
#include "qsalloc/experiments.hpp"
#include "qsalloc/model.hpp"
#include "qsalloc/oracle.hpp"
#include "qsalloc/simulate.hpp"

namespace py = pybind11;
using namespace qsalloc;

namespace {

py::object to_fraction(const Rational& value) {
  static py::object fraction_type = py::module_::import("fractions").attr("Fraction");
  return fraction_type(value.fraction_str());
}

py::object to_py_int(const BigInt& value) {
  return py::module_::import("builtins").attr("int")(value.get_str());
}

// Accepts int, str ("0.35", "7/20"), or fractions.Fraction. Floats are
// rejected: exact inputs should not pass through binary floating point.
Rational rational_from(const py::object& obj) {
  if (py::isinstance<py::float_>(obj)) {
    throw py::type_error("pass probabilities and rates as str, int, or Fraction, not float");
  }
  if (py::isinstance<py::int_>(obj)) {
    return Rational::parse(py::str(obj).cast<std::string>());
  }
  if (py::isinstance<py::str>(obj)) {
    return Rational::parse(obj.cast<std::string>());
  }
  if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
    const std::string num = py::str(obj.attr("numerator")).cast<std::string>();
    const std::string den = py::str(obj.attr("denominator")).cast<std::string>();
    return Rational::parse(num + "/" + den);
  }
  throw py::type_error("cannot interpret value as an exact rational");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact service-rate analysis of quasi-symmetric storage allocations";

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init([](std::int64_t n_nodes, std::int64_t file_blocks, std::int64_t redundancy,
                       const py::object& node_rate) {
             return SystemConfig(n_nodes, file_blocks, redundancy, rational_from(node_rate));
           }),
           py::arg("n_nodes"), py::arg("file_blocks"), py::arg("redundancy"),
           py::arg("node_rate") = py::str("1"))
      .def_readonly("n_nodes", &SystemConfig::n_nodes)
      .def_readonly("file_blocks", &SystemConfig::file_blocks)
      .def_readonly("redundancy", &SystemConfig::redundancy)
      .def_property_readonly("node_rate",
                             [](const SystemConfig& cfg) { return to_fraction(cfg.node_rate); })
      .def("__repr__", [](const SystemConfig& cfg) {
        return "SystemConfig(n_nodes=" + std::to_string(cfg.n_nodes) +
               ", file_blocks=" + std::to_string(cfg.file_blocks) +
               ", redundancy=" + std::to_string(cfg.redundancy) + ", node_rate='" +
               cfg.node_rate.fraction_str() + "')";
      });

  py::class_<FixedSizeAccess>(m, "FixedSizeAccess")
      .def_readonly("subset_size", &FixedSizeAccess::subset_size)
      .def("__repr__", [](const FixedSizeAccess& access) {
        return "fixed_access(" + std::to_string(access.subset_size) + ")";
      });

  py::class_<ProbabilisticAccess>(m, "ProbabilisticAccess")
      .def_property_readonly(
          "failure_prob",
          [](const ProbabilisticAccess& access) { return to_fraction(access.failure_prob); })
      .def("__repr__", [](const ProbabilisticAccess& access) {
        return "probabilistic_access('" + access.failure_prob.fraction_str() + "')";
      });

  m.def(
      "fixed_access", [](std::int64_t r) { return FixedSizeAccess{r}; }, py::arg("subset_size"),
      "Access model that contacts a uniform r-subset of nodes");
  m.def(
      "probabilistic_access",
      [](const py::object& p) { return ProbabilisticAccess{rational_from(p)}; },
      py::arg("failure_prob"),
      "Access model where each data node fails independently with probability p");

  py::class_<Allocation>(m, "Allocation")
      .def_readonly("alpha", &Allocation::alpha)
      .def_readonly("beta", &Allocation::beta)
      .def_property_readonly(
          "per_node_blocks",
          [](const Allocation& alloc) { return to_fraction(alloc.per_node_blocks); })
      .def("__repr__", [](const Allocation& alloc) {
        return "Allocation(alpha=" + std::to_string(alloc.alpha) +
               ", beta=" + std::to_string(alloc.beta) + ")";
      });

  py::class_<RateResult>(m, "RateResult")
      .def_property_readonly("value", [](const RateResult& r) { return to_fraction(r.value); })
      .def_readonly("alpha", &RateResult::alpha)
      .def_property_readonly("per_k_terms",
                             [](const RateResult& r) {
                               py::dict terms;
                               for (const auto& [k, term] : r.per_k_terms) {
                                 terms[py::int_(k)] = py::make_tuple(
                                     to_fraction(term.probability),
                                     to_fraction(term.conditional_rate));
                               }
                               return terms;
                             })
      .def("__repr__", [](const RateResult& r) {
        return "RateResult(alpha=" + std::to_string(r.alpha) + ", value='" +
               r.value.fraction_str() + "')";
      });

  py::class_<StratumStats>(m, "StratumStats")
      .def_readonly("mean_time", &StratumStats::mean_time)
      .def_readonly("sd_time", &StratumStats::sd_time)
      .def_readonly("count", &StratumStats::count);

  py::class_<SimulationEstimate>(m, "SimulationEstimate")
      .def_readonly("trials", &SimulationEstimate::trials)
      .def_readonly("k_histogram", &SimulationEstimate::k_histogram)
      .def_readonly("per_k_mean_time", &SimulationEstimate::per_k_mean_time)
      .def_readonly("combined_rate", &SimulationEstimate::combined_rate)
      .def_property_readonly("analytic_reference",
                             [](const SimulationEstimate& est) -> py::object {
                               if (!est.analytic_reference) return py::none();
                               return to_fraction(*est.analytic_reference);
                             })
      .def_readonly("low_count_strata", &SimulationEstimate::low_count_strata)
      .def_readonly("min_stratum_count", &SimulationEstimate::min_stratum_count);

  m.def(
      "valid_alphas",
      [](const SystemConfig& cfg, const AccessModel& access) {
        return valid_alphas(cfg, access);
      },
      py::arg("config"), py::arg("access"));

  m.def(
      "make_allocation",
      [](const SystemConfig& cfg, const AccessModel& access, std::int64_t alpha) {
        return make_allocation(cfg, access, alpha);
      },
      py::arg("config"), py::arg("access"), py::arg("alpha"));

  m.def(
      "service_rate",
      [](const SystemConfig& cfg, const AccessModel& access, std::int64_t alpha) {
        return service_rate(cfg, access, make_allocation(cfg, access, alpha));
      },
      py::arg("config"), py::arg("access"), py::arg("alpha"));

  m.def(
      "success_prob",
      [](const SystemConfig& cfg, const AccessModel& access, std::int64_t alpha) {
        return to_fraction(success_prob(cfg, access, make_allocation(cfg, access, alpha)));
      },
      py::arg("config"), py::arg("access"), py::arg("alpha"));

  m.def(
      "minimal_spreading_rate",
      [](const SystemConfig& cfg, const AccessModel& access) {
        return to_fraction(minimal_spreading_rate(cfg, access));
      },
      py::arg("config"), py::arg("access"));

  m.def(
      "rate_upper_bound",
      [](const SystemConfig& cfg, const AccessModel& access, std::int64_t alpha) {
        return to_fraction(rate_upper_bound(cfg, access, alpha));
      },
      py::arg("config"), py::arg("access"), py::arg("alpha"));

  m.def(
      "conditional_service_time",
      [](std::int64_t alpha, std::int64_t k, const py::object& mu) {
        return to_fraction(conditional_service_time(alpha, k, rational_from(mu)));
      },
      py::arg("alpha"), py::arg("k"), py::arg("mu") = py::str("1"));

  m.def(
      "conditional_service_rate",
      [](std::int64_t alpha, std::int64_t k, const py::object& mu) {
        return to_fraction(conditional_service_rate(alpha, k, rational_from(mu)));
      },
      py::arg("alpha"), py::arg("k"), py::arg("mu") = py::str("1"));

  m.def(
      "per_k_bound",
      [](std::int64_t alpha, std::int64_t k, const py::object& mu) {
        return to_fraction(per_k_bound(alpha, k, rational_from(mu)));
      },
      py::arg("alpha"), py::arg("k"), py::arg("mu") = py::str("1"));

  m.def(
      "optimal_alpha",
      [](const SystemConfig& cfg, const AccessModel& access) {
        const OptimalAlpha best = optimal_alpha(cfg, access);
        return py::make_tuple(best.alpha, to_fraction(best.rate));
      },
      py::arg("config"), py::arg("access"));

  m.def(
      "enumerate_service_rate",
      [](const SystemConfig& cfg, const AccessModel& access, std::int64_t alpha) {
        return to_fraction(
            enumerate_service_rate(cfg, access, make_allocation(cfg, access, alpha)));
      },
      py::arg("config"), py::arg("access"), py::arg("alpha"),
      "Brute-force subset enumeration; exact ground truth for n <= 20");

  m.def(
      "enumerate_success_prob",
      [](const SystemConfig& cfg, const AccessModel& access, const py::sequence& blocks) {
        std::vector<Rational> parsed;
        for (const auto& item : blocks) {
          parsed.push_back(rational_from(py::reinterpret_borrow<py::object>(item)));
        }
        return to_fraction(enumerate_success_prob(cfg, access, GeneralAllocation{parsed}));
      },
      py::arg("config"), py::arg("access"), py::arg("blocks"),
      "Brute-force success probability for an arbitrary per-node block vector");

  m.def(
      "simulate",
      [](const SystemConfig& cfg, const AccessModel& access, std::int64_t alpha,
         std::uint64_t trials, std::uint64_t seed, unsigned workers,
         std::uint64_t min_stratum_count) {
        SimulateOptions options;
        options.workers = workers;
        options.min_stratum_count = min_stratum_count;
        return simulate(cfg, access, make_allocation(cfg, access, alpha), trials, seed, options);
      },
      py::arg("config"), py::arg("access"), py::arg("alpha"), py::arg("trials"), py::arg("seed"),
      py::arg("workers") = 1, py::arg("min_stratum_count") = 100,
      "Seeded Monte Carlo run; bit-identical for any worker count");

  m.def("binomial",
        [](std::int64_t n, std::int64_t k) { return to_py_int(binomial(n, k)); });
  m.def("hypergeom_pmf",
        [](std::int64_t k, std::int64_t population, std::int64_t successes, std::int64_t draws) {
          return to_fraction(hypergeom_pmf(k, population, successes, draws));
        });
  m.def("binom_pmf", [](std::int64_t k, std::int64_t n, const py::object& q) {
    return to_fraction(binom_pmf(k, n, rational_from(q)));
  });
  m.def("vandermonde_check", &vandermonde_check);

  m.def(
      "figure_csv",
      [](int figure) {
        std::ostringstream out;
        write_figure_csv(out, figure);
        return out.str();
      },
      py::arg("figure"), "CSV text of a bundled experiment preset (2, 3, 4, or 5)");
}
