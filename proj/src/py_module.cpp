#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "probeq/certificates.hpp"
#include "probeq/coupling.hpp"
#include "probeq/gen.hpp"
#include "probeq/json_io.hpp"

namespace py = pybind11;
using namespace probeq;

namespace {

Event event_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<Interval> ivs;
  for (const auto& [lo, hi] : pairs)
    ivs.push_back(Interval{Scalar::from_string(lo), Scalar::from_string(hi)});
  return Event::from_intervals(std::move(ivs));
}

std::vector<std::pair<std::string, std::string>> event_to_pairs(const Event& e) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& iv : e.intervals()) out.emplace_back(iv.lo.to_string(), iv.hi.to_string());
  return out;
}

int ordering_to_int(Ordering o) {
  return o == Ordering::LT ? -1 : (o == Ordering::GT ? 1 : 0);
}

}  // namespace

PYBIND11_MODULE(_probeq, m) {
  m.doc() = "exact probabilistic-equivalence certificates on ([0,1), Lebesgue)";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DistributionsDiffer>(m, "DistributionsDiffer", PyExc_ValueError);

  py::class_<Scalar>(m, "Scalar")
      .def(py::init([](const std::string& s) { return Scalar::from_string(s); }))
      .def("__str__", &Scalar::to_string)
      .def("__repr__", [](const Scalar& s) { return "Scalar('" + s.to_string() + "')"; })
      .def("__float__", &Scalar::to_double)
      .def("decimal", &Scalar::to_decimal_string, py::arg("digits") = 12)
      .def("is_rational", &Scalar::is_rational)
      .def("sign", &Scalar::sign)
      .def("__add__", [](const Scalar& a, const Scalar& b) { return a + b; })
      .def("__sub__", [](const Scalar& a, const Scalar& b) { return a - b; })
      .def("__mul__", [](const Scalar& a, const Scalar& b) { return a * b; })
      .def("__neg__", [](const Scalar& a) { return -a; })
      .def("__eq__", [](const Scalar& a, const Scalar& b) { return a == b; })
      .def("__lt__", [](const Scalar& a, const Scalar& b) { return a < b; })
      .def("__le__", [](const Scalar& a, const Scalar& b) { return a <= b; })
      .def("__hash__", [](const Scalar& s) { return py::hash(py::str(s.to_string())); });

  m.def("scalar_compare", [](const Scalar& a, const Scalar& b) {
    return ordering_to_int(scalar_compare(a, b));
  });
  m.def("nu", [](const Scalar& s, int k) { return nu(s, k); }, py::arg("s"), py::arg("k"));

  py::class_<Event>(m, "Event")
      .def(py::init(&event_from_pairs))
      .def("intervals", &event_to_pairs)
      .def("measure", &Event::measure)
      .def("is_empty", &Event::empty)
      .def("__eq__", [](const Event& a, const Event& b) { return a == b; })
      .def("__repr__", [](const Event& e) { return event_to_json(e).dump(); });

  m.def("intersect", &intersect);
  m.def("event_union", &event_union);
  m.def("complement", &complement);
  m.def("split_prefix", [](const Event& e, const Scalar& t) { return split_prefix(e, t); });

  py::class_<SimpleRV>(m, "SimpleRV")
      .def_static("from_json", [](const std::string& text) {
        return rv_from_json(Json::parse(text));
      })
      .def("to_json", [](const SimpleRV& rv) { return rv_to_json(rv).dump(); })
      .def("canonicalized", &SimpleRV::canonicalized)
      .def("cells",
           [](const SimpleRV& rv) {
             std::vector<std::pair<std::vector<std::pair<std::string, std::string>>, std::string>>
                 out;
             for (const auto& c : rv.cells())
               out.emplace_back(event_to_pairs(c.event), rat_to_string(c.outcome));
             return out;
           })
      .def("value_at", [](const SimpleRV& rv, const Scalar& p) {
        return rat_to_string(rv.value_at(p));
      })
      .def("__eq__", [](const SimpleRV& a, const SimpleRV& b) { return a == b; });

  py::class_<Distribution>(m, "Distribution")
      .def_static("from_json", [](const std::string& text) {
        return dist_from_json(Json::parse(text));
      })
      .def("to_json", [](const Distribution& d) { return dist_to_json(d).dump(); })
      .def("atoms",
           [](const Distribution& d) {
             std::vector<std::pair<std::string, Scalar>> out;
             for (const auto& a : d.atoms()) out.emplace_back(rat_to_string(a.outcome), a.mass);
             return out;
           })
      .def("__eq__", [](const Distribution& a, const Distribution& b) { return a == b; });

  m.def("make_rv", [](const std::string& lo, const std::string& hi,
                      const std::vector<std::pair<std::vector<std::pair<std::string, std::string>>,
                                                  std::string>>& cells) {
    std::vector<SimpleRV::Cell> parsed;
    for (const auto& [event, outcome] : cells)
      parsed.push_back({event_from_pairs(event), rat_from_string(outcome)});
    return SimpleRV::make(OutcomeBounds::make(rat_from_string(lo), rat_from_string(hi)),
                          std::move(parsed));
  });

  m.def("distribution", &distribution);
  m.def("equal_in_distribution", &equal_in_distribution);
  m.def("fosd_compare", [](const SimpleRV& x, const SimpleRV& y) {
    return to_string(fosd_compare(x, y));
  });
  m.def("common_refinement", [](const SimpleRV& x, const SimpleRV& y) {
    std::vector<std::tuple<std::vector<std::pair<std::string, std::string>>, std::string,
                           std::string>>
        out;
    for (const auto& cell : common_refinement(x, y))
      out.emplace_back(event_to_pairs(cell.event), rat_to_string(cell.x_val),
                       rat_to_string(cell.y_val));
    return out;
  });
  m.def("prob_diff_exceeds", [](const SimpleRV& x, const SimpleRV& y, const std::string& eps) {
    return prob_diff_exceeds(x, y, rat_from_string(eps));
  });
  m.def("levy_distance", &levy_distance);
  m.def("quantile_rv", [](const Distribution& f) { return quantile_rv(f); });

  py::class_<RegretFunction>(m, "RegretFunction")
      .def_static("from_json", [](const std::string& text) {
        return psi_from_json(Json::parse(text));
      })
      .def_static("difference", &RegretFunction::difference)
      .def_static("utility_power", &RegretFunction::utility_power)
      .def_static("utility_exponential", &RegretFunction::utility_exponential)
      .def("to_json", [](const RegretFunction& psi) { return psi_to_json(psi).dump(); });

  py::class_<RegretFunctional>(m, "RegretFunctional")
      .def_static("from_json", [](const std::string& text) {
        return functional_from_json(Json::parse(text));
      })
      .def_static("expectation", &RegretFunctional::expectation)
      .def_static("rank_dependent", &RegretFunctional::rank_dependent);

  m.def("validate_regret_function",
        [](const RegretFunction& psi, const std::string& lo, const std::string& hi,
           int grid_n) {
          const PsiValidation report = validate_regret_function(
              psi, OutcomeBounds::make(rat_from_string(lo), rat_from_string(hi)), grid_n);
          std::vector<std::string> issues;
          for (const auto& issue : report.issues) issues.push_back(issue.what);
          return issues;
        });

  m.def("prefer",
        [](const RegretFunction& psi, const RegretFunctional& v, const SimpleRV& x,
           const SimpleRV& y, double tol) {
          const Preference pref = prefer(psi, v, x, y, tol);
          py::dict out;
          out["verdict"] = to_string(pref.verdict);
          out["value"] = pref.value;
          if (pref.exact) out["exact"] = pref.exact->to_string();
          return out;
        },
        py::arg("psi"), py::arg("v"), py::arg("x"), py::arg("y"), py::arg("tol") = 1e-9);

  m.def("regret_lottery", [](const RegretFunction& psi, const SimpleRV& x, const SimpleRV& y) {
    std::vector<std::pair<double, Scalar>> out;
    for (const auto& a : regret_lottery(psi, x, y).atoms) out.emplace_back(a.value, a.prob);
    return out;
  });

  m.def("classify_case", [](const SimpleRV& x, const SimpleRV& y) {
    return to_string(classify_case(x, y));
  });
  m.def("certify",
        [](const SimpleRV& x, const SimpleRV& y, int k_min, int k_max) {
          return certificate_to_json(certify_equivalence(x, y, CertifyConfig{k_min, k_max}))
              .dump();
        },
        py::arg("x"), py::arg("y"), py::arg("k_min") = 0, py::arg("k_max") = 0);
  m.def("verify", [](const std::string& cert_json, const SimpleRV& x, const SimpleRV& y) {
    const VerificationReport report =
        verify_certificate(certificate_from_json(Json::parse(cert_json)), x, y);
    std::vector<std::tuple<std::string, bool, std::string>> items;
    for (const auto& item : report.items) items.emplace_back(item.name, item.ok, item.detail);
    return items;
  });

  m.def("comonotone_couple", [](const Distribution& f, const Distribution& g) {
    return coupling_to_json(comonotone_couple(f, g)).dump();
  });
  m.def("skorokhod_represent",
        [](const std::vector<Distribution>& seq, const Distribution& target,
           const std::vector<std::string>& eps) {
          std::vector<Rat> grid;
          for (const auto& e : eps) grid.push_back(rat_from_string(e));
          return skorokhod_report_to_json(skorokhod_represent(seq, target, grid), 12).dump();
        });
  m.def("check_fosd_preference",
        [](const RegretFunction& psi, const RegretFunctional& v, const SimpleRV& x,
           const SimpleRV& y) {
          return fosd_preference_report_to_json(check_fosd_preference(psi, v, x, y), 12).dump();
        });

  m.def("gen_pair", [](const std::string& kind, std::uint64_t seed) {
    gen::Rng rng(seed);
    gen::Pair pair = kind == "case1"   ? gen::case1_pair(rng)
                     : kind == "case2" ? gen::case2_pair(rng)
                     : kind == "case3" ? gen::case3_pair(rng)
                     : kind == "fosd"  ? gen::fosd_pair(rng)
                                       : throw ParseError("unknown gen kind '" + kind + "'");
    return std::make_pair(pair.x, pair.y);
  });
}
