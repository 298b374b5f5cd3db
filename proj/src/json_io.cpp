#include "probeq/json_io.hpp"

#include <fstream>

namespace probeq {
namespace {

Scalar scalar_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("expected an exact scalar string");
  return Scalar::from_string(j.get<std::string>());
}

Rat rat_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("expected an exact rational string");
  return rat_from_string(j.get<std::string>());
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

Json chain_to_json(const PermutationChainCertificate& chain) {
  Json cells = Json::array();
  for (const auto& e : chain.cells) cells.push_back(event_to_json(e));
  Json xs = Json::array(), ys = Json::array();
  for (const auto& v : chain.x_values) xs.push_back(rat_to_string(v));
  for (const auto& v : chain.y_values) ys.push_back(rat_to_string(v));
  Json lottery = Json::array();
  for (const auto& [a, b] : chain.step_lottery)
    lottery.push_back(Json::array({rat_to_string(a), rat_to_string(b)}));
  return Json{{"n_cells", chain.n_cells},
              {"cells", std::move(cells)},
              {"x_values", std::move(xs)},
              {"y_values", std::move(ys)},
              {"pi_hat", chain.pi_hat},
              {"order_m", chain.order_m.get_str()},
              {"step_lottery", std::move(lottery)}};
}

PermutationChainCertificate chain_from_json(const Json& j) {
  PermutationChainCertificate chain;
  chain.n_cells = field(j, "n_cells").get<std::size_t>();
  for (const auto& e : field(j, "cells")) chain.cells.push_back(event_from_json(e));
  for (const auto& v : field(j, "x_values")) chain.x_values.push_back(rat_from_json(v));
  for (const auto& v : field(j, "y_values")) chain.y_values.push_back(rat_from_json(v));
  chain.pi_hat = field(j, "pi_hat").get<std::vector<std::size_t>>();
  chain.order_m = Int(field(j, "order_m").get<std::string>());
  for (const auto& pair : field(j, "step_lottery")) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError("bad step_lottery entry");
    chain.step_lottery.emplace_back(rat_from_json(pair[0]), rat_from_json(pair[1]));
  }
  return chain;
}

Json refinement_cells_to_json(const std::vector<RefinementCell>& cells) {
  Json out = Json::array();
  for (const auto& cell : cells)
    out.push_back(Json{{"event", event_to_json(cell.event)},
                       {"x", rat_to_string(cell.x_val)},
                       {"y", rat_to_string(cell.y_val)}});
  return out;
}

std::vector<RefinementCell> refinement_cells_from_json(const Json& j) {
  std::vector<RefinementCell> out;
  for (const auto& cell : j)
    out.push_back(RefinementCell{event_from_json(field(cell, "event")),
                                 rat_from_json(field(cell, "x")),
                                 rat_from_json(field(cell, "y"))});
  return out;
}

Json case2_to_json(const RefinementCertificate& cert) {
  return Json{{"common_denominator", cert.common_denominator},
              {"refinement_cells", refinement_cells_to_json(cert.refinement_cells)},
              {"parent_of", cert.parent_of},
              {"chain", chain_to_json(cert.chain)}};
}

RefinementCertificate case2_from_json(const Json& j) {
  RefinementCertificate cert;
  cert.common_denominator = field(j, "common_denominator").get<std::int64_t>();
  cert.refinement_cells = refinement_cells_from_json(field(j, "refinement_cells"));
  cert.parent_of = field(j, "parent_of").get<std::vector<std::size_t>>();
  cert.chain = chain_from_json(field(j, "chain"));
  return cert;
}

Json case3_to_json(const DyadicCertificate& cert) {
  Json records = Json::array();
  for (const auto& rec : cert.records) {
    Json cells = Json::array();
    for (const auto& cell : rec.cells)
      cells.push_back(Json{{"event", event_to_json(cell.event)},
                           {"parent", cell.parent},
                           {"remainder", cell.remainder}});
    records.push_back(Json{{"k", rec.k},
                           {"nu", rec.nu_values},
                           {"cells", std::move(cells)},
                           {"x_k", rv_to_json(rec.x_k)},
                           {"y_k", rv_to_json(rec.y_k)},
                           {"x_flips", rec.x_flips},
                           {"y_flips", rec.y_flips},
                           {"xbar", rv_to_json(rec.xbar)},
                           {"ybar", rv_to_json(rec.ybar)},
                           {"embedded", case2_to_json(rec.embedded)},
                           {"bound_diff", rat_to_string(rec.bound_diff)},
                           {"bound_change", rat_to_string(rec.bound_change)}});
  }
  return Json{{"k_min", cert.k_min},
              {"k_max", cert.k_max},
              {"sentinel", rat_to_string(cert.sentinel)},
              {"refinement_cells", refinement_cells_to_json(cert.refinement_cells)},
              {"records", std::move(records)}};
}

DyadicCertificate case3_from_json(const Json& j) {
  DyadicCertificate cert;
  cert.k_min = field(j, "k_min").get<int>();
  cert.k_max = field(j, "k_max").get<int>();
  cert.sentinel = rat_from_json(field(j, "sentinel"));
  cert.refinement_cells = refinement_cells_from_json(field(j, "refinement_cells"));
  for (const auto& r : field(j, "records")) {
    DyadicRecord rec;
    rec.k = field(r, "k").get<int>();
    rec.nu_values = field(r, "nu").get<std::vector<std::int64_t>>();
    for (const auto& cell : field(r, "cells"))
      rec.cells.push_back(DyadicRecord::Cell{event_from_json(field(cell, "event")),
                                             field(cell, "parent").get<std::size_t>(),
                                             field(cell, "remainder").get<bool>()});
    rec.x_k = rv_from_json(field(r, "x_k"));
    rec.y_k = rv_from_json(field(r, "y_k"));
    rec.x_flips = field(r, "x_flips").get<std::vector<std::size_t>>();
    rec.y_flips = field(r, "y_flips").get<std::vector<std::size_t>>();
    rec.xbar = rv_from_json(field(r, "xbar"));
    rec.ybar = rv_from_json(field(r, "ybar"));
    rec.embedded = case2_from_json(field(r, "embedded"));
    rec.bound_diff = rat_from_json(field(r, "bound_diff"));
    rec.bound_change = rat_from_json(field(r, "bound_change"));
    cert.records.push_back(std::move(rec));
  }
  return cert;
}

}  // namespace

Json event_to_json(const Event& e) {
  Json out = Json::array();
  for (const auto& iv : e.intervals())
    out.push_back(Json::array({iv.lo.to_string(), iv.hi.to_string()}));
  return out;
}

Event event_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("event: expected an array of [lo, hi] pairs");
  std::vector<Interval> ivs;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError("event: expected [lo, hi] string pairs");
    ivs.push_back(Interval{scalar_from_json(pair[0]), scalar_from_json(pair[1])});
  }
  return Event::from_intervals(std::move(ivs));
}

Json rv_to_json(const SimpleRV& rv) {
  Json cells = Json::array();
  for (const auto& c : rv.cells())
    cells.push_back(Json{{"event", event_to_json(c.event)},
                         {"outcome", rat_to_string(c.outcome)}});
  return Json{{"bounds",
               Json{{"lo", rat_to_string(rv.bounds().lo)},
                    {"hi", rat_to_string(rv.bounds().hi)}}},
              {"cells", std::move(cells)}};
}

SimpleRV rv_from_json(const Json& j) {
  const Json& b = field(j, "bounds");
  OutcomeBounds bounds =
      OutcomeBounds::make(rat_from_json(field(b, "lo")), rat_from_json(field(b, "hi")));
  std::vector<SimpleRV::Cell> cells;
  for (const auto& c : field(j, "cells"))
    cells.push_back(SimpleRV::Cell{event_from_json(field(c, "event")),
                                   rat_from_json(field(c, "outcome"))});
  try {
    return SimpleRV::make(std::move(bounds), std::move(cells));
  } catch (const std::invalid_argument& err) {
    throw ParseError(std::string("invalid random variable: ") + err.what());
  }
}

Json dist_to_json(const Distribution& d) {
  Json atoms = Json::array();
  for (const auto& a : d.atoms())
    atoms.push_back(Json{{"outcome", rat_to_string(a.outcome)},
                         {"mass", a.mass.to_string()}});
  return Json{{"atoms", std::move(atoms)}};
}

Distribution dist_from_json(const Json& j) {
  std::vector<Distribution::Atom> atoms;
  for (const auto& a : field(j, "atoms"))
    atoms.push_back(Distribution::Atom{rat_from_json(field(a, "outcome")),
                                       scalar_from_json(field(a, "mass"))});
  try {
    return Distribution::make(std::move(atoms));
  } catch (const std::invalid_argument& err) {
    throw ParseError(std::string("invalid distribution: ") + err.what());
  }
}

Json psi_to_json(const RegretFunction& psi) {
  switch (psi.form()) {
    case RegretFunction::Form::Difference:
      return Json{{"form", "difference"}};
    case RegretFunction::Form::UtilityDiff:
      if (psi.utility() == RegretFunction::Utility::Power)
        return Json{{"form", "utility_diff"}, {"u", "power"}, {"alpha", psi.parameter()}};
      return Json{{"form", "utility_diff"}, {"u", "exp"}, {"beta", psi.parameter()}};
    case RegretFunction::Form::Table: {
      Json xs = Json::array(), ys = Json::array();
      for (const auto& v : psi.grid_x()) xs.push_back(rat_to_string(v));
      for (const auto& v : psi.grid_y()) ys.push_back(rat_to_string(v));
      return Json{{"form", "table"},
                  {"grid", Json{{"x", std::move(xs)},
                                {"y", std::move(ys)},
                                {"values", psi.grid_values()}}}};
    }
  }
  throw std::logic_error("unreachable");
}

RegretFunction psi_from_json(const Json& j) {
  const std::string form = field(j, "form").get<std::string>();
  if (form == "difference") return RegretFunction::difference();
  if (form == "utility_diff") {
    const std::string u = field(j, "u").get<std::string>();
    if (u == "power") return RegretFunction::utility_power(field(j, "alpha").get<double>());
    if (u == "exp" || u == "exponential")
      return RegretFunction::utility_exponential(field(j, "beta").get<double>());
    throw ParseError("unknown utility family '" + u + "'");
  }
  if (form == "table") {
    const Json& grid = field(j, "grid");
    std::vector<Rat> xs, ys;
    for (const auto& v : field(grid, "x")) xs.push_back(rat_from_json(v));
    for (const auto& v : field(grid, "y")) ys.push_back(rat_from_json(v));
    auto values = field(grid, "values").get<std::vector<std::vector<double>>>();
    try {
      return RegretFunction::table(std::move(xs), std::move(ys), std::move(values));
    } catch (const std::invalid_argument& err) {
      throw ParseError(std::string("invalid table psi: ") + err.what());
    }
  }
  throw ParseError("unknown regret function form '" + form + "'");
}

Json functional_to_json(const RegretFunctional& v) {
  if (v.form() == RegretFunctional::Form::Expectation)
    return Json{{"form", "expectation"}};
  return Json{{"form", "rank_dependent"}, {"gamma", v.gamma()}};
}

RegretFunctional functional_from_json(const Json& j) {
  const std::string form = field(j, "form").get<std::string>();
  if (form == "expectation") return RegretFunctional::expectation();
  if (form == "rank_dependent") {
    try {
      return RegretFunctional::rank_dependent(field(j, "gamma").get<double>());
    } catch (const std::invalid_argument& err) {
      throw ParseError(err.what());
    }
  }
  throw ParseError("unknown functional form '" + form + "'");
}

std::string to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::Case1: return "case1";
    case CaseKind::Case2: return "case2";
    case CaseKind::Case3: return "case3";
  }
  throw std::logic_error("unreachable");
}

std::string to_string(FosdOrder order) {
  switch (order) {
    case FosdOrder::StrictDom: return "STRICT_DOM";
    case FosdOrder::Equal: return "EQUAL";
    case FosdOrder::Dominated: return "DOMINATED";
    case FosdOrder::Incomparable: return "INCOMPARABLE";
  }
  throw std::logic_error("unreachable");
}

std::string to_string(PreferVerdict verdict) {
  switch (verdict) {
    case PreferVerdict::Prefer: return "PREFER";
    case PreferVerdict::Indifferent: return "INDIFFERENT";
    case PreferVerdict::Disprefer: return "DISPREFER";
  }
  throw std::logic_error("unreachable");
}

Json certificate_to_json(const EquivalenceCertificate& cert) {
  Json payload;
  switch (cert.kind) {
    case CaseKind::Case1:
      payload = chain_to_json(std::get<PermutationChainCertificate>(cert.payload));
      break;
    case CaseKind::Case2:
      payload = case2_to_json(std::get<RefinementCertificate>(cert.payload));
      break;
    case CaseKind::Case3:
      payload = case3_to_json(std::get<DyadicCertificate>(cert.payload));
      break;
  }
  return Json{{"schema_version", cert.schema_version},
              {"case", to_string(cert.kind)},
              {"distribution", dist_to_json(cert.dist)},
              {"payload", std::move(payload)}};
}

EquivalenceCertificate certificate_from_json(const Json& j) {
  EquivalenceCertificate cert;
  cert.schema_version = field(j, "schema_version").get<int>();
  if (cert.schema_version != 1)
    throw ParseError("unsupported certificate schema_version " +
                     std::to_string(cert.schema_version));
  cert.dist = dist_from_json(field(j, "distribution"));
  const std::string kind = field(j, "case").get<std::string>();
  const Json& payload = field(j, "payload");
  if (kind == "case1") {
    cert.kind = CaseKind::Case1;
    cert.payload = chain_from_json(payload);
  } else if (kind == "case2") {
    cert.kind = CaseKind::Case2;
    cert.payload = case2_from_json(payload);
  } else if (kind == "case3") {
    cert.kind = CaseKind::Case3;
    cert.payload = case3_from_json(payload);
  } else {
    throw ParseError("unknown certificate case '" + kind + "'");
  }
  return cert;
}

Json report_to_json(const VerificationReport& report) {
  Json items = Json::array();
  for (const auto& item : report.items)
    items.push_back(Json{{"obligation", item.name}, {"ok", item.ok}, {"detail", item.detail}});
  return Json{{"ok", report.ok()}, {"items", std::move(items)}};
}

Json lottery_to_json(const RegretLottery& lottery, int decimal_digits) {
  Json atoms = Json::array();
  for (const auto& a : lottery.atoms)
    atoms.push_back(Json{{"value", a.value},
                         {"prob", a.prob.to_string()},
                         {"prob_decimal", a.prob.to_decimal_string(decimal_digits)}});
  return Json{{"atoms", std::move(atoms)}};
}

Json preference_to_json(const Preference& pref, int decimal_digits) {
  Json out{{"verdict", to_string(pref.verdict)},
           {"value", pref.value},
           {"lottery", lottery_to_json(pref.lottery, decimal_digits)}};
  if (pref.exact) {
    out["exact_value"] = pref.exact->to_string();
    out["exact_decimal"] = pref.exact->to_decimal_string(decimal_digits);
  }
  return out;
}

Json coupling_to_json(const Coupling& coupling) {
  Json cells = Json::array();
  for (std::size_t i = 0; i < coupling.common_cells.size(); ++i)
    cells.push_back(Json{{"cell", event_to_json(coupling.common_cells[i])},
                         {"x", rat_to_string(coupling.xp.cells()[i].outcome)},
                         {"y", rat_to_string(coupling.yp.cells()[i].outcome)}});
  return Json{{"cells", std::move(cells)},
              {"xp", rv_to_json(coupling.xp)},
              {"yp", rv_to_json(coupling.yp)}};
}

Json skorokhod_report_to_json(const SkorokhodReport& report, int decimal_digits) {
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json eps = Json::object();
    for (const auto& [e, p] : row.exceed)
      eps[rat_to_string(e)] = Json{{"exact", p.to_string()},
                                   {"decimal", p.to_decimal_string(decimal_digits)}};
    rows.push_back(Json{{"k", row.index},
                        {"distribution_exact", row.distribution_exact},
                        {"levy", row.levy.to_string()},
                        {"levy_decimal", row.levy.to_decimal_string(decimal_digits)},
                        {"eps", std::move(eps)}});
  }
  return Json{{"rows", std::move(rows)}};
}

Json fosd_preference_report_to_json(const FosdPreferenceReport& report,
                                    int decimal_digits) {
  Json out{{"order", to_string(report.order)}, {"comparable", report.comparable}};
  if (report.on_inputs) out["on_inputs"] = preference_to_json(*report.on_inputs, decimal_digits);
  if (report.on_coupled)
    out["on_coupled"] = preference_to_json(*report.on_coupled, decimal_digits);
  if (report.coupling) {
    out["coupling"] = coupling_to_json(*report.coupling);
    out["cellwise_dominance"] = report.cellwise_dominance;
    out["strict_cell"] = report.strict_cell;
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw ParseError("cannot parse '" + path + "': " + err.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(1) << '\n';
}

}  // namespace probeq
