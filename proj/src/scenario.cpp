#include "gop/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "gop/crossed.hpp"
#include "gop/errors.hpp"
#include "gop/fredholm.hpp"
#include "gop/generating.hpp"
#include "gop/group.hpp"
#include "gop/quantize.hpp"
#include "gop/wavefront.hpp"
#include "json.hpp"

namespace gop {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw UsageError("scenario: " + where + ": " + what);
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) bad(where, "unknown key \"" + it.key() + "\"");
  }
}

cplx parse_cplx(const json& v, const std::string& where) {
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return cplx(v[0].get<double>(), v[1].get<double>());
  bad(where, "expected a number or [re, im]");
}

Vec parse_vec(const json& v, int dim, const std::string& where) {
  if (v.is_number()) {
    if (dim != 1) bad(where, "expected " + std::to_string(dim) + " components");
    return vec1(v.get<double>());
  }
  if (v.is_array() && (int)v.size() == dim) {
    Vec out{0.0, 0.0};
    for (int i = 0; i < dim; ++i) out[i] = v[i].get<double>();
    return out;
  }
  bad(where, "expected a number or an array of " + std::to_string(dim));
}

SymbolSpec parse_symbol(const json& j, int dim, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  SymbolSpec sp;
  sp.kind = j.value("kind", "constant");
  if (sp.kind == "constant") {
    check_keys(j, where, {"kind", "value"});
    if (!j.contains("value")) bad(where, "constant symbol needs \"value\"");
    sp.value = parse_cplx(j.at("value"), where + ".value");
    return sp;
  }
  if (sp.kind == "harmonic") {
    if (dim != 1) bad(where, "harmonic symbols are 1-d");
    check_keys(j, where, {"kind", "plus", "minus"});
    auto branch = [&](const char* k, cplx& c, int& f) {
      if (!j.contains(k)) return;
      const json& b = j.at(k);
      check_keys(b, where + "." + k, {"c", "freq"});
      if (b.contains("c")) c = parse_cplx(b.at("c"), where + "." + k + ".c");
      if (b.contains("freq")) f = b.at("freq").get<int>();
    };
    branch("plus", sp.plus_c, sp.plus_freq);
    branch("minus", sp.minus_c, sp.minus_freq);
    return sp;
  }
  bad(where, "unknown symbol kind \"" + sp.kind + "\"");
}

ElementSpec parse_element(const json& j, int dim, const std::string& where) {
  ElementSpec es;
  es.present = true;
  es.kind = j.is_object() ? j.value("kind", "explicit") : "";
  if (es.kind == "explicit") {
    check_keys(j, where, {"kind", "unit", "terms"});
    if (j.contains("unit")) es.unit = parse_cplx(j.at("unit"), where + ".unit");
    if (j.contains("terms")) {
      const json& t = j.at("terms");
      if (!t.is_array()) bad(where + ".terms", "expected an array");
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string tw = where + ".terms[" + std::to_string(i) + "]";
        check_keys(t[i], tw, {"g", "symbol"});
        if (!t[i].contains("g") || !t[i].contains("symbol"))
          bad(tw, "needs \"g\" and \"symbol\"");
        TermSpec term;
        term.g = t[i].at("g").get<double>();
        term.symbol = parse_symbol(t[i].at("symbol"), dim, tw + ".symbol");
        es.terms.push_back(term);
      }
    }
    return es;
  }
  if (es.kind == "averaged") {
    check_keys(j, where, {"kind", "unit", "amplitude"});
    if (j.contains("unit")) es.unit = parse_cplx(j.at("unit"), where + ".unit");
    es.amplitude = j.value("amplitude", "bump");
    if (es.amplitude != "bump")
      bad(where, "unknown amplitude \"" + es.amplitude + "\"");
    return es;
  }
  bad(where, "unknown element kind \"" + es.kind + "\"");
}

GroupSpec parse_group(const json& j, const std::string& where) {
  GroupSpec gs;
  if (!j.is_object()) bad(where, "expected an object");
  gs.kind = j.value("kind", "trivial");
  if (gs.kind == "trivial") {
    check_keys(j, where, {"kind"});
  } else if (gs.kind == "integer-rotation") {
    check_keys(j, where, {"kind", "alpha"});
    if (!j.contains("alpha")) bad(where, "integer-rotation needs \"alpha\"");
    gs.alpha = j.at("alpha").get<double>();
  } else if (gs.kind == "cyclic-rotation") {
    check_keys(j, where, {"kind", "n"});
    if (!j.contains("n")) bad(where, "cyclic-rotation needs \"n\"");
    gs.n = j.at("n").get<int>();
  } else if (gs.kind == "line-flow") {
    check_keys(j, where, {"kind", "hamiltonian", "window", "half_nodes"});
    if (!j.contains("hamiltonian")) bad(where, "line-flow needs \"hamiltonian\"");
    gs.hamiltonian = j.at("hamiltonian").get<std::string>();
    gs.window = j.value("window", 2.0);
    gs.half_nodes = j.value("half_nodes", 16);
    if (gs.window <= 0.0 || gs.half_nodes < 1)
      bad(where, "line-flow needs window > 0 and half_nodes >= 1");
  } else {
    bad(where, "unknown group kind \"" + gs.kind + "\"");
  }
  return gs;
}

// extracts hamiltonian + t; key checking stays with the enclosing object,
// which may carry other fields
FlowRef parse_flow(const json& j, const std::string& where) {
  if (!j.contains("hamiltonian")) bad(where, "needs \"hamiltonian\"");
  FlowRef f;
  f.present = true;
  f.hamiltonian = j.at("hamiltonian").get<std::string>();
  f.t = j.value("t", 0.1);
  return f;
}

std::vector<double> parse_bands(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() < 2) bad(where, "needs at least two bands");
  std::vector<double> bands;
  for (const auto& v : j) bands.push_back(v.get<double>());
  for (std::size_t i = 1; i < bands.size(); ++i)
    if (bands[i] <= bands[i - 1]) bad(where, "bands must be increasing");
  if (bands.front() <= 0.0) bad(where, "bands must be positive");
  return bands;
}

ExperimentSpec parse_experiment(const json& j, int dim,
                                const std::string& where) {
  if (!j.is_object() || !j.contains("kind")) bad(where, "needs \"kind\"");
  ExperimentSpec e;
  e.kind = j.at("kind").get<std::string>();
  if (e.kind == "egorov") {
    check_keys(j, where, {"kind", "bands", "symbol", "map"});
    if (!j.contains("bands") || !j.contains("symbol") || !j.contains("map"))
      bad(where, "egorov needs \"bands\", \"symbol\" and \"map\"");
    e.bands = parse_bands(j.at("bands"), where + ".bands");
    e.symbol = parse_symbol(j.at("symbol"), dim, where + ".symbol");
    const json& m = j.at("map");
    if (!m.is_object() || !m.contains("kind")) bad(where + ".map", "needs \"kind\"");
    e.map_kind = m.at("kind").get<std::string>();
    if (e.map_kind == "translation") {
      check_keys(m, where + ".map", {"kind", "c"});
      if (!m.contains("c")) bad(where + ".map", "translation needs \"c\"");
      e.map_c = parse_vec(m.at("c"), dim, where + ".map.c");
    } else if (e.map_kind == "flow") {
      check_keys(m, where + ".map", {"kind", "hamiltonian", "t"});
      e.flow = parse_flow(m, where + ".map");
    } else {
      bad(where + ".map", "unknown map kind \"" + e.map_kind + "\"");
    }
  } else if (e.kind == "wavefront") {
    check_keys(j, where, {"kind", "slack"});
    e.slack = j.value("slack", 2);
    if (e.slack < 0) bad(where, "slack must be >= 0");
    if (dim != 1) bad(where, "the wavefront estimator is 1-d");
  } else if (e.kind == "ellipticity") {
    check_keys(j, where, {"kind", "sizes", "windows", "expect"});
    if (dim != 1) bad(where, "ellipticity sweeps are 1-d");
    if (j.contains("sizes"))
      for (const auto& v : j.at("sizes")) e.sizes.push_back(v.get<int>());
    if (j.contains("windows"))
      for (const auto& v : j.at("windows")) e.windows.push_back(v.get<int>());
    e.expect = j.value("expect", "consistent");
    if (e.expect != "consistent" && e.expect != "inconsistent")
      bad(where, "expect must be \"consistent\" or \"inconsistent\"");
  } else if (e.kind == "smoothing") {
    check_keys(j, where, {"kind", "bands"});
    if (!j.contains("bands")) bad(where, "smoothing needs \"bands\"");
    e.bands = parse_bands(j.at("bands"), where + ".bands");
  } else if (e.kind == "hamjac") {
    check_keys(j, where, {"kind", "hamiltonian", "t", "samples"});
    if (!j.contains("hamiltonian")) bad(where, "hamjac needs \"hamiltonian\"");
    e.flow = parse_flow(j, where);
    e.samples = j.value("samples", 32);
    if (e.samples < 8) bad(where, "hamjac needs at least 8 samples");
  } else if (e.kind == "transverse") {
    check_keys(j, where, {"kind", "hamiltonians", "tol", "flow"});
    if (j.contains("hamiltonians"))
      for (const auto& v : j.at("hamiltonians"))
        e.hamiltonians.push_back(v.get<std::string>());
    e.tol = j.value("tol", 1e-9);
    if (j.contains("flow")) {
      check_keys(j.at("flow"), where + ".flow", {"hamiltonian", "t"});
      e.flow = parse_flow(j.at("flow"), where + ".flow");
    }
  } else {
    bad(where, "unknown experiment kind \"" + e.kind + "\"");
  }
  return e;
}

Tolerances parse_tolerances(const json& j, const std::string& where) {
  check_keys(j, where,
             {"egorov_ratio", "egorov_floor", "hamjac_canonical", "hamjac_hj",
              "wavefront_budget", "smoothing_exponent", "invariance_slack",
              "section_threshold", "svd_tol", "inverse_tol"});
  Tolerances t;
  t.egorov_ratio = j.value("egorov_ratio", t.egorov_ratio);
  t.egorov_floor = j.value("egorov_floor", t.egorov_floor);
  t.hamjac_canonical = j.value("hamjac_canonical", t.hamjac_canonical);
  t.hamjac_hj = j.value("hamjac_hj", t.hamjac_hj);
  t.wavefront_budget = j.value("wavefront_budget", t.wavefront_budget);
  t.smoothing_exponent = j.value("smoothing_exponent", t.smoothing_exponent);
  t.invariance_slack = j.value("invariance_slack", t.invariance_slack);
  t.section_threshold = j.value("section_threshold", t.section_threshold);
  t.svd_tol = j.value("svd_tol", t.svd_tol);
  t.inverse_tol = j.value("inverse_tol", t.inverse_tol);
  return t;
}

bool has_ham(const Scenario& s, const std::string& name) {
  for (const auto& h : s.hamiltonians)
    if (h.name == name) return true;
  return false;
}

void require_ham(const Scenario& s, const std::string& name,
                 const std::string& where) {
  if (!has_ham(s, name)) bad(where, "unknown Hamiltonian \"" + name + "\"");
}

Scenario parse_root(const json& j) {
  check_keys(j, "top level",
             {"name", "manifold", "group", "hamiltonians", "element",
              "experiments", "tolerances", "out_dir", "seed"});
  Scenario s;
  if (!j.contains("name") || !j.at("name").is_string())
    bad("top level", "needs a string \"name\"");
  s.name = j.at("name").get<std::string>();
  if (s.name.empty()) bad("top level", "name must not be empty");

  if (!j.contains("manifold")) bad("top level", "needs \"manifold\"");
  const json& m = j.at("manifold");
  check_keys(m, "manifold", {"dim", "n_points", "n_dirs"});
  if (!m.contains("dim") || !m.contains("n_points"))
    bad("manifold", "needs \"dim\" and \"n_points\"");
  s.dim = m.at("dim").get<int>();
  s.n_points = m.at("n_points").get<int>();
  s.n_dirs = m.value("n_dirs", 0);
  if (s.dim != 1 && s.dim != 2) bad("manifold", "dim must be 1 or 2");
  if (s.n_points < 8) bad("manifold", "n_points must be >= 8");

  if (j.contains("group")) s.group = parse_group(j.at("group"), "group");

  if (j.contains("hamiltonians")) {
    const json& hs = j.at("hamiltonians");
    if (!hs.is_array()) bad("hamiltonians", "expected an array");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string hw = "hamiltonians[" + std::to_string(i) + "]";
      check_keys(hs[i], hw, {"name", "descriptor"});
      if (!hs[i].contains("name") || !hs[i].contains("descriptor"))
        bad(hw, "needs \"name\" and \"descriptor\"");
      HamiltonianSpec spec;
      spec.name = hs[i].at("name").get<std::string>();
      spec.descriptor = hs[i].at("descriptor").get<std::string>();
      if (spec.name.empty()) bad(hw, "name must not be empty");
      if (has_ham(s, spec.name)) bad(hw, "duplicate name \"" + spec.name + "\"");
      s.hamiltonians.push_back(spec);
    }
  }

  if (j.contains("element"))
    s.element = parse_element(j.at("element"), s.dim, "element");

  if (!j.contains("experiments") || !j.at("experiments").is_array() ||
      j.at("experiments").empty())
    bad("top level", "needs a non-empty \"experiments\" array");
  const json& ex = j.at("experiments");
  for (std::size_t i = 0; i < ex.size(); ++i)
    s.experiments.push_back(parse_experiment(
        ex[i], s.dim, "experiments[" + std::to_string(i) + "]"));

  if (j.contains("tolerances"))
    s.tol = parse_tolerances(j.at("tolerances"), "tolerances");
  if (j.contains("out_dir")) s.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("seed")) {
    s.seed = j.at("seed").get<unsigned>();
    s.seed_set = true;
  }

  // cross-checks: name references and per-kind prerequisites
  if (s.group.kind == "line-flow")
    require_ham(s, s.group.hamiltonian, "group");
  if (s.element.present && s.element.kind == "averaged" &&
      s.group.kind != "line-flow")
    bad("element", "averaged elements need a line-flow group");
  for (std::size_t i = 0; i < s.experiments.size(); ++i) {
    const ExperimentSpec& e = s.experiments[i];
    const std::string ew = "experiments[" + std::to_string(i) + "]";
    if (e.flow.present) require_ham(s, e.flow.hamiltonian, ew);
    for (const auto& name : e.hamiltonians) require_ham(s, name, ew);
    if ((e.kind == "wavefront" || e.kind == "smoothing" ||
         e.kind == "ellipticity") &&
        !s.element.present)
      bad(ew, e.kind + " needs an element");
    if (e.kind == "transverse" && e.hamiltonians.empty() &&
        s.hamiltonians.empty())
      bad(ew, "transverse needs at least one Hamiltonian");
  }
  return s;
}

// ---------------------------------------------------------------- builtins

json builtin_rotation_algebra() {
  const double alpha = kTwoPi * 0.6180339887498949;
  json j;
  j["name"] = "rotation-algebra";
  j["manifold"] = {{"dim", 1}, {"n_points", 128}};
  j["group"] = {{"kind", "integer-rotation"}, {"alpha", alpha}};
  json term;
  term["g"] = 1.0;
  term["symbol"] = {{"kind", "constant"}, {"value", 0.5}};
  j["element"] = {{"kind", "explicit"},
                  {"unit", 1.0},
                  {"terms", json::array({term})}};
  json egorov;
  egorov["kind"] = "egorov";
  egorov["bands"] = {4.0, 16.0};
  egorov["symbol"] = {{"kind", "harmonic"},
                      {"plus", {{"c", 1.0}, {"freq", 1}}},
                      {"minus", {{"c", 1.0}, {"freq", 1}}}};
  egorov["map"] = {{"kind", "translation"}, {"c", alpha}};
  json ell;
  ell["kind"] = "ellipticity";
  ell["sizes"] = {64, 128, 256};
  ell["windows"] = {8, 16, 32, 64};
  j["experiments"] = json::array({egorov, ell});
  return j;
}

json builtin_translation_flow() {
  json j;
  j["name"] = "translation-flow";
  j["manifold"] = {{"dim", 1}, {"n_points", 128}};
  j["hamiltonians"] =
      json::array({{{"name", "drift"}, {"descriptor", "linear:1"}}});
  j["group"] = {{"kind", "line-flow"},
                {"hamiltonian", "drift"},
                {"window", 2.0},
                {"half_nodes", 32}};
  j["element"] = {{"kind", "averaged"}, {"amplitude", "bump"}};
  json wf;
  wf["kind"] = "wavefront";
  wf["slack"] = 2;
  json sm;
  sm["kind"] = "smoothing";
  sm["bands"] = {2.0, 4.0, 8.0, 16.0};
  j["experiments"] = json::array({wf, sm});
  return j;
}

json builtin_singular_hamiltonian() {
  json j;
  j["name"] = "singular-hamiltonian";
  j["manifold"] = {{"dim", 2}, {"n_points", 16}, {"n_dirs", 16}};
  j["hamiltonians"] =
      json::array({{{"name", "sing"}, {"descriptor", "quadratic-example"}}});
  json tv;
  tv["kind"] = "transverse";
  tv["hamiltonians"] = {"sing"};
  tv["tol"] = 1e-9;
  tv["flow"] = {{"hamiltonian", "sing"}, {"t", 0.1}};
  j["experiments"] = json::array({tv});
  return j;
}

// ------------------------------------------------------------- realization

struct Built {
  TorusGrid grid;
  DirGrid dirs;
  GroupModel G;
  std::map<std::string, Hamiltonian> hams;
};

const Hamiltonian& ham_of(const Built& b, const std::string& name) {
  auto it = b.hams.find(name);
  if (it == b.hams.end())
    throw UsageError("scenario: unknown Hamiltonian \"" + name + "\"");
  return it->second;
}

Built realize(const Scenario& s) {
  const int nd = s.n_dirs > 0 ? s.n_dirs : (s.dim == 1 ? 2 : 16);
  Built b{TorusGrid::make(s.dim, s.n_points), DirGrid::make(s.dim, nd),
          GroupModel{}, {}};
  for (const auto& spec : s.hamiltonians)
    b.hams.emplace(spec.name, hamiltonian_from_name(spec.descriptor, s.dim));
  if (s.group.kind == "trivial") {
    b.G = make_trivial_group(s.dim);
  } else if (s.group.kind == "integer-rotation") {
    b.G = make_integer_rotation(s.group.alpha);
  } else if (s.group.kind == "cyclic-rotation") {
    b.G = make_cyclic_rotation(s.group.n);
  } else {
    b.G = make_line_flow(ham_of(b, s.group.hamiltonian), s.group.window,
                         s.group.half_nodes);
  }
  return b;
}

HomogeneousSymbol realize_symbol(const SymbolSpec& sp, const TorusGrid& grid,
                                 const DirGrid& dirs) {
  if (sp.kind == "constant")
    return HomogeneousSymbol::from_function(
        grid, dirs, [v = sp.value](const Vec&, const Vec&) { return v; });
  return HomogeneousSymbol::from_function(
      grid, dirs, [sp](const Vec& x, const Vec& w) {
        const cplx c = w[0] > 0.0 ? sp.plus_c : sp.minus_c;
        const int f = w[0] > 0.0 ? sp.plus_freq : sp.minus_freq;
        return c * std::exp(cplx(0.0, f * x[0]));
      });
}

CrossedElement realize_element(const ElementSpec& es, const TorusGrid& grid,
                               const DirGrid& dirs, const GroupModel& G) {
  CrossedElement elt = CrossedElement::make(grid, dirs, es.unit);
  if (es.kind == "explicit") {
    for (const auto& term : es.terms)
      elt.add_term(term.g, realize_symbol(term.symbol, grid, dirs), G);
    return elt;
  }
  // averaged: the amplitude profile sampled on the quadrature nodes
  const int hn = (int)std::lround(G.window / G.step);
  for (int k = -hn; k <= hn; ++k) {
    const double t = k * G.step;
    const double w = bump(t, G.window);
    if (w == 0.0) continue;
    SymbolSpec c;
    c.value = w;
    elt.add_term(t, realize_symbol(c, grid, dirs), G);
  }
  return elt;
}

// ------------------------------------------------------------- experiments

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string band_label(const char* prefix, double band) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%g", prefix, band);
  return buf;
}

void write_rows_csv(const std::string& path, const std::string& header,
                    const std::vector<std::pair<std::string, double>>& rows) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot open " + tmp + " for writing");
    f << header << "\n";
    for (const auto& [k, v] : rows) f << k << "," << num17(v) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw UsageError("cannot move " + tmp + " into place");
}

GridOperator assemble_scenario_element(const Scenario& s, const Built& b,
                                       CrossedElement* out_elt) {
  CrossedElement elt = realize_element(s.element, b.grid, b.dirs, b.G);
  const Representation rep = shift_representation(b.G, b.grid);
  GridOperator op = assemble_G_operator(elt, b.G, rep, b.grid);
  if (out_elt) *out_elt = elt;
  return op;
}

ExperimentResult run_egorov(const Scenario& s, const Built& b,
                            const ExperimentSpec& e, const std::string& csv) {
  ExperimentResult r;
  const HomogeneousSymbol a = realize_symbol(e.symbol, b.grid, b.dirs);
  CanonicalMap gmap;
  GridOperator phi = make_identity_operator(b.grid);
  if (e.map_kind == "translation") {
    gmap = translation_map(e.map_c, s.dim);
    phi = shift_operator(e.map_c, b.grid);
  } else {
    const Hamiltonian& H = ham_of(b, e.flow.hamiltonian);
    gmap = flow_map(H, e.flow.t);
    const GeneratingFunction S = generating_function(H, e.flow.t);
    phi = unitarize(quantize_canonical(
        S, [](const Vec&, const Vec&) { return cplx(1.0); }, b.grid));
  }
  std::vector<std::pair<std::string, double>> rows;
  std::vector<double> res;
  for (double band : e.bands) {
    res.push_back(egorov_residual(phi, a, gmap, band));
    rows.emplace_back(band_label("", band), res.back());
    r.metrics.emplace_back(band_label("residual_k", band), res.back());
  }
  const double worst = *std::max_element(res.begin(), res.end());
  const double ratio = res.front() / std::max(res.back(), 1e-300);
  r.metrics.emplace_back("ratio", ratio);
  r.pass = worst <= s.tol.egorov_floor || ratio >= s.tol.egorov_ratio;
  if (!r.pass) r.note = "band residuals did not improve";
  write_rows_csv(csv, "band,residual", rows);
  r.csv = csv;
  return r;
}

ExperimentResult run_wavefront(const Scenario& s, const Built& b,
                               const ExperimentSpec& e,
                               const std::string& csv) {
  ExperimentResult r;
  CrossedElement elt = CrossedElement::make(b.grid, b.dirs);
  const GridOperator op = assemble_scenario_element(s, b, &elt);
  const WavefrontSet est = wavefront_estimate(op);
  const WavefrontSet pred = predicted_wavefront(elt, b.G);
  const ContainmentReport rep =
      containment_report(est, pred, e.slack, 0, s.tol.wavefront_budget);
  write_wavefront_csv(csv, est);
  r.csv = csv;
  r.pass = rep.pass;
  r.metrics.emplace_back("marked", (double)rep.marked);
  r.metrics.emplace_back("total_mass", rep.total_mass);
  r.metrics.emplace_back("outside_fraction", rep.outside_fraction);
  if (!r.pass) r.note = "estimated wavefront leaks outside the prediction";
  return r;
}

ExperimentResult run_smoothing(const Scenario& s, const Built& b,
                               const ExperimentSpec& e,
                               const std::string& csv) {
  ExperimentResult r;
  const GridOperator op = assemble_scenario_element(s, b, nullptr);
  const SmoothingReport rep = smoothing_check(op, e.bands);
  std::vector<std::pair<std::string, double>> rows;
  for (std::size_t i = 0; i < rep.bands.size(); ++i)
    rows.emplace_back(band_label("", rep.bands[i]), rep.norms[i]);
  write_rows_csv(csv, "band,norm", rows);
  r.csv = csv;
  r.metrics.emplace_back("exponent", rep.exponent);
  r.metrics.emplace_back("decreasing", rep.decreasing ? 1.0 : 0.0);
  r.pass = rep.decreasing && rep.exponent >= s.tol.smoothing_exponent;
  if (!r.pass) r.note = "band norms do not decay like a smoothing operator";
  return r;
}

ExperimentResult run_ellipticity(const Scenario& s, const Built& b,
                                 const ExperimentSpec& e,
                                 const std::string& csv) {
  ExperimentResult r;
  EllipticityOptions opts;
  if (!e.sizes.empty()) opts.sizes = e.sizes;
  if (!e.windows.empty()) opts.windows = e.windows;
  opts.section_threshold = s.tol.section_threshold;
  opts.svd_tol = s.tol.svd_tol;
  opts.inverse_tol = s.tol.inverse_tol;
  const ElementSpec es = s.element;
  const GroupModel G = b.G;
  const EllipticityReport rep = ellipticity_experiment(
      [es, G](const TorusGrid& grid, const DirGrid& dirs) {
        return realize_element(es, grid, dirs, G);
      },
      G, opts);
  write_index_report(csv, rep.index);
  r.csv = csv;
  for (std::size_t i = 0; i < rep.sizes.size(); ++i)
    r.metrics.emplace_back(band_label("sigma_min_", rep.sizes[i]),
                           rep.sigma_min[i]);
  r.metrics.emplace_back("consistent", rep.fredholm_consistent ? 1.0 : 0.0);
  r.metrics.emplace_back("index", (double)rep.index.index_estimate);
  r.metrics.emplace_back("inverse_ok", rep.inverse_ok ? 1.0 : 0.0);
  r.note = "sections " + rep.sections.verdict + "; index " +
           rep.index.verdict;
  if (!rep.inverse_note.empty()) r.note += "; " + rep.inverse_note;
  const bool want = e.expect == "consistent";
  r.pass = rep.fredholm_consistent == want;
  return r;
}

ExperimentResult run_hamjac(const Scenario& s, const Built& b,
                            const ExperimentSpec& e, unsigned seed,
                            const std::string& csv) {
  ExperimentResult r;
  const Hamiltonian& H = ham_of(b, e.flow.hamiltonian);
  const std::vector<PhasePoint> samples =
      phase_samples(s.dim, e.samples, seed);
  const CanonicalMap g = flow_map(H, e.flow.t);
  const CanonicalCheck chk = check_homogeneous_canonical(g, samples);
  const GeneratingFunction S = generating_function(H, e.flow.t);
  const double hj = verify_hamilton_jacobi(S, samples);
  const GraphEquationsReport graph = verify_graph_equations(S, g, samples);
  std::vector<std::pair<std::string, double>> rows = {
      {"canonical_p", chk.max_p_residual},
      {"canonical_x", chk.max_x_residual},
      {"homogeneity", chk.max_homogeneity},
      {"hamilton_jacobi", hj},
      {"graph_p", graph.max_p_residual},
      {"graph_x", graph.max_x_residual},
  };
  write_rows_csv(csv, "metric,value", rows);
  r.csv = csv;
  r.metrics = rows;
  const double canon =
      std::max(chk.max_residual(), chk.max_homogeneity);
  const double eik = std::max({hj, graph.max_p_residual, graph.max_x_residual});
  r.pass = canon <= s.tol.hamjac_canonical && eik <= s.tol.hamjac_hj;
  if (!r.pass) r.note = "flow does not satisfy the eikonal checks";
  return r;
}

ExperimentResult run_transverse(const Scenario& s, const Built& b,
                                const ExperimentSpec& e,
                                const std::string& csv) {
  ExperimentResult r;
  std::vector<Hamiltonian> hams;
  if (e.hamiltonians.empty())
    for (const auto& spec : s.hamiltonians) hams.push_back(ham_of(b, spec.name));
  else
    for (const auto& name : e.hamiltonians) hams.push_back(ham_of(b, name));
  const TransverseSet ts = transverse_zero_set(hams, b.grid, b.dirs, e.tol);
  write_mask_csv(csv, ts);
  const std::string bits = csv.substr(0, csv.size() - 4) + ".bits";
  write_mask_bits(bits, ts);
  r.csv = csv;
  const double cells = (double)b.grid.cells() * b.dirs.n_dirs;
  r.metrics.emplace_back("count", (double)ts.count());
  r.metrics.emplace_back("fraction", ts.count() / cells);
  r.pass = true;
  if (e.flow.present) {
    const InvarianceReport inv =
        check_invariance(ts, flow_map(ham_of(b, e.flow.hamiltonian), e.flow.t),
                         s.tol.invariance_slack);
    r.metrics.emplace_back("checked", (double)inv.checked);
    r.metrics.emplace_back("violations", (double)inv.violations);
    r.metrics.emplace_back("worst_value", inv.worst_value);
    r.pass = inv.violations == 0;
    if (!r.pass) r.note = "mask is not invariant under the flow";
  }
  return r;
}

ExperimentResult run_one(const Scenario& s, const Built& b,
                         const ExperimentSpec& e, unsigned seed,
                         const std::string& csv) {
  if (e.kind == "egorov") return run_egorov(s, b, e, csv);
  if (e.kind == "wavefront") return run_wavefront(s, b, e, csv);
  if (e.kind == "smoothing") return run_smoothing(s, b, e, csv);
  if (e.kind == "ellipticity") return run_ellipticity(s, b, e, csv);
  if (e.kind == "hamjac") return run_hamjac(s, b, e, seed, csv);
  return run_transverse(s, b, e, csv);
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("scenario: invalid JSON: ") + e.what());
  }
  try {
    return parse_root(j);
  } catch (const json::exception& e) {
    throw UsageError(std::string("scenario: malformed value: ") + e.what());
  }
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read scenario file " + path);
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  return parse_scenario(text);
}

std::vector<std::pair<std::string, std::string>> builtin_scenarios() {
  return {
      {"rotation-algebra",
       "irrational rotation crossed product: Egorov transport and "
       "finite-section ellipticity"},
      {"translation-flow",
       "averaged translation flow on the circle: wavefront containment and "
       "smoothing decay"},
      {"singular-hamiltonian",
       "degenerate 2-d Hamiltonian: transverse zero-set mask and flow "
       "invariance"},
  };
}

std::string builtin_scenario_text(const std::string& name) {
  json j;
  if (name == "rotation-algebra")
    j = builtin_rotation_algebra();
  else if (name == "translation-flow")
    j = builtin_translation_flow();
  else if (name == "singular-hamiltonian")
    j = builtin_singular_hamiltonian();
  else
    throw UsageError("unknown builtin scenario \"" + name + "\"");
  return j.dump(1) + "\n";
}

RunReport run_scenario(const Scenario& s, const RunOptions& opts) {
  const Built b = realize(s);
  RunReport report;
  report.scenario = s.name;
  report.seed = opts.seed_set ? opts.seed : s.seed;
  std::string dir = !opts.out_dir.empty()
                        ? opts.out_dir
                        : (!s.out_dir.empty() ? s.out_dir : ".");
  std::filesystem::create_directories(dir);

  const std::size_t n = s.experiments.size();
  std::vector<ExperimentResult> results(n);
  auto guarded = [&](std::size_t i) {
    const ExperimentSpec& e = s.experiments[i];
    char stem[64];
    std::snprintf(stem, sizeof stem, "%02zu_%s.csv", i, e.kind.c_str());
    const std::string csv = (std::filesystem::path(dir) / stem).string();
    try {
      results[i] = run_one(s, b, e, report.seed, csv);
    } catch (const std::exception& ex) {
      results[i] = ExperimentResult{};
      results[i].pass = false;
      results[i].note = ex.what();
    }
    results[i].kind = e.kind;
  };
  if (opts.parallel && n > 1) {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(guarded, i);
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  }
  report.experiments = std::move(results);
  report.pass = std::all_of(report.experiments.begin(),
                            report.experiments.end(),
                            [](const ExperimentResult& r) { return r.pass; });

  json summary;
  summary["scenario"] = report.scenario;
  summary["seed"] = report.seed;
  summary["pass"] = report.pass;
  summary["experiments"] = json::array();
  for (const auto& r : report.experiments) {
    json e;
    e["kind"] = r.kind;
    // artifact names only, so identical runs give byte-identical summaries
    // no matter where they land
    e["csv"] = std::filesystem::path(r.csv).filename().string();
    e["pass"] = r.pass;
    e["note"] = r.note;
    json metrics = json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = v;
    e["metrics"] = metrics;
    summary["experiments"].push_back(e);
  }
  report.summary_path =
      (std::filesystem::path(dir) / "summary.json").string();
  const std::string tmp = report.summary_path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot open " + tmp + " for writing");
    f << summary.dump(1) << "\n";
  }
  if (std::rename(tmp.c_str(), report.summary_path.c_str()) != 0)
    throw UsageError("cannot move " + tmp + " into place");
  return report;
}

}  // namespace gop
