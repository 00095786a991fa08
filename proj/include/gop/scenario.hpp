#pragma once
#include <string>
#include <utility>
#include <vector>

#include "gop/torus.hpp"

namespace gop {

// Declarative experiment driver.  A scenario is a JSON document naming a
// manifold discretization, a group action, optional Hamiltonians and a
// crossed-product element, and a list of experiments to run against them.
// Parsing is strict: unknown keys anywhere raise UsageError, so typos never
// silently change an experiment.

// a(x, omega), either a constant or a single Fourier harmonic per direction
// sign (harmonics are 1-d)
struct SymbolSpec {
  std::string kind = "constant";  // "constant" | "harmonic"
  cplx value = 0.0;               // constant
  cplx plus_c = 0.0;              // harmonic: omega > 0 branch c * e^{i f x}
  int plus_freq = 0;
  cplx minus_c = 0.0;  // harmonic: omega < 0 branch
  int minus_freq = 0;
};

struct TermSpec {
  double g = 0.0;
  SymbolSpec symbol;
};

struct ElementSpec {
  bool present = false;
  std::string kind = "explicit";  // "explicit" | "averaged"
  cplx unit = 0.0;
  std::vector<TermSpec> terms;     // explicit: one term per group parameter
  std::string amplitude = "bump";  // averaged: profile over the group nodes
};

struct GroupSpec {
  std::string kind = "trivial";  // trivial | integer-rotation |
                                 // cyclic-rotation | line-flow
  double alpha = 0.0;            // integer-rotation step
  int n = 0;                     // cyclic-rotation order
  std::string hamiltonian;       // line-flow: named Hamiltonian
  double window = 2.0;
  int half_nodes = 16;
};

struct HamiltonianSpec {
  std::string name;        // referenced by experiments and the group
  std::string descriptor;  // "abs-p" | "quadratic-example" | "linear:v0[,v1]"
};

struct FlowRef {
  bool present = false;
  std::string hamiltonian;
  double t = 0.0;
};

struct ExperimentSpec {
  std::string kind;  // egorov | wavefront | ellipticity | smoothing |
                     // hamjac | transverse
  std::vector<double> bands;  // egorov, smoothing
  SymbolSpec symbol;          // egorov: transported symbol
  std::string map_kind;       // egorov: "translation" | "flow"
  Vec map_c = {0.0, 0.0};     // egorov: translation vector
  FlowRef flow;       // egorov flow map; hamjac; transverse invariance
  std::vector<int> sizes;    // ellipticity grid sweep
  std::vector<int> windows;  // ellipticity section windows
  std::string expect = "consistent";  // ellipticity: | "inconsistent"
  int samples = 32;                   // hamjac phase samples
  std::vector<std::string> hamiltonians;  // transverse (empty = all named)
  double tol = 1e-9;                      // transverse zero-set tolerance
  int slack = 2;  // wavefront containment slack (cells)
};

// pass/fail thresholds; every field has a JSON key of the same name
struct Tolerances {
  double egorov_ratio = 3.0;   // low-band / high-band residual improvement
  double egorov_floor = 1e-8;  // or every band already below this
  double hamjac_canonical = 1e-6;  // canonical relations + homogeneity
  double hamjac_hj = 1e-5;     // Hamilton-Jacobi + graph equations
  double wavefront_budget = 0.05;
  double smoothing_exponent = 1.0;
  double invariance_slack = 1e-6;
  double section_threshold = 1e-3;
  double svd_tol = 1e-6;
  double inverse_tol = 1e-8;
};

struct Scenario {
  std::string name;
  int dim = 1;
  int n_points = 0;
  int n_dirs = 0;  // 0 picks 2 (dim 1) or 16 (dim 2)
  GroupSpec group;
  std::vector<HamiltonianSpec> hamiltonians;
  ElementSpec element;
  std::vector<ExperimentSpec> experiments;
  Tolerances tol;
  std::string out_dir;  // optional default, overridden per run
  unsigned seed = 12345;
  bool seed_set = false;
};

// strict parse of a JSON scenario; UsageError on any schema violation
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

// built-in scenarios: (name, one-line description)
std::vector<std::pair<std::string, std::string>> builtin_scenarios();
// JSON text of a builtin; UsageError for unknown names
std::string builtin_scenario_text(const std::string& name);

struct ExperimentResult {
  std::string kind;
  std::string csv;  // artifact path (empty when the experiment aborted)
  bool pass = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::string note;  // verdict strings and failure reasons
};

struct RunOptions {
  std::string out_dir;  // empty: scenario's own, else "."
  unsigned seed = 0;
  bool seed_set = false;  // false: scenario's own seed
  bool parallel = false;  // run independent experiments concurrently
};

struct RunReport {
  std::string scenario;
  unsigned seed = 0;
  bool pass = false;  // every experiment passed
  std::vector<ExperimentResult> experiments;
  std::string summary_path;
};

// Runs every experiment, one CSV artifact each plus summary.json in the
// output directory; all files are written atomically and identical
// scenario + seed give byte-identical output.  Errors raised while an
// experiment executes mark it failed (with the message in the note) rather
// than aborting the run; configuration errors throw UsageError up front.
RunReport run_scenario(const Scenario& s, const RunOptions& opts = {});

}  // namespace gop
