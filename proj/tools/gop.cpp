#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "gop/errors.hpp"
#include "gop/scenario.hpp"

namespace {

bool is_builtin(const std::string& name) {
  for (const auto& [n, d] : gop::builtin_scenarios())
    if (n == name) return true;
  return false;
}

int do_list(bool verbose) {
  for (const auto& [name, desc] : gop::builtin_scenarios()) {
    std::printf("%-22s %s\n", name.c_str(), desc.c_str());
    if (verbose) {
      const gop::Scenario s =
          gop::parse_scenario(gop::builtin_scenario_text(name));
      std::printf("%-22s manifold T^%d, n = %d; experiments:", "", s.dim,
                  s.n_points);
      for (const auto& e : s.experiments) std::printf(" %s", e.kind.c_str());
      std::printf("\n");
    }
  }
  return 0;
}

int do_run(const std::string& target, const gop::RunOptions& opts) {
  const gop::Scenario s = is_builtin(target)
                              ? gop::parse_scenario(
                                    gop::builtin_scenario_text(target))
                              : gop::load_scenario_file(target);
  const gop::RunReport report = gop::run_scenario(s, opts);
  std::printf("scenario %s (seed %u)\n", report.scenario.c_str(), report.seed);
  for (const auto& r : report.experiments) {
    std::printf("  [%s] %-12s %s", r.pass ? "PASS" : "FAIL", r.kind.c_str(),
                r.csv.empty() ? "-" : r.csv.c_str());
    if (!r.note.empty()) std::printf("  (%s)", r.note.c_str());
    std::printf("\n");
  }
  std::printf("summary: %s -> %s\n", report.summary_path.c_str(),
              report.pass ? "PASS" : "FAIL");
  return report.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical workbench for operators over group actions"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list built-in scenarios");
  bool verbose = false;
  list->add_flag("--verbose", verbose, "also show each scenario's experiments");

  auto* run = app.add_subcommand("run", "run a scenario file or builtin");
  std::string target;
  gop::RunOptions opts;
  run->add_option("scenario", target, "scenario JSON file or builtin name")
      ->required();
  run->add_option("--out-dir", opts.out_dir, "directory for CSV artifacts");
  auto* seed_opt =
      run->add_option("--seed", opts.seed, "seed for sampled checks");
  run->add_flag("--parallel", opts.parallel,
                "run independent experiments concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (list->parsed()) return do_list(verbose);
    opts.seed_set = seed_opt->count() > 0;
    return do_run(target, opts);
  } catch (const gop::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
