// Command-line front end: run, plan, verify, render, energy.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxcover/io.hpp"
#include "maxcover/maxcover.hpp"

namespace {

using namespace maxcover;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void require_nodes(std::int64_t n) {
  if (n < 1) throw ConfigError("--nodes must be >= 1");
}

void require_positive_radius(double r) {
  if (!(r > 0.0)) throw ConfigError("--radius must be > 0");
}

/// Writes to `path`, or to stdout when the path is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  auto os = open_output(path);
  write(os);
  if (!os) throw IoError("failed writing '" + path + "'");
}

struct RunArgs {
  std::int64_t nodes = 0;
  double radius = 1.0;
  std::string out, trajectories, report;
  bool literal_j0 = false;
};

int cmd_run(const RunArgs& args) {
  require_nodes(args.nodes);
  require_positive_radius(args.radius);
  SimulationConfig config;
  config.n = args.nodes;
  config.r = args.radius;
  config.record_trajectories = !args.trajectories.empty();
  config.compatibility_literal_j0 = args.literal_j0;
  const auto result = run(config);

  const auto rows = final_rows(result);
  emit(args.out, [&](std::ostream& os) { write_final_csv(os, rows, args.radius); });
  if (!args.trajectories.empty())
    emit(args.trajectories, [&](std::ostream& os) { write_trajectories_jsonl(os, result); });
  if (!args.report.empty())
    emit(args.report, [&](std::ostream& os) { write_round_report_csv(os, result.reports); });
  return kExitOk;
}

struct PlanArgs {
  std::int64_t nodes = 0;
  double radius = 1.0;
  bool iterative = false;
  bool closed_form = false;
  bool random_deploy = false;
  std::uint64_t seed = 1;
  double spread = 10.0;
  std::string starts;
  std::string out;
};

int cmd_plan(const PlanArgs& args) {
  require_nodes(args.nodes);
  require_positive_radius(args.radius);
  const auto method = args.iterative ? PlanMethod::iterative : PlanMethod::closed_form;
  const auto coords = plan_all(args.nodes, method);

  if (!args.random_deploy && args.starts.empty()) {
    std::vector<FinalRow> rows;
    for (NodeId id = 0; id < args.nodes; ++id) {
      const Round k = method == PlanMethod::iterative ? iterate_destination(id).stable_round : stable_round_of(id);
      rows.push_back({id, coords[static_cast<std::size_t>(id)], k});
    }
    emit(args.out, [&](std::ostream& os) { write_final_csv(os, rows, args.radius); });
    return kExitOk;
  }

  std::vector<Point> starts;
  if (!args.starts.empty()) {
    auto is = open_input(args.starts);
    starts = read_starts_csv(is);
    if (static_cast<std::int64_t>(starts.size()) != args.nodes)
      throw ConfigError("starts file has " + std::to_string(starts.size()) + " rows but --nodes is " +
                        std::to_string(args.nodes));
  } else {
    starts = uniform_starts(args.nodes, args.seed, args.spread);
  }
  const auto plan = random_deployment_plan(starts, args.radius);
  emit(args.out, [&](std::ostream& os) {
    os << "id,a,b,start_x,start_y,target_x,target_y,distance\n";
    for (std::size_t i = 0; i < plan.targets.size(); ++i) {
      os << i << ',' << coords[i].a << ',' << coords[i].b << ',' << fixed6(plan.starts[i].x) << ','
         << fixed6(plan.starts[i].y) << ',' << fixed6(plan.targets[i].x) << ',' << fixed6(plan.targets[i].y) << ','
         << fixed6(plan.distances[i]) << '\n';
    }
  });
  std::cerr << "broadcasts=" << plan.broadcast_count << " moves_per_node=1 total_distance="
            << fixed6(plan.total_distance()) << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::string input;
  double radius = 1.0;
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs& args) {
  require_positive_radius(args.radius);
  if (args.samples < 1) throw ConfigError("--samples must be >= 1");
  auto is = open_input(args.input);
  const auto rows = read_final_csv(is);
  if (rows.empty()) throw ConfigError("input has no rows");
  std::vector<LatticeCoord> coords;
  std::vector<Round> rounds;
  for (const auto& row : rows) {
    coords.push_back(row.coord);
    rounds.push_back(row.stable_round);
  }
  const auto report = verify_configuration(coords, rounds, {args.radius, args.samples, args.seed});
  std::cout << to_json(report).dump(2) << '\n';
  return report.passed() ? kExitOk : kExitCheckFailed;
}

struct RenderArgs {
  std::string input, out, title;
  double radius = 1.0;
};

int cmd_render(const RenderArgs& args) {
  require_positive_radius(args.radius);
  auto is = open_input(args.input);
  const auto rows = read_final_csv(is);
  if (rows.empty()) throw ConfigError("input has no rows");
  std::vector<std::pair<NodeId, LatticeCoord>> nodes;
  for (const auto& row : rows) nodes.emplace_back(row.id, row.coord);
  SvgOptions opts;
  opts.title = args.title;
  const auto svg = render_svg(nodes, args.radius, opts);
  emit(args.out, [&](std::ostream& os) { os << svg; });
  return kExitOk;
}

struct EnergyArgs {
  std::int64_t nodes = 0;
  double radius = 1.0;
  bool verbose = false;
  std::string out;
};

int cmd_energy(const EnergyArgs& args) {
  require_nodes(args.nodes);
  require_positive_radius(args.radius);
  SimulationConfig config;
  config.n = args.nodes;
  config.r = args.radius;
  const auto result = run(config);
  const auto energy = energy_report(result, args.radius);
  emit(args.out, [&](std::ostream& os) {
    os << "id,path_length,straight_line,ratio\n";
    for (const auto& e : energy.nodes)
      os << e.id << ',' << fixed6(e.path_length) << ',' << fixed6(e.straight_line) << ',' << fixed6(e.ratio) << '\n';
    os << "total_path=" << fixed6(energy.total_path) << '\n';
    os << "total_straight=" << fixed6(energy.total_straight) << '\n';
    os << "ratio=" << fixed6(energy.ratio()) << '\n';
    if (args.verbose) {
      os << "termination_round=" << result.termination_round << '\n';
      os << "expected_termination_round=" << expected_termination_round(args.nodes) << '\n';
      os << "derived_closed_form=" << derived_round_formula(args.nodes) << '\n';
      os << "published_closed_form=" << published_round_formula(args.nodes)
         << (published_round_formula(args.nodes) == result.termination_round ? "" : " (disagrees with the run)")
         << '\n';
    }
  });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Id-based mobile sensor spreading on a triangular lattice"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Simulate the synchronous rounds and write final positions");
  run_cmd->add_option("--nodes", run_args.nodes, "Number of sensors")->required();
  run_cmd->add_option("--radius", run_args.radius, "Sensing radius")->required();
  run_cmd->add_option("--out", run_args.out, "Final CSV path (default stdout)");
  run_cmd->add_option("--trajectories", run_args.trajectories, "JSONL per-round states");
  run_cmd->add_option("--report", run_args.report, "Per-round census CSV");
  run_cmd->add_flag("--literal-j0", run_args.literal_j0, "Use residue 0 for ids divisible by six (broken variant)");

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "Compute destinations without simulating movement");
  plan_cmd->add_option("--nodes", plan_args.nodes, "Number of sensors")->required();
  plan_cmd->add_option("--radius", plan_args.radius, "Sensing radius")->required();
  auto* iter_flag = plan_cmd->add_flag("--iterative", plan_args.iterative, "Iterate each node's transitions");
  auto* closed_flag = plan_cmd->add_flag("--closed-form", plan_args.closed_form, "Closed-form slot (default)");
  iter_flag->excludes(closed_flag);
  auto* random_flag = plan_cmd->add_flag("--random-deploy", plan_args.random_deploy, "Random starting positions");
  plan_cmd->add_option("--seed", plan_args.seed, "Seed for --random-deploy")->needs(random_flag);
  plan_cmd->add_option("--spread", plan_args.spread, "Side of the start square for --random-deploy")
      ->needs(random_flag);
  auto* starts_opt = plan_cmd->add_option("--starts", plan_args.starts, "CSV of start positions (x,y)");
  starts_opt->excludes(random_flag);
  plan_cmd->add_option("--out", plan_args.out, "Output CSV path (default stdout)");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check a final configuration; JSON report on stdout");
  verify_cmd->add_option("--input", verify_args.input, "Final CSV")->required();
  verify_cmd->add_option("--radius", verify_args.radius, "Sensing radius")->required();
  verify_cmd->add_option("--samples", verify_args.samples, "Coverage samples");
  verify_cmd->add_option("--seed", verify_args.seed, "Coverage sampling seed");

  RenderArgs render_args;
  auto* render_cmd = app.add_subcommand("render", "Draw sensing disks as SVG");
  render_cmd->add_option("--input", render_args.input, "Final CSV")->required();
  render_cmd->add_option("--radius", render_args.radius, "Sensing radius")->required();
  render_cmd->add_option("--out", render_args.out, "SVG path")->required();
  render_cmd->add_option("--title", render_args.title, "Optional SVG title");

  EnergyArgs energy_args;
  auto* energy_cmd = app.add_subcommand("energy", "Round-by-round path length against straight-line flight");
  energy_cmd->add_option("--nodes", energy_args.nodes, "Number of sensors")->required();
  energy_cmd->add_option("--radius", energy_args.radius, "Sensing radius")->required();
  energy_cmd->add_flag("--verbose", energy_args.verbose, "Also print round-count formulas");
  energy_cmd->add_option("--out", energy_args.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_args);
    if (plan_cmd->parsed()) return cmd_plan(plan_args);
    if (verify_cmd->parsed()) return cmd_verify(verify_args);
    if (render_cmd->parsed()) return cmd_render(render_args);
    if (energy_cmd->parsed()) return cmd_energy(energy_args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
