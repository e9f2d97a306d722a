// mectopo command line: generate scenario worlds, build offload
// topologies with one of five algorithms, and run the two benchmark
// sweeps with deterministic, file-stable output.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mectopo/experiment.hpp"
#include "mectopo/scenario_io.hpp"

namespace {

using namespace mectopo;

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty list: '" + csv + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_double_list(csv)) out.push_back(static_cast<int>(v));
  return out;
}

struct CommonFlags {
  std::uint64_t seed = 1;
  int trials = 10;
  std::string algos = "dntd,unequal,leachc,lbas,dijkstra";
  std::string out;
  std::string format = "csv";
  bool timings = false;
  int jobs = 1;
  double leachc_fraction = 0.2;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_out = true) {
  cmd->add_option("--seed", f.seed, "root seed for world generation");
  cmd->add_option("--trials", f.trials, "worlds per grid point");
  cmd->add_option("--algos", f.algos, "comma list of algorithms to run");
  if (with_out) {
    cmd->add_option("--out", f.out, "output file for the result rows");
    cmd->add_option("--format", f.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--timings", f.timings,
                  "record real runtimes (makes output files run-dependent)");
  }
  cmd->add_option("--jobs", f.jobs, "worlds evaluated in parallel");
  cmd->add_option("--leachc-fraction", f.leachc_fraction,
                  "head fraction for leachc");
}

ExperimentConfig make_config(const CommonFlags& f) {
  ExperimentConfig cfg;
  cfg.seed = f.seed;
  cfg.trials = f.trials;
  cfg.algos = parse_algos(f.algos);
  cfg.timings = f.timings;
  cfg.jobs = f.jobs;
  cfg.leachc_fraction = f.leachc_fraction;
  return cfg;
}

void emit(const ExperimentResults& res, const CommonFlags& f) {
  if (!f.out.empty()) write_rows(f.out, res.rows, f.format, f.timings);
  std::cout << summary_table(res.summary);
  if (!f.out.empty())
    std::cout << res.rows.size() << " rows written to " << f.out << "\n";
}

int cmd_gen(const std::string& out_path, std::uint64_t seed, GenParams p) {
  const Scenario sc = generate_scenario(seed, p);
  save_scenario(sc, out_path);
  std::cout << "wrote " << out_path << " (" << sc.size() << " servers)\n";
  return 0;
}

int cmd_run(const std::string& scenario_path, std::uint64_t seed, GenParams p,
            const std::string& algos_csv, double leachc_fraction,
            bool dump_tree, const std::string& out_path) {
  Scenario sc = scenario_path.empty() ? generate_scenario(seed, p)
                                      : load_scenario(scenario_path);
  const Network net = build_network(sc);
  const UnitDelayTable delays(sc, net);

  ExperimentConfig cfg;
  cfg.leachc_fraction = leachc_fraction;
  auto algos = parse_algos(algos_csv);

  nlohmann::json dump = nlohmann::json::object();
  char line[160];
  std::snprintf(line, sizeof line, "%-9s %14s %14s %9s %9s\n", "algo",
                "model_s", "eq1_s", "ch_count", "cm_count");
  std::cout << line;
  for (Algo a : algos) {
    const OffloadTree tree = run_algorithm(a, sc, net, cfg);
    const double eq1 = evaluate_eq1(tree, sc, net, delays);
    std::snprintf(line, sizeof line, "%-9s %14.6g %14.6g %9zu %9d\n",
                  algo_name(a), tree.model_makespan, eq1,
                  tree.clusters.size(), tree.cm_count());
    std::cout << line;
    if (dump_tree) {
      auto t = tree_to_json(tree);
      t["eq1_makespan_s"] = eq1;
      dump[algo_name(a)] = std::move(t);
    }
  }
  if (dump_tree) {
    if (out_path.empty()) {
      std::cout << dump.dump(2) << "\n";
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + out_path);
      f << dump.dump(2) << '\n';
      std::cout << "tree dump written to " << out_path << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-layer task-offloading topology builder and benchmark"};
  app.require_subcommand(1);

  GenParams gp;
  const auto add_world = [&](CLI::App* cmd) {
    cmd->add_option("--n", gp.n, "number of servers");
    cmd->add_option("--xi", gp.comm_range_m, "communication range (m)");
    cmd->add_option("--area", gp.area_w_m, "square area side (m)");
    cmd->add_option("--task-size", gp.task_size, "total task size (Gbits)");
    cmd->add_option("--bandwidth", gp.bandwidth_mhz, "bandwidth (MHz)");
    cmd->add_option("--f-min", gp.f_min_mhz, "compute power lower bound (MHz)");
    cmd->add_option("--f-max", gp.f_max_mhz, "compute power upper bound (MHz)");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "generate a scenario file");
  std::uint64_t gen_seed = 1;
  std::string gen_out = "scenario.json";
  add_world(gen);
  gen->add_option("--seed", gen_seed, "world seed");
  gen->add_option("--out", gen_out, "scenario file path");

  // run
  auto* run = app.add_subcommand("run", "run algorithms on one scenario");
  std::string run_scenario;
  std::uint64_t run_seed = 1;
  std::string run_algos = "dntd,unequal,leachc,lbas,dijkstra";
  double run_leachc = 0.2;
  bool run_dump = false;
  std::string run_out;
  add_world(run);
  run->add_option("--scenario", run_scenario,
                  "scenario file (generated ad hoc from --seed when absent)");
  run->add_option("--seed", run_seed, "world seed when generating ad hoc");
  run->add_option("--algos", run_algos, "comma list of algorithms");
  run->add_option("--leachc-fraction", run_leachc, "head fraction for leachc");
  run->add_flag("--dump-tree", run_dump, "emit full topology and shares");
  run->add_option("--out", run_out, "file for the tree dump");

  // sweep-size
  auto* ss = app.add_subcommand("sweep-size",
                                "benchmark across network sizes");
  CommonFlags ssf;
  std::string ss_n = "20,100";
  std::string ss_xi = "50";
  ss->add_option("--n", ss_n, "comma list of network sizes");
  ss->add_option("--xi", ss_xi, "communication range (m)");
  add_common(ss, ssf);

  // sweep-range
  auto* sr = app.add_subcommand("sweep-range",
                                "benchmark across communication ranges");
  CommonFlags srf;
  std::string sr_n = "20";
  std::string sr_xi = "10,30,50,70,90,110,130";
  sr->add_option("--n", sr_n, "network size");
  sr->add_option("--xi", sr_xi, "comma list of ranges (m)");
  add_common(sr, srf);

  // compare
  auto* cp = app.add_subcommand(
      "compare", "summary table of algorithm means at given points");
  CommonFlags cpf;
  std::string cp_n = "20";
  std::string cp_xi = "50";
  cp->add_option("--n", cp_n, "comma list of network sizes");
  cp->add_option("--xi", cp_xi, "comma list of ranges (m)");
  add_common(cp, cpf, /*with_out=*/false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_out, gen_seed, gp);
    if (run->parsed())
      return cmd_run(run_scenario, run_seed, gp, run_algos, run_leachc,
                     run_dump, run_out);
    const auto sweep = [&](CommonFlags& f, const std::string& n_csv,
                           const std::string& xi_csv) {
      ExperimentConfig cfg = make_config(f);
      cfg.base = gp;
      cfg.n_values = parse_int_list(n_csv);
      cfg.xi_values = parse_double_list(xi_csv);
      emit(run_experiment(cfg), f);
      return 0;
    };
    if (ss->parsed()) return sweep(ssf, ss_n, ss_xi);
    if (sr->parsed()) return sweep(srf, sr_n, sr_xi);
    if (cp->parsed()) return sweep(cpf, cp_n, cp_xi);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
