#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mectopo/baselines.hpp"
#include "mectopo/dntd.hpp"
#include "mectopo/evaluate.hpp"
#include "mectopo/generate.hpp"
#include "mectopo/network.hpp"
#include "mectopo/rng.hpp"

namespace mectopo {

enum class Algo { Dijkstra, Dntd, Lbas, LeachC, Unequal };

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Dijkstra: return "dijkstra";
    case Algo::Dntd: return "dntd";
    case Algo::Lbas: return "lbas";
    case Algo::LeachC: return "leachc";
    case Algo::Unequal: return "unequal";
  }
  throw std::logic_error("algo_name: bad enum");
}

inline std::vector<Algo> parse_algos(const std::string& csv) {
  std::vector<Algo> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok == "dntd") out.push_back(Algo::Dntd);
    else if (tok == "unequal") out.push_back(Algo::Unequal);
    else if (tok == "leachc") out.push_back(Algo::LeachC);
    else if (tok == "lbas") out.push_back(Algo::Lbas);
    else if (tok == "dijkstra") out.push_back(Algo::Dijkstra);
    else throw std::invalid_argument("unknown algorithm '" + tok +
                                     "' (expected dntd,unequal,leachc,lbas,dijkstra)");
  }
  if (out.empty()) throw std::invalid_argument("no algorithms requested");
  std::sort(out.begin(), out.end());  // enum order == name order
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct ExperimentConfig {
  std::vector<int> n_values{20};
  std::vector<double> xi_values{50.0};
  int trials = 10;
  std::uint64_t seed = 1;
  std::vector<Algo> algos{Algo::Dijkstra, Algo::Dntd, Algo::Lbas,
                          Algo::LeachC, Algo::Unequal};
  GenParams base;  // n and comm_range_m are overridden per grid point
  double leachc_fraction = 0.2;
  LbasWeights lbas_weights{};
  bool timings = false;  // real runtimes make output files non-reproducible
  int jobs = 1;
};

struct RunResult {
  std::string scenario_id;
  std::string algorithm;
  int n = 0;
  double xi_m = 0.0;
  double model_makespan_s = 0.0;
  double eq1_makespan_s = 0.0;
  int ch_count = 0;
  int cm_count = 0;
  double runtime_ms = 0.0;
};

struct SummaryRow {
  int n = 0;
  double xi_m = 0.0;
  std::string algorithm;
  int trials = 0;
  double eq1_mean_s = 0.0;
  double eq1_std_s = 0.0;
  double model_mean_s = 0.0;
  double model_std_s = 0.0;
  double runtime_mean_ms = 0.0;
};

struct ExperimentResults {
  std::vector<RunResult> rows;      // ordered by (grid point, trial, name)
  std::vector<SummaryRow> summary;  // ordered by (grid point, name)
};

inline OffloadTree run_algorithm(Algo a, const Scenario& sc,
                                 const Network& net,
                                 const ExperimentConfig& cfg) {
  switch (a) {
    case Algo::Dntd: return dntd_to(sc, net, sc.task_size);
    case Algo::Unequal: return unequal(sc, net);
    case Algo::LeachC: return leach_c(sc, net, cfg.leachc_fraction);
    case Algo::Lbas: return lbas(sc, net, cfg.lbas_weights);
    case Algo::Dijkstra: return dijkstra_prune(sc, net);
  }
  throw std::logic_error("run_algorithm: bad enum");
}

// shortest round-trip decimal form, deterministic
inline std::string fmt_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("fmt_double failed");
  return std::string(buf, p);
}

namespace detail {

inline std::vector<RunResult> run_trial(int n, double xi, int trial,
                                        const ExperimentConfig& cfg) {
  GenParams p = cfg.base;
  p.n = n;
  p.comm_range_m = xi;
  // worlds are keyed by (seed, n, trial) and not by the range, so a
  // range sweep varies xi over the same sampled worlds
  const Scenario sc = generate_scenario(derive_seed(cfg.seed, n, trial), p);
  const Network net = build_network(sc);
  const UnitDelayTable delays(sc, net);

  std::string id = "n" + std::to_string(n) + "-xi" + fmt_double(xi) + "-t" +
                   std::to_string(trial);

  std::vector<RunResult> rows;
  rows.reserve(cfg.algos.size());
  for (Algo a : cfg.algos) {
    const auto t0 = std::chrono::steady_clock::now();
    const OffloadTree tree = run_algorithm(a, sc, net, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    double sum = 0.0;
    for (const auto& [sid, share] : tree.shares) {
      if (share < 0.0)
        throw std::runtime_error("negative share from " +
                                 std::string(algo_name(a)) + " on " + id);
      sum += share;
    }
    if (std::abs(sum - sc.task_size) > 1e-9 * sc.task_size)
      throw std::runtime_error("allocation does not cover the task in " +
                               std::string(algo_name(a)) + " on " + id);

    RunResult r;
    r.scenario_id = id;
    r.algorithm = algo_name(a);
    r.n = n;
    r.xi_m = xi;
    r.model_makespan_s = tree.model_makespan;
    r.eq1_makespan_s = evaluate_eq1(tree, sc, net, delays);
    r.ch_count = static_cast<int>(tree.clusters.size());
    r.cm_count = tree.cm_count();
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace detail

inline ExperimentResults run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (cfg.jobs < 1) throw std::invalid_argument("experiment: jobs must be >= 1");
  for (int n : cfg.n_values)
    if (n < 1) throw std::invalid_argument("experiment: n must be >= 1");
  for (double xi : cfg.xi_values)
    if (!(xi >= 0.0)) throw std::invalid_argument("experiment: xi must be >= 0");
  ExperimentConfig norm = cfg;  // rows and summaries run in name order
  std::sort(norm.algos.begin(), norm.algos.end());
  norm.algos.erase(std::unique(norm.algos.begin(), norm.algos.end()),
                   norm.algos.end());
  const ExperimentConfig& c = norm;

  struct Point {
    int n;
    double xi;
  };
  std::vector<Point> grid;
  for (int n : c.n_values)
    for (double xi : c.xi_values) grid.push_back({n, xi});

  // one slot per (point, trial); merged in grid order regardless of
  // which thread finished first
  std::vector<std::vector<RunResult>> slots(grid.size() * c.trials);
  const auto task = [&](std::size_t slot) {
    const std::size_t point = slot / c.trials;
    const int trial = static_cast<int>(slot % c.trials);
    slots[slot] =
        detail::run_trial(grid[point].n, grid[point].xi, trial, c);
  };

  if (c.jobs == 1) {
    for (std::size_t s = 0; s < slots.size(); ++s) task(s);
  } else {
    std::vector<std::future<void>> pending;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      pending.push_back(std::async(std::launch::async, task, s));
      if (static_cast<int>(pending.size()) >= c.jobs) {
        pending.front().get();
        pending.erase(pending.begin());
      }
    }
    for (auto& f : pending) f.get();
  }

  ExperimentResults out;
  for (auto& slot : slots)
    for (auto& r : slot) out.rows.push_back(std::move(r));

  for (std::size_t point = 0; point < grid.size(); ++point) {
    for (Algo a : c.algos) {
      SummaryRow s;
      s.n = grid[point].n;
      s.xi_m = grid[point].xi;
      s.algorithm = algo_name(a);
      s.trials = c.trials;
      std::vector<double> eq1, model, rt;
      for (int t = 0; t < c.trials; ++t)
        for (const auto& r : slots[point * c.trials + t])
          if (r.algorithm == s.algorithm) {
            eq1.push_back(r.eq1_makespan_s);
            model.push_back(r.model_makespan_s);
            rt.push_back(r.runtime_ms);
          }
      const auto mean = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        return v.empty() ? 0.0 : m / static_cast<double>(v.size());
      };
      const auto stdev = [&](const std::vector<double>& v, double m) {
        if (v.size() < 2) return 0.0;
        double acc = 0.0;
        for (double x : v) acc += (x - m) * (x - m);
        return std::sqrt(acc / static_cast<double>(v.size() - 1));
      };
      s.eq1_mean_s = mean(eq1);
      s.eq1_std_s = stdev(eq1, s.eq1_mean_s);
      s.model_mean_s = mean(model);
      s.model_std_s = stdev(model, s.model_mean_s);
      s.runtime_mean_ms = mean(rt);
      out.summary.push_back(std::move(s));
    }
  }
  return out;
}

inline std::string rows_to_csv(const std::vector<RunResult>& rows,
                               bool timings) {
  std::string out =
      "scenario_id,algorithm,n,xi_m,model_makespan_s,eq1_makespan_s,"
      "ch_count,cm_count,runtime_ms\n";
  for (const auto& r : rows) {
    out += r.scenario_id;
    out += ',';
    out += r.algorithm;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += fmt_double(r.xi_m);
    out += ',';
    out += fmt_double(r.model_makespan_s);
    out += ',';
    out += fmt_double(r.eq1_makespan_s);
    out += ',';
    out += std::to_string(r.ch_count);
    out += ',';
    out += std::to_string(r.cm_count);
    out += ',';
    out += fmt_double(timings ? r.runtime_ms : 0.0);
    out += '\n';
  }
  return out;
}

inline nlohmann::json rows_to_json(const std::vector<RunResult>& rows,
                                   bool timings) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"scenario_id", r.scenario_id},
                   {"algorithm", r.algorithm},
                   {"n", r.n},
                   {"xi_m", r.xi_m},
                   {"model_makespan_s", r.model_makespan_s},
                   {"eq1_makespan_s", r.eq1_makespan_s},
                   {"ch_count", r.ch_count},
                   {"cm_count", r.cm_count},
                   {"runtime_ms", timings ? r.runtime_ms : 0.0}});
  return arr;
}

inline void write_rows(const std::string& path,
                       const std::vector<RunResult>& rows,
                       const std::string& format, bool timings) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (format == "csv") {
    out << rows_to_csv(rows, timings);
  } else if (format == "json") {
    out << rows_to_json(rows, timings).dump(2) << '\n';
  } else {
    throw std::invalid_argument("unknown format '" + format +
                                "' (expected csv or json)");
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string summary_table(const std::vector<SummaryRow>& summary) {
  char line[256];
  std::snprintf(line, sizeof line, "%5s %7s %-9s %7s %14s %12s %14s %12s\n",
                "n", "xi_m", "algo", "trials", "eq1_mean_s", "eq1_std_s",
                "model_mean_s", "model_std_s");
  std::string out = line;
  for (const auto& s : summary) {
    std::snprintf(line, sizeof line,
                  "%5d %7.6g %-9s %7d %14.6g %12.4g %14.6g %12.4g\n", s.n,
                  s.xi_m, s.algorithm.c_str(), s.trials, s.eq1_mean_s,
                  s.eq1_std_s, s.model_mean_s, s.model_std_s);
    out += line;
  }
  return out;
}

}  // namespace mectopo
