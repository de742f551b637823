/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "exmip/aggregate.hpp"
#include "exmip/certificate.hpp"
#include "exmip/mps.hpp"
#include "exmip/tree.hpp"

namespace {

using namespace exmip;

struct CommonOptions {
  double time_limit = 7200;
  long node_limit = -1;
  uint64_t seed = 0;
  std::string presolve = "on";
  std::string heuristics = "on";
  std::string certificate_path;
  std::string bounding = "auto";
  int exlp_depth = 5;
  std::string stats_path;
  std::string solution_path;
  bool maximize = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--time-limit", opt.time_limit, "time limit in seconds");
  cmd->add_option("--node-limit", opt.node_limit, "branch-and-bound node limit");
  cmd->add_option("--seed", opt.seed, "random seed (permutes branching ties)");
  cmd->add_option("--presolve", opt.presolve, "presolve on|off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--heuristics", opt.heuristics, "heuristics on|off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--certificate", opt.certificate_path,
                  "write a verifiable certificate (disables presolve)");
  cmd->add_option("--bounding", opt.bounding,
                  "safe bounding strategy auto|bshift|pshift|exlp")
      ->check(CLI::IsMember({"auto", "bshift", "pshift", "exlp"}));
  cmd->add_option("--exlp-depth", opt.exlp_depth,
                  "solve the rational LP every K depth levels");
  cmd->add_option("--stats", opt.stats_path, "append per-run stats (TSV)");
  cmd->add_option("--solution", opt.solution_path, "write the solution file");
  cmd->add_flag("--maximize", opt.maximize, "treat the objective as maximize");
}

Config make_config(const CommonOptions& opt, bool& warned_presolve) {
  Config cfg;
  cfg.time_limit_seconds = opt.time_limit;
  cfg.node_limit = opt.node_limit;
  cfg.seed = opt.seed;
  cfg.presolve = opt.presolve == "on";
  cfg.heuristics = opt.heuristics == "on";
  cfg.certificate_path = opt.certificate_path;
  cfg.bounding.exlp_depth_interval = opt.exlp_depth;
  if (opt.bounding == "bshift") {
    cfg.bounding.override_method = BoundMethod::BShift;
  } else if (opt.bounding == "pshift") {
    cfg.bounding.override_method = BoundMethod::PShift;
  } else if (opt.bounding == "exlp") {
    cfg.bounding.override_method = BoundMethod::ExLp;
  }
  if (cfg.certificates_enabled() && cfg.presolve) {
    warned_presolve = true;
    cfg.presolve = false;
  }
  return cfg;
}

double total_dbtime(const SolveResult& r) {
  return r.bounding.bshift.time_seconds + r.bounding.pshift.time_seconds +
         r.bounding.exlp.time_seconds;
}

/// Rounds to the stats-file precision so the printed aggregates are
/// recomputable from the per-run stats exactly.
double snap6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return std::atof(buf);
}

void append_stats(const std::string& path, const std::string& instance,
                  uint64_t seed, const RationalMIP& model,
                  const SolveResult& r) {
  std::ofstream f(path, std::ios::app);
  if (!f) return;
  const bool solved = r.status == SolveStatus::Optimal ||
                      r.status == SolveStatus::Infeasible;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.6f\t%ld\t%.6f\t%.6f\t%.6f\t%.6f",
                r.solve_seconds, r.nodes, r.bounding.bshift.time_seconds,
                r.bounding.pshift.time_seconds, r.bounding.exlp.time_seconds,
                total_dbtime(r));
  f << instance << "\t" << seed << "\t" << solve_status_name(r.status) << "\t"
    << (r.incumbent.has_value()
            ? model.report_objective(r.incumbent->objective).to_string()
            : "-")
    << "\t" << (solved ? 1 : 0) << "\t" << buf << "\t" << r.gap.to_string()
    << "\n";
}

void print_solve_report(const RationalMIP& model, const SolveResult& r) {
  std::cout << r.stats_line(model) << "\n";
  std::cout << "  solved     : "
            << (r.status == SolveStatus::Optimal ||
                        r.status == SolveStatus::Infeasible
                    ? "yes"
                    : "no")
            << " (" << solve_status_name(r.status) << ")\n";
  if (r.incumbent.has_value()) {
    std::cout << "  objective  : "
              << model.report_objective(r.incumbent->objective).to_string()
              << "\n";
  }
  std::cout << "  primal/dual: " << r.primal_bound.to_string() << " / "
            << r.dual_bound.to_string() << "  gap " << r.gap.to_string()
            << "\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "  time       : %.3fs  nodes %ld",
                r.solve_seconds, r.nodes);
  std::cout << buf << "\n";
  std::snprintf(buf, sizeof buf,
                "  dbtime     : %.3fs [bshift %.3f (%ld/%ld), pshift %.3f "
                "(%ld/%ld), exlp %.3f (%ld/%ld)]",
                total_dbtime(r), r.bounding.bshift.time_seconds,
                r.bounding.bshift.successes, r.bounding.bshift.calls,
                r.bounding.pshift.time_seconds, r.bounding.pshift.successes,
                r.bounding.pshift.calls, r.bounding.exlp.time_seconds,
                r.bounding.exlp.successes, r.bounding.exlp.calls);
  std::cout << buf << "\n";
  if (r.bounding.bshift_disabled) {
    std::cout << "  bshift     : disabled dynamically (success rate < 20%)\n";
  }
  if (r.bounding.objlimit_fallbacks > 0) {
    std::cout << "  objlimit   : " << r.bounding.objlimit_fallbacks
              << " re-solves without limit\n";
  }
  std::snprintf(buf, sizeof buf,
                "  presolve   : %.3fs rnds %d fixed %ld agg %ld bdchg %ld",
                r.presolve_stats.seconds, r.presolve_stats.rounds,
                r.presolve_stats.fixed, r.presolve_stats.aggregated,
                r.presolve_stats.bound_changes);
  std::cout << buf << "\n";
  const long rc = r.repair.repair_calls;
  std::snprintf(buf, sizeof buf,
                "  repair     : calls %ld success %ld rate %.1f%% time "
                "fail/success %.4f/%.4f",
                rc, r.repair.repair_successes,
                rc > 0 ? 100.0 * r.repair.repair_successes / rc : 0.0,
                r.repair.time_fail_seconds, r.repair.time_success_seconds);
  std::cout << buf << "\n";
  if (r.certificate_written) {
    std::snprintf(buf, sizeof buf, "  certificate: written (%.3fs overhead)",
                  r.certificate_seconds);
    std::cout << buf << "\n";
  }
}

int cmd_solve(const std::string& instance, const CommonOptions& opt) {
  RationalMIP model;
  try {
    model = parse_mps_file(instance, opt.maximize);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << instance << ": " << e.what() << "\n";
    return 2;
  }
  bool warned = false;
  const Config cfg = make_config(opt, warned);
  if (warned) {
    std::cout
        << "warning: certificates require presolve off; presolve disabled\n";
  }
  SolveResult r;
  try {
    r = solve(model, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  print_solve_report(model, r);
  if (!opt.solution_path.empty() && r.incumbent.has_value()) {
    std::ofstream f(opt.solution_path);
    write_solution(model, *r.incumbent, f);
  }
  if (!opt.stats_path.empty()) {
    append_stats(opt.stats_path, instance, opt.seed, model, r);
  }
  if (r.status == SolveStatus::Optimal || r.status == SolveStatus::Infeasible) {
    return 0;
  }
  return 3;
}

int cmd_check(const std::string& instance, const std::string& certificate,
              bool maximize) {
  RationalMIP model;
  try {
    model = parse_mps_file(instance, maximize);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << instance << ": " << e.what() << "\n";
    return 2;
  }
  const CheckResult r = check_certificate_file(model, certificate);
  switch (r.verdict) {
    case CheckResult::Verdict::Accept:
      std::cout << "certificate ACCEPTED\n";
      return 0;
    case CheckResult::Verdict::Reject:
      std::cout << "certificate REJECTED at entry " << r.entry << ": "
                << r.message << "\n";
      return 1;
    case CheckResult::Verdict::ParseError:
      break;
  }
  std::cerr << "certificate parse error: " << r.message << "\n";
  return 2;
}

int cmd_bench(const std::string& list_path, const std::string& seeds_text,
              const CommonOptions& opt) {
  std::vector<std::string> instances;
  {
    std::ifstream f(list_path);
    if (!f) {
      std::cerr << "cannot open instance list " << list_path << "\n";
      return 2;
    }
    std::string line;
    while (std::getline(f, line)) {
      if (!line.empty() && line[0] != '#') instances.push_back(line);
    }
  }
  std::vector<uint64_t> seeds;
  {
    std::stringstream ss(seeds_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) seeds.push_back(std::stoull(tok));
    }
    if (seeds.empty()) seeds.push_back(0);
  }

  std::vector<double> times, nodes, dbtimes, finite_gaps;
  long solved = 0, runs = 0, infinite_gaps = 0;
  for (const std::string& instance : instances) {
    for (const uint64_t seed : seeds) {
      RationalMIP model;
      try {
        model = parse_mps_file(instance, opt.maximize);
      } catch (const ParseError& e) {
        std::cerr << "parse error: " << instance << ": " << e.what() << "\n";
        return 2;
      }
      CommonOptions run_opt = opt;
      run_opt.seed = seed;
      bool warned = false;
      const Config cfg = make_config(run_opt, warned);
      const SolveResult r = solve(model, cfg);
      ++runs;
      const bool ok = r.status == SolveStatus::Optimal ||
                      r.status == SolveStatus::Infeasible;
      // Unsolved runs contribute the time limit to the time aggregates.
      // Values are snapped to the stats-file precision so the aggregate is
      // recomputable from the recorded per-run stats.
      times.push_back(snap6(ok ? r.solve_seconds : opt.time_limit));
      nodes.push_back(static_cast<double>(r.nodes));
      dbtimes.push_back(snap6(total_dbtime(r)));
      if (ok) ++solved;
      if (r.gap.is_finite()) {
        finite_gaps.push_back(r.gap.value().to_double_nearest());
      } else {
        ++infinite_gaps;
      }
      if (!opt.stats_path.empty()) {
        append_stats(opt.stats_path, instance, seed, model, r);
      }
      std::cout << instance << " seed " << seed << ": " << r.stats_line(model)
                << "\n";
    }
  }
  if (runs == 0) {
    std::cerr << "no instances\n";
    return 2;
  }
  const double sgm_time = shifted_geomean(times, 0.001);
  const double sgm_nodes = shifted_geomean(nodes, 100.0);
  const double sgm_dbtime = shifted_geomean(dbtimes, 0.001);
  double gap_mean = 0;
  for (const double g : finite_gaps) gap_mean += g;
  if (!finite_gaps.empty()) gap_mean /= static_cast<double>(finite_gaps.size());
  char buf[512];
  std::cout << "bench: runs solved sgm-time sgm-nodes sgm-dbtime gap-mean\n";
  std::snprintf(buf, sizeof buf, "bench: %ld %ld %.6f %.6f %.6f %.6f", runs,
                solved, sgm_time, sgm_nodes, sgm_dbtime, gap_mean);
  std::cout << buf;
  if (infinite_gaps > 0) std::cout << " (+" << infinite_gaps << " inf gaps)";
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exmip: numerically exact rational MIP solver"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string instance, certificate, list_path;
  std::string seeds_text = "0";

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve an MPS instance exactly");
  solve_cmd->add_option("instance", instance, "MPS file")->required();
  add_common_flags(solve_cmd, opt);

  CLI::App* check_cmd = app.add_subcommand(
      "check", "verify a certificate independently of the solver");
  check_cmd->add_option("instance", instance, "MPS file")->required();
  check_cmd->add_option("certificate", certificate, "certificate file")
      ->required();
  check_cmd->add_flag("--maximize", opt.maximize,
                      "the instance was solved as a maximization");

  CLI::App* bench_cmd =
      app.add_subcommand("bench", "run an instance list over several seeds");
  bench_cmd->add_option("list", list_path, "file with one MPS path per line")
      ->required();
  bench_cmd->add_option("--seeds", seeds_text, "comma-separated seeds");
  add_common_flags(bench_cmd, opt);

  CLI11_PARSE(app, argc, argv);

  if (solve_cmd->parsed()) return cmd_solve(instance, opt);
  if (check_cmd->parsed()) {
    return cmd_check(instance, certificate, opt.maximize);
  }
  return cmd_bench(list_path, seeds_text, opt);
}
