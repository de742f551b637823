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
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

const std::string kCli = EXMIP_CLI_PATH;
const std::string kFixtures = EXMIP_FIXTURE_DIR;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  static int counter = 0;
  const std::string out_path =
      "/tmp/exmip_cli_out_" + std::to_string(counter++) + ".txt";
  const std::string cmd = kCli + " " + args + " > " + out_path + " 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream f(out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::remove(out_path.c_str());
  return {WEXITSTATUS(rc), ss.str()};
}

}  // namespace

TEST_CASE("solve prints the stats line and exits 0 on optimal") {
  const RunResult r = run("solve " + kFixtures + "/knapsack.mps");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("optimal -5 ") == 0);
  CHECK(r.output.find("dbtime[") != std::string::npos);
}

TEST_CASE("solve exits 0 on proven infeasibility") {
  const RunResult r = run("solve " + kFixtures + "/parity.mps");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("infeasible") == 0);
}

TEST_CASE("solve reports exact non-representable optima") {
  const RunResult r = run("solve " + kFixtures + "/tiny_exact.mps");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("1000000000/1000000001") != std::string::npos);
}

TEST_CASE("parse errors exit 2") {
  const std::string bad = "/tmp/exmip_cli_bad.mps";
  {
    std::ofstream f(bad);
    f << "NAME x\nROWZ\n";
  }
  const RunResult r = run("solve " + bad);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("unknown section") != std::string::npos);
  std::remove(bad.c_str());
}

TEST_CASE("limit-terminated runs exit 3") {
  const RunResult r =
      run("solve " + kFixtures + "/parity.mps --node-limit 1 --presolve off "
          "--heuristics off");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("node-limit") != std::string::npos);
}

TEST_CASE("certificate emission forces presolve off with a warning") {
  const std::string cert = "/tmp/exmip_cli_cert.vipr";
  const RunResult r = run("solve " + kFixtures + "/knapsack.mps --presolve on "
                          "--certificate " + cert);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("warning") != std::string::npos);
  CHECK(r.output.find("certificate: written") != std::string::npos);

  const RunResult chk = run("check " + kFixtures + "/knapsack.mps " + cert);
  CHECK(chk.exit_code == 0);
  CHECK(chk.output.find("ACCEPTED") != std::string::npos);

  // Mutate: flip a byte in the goal line.
  {
    std::ifstream f(cert);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    const size_t pos = text.find("RTP range -5 -5");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 15, "RTP range -4 -4");
    std::ofstream out(cert);
    out << text;
  }
  const RunResult bad = run("check " + kFixtures + "/knapsack.mps " + cert);
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("REJECTED") != std::string::npos);

  // Truncate: parse error.
  {
    std::ofstream out(cert);
    out << "VER 1\nVAR 2\nx1\n";
  }
  const RunResult trunc = run("check " + kFixtures + "/knapsack.mps " + cert);
  CHECK(trunc.exit_code == 2);
  std::remove(cert.c_str());
}

TEST_CASE("solution files are written and read back") {
  const std::string sol = "/tmp/exmip_cli_sol.txt";
  const RunResult r =
      run("solve " + kFixtures + "/knapsack.mps --solution " + sol);
  CHECK(r.exit_code == 0);
  std::ifstream f(sol);
  std::string line;
  std::getline(f, line);
  CHECK(line == "=obj= -5");
  std::getline(f, line);
  CHECK(line == "x1 1");
  std::remove(sol.c_str());
}

TEST_CASE("bench aggregates a fixture matrix") {
  const std::string list = "/tmp/exmip_cli_list.txt";
  const std::string stats = "/tmp/exmip_cli_stats.tsv";
  std::remove(stats.c_str());
  {
    std::ofstream f(list);
    f << kFixtures << "/knapsack.mps\n" << kFixtures << "/parity.mps\n";
  }
  const RunResult r =
      run("bench " + list + " --seeds 0,1 --stats " + stats);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("bench: 4 4 ") != std::string::npos);
  // Stats file has one row per run.
  std::ifstream f(stats);
  int rows = 0;
  std::string line;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 4);
  std::remove(list.c_str());
  std::remove(stats.c_str());
}

TEST_CASE("single instance single seed aggregates equal the raw values") {
  const std::string list = "/tmp/exmip_cli_list1.txt";
  {
    std::ofstream f(list);
    f << kFixtures << "/knapsack.mps\n";
  }
  const RunResult r = run("bench " + list);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("bench: 1 1 ") != std::string::npos);
  std::remove(list.c_str());
}

TEST_CASE("exit codes are stable across seeds") {
  for (const char* seed : {"0", "1", "2"}) {
    const RunResult r = run("solve " + kFixtures + "/knapsack.mps --seed " +
                            std::string(seed));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("optimal -5 ") == 0);
  }
}

TEST_CASE("maximize flag flips the reported objective") {
  const RunResult r =
      run("solve " + kFixtures + "/knapsack.mps --maximize");
  CHECK(r.exit_code == 0);
  // max -5x1 -4x2 over the knapsack is 0 at the origin.
  CHECK(r.output.find("optimal 0 ") == 0);
}

TEST_CASE("maximized solves certify when checked with the same flag") {
  const std::string cert = "/tmp/exmip_cli_maxcert.vipr";
  const RunResult s = run("solve " + kFixtures +
                          "/knapsack.mps --maximize --certificate " + cert +
                          " --presolve off");
  CHECK(s.exit_code == 0);
  const RunResult ok =
      run("check " + kFixtures + "/knapsack.mps " + cert + " --maximize");
  CHECK(ok.exit_code == 0);
  // Without the flag the objective section cannot match.
  const RunResult bad = run("check " + kFixtures + "/knapsack.mps " + cert);
  CHECK(bad.exit_code == 1);
  std::remove(cert.c_str());
}
