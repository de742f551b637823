/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "exmip/bounding.hpp"
#include "exmip/certificate.hpp"
#include "exmip/exact_lp.hpp"
#include "exmip/fp_lp.hpp"
#include "exmip/interval.hpp"
#include "exmip/presolve.hpp"
#include "exmip/tree.hpp"

namespace {

using namespace exmip;

RationalMIP bench_mip(int nbin, int rows, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  RationalMIP m;
  for (int j = 0; j < nbin; ++j) {
    m.add_col("x" + std::to_string(j), Rational(0), Rational(1), true,
              Rational(num(rng), den(rng)));
  }
  for (int i = 0; i < rows; ++i) {
    const int r = m.add_row("r" + std::to_string(i), RowSense::LessEqual,
                            Rational(nbin, 2));
    for (int j = 0; j < nbin; ++j) {
      const Rational a(num(rng) >= 0 ? num(rng) + 1 : 0, den(rng));
      if (!a.is_zero()) m.rows[r].push(j, a);
    }
    m.rows[r].normalize();
    if (m.rows[r].idx.empty()) m.rows[r].push(0, Rational(1));
  }
  return m;
}

struct Prepared {
  RationalMIP model;
  FloatMIP fmodel;
  NodeView node;
  FpLpResult fp;
};

Prepared prepared(int nbin, int rows, uint64_t seed) {
  Prepared p{bench_mip(nbin, rows, seed), {}, {}, {}};
  p.fmodel = approximate(p.model);
  p.node = NodeView::root(p.model, p.fmodel);
  p.fp = solve_fp_lp(p.node);
  return p;
}

void BM_RationalDot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-99, 99);
  std::vector<Rational> a, x;
  for (int i = 0; i < n; ++i) {
    a.emplace_back(num(rng), 97);
    x.emplace_back(num(rng), 89);
  }
  for (auto _ : state) {
    Rational dot;
    for (int i = 0; i < n; ++i) dot += a[i] * x[i];
    benchmark::DoNotOptimize(dot);
  }
}
BENCHMARK(BM_RationalDot)->Arg(16)->Arg(128);

void BM_RunningErrorDot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> a(n), x(n), z(n, 1e-9);
  for (int i = 0; i < n; ++i) {
    a[i] = u(rng);
    x[i] = u(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(running_error_dot(a, x, z, z));
  }
}
BENCHMARK(BM_RunningErrorDot)->Arg(16)->Arg(128);

void BM_FloatLp(benchmark::State& state) {
  const Prepared p = prepared(12, 8, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_fp_lp(p.node));
  }
}
BENCHMARK(BM_FloatLp);

void BM_ExactLp(benchmark::State& state) {
  const Prepared p = prepared(12, 8, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_exact_lp(p.node));
  }
}
BENCHMARK(BM_ExactLp);

// The central safe-bounding tradeoff: cheap interval-based bounding
// against a full exact LP solve on the same relaxation.
void BM_BoundShift(benchmark::State& state) {
  const Prepared p = prepared(12, 8, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bound_shift(p.node, p.fp.y));
  }
}
BENCHMARK(BM_BoundShift);

void BM_ProjectAndShift(benchmark::State& state) {
  const Prepared p = prepared(12, 8, 11);
  const auto interior = interior_point(p.model);
  if (!interior.has_value()) {
    state.SkipWithError("no interior point");
    return;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_and_shift(p.node, p.fp.y, &*interior));
  }
}
BENCHMARK(BM_ProjectAndShift);

void BM_ExactLpBound(benchmark::State& state) {
  const Prepared p = prepared(12, 8, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_lp_bound(p.node, &p.fp.basis));
  }
}
BENCHMARK(BM_ExactLpBound);

void BM_Presolve(benchmark::State& state) {
  const RationalMIP m = bench_mip(16, 10, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(presolve(m));
  }
}
BENCHMARK(BM_Presolve);

void BM_SolveMip(benchmark::State& state) {
  const RationalMIP m = bench_mip(10, 6, 17);
  Config cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(m, cfg));
  }
}
BENCHMARK(BM_SolveMip);

void BM_CertificateEmitAndCheck(benchmark::State& state) {
  const RationalMIP m = bench_mip(8, 5, 19);
  for (auto _ : state) {
    Config cfg;
    cfg.certificate_path = "/tmp/exmip_bench_cert.vipr";
    const SolveResult r = solve(m, cfg);
    benchmark::DoNotOptimize(r);
    const CheckResult c =
        check_certificate_file(m, "/tmp/exmip_bench_cert.vipr");
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CertificateEmitAndCheck);

}  // namespace

BENCHMARK_MAIN();
