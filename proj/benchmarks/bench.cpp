#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "iclsc/parser.hpp"
#include "iclsc/planner.hpp"
#include "iclsc/pstrips.hpp"

namespace {

using namespace icl;

std::string readAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const Theory& office() {
  static Theory theory = parseDomain(readAll(std::string(ICL_DOMAINS_DIR) + "/office.icl"));
  return theory;
}

const Plan& officePlan() {
  static Plan plan = parsePlan(readAll(std::string(ICL_DOMAINS_DIR) + "/office.plan"));
  return plan;
}

void BM_ParseOffice(benchmark::State& state) {
  std::string text = readAll(std::string(ICL_DOMAINS_DIR) + "/office.icl");
  for (auto _ : state) {
    Theory t = parseDomain(text);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_ParseOffice);

void BM_GroundOfficePlanQueries(benchmark::State& state) {
  for (auto _ : state) {
    EvalSession session(office(), maxBranchDepth(officePlan()));
    session.prepare(officePlan());
    benchmark::DoNotOptimize(session.ground().atomCount());
  }
}
BENCHMARK(BM_GroundOfficePlanQueries);

void BM_ExactExpectedUtility(benchmark::State& state) {
  EvalSession session(office(), maxBranchDepth(officePlan()));
  session.prepare(officePlan());
  for (auto _ : state) {
    EUReport report = session.expectedUtilityExact(officePlan());
    benchmark::DoNotOptimize(report.expectedUtility);
  }
}
BENCHMARK(BM_ExactExpectedUtility);

void BM_EnumerateWorlds(benchmark::State& state) {
  int horizon = maxBranchDepth(officePlan());
  EvalSession session(office(), horizon);
  session.prepare(officePlan());
  for (auto _ : state) {
    EUReport report = session.expectedUtilityEnumerate(officePlan(), horizon);
    benchmark::DoNotOptimize(report.expectedUtility);
  }
}
BENCHMARK(BM_EnumerateWorlds);

void BM_MonteCarlo(benchmark::State& state) {
  EvalSession session(office(), maxBranchDepth(officePlan()));
  session.prepare(officePlan());
  for (auto _ : state) {
    auto estimate = session.expectedUtilityMC(officePlan(), state.range(0), 1);
    benchmark::DoNotOptimize(estimate.first);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(1000)->Arg(10000);

void BM_QueryMarginal(benchmark::State& state) {
  for (auto _ : state) {
    EvalSession session(office(), 1);
    Rational p = session.queryProbability(Formula::atom(
        Atom{"at", {Term::sym("key"), Term::sym("r101"), s0()}}));
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_QueryMarginal);

void BM_BestPlanDepth(benchmark::State& state) {
  PlanSpace space;
  space.actions = {Term::app("goto", {Term::sym("r101"), Term::sym("direct")}),
                   Term::app("goto", {Term::sym("door"), Term::sym("long")}),
                   Term::app("pickup", {Term::sym("key")})};
  space.observables = {Term::sym("at_key")};
  space.depth = static_cast<int>(state.range(0));
  space.nesting = 1;
  for (auto _ : state) {
    BestPlanResult best = bestPlan(office(), space);
    benchmark::DoNotOptimize(best.expectedUtility);
  }
}
BENCHMARK(BM_BestPlanDepth)->Arg(2)->Arg(3);

void BM_PersistenceTranslation(benchmark::State& state) {
  for (auto _ : state) {
    auto bench = persistenceBenchmark(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(bench.pstripsMetrics.tupleCount);
  }
}
BENCHMARK(BM_PersistenceTranslation)->Arg(4)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
