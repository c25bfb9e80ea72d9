#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "iclsc/acyclic.hpp"
#include "iclsc/parser.hpp"
#include "iclsc/planner.hpp"

namespace icl {

namespace {

std::optional<std::string> readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CliError {
  int code;
  std::string message;
};

Theory loadTheory(const std::string& path) {
  auto text = readFile(path);
  if (!text) throw CliError{1, "cannot read domain file " + path};
  return parseDomain(*text);
}

Plan loadPlan(const std::string& path) {
  auto text = readFile(path);
  if (!text) throw CliError{1, "cannot read plan file " + path};
  return parsePlan(*text);
}

void requireValid(const Theory& theory, const Plan* plan) {
  auto errors = validateTheory(theory);
  if (plan) {
    auto planErrors = validatePlan(theory, *plan);
    errors.insert(errors.end(), planErrors.begin(), planErrors.end());
  }
  if (!errors.empty()) {
    std::string all;
    for (const auto& e : errors) all += e + "\n";
    all.pop_back();
    throw CliError{1, all};
  }
}

void printReport(std::ostream& out, const Theory& theory, const EUReport& report) {
  out << "expected utility: " << rationalToString(report.expectedUtility) << "\n";
  out << "total mass: " << rationalToString(report.totalMass) << "\n";
  out << "explanations: " << report.explanations.size() << "\n";
  for (const auto& ex : report.explanations) {
    out << "  p=" << rationalToString(ex.probability)
        << " u=" << rationalToString(ex.utility) << " at "
        << ex.finalSituation.toString() << " choices {"
        << describe(theory, ex.tc) << "}\n";
  }
}

nlohmann::json reportJson(const Theory& theory, const EUReport& report) {
  nlohmann::json doc;
  doc["expected_utility"] = rationalToString(report.expectedUtility);
  doc["total_mass"] = rationalToString(report.totalMass);
  doc["explanations"] = nlohmann::json::array();
  for (const auto& ex : report.explanations) {
    doc["explanations"].push_back({{"probability", rationalToString(ex.probability)},
                                   {"utility", rationalToString(ex.utility)},
                                   {"situation", ex.finalSituation.toString()},
                                   {"choices", describe(theory, ex.tc)}});
  }
  return doc;
}

void cmdValidate(std::ostream& out, const std::string& domainPath, int horizon) {
  Theory theory = loadTheory(domainPath);
  auto errors = validateTheory(theory);
  if (!errors.empty()) {
    std::string all;
    for (const auto& e : errors) all += e + "\n";
    all.pop_back();
    throw CliError{1, all};
  }
  auto acyclicity = checkAcyclic(theory, horizon);
  if (!acyclicity.acyclic) {
    std::string cycle = "theory is not acyclic:";
    for (const auto& atom : acyclicity.cycle) cycle += " " + atom;
    throw CliError{1, cycle};
  }
  out << "valid: " << theory.schemas.size() << " alternatives, "
      << theory.facts.clauses.size() << " clauses, " << theory.actions.size()
      << " actions, " << theory.observables.size() << " observables\n";
}

void cmdEval(std::ostream& out, const std::string& domainPath,
             const std::string& planPath, long mcSamples, std::uint64_t seed,
             bool oracle, const std::string& jsonPath) {
  Theory theory = loadTheory(domainPath);
  Plan plan = loadPlan(planPath);
  requireValid(theory, &plan);
  int horizon = maxBranchDepth(plan);
  EvalSession session(theory, horizon);
  try {
    if (mcSamples > 0) {
      auto [mean, stderrOfMean] = session.expectedUtilityMC(plan, mcSamples, seed);
      std::ostringstream line;
      line.setf(std::ios::fixed);
      line.precision(6);
      line << "mc estimate: " << mean << " stderr: " << stderrOfMean
           << " samples: " << mcSamples << " seed: " << seed << "\n";
      out << line.str();
      return;
    }
    EUReport report = session.expectedUtilityExact(plan);
    printReport(out, theory, report);
    if (!jsonPath.empty()) {
      std::ofstream jsonOut(jsonPath, std::ios::binary);
      if (!jsonOut) throw CliError{1, "cannot write " + jsonPath};
      jsonOut << reportJson(theory, report).dump(2) << "\n";
    }
    if (oracle) {
      EUReport enumerated = session.expectedUtilityEnumerate(plan, horizon);
      if (enumerated.expectedUtility != report.expectedUtility)
        throw CliError{1, "oracle mismatch: exact " +
                              rationalToString(report.expectedUtility) +
                              " vs enumerated " +
                              rationalToString(enumerated.expectedUtility)};
      out << "oracle agrees: " << rationalToString(enumerated.expectedUtility)
          << " over " << enumerated.explanations.size() << " worlds\n";
    }
  } catch (const UtilityIncompleteError& e) {
    throw CliError{1, std::string("utility incomplete: ") + e.what()};
  }
}

void cmdBestPlan(std::ostream& out, const std::string& domainPath, int depth,
                 int nesting) {
  Theory theory = loadTheory(domainPath);
  requireValid(theory, nullptr);
  PlanSpace space;
  for (const auto& a : theory.actions)
    if (a.ground()) space.actions.push_back(a);
  for (const auto& o : theory.observables)
    if (o.ground()) space.observables.push_back(o);
  if (space.actions.empty()) throw CliError{1, "no ground actions to plan with"};
  space.depth = depth;
  space.nesting = nesting;
  try {
    BestPlanResult best = bestPlan(theory, space);
    out << "best plan: " << best.plan.toString() << "\n";
    out << "expected utility: " << rationalToString(best.expectedUtility) << "\n";
  } catch (const UtilityIncompleteError& e) {
    throw CliError{1, std::string("utility incomplete: ") + e.what()};
  }
}

void cmdSimulate(std::ostream& out, const std::string& domainPath,
                 const std::string& planPath, long n, std::uint64_t seed) {
  Theory theory = loadTheory(domainPath);
  Plan plan = loadPlan(planPath);
  requireValid(theory, &plan);
  EvalSession session(theory, maxBranchDepth(plan));
  session.prepare(plan);
  SampleOracle oracle(theory, seed);
  for (long i = 0; i < n; ++i) {
    oracle.startSample(static_cast<std::uint64_t>(i));
    Evaluator eval(session.ground(), &oracle);
    WorldOracle world = [&](const Term& condition, const Term& situation) {
      return eval.truth(Atom{"sense", {condition, situation}});
    };
    Term final = trans(plan, world, s0());
    Rational utility = session.utilityOf(eval, final);
    out << "sample " << i << ": final " << final.toString() << " utility "
        << rationalToString(utility) << " choices {"
        << describe(theory, oracle.drawn()) << "}\n";
  }
}

void cmdImportStrips(std::ostream& out, const std::string& path) {
  auto text = readFile(path);
  if (!text) throw CliError{1, "cannot read file " + path};
  PStripsDomain domain = parsePStrips(*text);
  auto errors = validatePStrips(domain.actions, domain.fluents);
  if (!errors.empty()) {
    std::string all;
    for (const auto& e : errors) all += e + "\n";
    all.pop_back();
    throw CliError{1, all};
  }
  out << printImported(domain);
}

void cmdBenchStrips(std::ostream& out, int maxN) {
  std::vector<SizeRow> rows;
  for (int n = 1; n <= maxN; ++n) {
    auto bench = persistenceBenchmark(n);
    rows.push_back(SizeRow{n, bench.iclMetrics, bench.pstripsMetrics});
  }
  out << sizeReportText(rows);
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"decision-theoretic planning with independent choices"};
  app.require_subcommand(1);

  std::string domainPath, planPath, stripsPath, jsonPath;
  long mcSamples = 0, simSamples = 1;
  std::uint64_t seed = 0;
  bool oracle = false;
  int depth = 1, nesting = 0, horizon = 3, maxN = 4;

  auto* validate = app.add_subcommand("validate", "check a domain file");
  validate->add_option("domain", domainPath)->required();
  validate->add_option("--horizon", horizon);

  auto* eval = app.add_subcommand("eval", "expected utility of a plan");
  eval->add_option("domain", domainPath)->required();
  eval->add_option("plan", planPath)->required();
  eval->add_option("--mc", mcSamples);
  eval->add_option("--seed", seed);
  eval->add_flag("--oracle", oracle);
  eval->add_option("--json", jsonPath);

  auto* best = app.add_subcommand("best-plan", "search the plan space");
  best->add_option("domain", domainPath)->required();
  best->add_option("--depth", depth)->required();
  best->add_option("--nesting", nesting)->required();

  auto* simulate = app.add_subcommand("simulate", "sample execution traces");
  simulate->add_option("domain", domainPath)->required();
  simulate->add_option("plan", planPath)->required();
  simulate->add_option("--n", simSamples)->required();
  simulate->add_option("--seed", seed);

  auto* importStrips = app.add_subcommand("import-strips", "translate to the domain language");
  importStrips->add_option("file", stripsPath)->required();

  auto* benchStrips = app.add_subcommand("bench-strips", "representation size comparison");
  benchStrips->add_option("--max-n", maxN)->required();

  std::vector<std::string> argv = args;
  try {
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) cmdValidate(out, domainPath, horizon);
    else if (eval->parsed())
      cmdEval(out, domainPath, planPath, mcSamples, seed, oracle, jsonPath);
    else if (best->parsed()) cmdBestPlan(out, domainPath, depth, nesting);
    else if (simulate->parsed())
      cmdSimulate(out, domainPath, planPath, simSamples, seed);
    else if (importStrips->parsed()) cmdImportStrips(out, stripsPath);
    else if (benchStrips->parsed()) cmdBenchStrips(out, maxN);
  } catch (const CliError& e) {
    err << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace icl
