#include "commands.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "experiments.h"
#include "jury/jury.h"

namespace jury::cli {
namespace {

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw Error(ErrorCode::kParseError, "cannot write " + path);
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

struct JerArgs {
  std::string input;
  std::string algorithm = "dp";
};

struct SolveArgs {
  std::string input;
  std::string model = "altrm";
  std::optional<double> budget;
  bool no_pruning = false;
  std::string algorithm = "dp";
  std::string out;
};

struct RankArgs {
  std::string corpus;
  std::string method = "hits";
  std::optional<std::size_t> top_k;
  RankConfig config;
  std::string out;
};

struct GenArgs {
  SynthConfig config;
  std::string out;
};

struct SimulateArgs {
  std::string input;
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
};

struct ExperimentArgs {
  std::string spec;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

int CmdJer(const JerArgs& a, std::ostream& out) {
  const JerAlgorithm algorithm = ParseJerAlgorithm(a.algorithm);
  auto members = ReadJurorCsvFile(a.input);
  if (members.size() % 2 == 0) {
    throw Error(ErrorCode::kEvenSize,
                a.input + " holds " + std::to_string(members.size()) + " jurors; a jury needs an odd count");
  }
  out << FormatProbability(ComputeJer(Jury(std::move(members)), algorithm)) << '\n';
  return kExitOk;
}

int CmdSolve(const SolveArgs& a, std::ostream& out) {
  const CandidatePool pool(ReadJurorCsvFile(a.input));
  SolveResult r = [&] {
    if (a.model == "altrm") {
      if (a.budget) throw Error(ErrorCode::kParseError, "--budget applies only to --model paym");
      return SolveAltrm(pool, {!a.no_pruning, ParseJerAlgorithm(a.algorithm)});
    }
    if (a.model == "paym") {
      if (!a.budget) throw Error(ErrorCode::kParseError, "--model paym requires --budget");
      return SolvePaymGreedy(pool, Budget(*a.budget));
    }
    throw Error(ErrorCode::kParseError, "unknown model '" + a.model + "' (expected altrm or paym)");
  }();
  nlohmann::ordered_json doc = {
      {"model", a.model},
      {"jury", r.jury.ids()},
      {"size", r.jury.size()},
      {"jer", r.jer},
      {"total_cost", r.total_cost},
      {"juries_evaluated", r.juries_evaluated},
      {"juries_pruned", r.juries_pruned},
      {"log_jer", r.log_jer},
  };
  if (a.budget) doc["budget"] = *a.budget;
  Sink sink(a.out, out);
  sink.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

int CmdRank(const RankArgs& a, std::ostream& out) {
  const auto corpus = ReadCorpusFile(a.corpus);
  const auto rows = EstimateUsers(corpus, {ParseRankMethod(a.method), a.config, a.top_k});
  Sink sink(a.out, out);
  WriteUserCsv(sink.stream(), rows);
  return kExitOk;
}

int CmdGenPool(const GenArgs& a, std::ostream& out) {
  const auto pool = GenPool(a.config);
  Sink sink(a.out, out);
  WritePoolCsv(sink.stream(), pool);
  return kExitOk;
}

int CmdSimulate(const SimulateArgs& a, std::ostream& out) {
  const Jury jury(ReadJurorCsvFile(a.input));
  const auto mc = MonteCarloJer(jury, a.trials, a.seed);
  out << "trials,estimate,std_error,jer\n"
      << mc.trials << ',' << FormatProbability(mc.estimate) << ',' << FormatProbability(mc.std_error) << ','
      << FormatProbability(JerDp(jury)) << '\n';
  return kExitOk;
}

int CmdExperiment(const ExperimentArgs& a, std::ostream& out) {
  auto specs = ParseExperimentFile(a.spec);
  for (auto& s : specs) {
    if (a.seed) s.seeds = {*a.seed};
    if (a.threads) s.threads = *a.threads;
    std::filesystem::path path = s.out;
    if (!a.out.empty() && path.is_relative()) {
      std::filesystem::create_directories(a.out);
      path = std::filesystem::path(a.out) / path;
    }
    Sink sink(path.string(), out);
    RunExperiment(s, sink.stream());
    out << ExperimentKindName(s.kind) << " -> " << path.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEvenSize: return kExitEvenSize;
    case ErrorCode::kSizeLimitExceeded: return kExitSizeCap;
    case ErrorCode::kNoAffordableJuror: return kExitInfeasible;
    case ErrorCode::kDegenerateScores:
    case ErrorCode::kEmptyGraph: return kExitDegenerate;
    default: return kExitParse;
  }
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jury selection: error rates, solvers, ranking and experiments", "jurysel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "jurysel 0.1.0");

  JerArgs jer;
  auto* jer_cmd = app.add_subcommand("jer", "Jury error rate of the jurors listed in a CSV");
  jer_cmd->add_option("input", jer.input, "Juror CSV (id,epsilon[,requirement])")->required()->check(CLI::ExistingFile);
  jer_cmd->add_option("-a,--algorithm", jer.algorithm, "naive | dp | cba")->capture_default_str();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Choose the jury with the lowest error rate");
  solve_cmd->add_option("input", solve.input, "Candidate pool CSV")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("-m,--model", solve.model, "altrm | paym")->capture_default_str();
  solve_cmd->add_option("-b,--budget", solve.budget, "Budget for paym");
  solve_cmd->add_flag("--no-pruning", solve.no_pruning, "Disable lower-bound pruning (altrm)");
  solve_cmd->add_option("-a,--algorithm", solve.algorithm, "Evaluator for altrm: dp | cba")->capture_default_str();
  solve_cmd->add_option("-o,--out", solve.out, "Write JSON here instead of stdout");

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Estimate error rates and requirements from a retweet corpus");
  rank_cmd->add_option("corpus", rank.corpus, "NDJSON corpus")->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("-a,--algorithm,--method", rank.method, "hits | pagerank")->capture_default_str();
  rank_cmd->add_option("-k,--top-k", rank.top_k, "Keep the k best-scored users");
  rank_cmd->add_option("--damping", rank.config.damping)->capture_default_str();
  rank_cmd->add_option("--max-iterations", rank.config.max_iterations)->capture_default_str();
  rank_cmd->add_option("--tolerance", rank.config.tolerance)->capture_default_str();
  rank_cmd->add_option("--alpha", rank.config.alpha)->capture_default_str();
  rank_cmd->add_option("--beta", rank.config.beta)->capture_default_str();
  rank_cmd->add_option("-o,--out", rank.out, "Write CSV here instead of stdout");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-pool", "Sample a synthetic candidate pool");
  gen_cmd->add_option("-n,--size", gen.config.pool_size)->capture_default_str();
  gen_cmd->add_option("--epsilon-mean", gen.config.epsilon_mean)->capture_default_str();
  gen_cmd->add_option("--epsilon-stddev", gen.config.epsilon_stddev)->capture_default_str();
  gen_cmd->add_option("--requirement-mean", gen.config.requirement_mean)->capture_default_str();
  gen_cmd->add_option("--requirement-stddev", gen.config.requirement_stddev)->capture_default_str();
  gen_cmd->add_option("-s,--seed", gen.config.seed)->capture_default_str();
  gen_cmd->add_option("-o,--out", gen.out, "Write CSV here instead of stdout");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo estimate of a jury's error rate");
  sim_cmd->add_option("input", sim.input, "Juror CSV")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("-t,--trials", sim.trials)->capture_default_str();
  sim_cmd->add_option("-s,--seed", sim.seed)->capture_default_str();

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run experiment grids from a JSON spec");
  exp_cmd->add_option("spec", exp.spec, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);
  exp_cmd->add_option("-o,--out", exp.out, "Directory for relative output paths");
  exp_cmd->add_option("-s,--seed", exp.seed, "Replace every seed list with this seed");
  exp_cmd->add_option("--threads", exp.threads, "Worker threads per experiment");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*jer_cmd) return CmdJer(jer, out);
    if (*solve_cmd) return CmdSolve(solve, out);
    if (*rank_cmd) return CmdRank(rank, out);
    if (*gen_cmd) return CmdGenPool(gen, out);
    if (*sim_cmd) return CmdSimulate(sim, out);
    if (*exp_cmd) return CmdExperiment(exp, out);
  } catch (const Error& e) {
    err << "jurysel: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "jurysel: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitParse;
}

}  // namespace jury::cli
