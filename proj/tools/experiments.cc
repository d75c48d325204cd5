#include "experiments.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "jury/error.h"
#include "jury/io.h"
#include "jury/solver.h"
#include "jury/synth.h"

namespace jury::cli {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& msg) { throw Error(ErrorCode::kParseError, "experiment spec: " + msg); }

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// List, scalar, or {"from","to","step"}.
std::vector<double> NumberGrid(const json& node, const std::string& key) {
  if (node.is_number()) return {node.get<double>()};
  if (node.is_array()) {
    std::vector<double> out;
    for (const auto& v : node) {
      if (!v.is_number()) Fail(key + " must hold numbers");
      out.push_back(v.get<double>());
    }
    if (out.empty()) Fail(key + " is empty");
    return out;
  }
  if (node.is_object()) {
    if (!node.contains("from") || !node.contains("to") || !node.contains("step")) {
      Fail(key + " range needs from, to and step");
    }
    const double from = node["from"].get<double>();
    const double to = node["to"].get<double>();
    const double step = node["step"].get<double>();
    if (!(step > 0.0) || to < from) Fail(key + " range must have step > 0 and to >= from");
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(std::round((from + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
  }
  Fail(key + " must be a number, list or range");
}

template <class T>
std::vector<T> CountGrid(const json& node, const std::string& key) {
  std::vector<T> out;
  for (double v : NumberGrid(node, key)) {
    if (v < 0 || v != std::floor(v)) Fail(key + " must hold non-negative integers");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "kind", "seeds", "pool_sizes", "epsilon_means", "epsilon_stddevs", "requirement_means",
      "requirement_stddevs", "budgets", "pruning", "corpus", "methods", "top_k", "budget_fractions",
      "damping", "max_iterations", "tolerance", "alpha", "beta", "out", "threads"};
  return keys;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
// failure once all workers stop.
void ParallelFor(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

struct PoolPoint {
  std::uint64_t seed;
  std::size_t pool_size;
  double eps_mean, eps_sd, req_mean, req_sd;

  SynthConfig Config() const { return {pool_size, eps_mean, eps_sd, req_mean, req_sd, seed}; }
  std::string Columns() const {
    return std::to_string(seed) + "," + std::to_string(pool_size) + "," + Num(eps_mean) + "," + Num(eps_sd);
  }
  std::string RequirementColumns() const { return Num(req_mean) + "," + Num(req_sd); }
};

std::vector<PoolPoint> PoolGrid(const ExperimentSpec& s) {
  std::vector<PoolPoint> out;
  for (auto seed : s.seeds)
    for (auto n : s.pool_sizes)
      for (double em : s.epsilon_means)
        for (double es : s.epsilon_stddevs)
          for (double rm : s.requirement_means)
            for (double rs : s.requirement_stddevs) out.push_back({seed, n, em, es, rm, rs});
  return out;
}

std::vector<std::string> RunGrid(std::size_t n, unsigned threads,
                                 const std::function<std::string(std::size_t)>& row) {
  std::vector<std::string> rows(n);
  ParallelFor(n, threads, [&](std::size_t i) { rows[i] = row(i); });
  return rows;
}

std::optional<SolveResult> TrySolve(const std::function<SolveResult()>& solve) {
  try {
    return solve();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNoAffordableJuror) return std::nullopt;
    throw;
  }
}

std::vector<std::string> AltrmTraits(const ExperimentSpec& s) {
  const auto grid = PoolGrid(s);
  return RunGrid(grid.size(), s.threads, [&](std::size_t i) {
    const auto r = SolveAltrm(GenPool(grid[i].Config()));
    return grid[i].Columns() + "," + std::to_string(r.jury.size()) + "," + FormatProbability(r.jer) + "," +
           Num(r.log_jer / std::log(10.0));
  });
}

std::vector<std::string> AltrmTiming(const ExperimentSpec& s) {
  std::vector<std::pair<PoolPoint, bool>> grid;
  for (const auto& p : PoolGrid(s))
    for (bool prune : s.pruning) grid.emplace_back(p, prune);
  // Sequential so that points do not compete for cores.
  return RunGrid(grid.size(), 1, [&](std::size_t i) {
    const auto& [point, prune] = grid[i];
    const auto pool = GenPool(point.Config());
    const auto start = std::chrono::steady_clock::now();
    const auto r = SolveAltrm(pool, {prune, JerAlgorithm::kCba});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return point.Columns() + "," + (prune ? "true" : "false") + "," + std::to_string(r.jury.size()) + "," +
           std::to_string(r.juries_evaluated) + "," + std::to_string(r.juries_pruned) + "," + Num(secs);
  });
}

std::vector<std::string> PaymTraits(const ExperimentSpec& s) {
  std::vector<std::pair<PoolPoint, double>> grid;
  for (const auto& p : PoolGrid(s))
    for (double b : s.budgets) grid.emplace_back(p, b);
  return RunGrid(grid.size(), s.threads, [&](std::size_t i) {
    const auto& [point, b] = grid[i];
    const auto pool = GenPool(point.Config());
    const auto r = TrySolve([&] { return SolvePaymGreedy(pool, Budget(b)); });
    std::string row = point.Columns() + "," + point.RequirementColumns() + "," + Num(b) + ",";
    if (!r) return row + ",,,";
    return row + std::to_string(r->jury.size()) + "," + FormatProbability(r->jer) + "," +
           Num(r->log_jer / std::log(10.0)) + "," + Num(r->total_cost);
  });
}

std::string ComparisonColumns(const std::optional<SolveResult>& g, const std::optional<SolveResult>& t) {
  if (!g || !t) return ",,,,,,,";
  const auto c = CompareResults(*g, *t);
  return std::to_string(g->jury.size()) + "," + std::to_string(t->jury.size()) + "," + FormatProbability(g->jer) +
         "," + FormatProbability(t->jer) + "," + Num(g->total_cost) + "," + Num(t->total_cost) + "," +
         Num(c.precision) + "," + Num(c.recall);
}

std::vector<std::string> PaymEffectiveness(const ExperimentSpec& s) {
  std::vector<std::pair<PoolPoint, double>> grid;
  for (const auto& p : PoolGrid(s))
    for (double b : s.budgets) grid.emplace_back(p, b);
  return RunGrid(grid.size(), s.threads, [&](std::size_t i) {
    const auto& [point, b] = grid[i];
    const auto pool = GenPool(point.Config());
    const auto g = TrySolve([&] { return SolvePaymGreedy(pool, Budget(b)); });
    const auto t = TrySolve([&] { return SolveOracle(pool, Budget(b)); });
    return point.Columns() + "," + point.RequirementColumns() + "," + Num(b) + "," + ComparisonColumns(g, t);
  });
}

std::vector<std::string> RankAndSelect(const ExperimentSpec& s) {
  const auto corpus = ReadCorpusFile(s.corpus);
  std::vector<std::pair<RankMethod, CandidatePool>> pools;
  for (RankMethod m : s.methods) {
    EstimateOptions opts{m, s.rank_config, s.top_k};
    pools.emplace_back(m, ToCandidatePool(EstimateUsers(corpus, opts)));
  }
  std::vector<std::pair<std::size_t, double>> grid;
  for (std::size_t p = 0; p < pools.size(); ++p)
    for (double f : s.budget_fractions) grid.emplace_back(p, f);
  return RunGrid(grid.size(), s.threads, [&](std::size_t i) {
    const auto& [m, pool] = pools[grid[i].first];
    // M: mean requirement times candidate count.
    double total = 0.0;
    for (const auto& j : pool.candidates()) total += j.requirement;
    const double b = grid[i].second * total;
    const auto g = TrySolve([&] { return SolvePaymGreedy(pool, Budget(b)); });
    const auto t = TrySolve([&] { return SolveOracle(pool, Budget(b)); });
    return std::string(RankMethodName(m)) + "," + std::to_string(pool.size()) + "," + Num(grid[i].second) + "," +
           Num(b) + "," + ComparisonColumns(g, t);
  });
}

const char* Header(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kAltrmTraits:
      return "seed,pool_size,epsilon_mean,epsilon_stddev,optimal_jury_size,jer,log10_jer";
    case ExperimentKind::kAltrmTiming:
      return "seed,pool_size,epsilon_mean,epsilon_stddev,pruning,optimal_jury_size,juries_evaluated,"
             "juries_pruned,seconds";
    case ExperimentKind::kPaymTraits:
      return "seed,pool_size,epsilon_mean,epsilon_stddev,requirement_mean,requirement_stddev,budget,jury_size,"
             "jer,log10_jer,total_cost";
    case ExperimentKind::kPaymEffectiveness:
      return "seed,pool_size,epsilon_mean,epsilon_stddev,requirement_mean,requirement_stddev,budget,"
             "size_greedy,size_oracle,jer_greedy,jer_oracle,cost_greedy,cost_oracle,precision,recall";
    case ExperimentKind::kRankAndSelect:
      return "method,candidates,budget_fraction,budget,size_greedy,size_oracle,jer_greedy,jer_oracle,"
             "cost_greedy,cost_oracle,precision,recall";
  }
  return "";
}

}  // namespace

std::string_view ExperimentKindName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kAltrmTraits: return "altrm-traits";
    case ExperimentKind::kAltrmTiming: return "altrm-timing";
    case ExperimentKind::kPaymTraits: return "paym-traits";
    case ExperimentKind::kPaymEffectiveness: return "paym-effectiveness";
    case ExperimentKind::kRankAndSelect: return "rank-and-select";
  }
  return "unknown";
}

ExperimentKind ParseExperimentKind(std::string_view name) {
  for (auto k : {ExperimentKind::kAltrmTraits, ExperimentKind::kAltrmTiming, ExperimentKind::kPaymTraits,
                 ExperimentKind::kPaymEffectiveness, ExperimentKind::kRankAndSelect}) {
    if (ExperimentKindName(k) == name) return k;
  }
  Fail("unknown kind '" + std::string(name) + "'");
}

ExperimentSpec ParseExperimentSpec(const json& node, const std::string& base_dir) {
  if (!node.is_object()) Fail("experiment must be a JSON object");
  for (const auto& [key, _] : node.items()) {
    if (!KnownKeys().count(key)) Fail("unknown key '" + key + "'");
  }
  if (!node.contains("kind") || !node["kind"].is_string()) Fail("missing string 'kind'");

  ExperimentSpec s;
  try {
    s.kind = ParseExperimentKind(node["kind"].get<std::string>());
    const std::string kind(ExperimentKindName(s.kind));
    const auto need = [&](const char* key) {
      if (!node.contains(key)) Fail(kind + " requires '" + key + "'");
      return node[key];
    };

    if (node.contains("seeds")) s.seeds = CountGrid<std::uint64_t>(node["seeds"], "seeds");
    if (node.contains("out")) s.out = node["out"].get<std::string>();
    if (node.contains("threads")) s.threads = node["threads"].get<unsigned>();

    if (s.kind == ExperimentKind::kRankAndSelect) {
      std::filesystem::path corpus = need("corpus").get<std::string>();
      if (corpus.is_relative() && !base_dir.empty()) corpus = std::filesystem::path(base_dir) / corpus;
      s.corpus = corpus.string();
      if (node.contains("methods")) {
        s.methods.clear();
        for (const auto& m : node["methods"]) s.methods.push_back(ParseRankMethod(m.get<std::string>()));
        if (s.methods.empty()) Fail("methods is empty");
      }
      if (node.contains("top_k")) s.top_k = node["top_k"].get<std::size_t>();
      if (s.top_k == 0 || s.top_k > kOracleMaxPoolSize) {
        Fail("top_k must be in 1.." + std::to_string(kOracleMaxPoolSize) + " for the exact baseline");
      }
      if (node.contains("budget_fractions")) s.budget_fractions = NumberGrid(node["budget_fractions"], "budget_fractions");
      auto& rc = s.rank_config;
      if (node.contains("damping")) rc.damping = node["damping"].get<double>();
      if (node.contains("max_iterations")) rc.max_iterations = node["max_iterations"].get<int>();
      if (node.contains("tolerance")) rc.tolerance = node["tolerance"].get<double>();
      if (node.contains("alpha")) rc.alpha = node["alpha"].get<double>();
      if (node.contains("beta")) rc.beta = node["beta"].get<double>();
      rc.Validate();
    } else {
      s.pool_sizes = CountGrid<std::size_t>(need("pool_sizes"), "pool_sizes");
      s.epsilon_means = NumberGrid(need("epsilon_means"), "epsilon_means");
      s.epsilon_stddevs = NumberGrid(need("epsilon_stddevs"), "epsilon_stddevs");
      if (node.contains("requirement_means")) {
        s.requirement_means = NumberGrid(node["requirement_means"], "requirement_means");
      }
      if (node.contains("requirement_stddevs")) {
        s.requirement_stddevs = NumberGrid(node["requirement_stddevs"], "requirement_stddevs");
      }
      if (s.kind == ExperimentKind::kPaymTraits || s.kind == ExperimentKind::kPaymEffectiveness) {
        s.budgets = NumberGrid(need("budgets"), "budgets");
      }
      if (s.kind == ExperimentKind::kAltrmTiming && node.contains("pruning")) {
        s.pruning.clear();
        for (const auto& p : node["pruning"]) s.pruning.push_back(p.get<bool>());
        if (s.pruning.empty()) Fail("pruning is empty");
      }
      if (s.kind == ExperimentKind::kPaymEffectiveness) {
        for (auto n : s.pool_sizes) {
          if (n > kOracleMaxPoolSize) {
            Fail("paym-effectiveness pool size " + std::to_string(n) + " exceeds the exact-baseline cap of " +
                 std::to_string(kOracleMaxPoolSize));
          }
        }
      }
      for (const auto& p : PoolGrid(s)) p.Config().Validate();
    }
  } catch (const json::exception& e) {
    Fail(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    Fail(e.what());
  }
  if (s.out.empty()) s.out = std::string(ExperimentKindName(s.kind)) + ".csv";
  return s;
}

std::vector<ExperimentSpec> ParseExperimentFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    Fail(path + ": " + e.what());
  }
  const std::string base = std::filesystem::path(path).parent_path().string();
  std::vector<ExperimentSpec> out;
  if (doc.is_array()) {
    for (const auto& node : doc) out.push_back(ParseExperimentSpec(node, base));
    if (out.empty()) Fail(path + " holds no experiments");
  } else {
    out.push_back(ParseExperimentSpec(doc, base));
  }
  return out;
}

void RunExperiment(const ExperimentSpec& spec, std::ostream& csv) {
  std::vector<std::string> rows;
  switch (spec.kind) {
    case ExperimentKind::kAltrmTraits: rows = AltrmTraits(spec); break;
    case ExperimentKind::kAltrmTiming: rows = AltrmTiming(spec); break;
    case ExperimentKind::kPaymTraits: rows = PaymTraits(spec); break;
    case ExperimentKind::kPaymEffectiveness: rows = PaymEffectiveness(spec); break;
    case ExperimentKind::kRankAndSelect: rows = RankAndSelect(spec); break;
  }
  csv << Header(spec.kind) << '\n';
  for (const auto& r : rows) csv << r << '\n';
}

}  // namespace jury::cli
