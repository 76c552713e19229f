#include "mod4sum/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mod4sum/core.hpp"
#include "mod4sum/evaluate.hpp"
#include "mod4sum/montecarlo.hpp"
#include "mod4sum/noise.hpp"
#include "mod4sum/quantum.hpp"
#include "mod4sum/rational.hpp"
#include "mod4sum/search.hpp"

namespace mod4sum {

namespace {

using nlohmann::json;

json rational_json(const SuccessProbability& p) {
  return {{"num", p.num()}, {"den", p.den()}, {"approx", p.approx()}};
}

std::map<int, SuccessProbability> parse_bound_list(const std::string& text) {
  std::map<int, SuccessProbability> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item{text.data() + pos, comma - pos};
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("bound entries look like N=VALUE");
    }
    int n = 0;
    const auto* first = item.data();
    const auto [ptr, ec] = std::from_chars(first, first + eq, n);
    if (ec != std::errc{} || ptr != first + eq) {
      throw std::invalid_argument("bound entry has a malformed party count");
    }
    if (!out.emplace(n, parse_probability(item.substr(eq + 1))).second) {
      throw std::invalid_argument("duplicate party count in bound list");
    }
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return out;
}

std::string mode_name(SearchMode mode) {
  return mode == SearchMode::Exhaustive ? "exhaustive" : "heuristic";
}

json search_result_json(const SearchResult& r) {
  return {{"mode", mode_name(r.mode)},
          {"optimum", rational_json(r.optimum)},
          {"witness", format_chain(r.witness)},
          {"chains_examined", r.chains_examined}};
}

struct ReportClock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void emit(std::ostream& out, const std::string& command, json inputs, json results,
          const ReportClock& clock) {
  const json report = {{"command", command},
                       {"inputs", std::move(inputs)},
                       {"results", std::move(results)},
                       {"tool_version", std::string(kToolVersion)},
                       {"wall_time_s", clock.seconds()}};
  out << report.dump(2) << "\n";
}

void write_csv(const std::string& path, const std::string& contents) {
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot open CSV path: " + path);
  file << contents;
}

struct SearchArgs {
  int parties = 0;
  std::string mode;
  std::uint64_t budget = 100000;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool allow_large = false;
};

struct EvalArgs {
  int parties = 0;
  std::string chain;
  std::string chain_file;
};

struct VerifyArgs {
  int parties = 0;
};

struct ThresholdArgs {
  std::string pc;
  double t = 1.0;
  double mu = 0.0;
  double s = 1.0;
  double per_plate = -1.0;
  int parties = 0;
  std::string csv;
};

struct MonteCarloArgs {
  std::string kind;
  int parties = 0;
  std::string chain;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double eta = 1.0;
  double t = 1.0;
  double mu = 0.0;
  double s = 1.0;
  int jobs = 0;
};

struct BoundsArgs {
  std::string exact;
  std::string lower;
  std::string csv;
};

int run_search(const SearchArgs& a, std::ostream& out, std::ostream& err,
               const ReportClock& clock) {
  SearchResult result =
      a.mode == "exhaustive"
          ? exhaustive_search(a.parties, {a.jobs, a.allow_large})
          : heuristic_search(a.parties, a.budget, a.seed, a.jobs);
  const json inputs = {{"parties", a.parties},
                       {"mode", a.mode},
                       {"budget", a.mode == "heuristic" ? json(a.budget) : json(nullptr)},
                       {"seed", a.mode == "heuristic" ? json(a.seed) : json(nullptr)},
                       {"jobs", a.jobs},
                       {"allow_large", a.allow_large}};
  emit(out, "search", inputs, search_result_json(result), clock);
  err << "optimum p = " << to_fraction_string(result.optimum) << " ("
      << result.optimum.approx() << ") over " << result.chains_examined
      << " chains\n";
  return 0;
}

int run_eval(const EvalArgs& a, std::ostream& out, std::ostream& err,
             const ReportClock& clock) {
  if (a.chain.empty() == a.chain_file.empty()) {
    throw std::invalid_argument("pass exactly one of --chain and --chain-file");
  }
  std::vector<std::string> texts;
  if (!a.chain.empty()) {
    texts.push_back(a.chain);
  } else {
    std::ifstream file(a.chain_file);
    if (!file) throw std::invalid_argument("cannot open chain file: " + a.chain_file);
    std::string line;
    while (std::getline(file, line)) {
      if (!line.empty()) texts.push_back(line);
    }
    if (texts.empty()) throw std::invalid_argument("chain file is empty");
  }

  json evaluations = json::array();
  for (const std::string& text : texts) {
    const ProtocolChain chain = parse_chain(text);
    if (a.parties != 0 && chain.n_parties() != a.parties) {
      throw std::invalid_argument("chain \"" + text + "\" encodes " +
                                  std::to_string(chain.n_parties()) +
                                  " parties, not the requested " +
                                  std::to_string(a.parties));
    }
    const SuccessProbability p = evaluate_chain_dp(chain);
    evaluations.push_back({{"chain", format_chain(chain)},
                           {"parties", chain.n_parties()},
                           {"probability", rational_json(p)}});
    err << format_chain(chain) << "  p = " << to_fraction_string(p) << " ("
        << p.approx() << ")\n";
  }
  const json inputs = {{"parties", a.parties},
                       {"chain", a.chain.empty() ? json(nullptr) : json(a.chain)},
                       {"chain_file",
                        a.chain_file.empty() ? json(nullptr) : json(a.chain_file)}};
  emit(out, "eval", inputs, {{"evaluations", std::move(evaluations)}}, clock);
  return 0;
}

int run_quantum_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err,
                       const ReportClock& clock) {
  const bool ok = verify_ideal(a.parties);
  const auto tuples = std::uint64_t{1} << (2 * a.parties - 1);
  emit(out, "quantum-verify", {{"parties", a.parties}},
       {{"verified", ok}, {"tuples_checked", tuples}}, clock);
  err << (ok ? "ideal protocol exact on all " : "MISMATCH among ") << tuples
      << " promise-satisfying tuples\n";
  return ok ? 0 : 1;
}

int run_threshold(const ThresholdArgs& a, std::ostream& out, std::ostream& err,
                  const ReportClock& clock) {
  const SuccessProbability pc = parse_probability(a.pc);
  double t = a.t;
  if (a.per_plate >= 0.0) {
    if (a.parties == 0) {
      throw std::invalid_argument("--per-plate needs --parties to fix the chain length");
    }
    t = chain_transmissivity(a.per_plate, a.parties);
  }
  const ThresholdReport report = eta_threshold(pc, t, a.mu, a.s);

  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv.precision(10);
    csv << "parties,t,eta_min,achievable\n";
    if (a.per_plate >= 0.0) {
      for (int n = 3; n <= 8; ++n) {
        const double tn = chain_transmissivity(a.per_plate, n);
        const ThresholdReport row = eta_threshold(pc, tn, a.mu, a.s);
        csv << n << "," << tn << "," << row.eta_min << "," << row.achievable
            << "\n";
      }
    } else {
      csv << (a.parties == 0 ? json(nullptr).dump() : std::to_string(a.parties))
          << "," << t << "," << report.eta_min << "," << report.achievable << "\n";
    }
    write_csv(a.csv, csv.str());
  }

  const json inputs = {
      {"pc", a.pc},
      {"t", a.t},
      {"mu", a.mu},
      {"s", a.s},
      {"per_plate", a.per_plate >= 0.0 ? json(a.per_plate) : json(nullptr)},
      {"parties", a.parties == 0 ? json(nullptr) : json(a.parties)},
      {"csv", a.csv.empty() ? json(nullptr) : json(a.csv)}};
  const json results = {{"p_c", rational_json(report.p_c)}, {"t", report.t},
                        {"mu", report.mu},                  {"s", report.s},
                        {"eta_min", report.eta_min},        {"achievable", report.achievable}};
  emit(out, "threshold", inputs, results, clock);
  err << "eta_min = " << report.eta_min
      << (report.achievable ? "" : " (not achievable)") << "\n";
  return 0;
}

int run_montecarlo(const MonteCarloArgs& a, std::ostream& out, std::ostream& err,
                   const ReportClock& clock) {
  Estimate estimate;
  if (a.kind == "quantum") {
    if (!a.chain.empty()) {
      throw std::invalid_argument("--chain applies only to --kind classical");
    }
    estimate = run_quantum_experiment(a.parties, NoiseParams(a.eta, a.t, a.mu, a.s),
                                      a.trials, a.seed, a.jobs);
  } else {
    if (a.chain.empty()) {
      throw std::invalid_argument("--kind classical needs --chain");
    }
    const ProtocolChain chain = parse_chain(a.chain);
    if (chain.n_parties() != a.parties) {
      throw std::invalid_argument("chain party count disagrees with --parties");
    }
    estimate = run_classical_experiment(chain, a.trials, a.seed, a.jobs);
  }
  const json inputs = {{"kind", a.kind},
                       {"parties", a.parties},
                       {"chain", a.chain.empty() ? json(nullptr) : json(a.chain)},
                       {"trials", a.trials},
                       {"seed", a.seed},
                       {"eta", a.eta},
                       {"t", a.t},
                       {"mu", a.mu},
                       {"s", a.s},
                       {"jobs", a.jobs}};
  const json results = {{"successes", estimate.successes},
                        {"trials", estimate.trials},
                        {"point", estimate.point},
                        {"ci_halfwidth", estimate.ci_halfwidth}};
  emit(out, "montecarlo", inputs, results, clock);
  err << "rate = " << estimate.point << " +- " << estimate.ci_halfwidth
      << " (3 sigma)\n";
  return 0;
}

int run_bounds(const BoundsArgs& a, std::ostream& out, std::ostream& err,
               const ReportClock& clock) {
  const auto exact_at = parse_bound_list(a.exact);
  const auto lower_at = parse_bound_list(a.lower);
  if (exact_at.empty() && lower_at.empty()) {
    throw std::invalid_argument("supply at least one of --exact and --lower");
  }
  const auto combined = combine_bounds(exact_at, lower_at);

  json rows = json::array();
  std::ostringstream csv;
  csv.precision(10);
  csv << "parties,status,lower,upper,lower_approx,upper_approx\n";
  for (const auto& [n, entry] : combined) {
    rows.push_back({{"parties", n},
                    {"exact", entry.exact},
                    {"lower", rational_json(entry.lower)},
                    {"upper", rational_json(entry.upper)}});
    csv << n << "," << (entry.exact ? "exact" : "interval") << ","
        << to_fraction_string(entry.lower) << "," << to_fraction_string(entry.upper)
        << "," << entry.lower.approx() << "," << entry.upper.approx() << "\n";
    err << "N=" << n << ": "
        << (entry.exact ? "p_c = " + to_fraction_string(entry.lower)
                        : "p_c in [" + to_fraction_string(entry.lower) + ", " +
                              to_fraction_string(entry.upper) + "]")
        << "\n";
  }
  if (!a.csv.empty()) write_csv(a.csv, csv.str());

  const json inputs = {{"exact", a.exact.empty() ? json(nullptr) : json(a.exact)},
                       {"lower", a.lower.empty() ? json(nullptr) : json(a.lower)},
                       {"csv", a.csv.empty() ? json(nullptr) : json(a.csv)}};
  emit(out, "bounds", inputs, {{"bounds", std::move(rows)}}, clock);
  return 0;
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  const ReportClock clock;

  CLI::App app{"Exact workbench for the sequential Modulo-4 Sum problem",
               std::string(kToolName)};
  app.require_subcommand(1);

  SearchArgs search_args;
  auto* search = app.add_subcommand(
      "search", "Find the best deterministic chain for N parties");
  search->add_option("--parties", search_args.parties, "number of parties N")
      ->required()
      ->check(CLI::Range(3, 31));
  search->add_option("--mode", search_args.mode, "exhaustive or heuristic")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "heuristic"}));
  search->add_option("--budget", search_args.budget,
                     "random chains to try in heuristic mode");
  search->add_option("--seed", search_args.seed, "heuristic sampling seed");
  search->add_option("--jobs", search_args.jobs, "worker threads (0 = all)");
  search->add_flag("--allow-large", search_args.allow_large,
                   "permit exhaustive search beyond N=5");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate explicit protocol chains");
  eval->add_option("--parties", eval_args.parties,
                   "expected party count (cross-checked against each chain)")
      ->check(CLI::Range(3, 31));
  eval->add_option("--chain", eval_args.chain, "chain text, e.g. 0011|01011010");
  eval->add_option("--chain-file", eval_args.chain_file,
                   "file with one chain per line");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand(
      "quantum-verify", "Check the ideal quantum protocol on every input");
  verify->add_option("--parties", verify_args.parties, "number of parties N")
      ->required()
      ->check(CLI::Range(3, 31));

  ThresholdArgs threshold_args;
  auto* threshold = app.add_subcommand(
      "threshold", "Minimum detection efficiency to beat a classical bound");
  threshold->add_option("--pc", threshold_args.pc,
                        "classical bound, e.g. 5/8 or 0.625")
      ->required();
  threshold->add_option("--t", threshold_args.t, "transmissivity");
  threshold->add_option("--mu", threshold_args.mu, "dark-count fraction");
  threshold->add_option("--s", threshold_args.s, "success rate given detection");
  threshold->add_option("--per-plate", threshold_args.per_plate,
                        "per-element transmissivity; t becomes per-plate^N");
  threshold->add_option("--parties", threshold_args.parties,
                        "chain length for --per-plate")
      ->check(CLI::Range(1, 64));
  threshold->add_option("--csv", threshold_args.csv,
                        "write a threshold table (sweeps N=3..8 with --per-plate)");

  MonteCarloArgs mc_args;
  auto* mc = app.add_subcommand(
      "montecarlo", "Stochastic validation of quantum or classical runs");
  mc->add_option("--kind", mc_args.kind, "quantum or classical")
      ->required()
      ->check(CLI::IsMember({"quantum", "classical"}));
  mc->add_option("--parties", mc_args.parties, "number of parties N")
      ->required()
      ->check(CLI::Range(3, 31));
  mc->add_option("--chain", mc_args.chain, "classical chain to simulate");
  mc->add_option("--trials", mc_args.trials, "trial count")->required();
  mc->add_option("--seed", mc_args.seed, "RNG seed")->required();
  mc->add_option("--eta", mc_args.eta, "detection efficiency");
  mc->add_option("--t", mc_args.t, "transmissivity");
  mc->add_option("--mu", mc_args.mu, "dark-count fraction");
  mc->add_option("--s", mc_args.s, "success rate given detection");
  mc->add_option("--jobs", mc_args.jobs, "worker threads (0 = all)");

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand(
      "bounds", "Combine exhaustive optima and chain lower bounds over N");
  bounds->add_option("--exact", bounds_args.exact,
                     "exhaustive optima as N=RAT[,N=RAT...]");
  bounds->add_option("--lower", bounds_args.lower,
                     "chain lower bounds as N=RAT[,N=RAT...]");
  bounds->add_option("--csv", bounds_args.csv, "write the bound table as CSV");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));

    if (search->parsed()) return run_search(search_args, out, err, clock);
    if (eval->parsed()) return run_eval(eval_args, out, err, clock);
    if (verify->parsed()) return run_quantum_verify(verify_args, out, err, clock);
    if (threshold->parsed()) return run_threshold(threshold_args, out, err, clock);
    if (mc->parsed()) return run_montecarlo(mc_args, out, err, clock);
    if (bounds->parsed()) return run_bounds(bounds_args, out, err, clock);
    err << "no subcommand selected\n";
    return 2;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    err << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mod4sum
