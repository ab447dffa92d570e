// brgames: classify finite games under round-robin best-response play and
// check the exact frequency formulas against enumeration, spanning-tree
// counts, and Monte Carlo sampling.
//
// Exit codes: 0 success, 2 usage, 3 data error (bad file / degenerate game),
// 4 size guard exceeded.

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "brgames/br_graph.hpp"
#include "brgames/closed_form.hpp"
#include "brgames/ensemble.hpp"
#include "brgames/errors.hpp"
#include "brgames/game.hpp"
#include "brgames/numeric.hpp"
#include "brgames/persist.hpp"
#include "brgames/spectral.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsageError = 2;
constexpr int kDataError = 3;
constexpr int kSizeGuardError = 4;

std::string fixed6(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return std::move(out).str();
}

std::string node_name(brg::NodeId v, int n, int m) {
  return "p" + std::to_string(brg::node_player(v, n, m)) + ":e" +
         std::to_string(brg::node_env(v, n, m));
}

std::string profile_text(const brg::StrategyProfile& p,
                         const std::vector<std::vector<std::string>>& labels) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.s.size(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(p.s[i]);
    if (i < labels.size() && p.s[i] < static_cast<int>(labels[i].size())) {
      out += "=" + labels[i][static_cast<std::size_t>(p.s[i])];
    }
  }
  return out + ")";
}

void print_progress(std::uint64_t done, std::uint64_t total) {
  std::cerr << "\r" << done << "/" << total << (done == total ? "\n" : "") << std::flush;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string path;
  std::vector<int> order;
  std::string dot_path;
  double tie_tol = 0.0;
  bool json = false;
};

int run_analyze(const AnalyzeArgs& args) {
  const brg::GameDocument doc = brg::read_game_document(args.path);
  const brg::Game game = doc.to_game();
  const brg::BestResponseMap brm = brg::best_response_map(game, args.tie_tol);
  const std::vector<brg::StrategyProfile> psne = brg::enumerate_psne(game, args.tie_tol);
  const brg::Classification cls = brg::classify(brm, args.order);
  const brg::FunctionalGraph fg = brg::build_functional_graph(brm, args.order);

  if (!args.dot_path.empty()) brg::write_dot(fg, args.dot_path);

  if (args.json) {
    ordered_json j;
    j["file"] = args.path;
    j["n"] = game.players();
    j["m"] = game.strategies();
    auto& eq = j["psne"] = ordered_json::array();
    for (const auto& p : psne) eq.push_back(p.s);
    j["classification"] = ordered_json::parse(brg::classification_json(cls));
    if (!args.order.empty()) j["order"] = args.order;
    if (!args.dot_path.empty()) j["dot"] = args.dot_path;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  std::cout << "game: " << args.path << "\n"
            << "players: " << game.players() << ", strategies each: " << game.strategies()
            << "\n";
  if (!args.order.empty()) {
    std::cout << "turn order:";
    for (int p : args.order) std::cout << " " << p;
    std::cout << "\n";
  }
  std::cout << "equilibria: " << psne.size() << "\n";
  for (const auto& p : psne) std::cout << "  " << profile_text(p, doc.strategy_labels) << "\n";
  std::cout << "classification: type " << brg::to_string(cls.game_type) << " ("
            << (cls.convergent ? "convergent" : "non-convergent") << ", " << cls.psne_count
            << (cls.psne_count == 1 ? " equilibrium" : " equilibria") << ")\n"
            << "cycles: " << cls.cycles.size() << "\n";
  for (const auto& cycle : cls.cycles) {
    std::cout << "  length " << cycle.length() << ":";
    for (std::size_t i = 0; i < cycle.nodes.size(); ++i) {
      std::cout << (i == 0 ? " " : " -> ") << node_name(cycle.nodes[i], fg.n, fg.m);
    }
    std::cout << "\n";
  }
  if (!args.dot_path.empty()) std::cout << "dot written to " << args.dot_path << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// exact

struct ExactArgs {
  int n = 0;
  int m = 0;
  int k = -1;
  bool json = false;
};

int run_exact(const ExactArgs& args) {
  if (args.k >= 0 && args.n != 2) {
    std::cerr << "error: --k applies to 2-player games only (n = " << args.n << ")\n";
    return kUsageError;
  }
  const brg::Rational v1 = brg::p1(args.n, args.m);

  if (args.json) {
    ordered_json j;
    j["n"] = args.n;
    j["m"] = args.m;
    j["p1"] = {{"exact", brg::to_fraction_string(v1)}, {"value", brg::to_decimal_string(v1)}};
    if (args.k >= 0) {
      const brg::Rational vk = brg::p2_k(args.m, args.k);
      j["k"] = args.k;
      j["p2_k"] = {{"exact", brg::to_fraction_string(vk)},
                   {"value", brg::to_decimal_string(vk)}};
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  std::cout << "p1(" << args.n << ", " << args.m << ") = " << brg::to_fraction_string(v1)
            << " = " << brg::to_decimal_string(v1) << "\n";
  if (args.k >= 0) {
    const brg::Rational vk = brg::p2_k(args.m, args.k);
    std::cout << "p2_k(m=" << args.m << ", k=" << args.k
              << ") = " << brg::to_fraction_string(vk) << " = " << brg::to_decimal_string(vk)
              << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  int n = 0;
  int m = 0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 7;
  double z = 3.0;
  bool uniform = false;
  unsigned threads = 0;
  bool progress = false;
  bool json = false;
};

struct ExactCheck {
  std::string name;
  brg::Rational exact;
  std::uint64_t successes = 0;
};

std::vector<ExactCheck> exact_checks(const brg::EnsembleEstimate& est) {
  std::vector<ExactCheck> checks;
  checks.push_back({"type A = p1", brg::p1(est.n, est.m), est.type_count(brg::GameType::A)});
  if (est.n == 2) {
    checks.push_back(
        {"convergent", brg::convergent_freq_2p(est.m), est.type_count(brg::GameType::A) +
                                                           est.type_count(brg::GameType::B)});
    checks.push_back({"type B", brg::type_b_freq_2p(est.m), est.type_count(brg::GameType::B)});
    for (int k = 2; k <= est.m; ++k) {
      if (est.convergent_count(k) == 0 && k > 4) break;  // trailing zero-count rows add noise
      checks.push_back({"k=" + std::to_string(k) + " convergent", brg::p2_k(est.m, k),
                        est.convergent_count(k)});
    }
  }
  return checks;
}

int run_sample(const SampleArgs& args) {
  brg::SampleOptions opts;
  opts.trials = args.trials;
  opts.seed = args.seed;
  opts.z = args.z;
  opts.dist = args.uniform ? brg::PayoffDist::kUniform : brg::PayoffDist::kNormal;
  opts.threads = args.threads;
  if (args.progress) opts.progress = print_progress;
  const brg::EnsembleEstimate est = brg::sample_ensemble(args.n, args.m, opts);
  const std::vector<ExactCheck> checks = exact_checks(est);

  if (args.json) {
    ordered_json j = ordered_json::parse(brg::estimate_json(est));
    auto& rows = j["exact_checks"] = ordered_json::array();
    for (const auto& c : checks) {
      const brg::WilsonInterval w = est.interval(c.successes);
      const double exact = c.exact.convert_to<double>();
      ordered_json row;
      row["name"] = c.name;
      row["exact"] = brg::to_fraction_string(c.exact);
      row["exact_value"] = brg::to_decimal_string(c.exact);
      row["estimate"] = est.frequency(c.successes);
      row["within_interval"] = (w.lo <= exact && exact <= w.hi);
      rows.push_back(std::move(row));
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  std::cout << "n: " << est.n << ", m: " << est.m << ", trials: " << est.trials
            << ", seed: " << est.seed << ", z: " << est.z << ", distribution: "
            << (est.dist == brg::PayoffDist::kNormal ? "normal" : "uniform") << "\n"
            << "degenerate redraws: " << est.degenerate_redraws << "\n";
  for (const auto& [key, count] : est.counts) {
    const brg::WilsonInterval w = est.interval(count);
    std::cout << "  type " << brg::to_string(key.first) << ", " << key.second
              << " equilibria: " << count << "  freq " << fixed6(est.frequency(count))
              << "  wilson [" << fixed6(w.lo) << ", " << fixed6(w.hi) << "]\n";
  }
  std::cout << "exact checks:\n";
  for (const auto& c : checks) {
    const brg::WilsonInterval w = est.interval(c.successes);
    const double exact = c.exact.convert_to<double>();
    std::cout << "  " << c.name << " = " << brg::to_fraction_string(c.exact) << " = "
              << brg::to_decimal_string(c.exact) << ": estimate "
              << fixed6(est.frequency(c.successes)) << ", within interval: "
              << ((w.lo <= exact && exact <= w.hi) ? "yes" : "NO") << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// enumerate

struct EnumerateArgs {
  int n = 0;
  int m = 0;
  std::uint64_t cap = std::uint64_t{1} << 26;
  unsigned threads = 0;
  bool progress = false;
  bool json = false;
};

int run_enumerate(const EnumerateArgs& args) {
  brg::CensusOptions opts;
  opts.cap = args.cap;
  opts.threads = args.threads;
  if (args.progress) opts.progress = print_progress;
  const brg::ExactCensus census = brg::enumerate_all_configurations(args.n, args.m, opts);

  if (args.json) {
    std::cout << brg::census_json(census);
    return kOk;
  }

  std::cout << "configurations: " << census.total.str() << " (nodes: "
            << static_cast<std::uint64_t>(args.n) * brg::env_count(args.n, args.m)
            << ", choices per node: " << args.m << ")\n";
  for (const auto& [key, count] : census.counts) {
    const brg::Rational f(count, census.total);
    std::cout << "  " << (key.first ? "convergent" : "non-convergent") << ", " << key.second
              << " equilibria: " << count.str() << "  (" << brg::to_fraction_string(f) << " = "
              << brg::to_decimal_string(f) << ")\n";
  }
  const brg::BigInt conv = census.convergent_total();
  std::cout << "convergent total: " << conv.str() << "\n"
            << "non-convergent total: " << brg::BigInt(census.total - conv).str() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// kirchhoff

struct KirchhoffArgs {
  int n = 0;
  int m = 0;
  std::uint64_t guard = brg::kDefaultNodeGuard;
  bool json = false;
};

int run_kirchhoff(const KirchhoffArgs& args) {
  const brg::FullGraph full = brg::build_full_graph(args.n, args.m, args.guard);
  brg::StrategyProfile anchor;
  anchor.s.assign(static_cast<std::size_t>(args.n), 0);
  const brg::BigInt trees = brg::spanning_tree_count(brg::condense_psne(full, anchor));
  const brg::Rational via_trees = brg::type_a_frequency_via_kirchhoff(args.n, args.m, args.guard);
  const brg::Rational closed = brg::p1(args.n, args.m);
  const bool equal = via_trees == closed;

  if (args.json) {
    ordered_json j;
    j["n"] = args.n;
    j["m"] = args.m;
    j["spanning_trees"] = trees.str();
    j["p1_via_trees"] = {{"exact", brg::to_fraction_string(via_trees)},
                         {"value", brg::to_decimal_string(via_trees)}};
    j["p1_closed_form"] = {{"exact", brg::to_fraction_string(closed)},
                           {"value", brg::to_decimal_string(closed)}};
    j["equal"] = equal;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  std::cout << "spanning trees toward the equilibrium sink: " << trees.str() << "\n"
            << "p1 via tree count: " << brg::to_fraction_string(via_trees) << " = "
            << brg::to_decimal_string(via_trees) << "\n"
            << "p1 closed form:    " << brg::to_fraction_string(closed) << " = "
            << brg::to_decimal_string(closed) << "\n"
            << "equal: " << (equal ? "true" : "false") << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// figures

struct FiguresArgs {
  std::string fig = "all";
  std::string out_dir = ".";
  int n_lo = 2, n_hi = 5;
  int m_lo = 2, m_hi = -1;  // -1: per-figure default
  int k_lo = 1, k_hi = 10;
  bool json = false;
};

int run_figures(const FiguresArgs& args) {
  std::filesystem::create_directories(args.out_dir);
  std::vector<brg::FigureSeries> series;
  if (args.fig == "2" || args.fig == "fig2" || args.fig == "all") {
    series.push_back(brg::figure_unique_equilibrium(args.n_lo, args.n_hi, args.m_lo,
                                                    args.m_hi < 0 ? 100 : args.m_hi));
  }
  if (args.fig == "3" || args.fig == "fig3" || args.fig == "all") {
    series.push_back(brg::figure_equilibrium_counts(false, args.m_lo,
                                                    args.m_hi < 0 ? 50 : args.m_hi, args.k_lo,
                                                    args.k_hi));
  }
  if (args.fig == "4" || args.fig == "fig4" || args.fig == "all") {
    series.push_back(brg::figure_equilibrium_counts(true, args.m_lo,
                                                    args.m_hi < 0 ? 50 : args.m_hi, args.k_lo,
                                                    args.k_hi));
  }

  ordered_json report = ordered_json::array();
  for (const auto& s : series) {
    const std::string base = args.out_dir + "/" + s.id;
    brg::write_figure_csv(s, base + ".csv");
    brg::write_figure_json(s, base + ".json");
    if (args.json) {
      report.push_back({{"id", s.id},
                        {"rows", s.rows.size()},
                        {"csv", base + ".csv"},
                        {"json", base + ".json"}});
    } else {
      std::cout << s.id << ": " << s.rows.size() << " rows -> " << base << ".csv, " << base
                << ".json\n";
    }
  }
  if (args.json) std::cout << report.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// crossover

int run_crossover(bool json) {
  const int m_star = brg::crossover_m();
  const auto row = [](int m) {
    return std::pair<brg::Rational, brg::Rational>(brg::p1(2, m), brg::type_b_freq_2p(m));
  };
  const auto [a9, b9] = row(9);
  const auto [a10, b10] = row(10);

  if (json) {
    ordered_json j;
    j["crossover_m"] = m_star;
    auto& rows = j["comparisons"] = ordered_json::array();
    for (const auto& [m, a, b] : {std::tuple{9, a9, b9}, std::tuple{10, a10, b10}}) {
      ordered_json r;
      r["m"] = m;
      r["type_a"] = {{"exact", brg::to_fraction_string(a)}, {"value", brg::to_decimal_string(a)}};
      r["type_b"] = {{"exact", brg::to_fraction_string(b)}, {"value", brg::to_decimal_string(b)}};
      r["more_common"] = a > b ? "A" : "B";
      rows.push_back(std::move(r));
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  std::cout << "multi-equilibrium convergent games overtake unique-equilibrium games at m = "
            << m_star << "\n"
            << "  m=9:  type A " << brg::to_decimal_string(a9) << " > type B "
            << brg::to_decimal_string(b9) << "\n"
            << "  m=10: type A " << brg::to_decimal_string(a10) << " < type B "
            << brg::to_decimal_string(b10) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classify finite games under round-robin best-response play and evaluate "
               "exact equilibrium-frequency formulas"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "brgames 0.1.0");

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "classify a game file");
  analyze->add_option("game", analyze_args.path, "game document (JSON)")->required();
  analyze->add_option("--order", analyze_args.order, "turn order, e.g. 1,2,0")->delimiter(',');
  analyze->add_option("--dot", analyze_args.dot_path, "write the play graph in DOT form");
  analyze->add_option("--tie-tol", analyze_args.tie_tol, "treat payoffs within this distance as tied")
      ->check(CLI::NonNegativeNumber);
  analyze->add_flag("--json", analyze_args.json, "machine-readable output");

  ExactArgs exact_args;
  CLI::App* exact = app.add_subcommand("exact", "evaluate the closed-form frequencies");
  exact->add_option("n", exact_args.n, "players")->required()->check(CLI::Range(2, 1000000));
  exact->add_option("m", exact_args.m, "strategies per player")
      ->required()
      ->check(CLI::Range(2, 1000000));
  exact->add_option("--k", exact_args.k, "also evaluate the k-equilibrium frequency (n=2 only)")
      ->check(CLI::Range(1, 1000000));
  exact->add_flag("--json", exact_args.json, "machine-readable output");

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand("sample", "Monte Carlo classification of random games");
  sample->add_option("n", sample_args.n, "players")->required()->check(CLI::Range(2, 16));
  sample->add_option("m", sample_args.m, "strategies per player")
      ->required()
      ->check(CLI::Range(2, 10000));
  sample->add_option("--trials", sample_args.trials, "number of games to draw")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  sample->add_option("--seed", sample_args.seed, "stream seed");
  sample->add_option("--z", sample_args.z, "interval critical value")
      ->check(CLI::PositiveNumber);
  sample->add_flag("--uniform", sample_args.uniform, "draw uniform(0,1) payoffs instead of normal");
  sample->add_option("--threads", sample_args.threads, "worker threads (0 = auto)");
  sample->add_flag("--progress", sample_args.progress, "progress meter on stderr");
  sample->add_flag("--json", sample_args.json, "machine-readable output");

  EnumerateArgs enumerate_args;
  CLI::App* enumerate = app.add_subcommand("enumerate",
                                           "exact census of all best-response configurations");
  enumerate->add_option("n", enumerate_args.n, "players")->required()->check(CLI::Range(2, 16));
  enumerate->add_option("m", enumerate_args.m, "strategies per player")
      ->required()
      ->check(CLI::Range(2, 10000));
  enumerate->add_option("--cap", enumerate_args.cap, "largest configuration count to accept")
      ->envname("BRGAMES_ENUM_CAP");
  enumerate->add_option("--threads", enumerate_args.threads, "worker threads (0 = auto)");
  enumerate->add_flag("--progress", enumerate_args.progress, "progress meter on stderr");
  enumerate->add_flag("--json", enumerate_args.json, "machine-readable output");

  KirchhoffArgs kirchhoff_args;
  CLI::App* kirchhoff = app.add_subcommand(
      "kirchhoff", "recompute the unique-equilibrium frequency by counting spanning trees");
  kirchhoff->add_option("n", kirchhoff_args.n, "players")->required()->check(CLI::Range(2, 16));
  kirchhoff->add_option("m", kirchhoff_args.m, "strategies per player")
      ->required()
      ->check(CLI::Range(2, 10000));
  kirchhoff->add_option("--guard", kirchhoff_args.guard, "largest node count to accept");
  kirchhoff->add_flag("--json", kirchhoff_args.json, "machine-readable output");

  FiguresArgs figures_args;
  CLI::App* figures = app.add_subcommand("figures", "emit the exact data series as CSV and JSON");
  figures->add_option("--fig", figures_args.fig, "which series: 2, 3, 4, or all")
      ->check(CLI::IsMember({"2", "3", "4", "fig2", "fig3", "fig4", "all"}));
  figures->add_option("--out", figures_args.out_dir, "output directory (created if missing)");
  figures->add_option("--n-lo", figures_args.n_lo, "fig2: smallest player count");
  figures->add_option("--n-hi", figures_args.n_hi, "fig2: largest player count");
  figures->add_option("--m-lo", figures_args.m_lo, "smallest strategy count");
  figures->add_option("--m-hi", figures_args.m_hi, "largest strategy count");
  figures->add_option("--k-lo", figures_args.k_lo, "fig3/4: smallest equilibrium count");
  figures->add_option("--k-hi", figures_args.k_hi, "fig3/4: largest equilibrium count");
  figures->add_flag("--json", figures_args.json, "machine-readable output");

  bool crossover_json = false;
  CLI::App* crossover = app.add_subcommand(
      "crossover", "where multi-equilibrium convergent games overtake unique-equilibrium ones");
  crossover->add_flag("--json", crossover_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (exact->parsed()) return run_exact(exact_args);
    if (sample->parsed()) return run_sample(sample_args);
    if (enumerate->parsed()) return run_enumerate(enumerate_args);
    if (kirchhoff->parsed()) return run_kirchhoff(kirchhoff_args);
    if (figures->parsed()) return run_figures(figures_args);
    if (crossover->parsed()) return run_crossover(crossover_json);
  } catch (const brg::SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSizeGuardError;
  } catch (const brg::DegenerateGameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const brg::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
