#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "brgames/br_graph.hpp"
#include "brgames/ensemble.hpp"
#include "brgames/game.hpp"
#include "brgames/numeric.hpp"

namespace brg {

/// On-disk game description (JSON, schema-versioned). Payoffs are stored
/// flat in the same player-major, profile-rank-minor order Game uses, so a
/// write/read round trip reproduces the array bit-exactly. Labels are
/// optional presentation metadata; empty vectors mean "none".
struct GameDocument {
  int n = 0;
  int m = 0;
  std::vector<double> payoffs;
  std::vector<std::string> player_labels;
  std::vector<std::vector<std::string>> strategy_labels;

  Game to_game() const { return Game(n, m, payoffs); }
  static GameDocument from_game(const Game& game);
};

/// Throw SchemaError on malformed JSON, wrong format tag, unsupported
/// version, length mismatches, or non-finite payoffs.
GameDocument read_game_document(const std::string& path);
void write_game_document(const GameDocument& doc, const std::string& path);

Game read_game(const std::string& path);
void write_game(const Game& game, const std::string& path);

/// One exact-valued data series behind a reproduction figure. Row order is
/// lexicographic in the parameter tuple; the rational is authoritative and
/// the decimal column is always its 15-significant-digit rendering.
struct FigureSeries {
  std::string id;     // "fig2", "fig3", "fig4"
  std::string title;
  bool log_scale = false;
  std::vector<std::string> param_names;

  struct Row {
    std::vector<long long> params;
    Rational value;
  };
  std::vector<Row> rows;
};

/// Grid of unique-equilibrium frequencies p1(n, m) (series id "fig2").
FigureSeries figure_unique_equilibrium(int n_lo = 2, int n_hi = 5, int m_lo = 2,
                                       int m_hi = 100);

/// Grid of convergent-with-k-equilibria frequencies p2_k(m, k) for 2-player
/// games; ids "fig3" (linear) and "fig4" (log-scale presentation hint).
FigureSeries figure_equilibrium_counts(bool log_scale, int m_lo = 2, int m_hi = 50,
                                       int k_lo = 1, int k_hi = 10);

/// Dispatch by series id ("fig2"/"fig3"/"fig4") with that figure's default
/// ranges. Throws std::invalid_argument for unknown ids.
FigureSeries make_figure_series(const std::string& id);

/// CSV: header `<params...>,exact,value`, LF line endings, '.' decimal
/// separator. JSON: same rows under a schema-versioned envelope; both
/// emissions carry byte-identical value strings.
void write_figure_csv(const FigureSeries& series, std::ostream& out);
void write_figure_json(const FigureSeries& series, std::ostream& out);
void write_figure_csv(const FigureSeries& series, const std::string& path);
void write_figure_json(const FigureSeries& series, const std::string& path);

/// GraphViz DOT rendering; nodes are labeled "p<player>:e<env_rank>" and
/// listed in node-id order, one edge per line.
std::string to_dot(const FunctionalGraph& fg);
void write_dot(const FunctionalGraph& fg, const std::string& path);

/// Machine-readable JSON documents (pretty-printed, LF, 2-space indent) for
/// analysis results; these are the formats the command-line tool emits.
std::string classification_json(const Classification& cls);
std::string census_json(const ExactCensus& census);
std::string estimate_json(const EnsembleEstimate& est);

}  // namespace brg
