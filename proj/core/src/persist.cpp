#include "brgames/persist.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "brgames/closed_form.hpp"
#include "brgames/errors.hpp"

namespace brg {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kGameSchemaVersion = 1;
constexpr int kFigureSchemaVersion = 1;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

GameDocument GameDocument::from_game(const Game& game) {
  GameDocument doc;
  doc.n = game.players();
  doc.m = game.strategies();
  doc.payoffs = game.payoffs();
  return doc;
}

GameDocument read_game_document(const std::string& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(slurp(path));
  } catch (const ordered_json::exception& e) {  // parse errors and overflows
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "brgames-game") {
    throw SchemaError("'" + path + "' lacks the \"format\": \"brgames-game\" tag");
  }
  if (doc.value("version", -1) != kGameSchemaVersion) {
    throw SchemaError("unsupported game document version in '" + path + "'");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer() || !doc.contains("m") ||
      !doc["m"].is_number_integer() || !doc.contains("payoffs") || !doc["payoffs"].is_array()) {
    throw SchemaError("game document needs integer n, integer m, and a payoffs array");
  }

  GameDocument out;
  out.n = doc["n"].get<int>();
  out.m = doc["m"].get<int>();
  out.payoffs.reserve(doc["payoffs"].size());
  for (const auto& v : doc["payoffs"]) {
    if (!v.is_number()) throw SchemaError("payoffs must be numbers");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw SchemaError("payoffs must be finite");
    out.payoffs.push_back(x);
  }
  try {
    out.to_game();  // delegates the n/m/length validation
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("game document rejected: ") + e.what());
  }

  if (doc.contains("players")) {
    const auto& players = doc["players"];
    if (!players.is_array() || static_cast<int>(players.size()) != out.n) {
      throw SchemaError("players label array must have n entries");
    }
    for (const auto& v : players) {
      if (!v.is_string()) throw SchemaError("player labels must be strings");
      out.player_labels.push_back(v.get<std::string>());
    }
  }
  if (doc.contains("strategies")) {
    const auto& strategies = doc["strategies"];
    if (!strategies.is_array() || static_cast<int>(strategies.size()) != out.n) {
      throw SchemaError("strategies label array must have n entries");
    }
    for (const auto& row : strategies) {
      if (!row.is_array() || static_cast<int>(row.size()) != out.m) {
        throw SchemaError("each player's strategy label list must have m entries");
      }
      auto& labels = out.strategy_labels.emplace_back();
      for (const auto& v : row) {
        if (!v.is_string()) throw SchemaError("strategy labels must be strings");
        labels.push_back(v.get<std::string>());
      }
    }
  }
  return out;
}

void write_game_document(const GameDocument& doc, const std::string& path) {
  ordered_json j;
  j["format"] = "brgames-game";
  j["version"] = kGameSchemaVersion;
  j["n"] = doc.n;
  j["m"] = doc.m;
  j["payoffs"] = doc.payoffs;
  if (!doc.player_labels.empty()) j["players"] = doc.player_labels;
  if (!doc.strategy_labels.empty()) j["strategies"] = doc.strategy_labels;
  spill(path, dump(j));
}

Game read_game(const std::string& path) { return read_game_document(path).to_game(); }

void write_game(const Game& game, const std::string& path) {
  write_game_document(GameDocument::from_game(game), path);
}

FigureSeries figure_unique_equilibrium(int n_lo, int n_hi, int m_lo, int m_hi) {
  if (n_lo < 2 || n_lo > n_hi || m_lo < 2 || m_lo > m_hi) {
    throw std::invalid_argument("need 2 <= n_lo <= n_hi and 2 <= m_lo <= m_hi");
  }
  FigureSeries series;
  series.id = "fig2";
  series.title = "frequency of games with a unique equilibrium";
  series.param_names = {"n", "m"};
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int m = m_lo; m <= m_hi; ++m) {
      series.rows.push_back({{n, m}, p1(n, m)});
    }
  }
  return series;
}

FigureSeries figure_equilibrium_counts(bool log_scale, int m_lo, int m_hi, int k_lo,
                                       int k_hi) {
  if (m_lo < 2 || m_lo > m_hi || k_lo < 1 || k_lo > k_hi) {
    throw std::invalid_argument("need 2 <= m_lo <= m_hi and 1 <= k_lo <= k_hi");
  }
  FigureSeries series;
  series.id = log_scale ? "fig4" : "fig3";
  series.title = "frequency of convergent 2-player games by equilibrium count";
  series.log_scale = log_scale;
  series.param_names = {"m", "k"};
  for (int m = m_lo; m <= m_hi; ++m) {
    for (int k = k_lo; k <= k_hi; ++k) {
      series.rows.push_back({{m, k}, p2_k(m, k)});
    }
  }
  return series;
}

FigureSeries make_figure_series(const std::string& id) {
  if (id == "fig2") return figure_unique_equilibrium();
  if (id == "fig3") return figure_equilibrium_counts(false);
  if (id == "fig4") return figure_equilibrium_counts(true);
  throw std::invalid_argument("unknown figure id '" + id + "' (expected fig2, fig3, or fig4)");
}

void write_figure_csv(const FigureSeries& series, std::ostream& out) {
  for (const auto& name : series.param_names) out << name << ",";
  out << "exact,value\n";
  for (const auto& row : series.rows) {
    for (long long p : row.params) out << p << ",";
    out << to_fraction_string(row.value) << "," << to_decimal_string(row.value) << "\n";
  }
}

void write_figure_json(const FigureSeries& series, std::ostream& out) {
  ordered_json j;
  j["format"] = "brgames-figure";
  j["version"] = kFigureSchemaVersion;
  j["id"] = series.id;
  j["title"] = series.title;
  j["log_scale"] = series.log_scale;
  j["params"] = series.param_names;
  auto& rows = j["rows"] = ordered_json::array();
  for (const auto& row : series.rows) {
    ordered_json r;
    for (std::size_t i = 0; i < series.param_names.size(); ++i) {
      r[series.param_names[i]] = row.params[i];
    }
    r["exact"] = to_fraction_string(row.value);
    r["value"] = to_decimal_string(row.value);
    rows.push_back(std::move(r));
  }
  out << dump(j);
}

void write_figure_csv(const FigureSeries& series, const std::string& path) {
  std::ostringstream buf;
  write_figure_csv(series, buf);
  spill(path, std::move(buf).str());
}

void write_figure_json(const FigureSeries& series, const std::string& path) {
  std::ostringstream buf;
  write_figure_json(series, buf);
  spill(path, std::move(buf).str());
}

std::string to_dot(const FunctionalGraph& fg) {
  std::ostringstream out;
  out << "digraph best_response {\n  rankdir=LR;\n";
  for (std::uint64_t v = 0; v < fg.node_count(); ++v) {
    const NodeId t = fg.successor[v];
    out << "  \"p" << node_player(static_cast<NodeId>(v), fg.n, fg.m) << ":e"
        << node_env(static_cast<NodeId>(v), fg.n, fg.m) << "\" -> \"p"
        << node_player(t, fg.n, fg.m) << ":e" << node_env(t, fg.n, fg.m) << "\";\n";
  }
  out << "}\n";
  return std::move(out).str();
}

void write_dot(const FunctionalGraph& fg, const std::string& path) {
  spill(path, to_dot(fg));
}

std::string classification_json(const Classification& cls) {
  ordered_json j;
  j["type"] = to_string(cls.game_type);
  j["psne_count"] = cls.psne_count;
  j["convergent"] = cls.convergent;
  auto& cycles = j["cycles"] = ordered_json::array();
  for (const Cycle& c : cls.cycles) {
    ordered_json entry;
    entry["length"] = c.length();
    entry["nodes"] = c.nodes;
    cycles.push_back(std::move(entry));
  }
  return dump(j);
}

std::string census_json(const ExactCensus& census) {
  ordered_json j;
  j["n"] = census.n;
  j["m"] = census.m;
  j["total"] = census.total.str();
  auto& rows = j["counts"] = ordered_json::array();
  for (const auto& [key, count] : census.counts) {
    ordered_json row;
    row["convergent"] = key.first;
    row["psne_count"] = key.second;
    row["count"] = count.str();
    row["exact"] = to_fraction_string(Rational(count, census.total));
    row["frequency"] = to_decimal_string(Rational(count, census.total));
    rows.push_back(std::move(row));
  }
  j["convergent_total"] = census.convergent_total().str();
  j["non_convergent_total"] = (census.total - census.convergent_total()).str();
  return dump(j);
}

std::string estimate_json(const EnsembleEstimate& est) {
  ordered_json j;
  j["n"] = est.n;
  j["m"] = est.m;
  j["trials"] = est.trials;
  j["seed"] = est.seed;
  j["z"] = est.z;
  j["distribution"] = est.dist == PayoffDist::kNormal ? "normal" : "uniform";
  j["degenerate_redraws"] = est.degenerate_redraws;
  auto& rows = j["counts"] = ordered_json::array();
  for (const auto& [key, count] : est.counts) {
    const WilsonInterval w = est.interval(count);
    ordered_json row;
    row["type"] = to_string(key.first);
    row["psne_count"] = key.second;
    row["count"] = count;
    row["frequency"] = est.frequency(count);
    row["wilson_lo"] = w.lo;
    row["wilson_hi"] = w.hi;
    rows.push_back(std::move(row));
  }
  return dump(j);
}

}  // namespace brg
