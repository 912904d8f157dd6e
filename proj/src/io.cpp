#include "andor/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace andor::io {

using ordered_json = nlohmann::ordered_json;

std::string format_number(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << x;
  return os.str();
}

std::string figure_column(const std::string& figure_id) {
  std::string col = figure_id;
  for (char& c : col) {
    if (c == '-') c = '_';
  }
  if (col == "and_wins") col = "p_and_wins";
  return col;
}

std::string figure_csv(const FigureSeries& s) {
  std::ostringstream os;
  os << "v," << figure_column(s.figure_id) << "\n";
  for (const auto& [v, value] : s.rows) {
    os << format_number(v) << "," << format_number(value) << "\n";
  }
  return os.str();
}

std::string figure_json(const FigureSeries& s) {
  ordered_json j;
  j["version"] = kVersion;
  j["figure_id"] = s.figure_id;
  j["quantity"] = figure_column(s.figure_id);
  ordered_json rows = ordered_json::array();
  for (const auto& [v, value] : s.rows) rows.push_back({v, value});
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

namespace {

ordered_json report_json(const AnalyticsReport& r) {
  ordered_json j;
  j["v"] = r.v;
  j["p_and_wins"] = r.p_and_wins;
  j["revenue_and"] = r.revenue_and;
  j["revenue_or"] = r.revenue_or;
  j["revenue_total"] = r.revenue_total;
  j["welfare"] = r.welfare;
  j["optimal_welfare"] = r.optimal_welfare;
  j["poa"] = r.poa;
  j["welfare_loss"] = r.welfare_loss;
  return j;
}

}  // namespace

std::string analytics_json(const AnalyticsReport& r, std::uint64_t seed) {
  ordered_json j;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["report"] = report_json(r);
  return j.dump(2) + "\n";
}

std::string monte_carlo_json(const MonteCarloReport& r, std::uint64_t seed) {
  ordered_json j;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["samples"] = r.samples;
  j["mean"] = report_json(r.mean);
  j["standard_errors"] = {{"p_and_wins", r.se_p_and_wins},
                          {"revenue_or", r.se_revenue_or},
                          {"welfare", r.se_welfare}};
  return j.dump(2) + "\n";
}

std::string equilibrium_json(const EquilibriumReport& r,
                             const CharacterizationResult& c, double v,
                             std::uint64_t seed) {
  ordered_json j;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["v"] = v;
  j["u_and_star"] = r.u_and_star;
  j["u_or_star"] = r.u_or_star;
  j["eps_and"] = r.eps_and;
  j["eps_or"] = r.eps_or;
  j["epsilon"] = r.epsilon;
  j["is_eps_nash"] = r.is_eps_nash;
  j["characterization_ok"] = c.ok;
  ordered_json viols = ordered_json::array();
  for (const Violation& vi : c.violations) {
    viols.push_back({{"clause", vi.clause},
                     {"x", vi.x},
                     {"y", vi.y},
                     {"magnitude", vi.magnitude}});
  }
  j["violations"] = viols;
  return j.dump(2) + "\n";
}

std::string profile_csv(const GridGame& game, const MixedProfile& profile,
                        std::uint64_t seed) {
  std::ostringstream os;
  os << "# v=" << format_number(game.v) << " seed=" << seed
     << " version=" << kVersion << "\n";
  os << "player,bid1,bid2,probability\n";
  for (int i = 0; i < game.na(); ++i) {
    if (profile.and_probs[i] <= 0.0) continue;
    const BidPair& b = game.and_strategies[i];
    os << "and," << format_number(b.x1) << "," << format_number(b.x2) << ","
       << format_number(profile.and_probs[i]) << "\n";
  }
  for (int j = 0; j < game.no(); ++j) {
    if (profile.or_probs[j] <= 0.0) continue;
    const BidPair& b = game.or_strategies[j];
    os << "or," << format_number(b.x1) << "," << format_number(b.x2) << ","
       << format_number(profile.or_probs[j]) << "\n";
  }
  return os.str();
}

std::string profile_json(const GridGame& game, const MixedProfile& profile,
                         const AnalyticComparison& cmp, std::uint64_t seed) {
  ordered_json j;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["v"] = game.v;
  j["eps"] = profile.eps;
  auto rows = [&](const std::vector<BidPair>& strategies,
                  const std::vector<double>& probs) {
    ordered_json a = ordered_json::array();
    for (std::size_t i = 0; i < strategies.size(); ++i) {
      if (probs[i] <= 0.0) continue;
      a.push_back({strategies[i].x1, strategies[i].x2, probs[i]});
    }
    return a;
  };
  j["and_profile"] = rows(game.and_strategies, profile.and_probs);
  j["or_profile"] = rows(game.or_strategies, profile.or_probs);
  j["comparison"] = {{"ks_and_1", cmp.ks_and_1},
                     {"ks_and_2", cmp.ks_and_2},
                     {"ks_or_1", cmp.ks_or_1},
                     {"ks_or_2", cmp.ks_or_2},
                     {"origin_atom_deviation", cmp.origin_atom_deviation}};
  return j.dump(2) + "\n";
}

std::pair<GridDistribution, GridDistribution> read_profile_csv(
    const std::string& path, double bid_cap) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path);

  std::vector<std::pair<BidPair, double>> and_masses;
  std::vector<std::pair<BidPair, double>> or_masses;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("player,", 0) == 0) continue;
    std::istringstream row(line);
    std::string player, f1, f2, f3;
    if (!std::getline(row, player, ',') || !std::getline(row, f1, ',') ||
        !std::getline(row, f2, ',') || !std::getline(row, f3)) {
      throw std::runtime_error(path + ": malformed row at line " +
                               std::to_string(line_no));
    }
    BidPair b{std::stod(f1), std::stod(f2)};
    const double p = std::stod(f3);
    if (player == "and") {
      and_masses.emplace_back(b, p);
    } else if (player == "or") {
      or_masses.emplace_back(b, p);
    } else {
      throw std::runtime_error(path + ": unknown player '" + player +
                               "' at line " + std::to_string(line_no));
    }
  }
  if (and_masses.empty() || or_masses.empty()) {
    throw std::runtime_error(path + ": profile needs both players");
  }
  return {GridDistribution(std::move(and_masses), bid_cap),
          GridDistribution(std::move(or_masses), bid_cap)};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace andor::io
