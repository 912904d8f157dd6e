#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "andor/analytics.hpp"
#include "andor/distributions.hpp"
#include "andor/io.hpp"
#include "andor/solver.hpp"
#include "andor/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRegime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNotNash = 3;

constexpr std::uint64_t kDefaultSeed = 7;

std::filesystem::path out_dir() {
  if (const char* d = std::getenv("ANDOR_OUT_DIR")) return d;
  return ".";
}

std::string resolve_out(const std::string& out, const std::string& fallback) {
  if (!out.empty()) return out;
  return (out_dir() / fallback).string();
}

andor::TieBreakRule parse_tie(const std::string& spec) {
  if (spec == "fair") return andor::TieBreakRule::fair();
  if (spec == "and-wins") return andor::TieBreakRule::and_wins();
  if (spec == "or-wins") return andor::TieBreakRule::or_wins();
  std::size_t pos = 0;
  const double q = std::stod(spec, &pos);
  if (pos != spec.size() || q < 0.0 || q > 1.0) {
    throw std::invalid_argument(
        "tie rule must be fair, and-wins, or-wins, or a constant in [0,1]");
  }
  return andor::TieBreakRule::constant(q);
}

std::string report_csv(const andor::MonteCarloReport& mc) {
  std::ostringstream os;
  os << "key,value\n";
  auto row = [&](const char* k, double x) {
    os << k << "," << andor::io::format_number(x) << "\n";
  };
  row("v", mc.mean.v);
  os << "samples," << mc.samples << "\n";
  row("p_and_wins", mc.mean.p_and_wins);
  row("revenue_and", mc.mean.revenue_and);
  row("revenue_or", mc.mean.revenue_or);
  row("revenue_total", mc.mean.revenue_total);
  row("welfare", mc.mean.welfare);
  row("poa", mc.mean.poa);
  row("welfare_loss", mc.mean.welfare_loss);
  row("se_p_and_wins", mc.se_p_and_wins);
  row("se_revenue_or", mc.se_revenue_or);
  row("se_welfare", mc.se_welfare);
  return os.str();
}

int cmd_simulate(double v, long samples, std::uint64_t seed,
                 const std::string& tie_spec, const std::string& format,
                 const std::string& out) {
  const andor::TieBreakRule tie = parse_tie(tie_spec);
  const andor::MonteCarloReport mc =
      andor::monte_carlo_report(v, samples, tie, seed);
  const std::string path =
      resolve_out(out, format == "csv" ? "simulate.csv" : "simulate.json");
  andor::io::write_file(path, format == "csv"
                                  ? report_csv(mc)
                                  : andor::io::monte_carlo_json(mc, seed));
  std::cout << "p_and_wins " << andor::io::format_number(mc.mean.p_and_wins)
            << " +- " << andor::io::format_number(mc.se_p_and_wins) << "\n"
            << "revenue_or " << andor::io::format_number(mc.mean.revenue_or)
            << " +- " << andor::io::format_number(mc.se_revenue_or) << "\n"
            << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_verify(double v, double grid_step, double epsilon, double char_tol,
               const std::string& profile, std::uint64_t seed,
               const std::string& tie_spec, const std::string& out) {
  const andor::TieBreakRule tie = parse_tie(tie_spec);

  std::unique_ptr<andor::JointBidDistribution> f_and;
  std::unique_ptr<andor::JointBidDistribution> f_or;
  if (profile.empty()) {
    f_and = std::make_unique<andor::AndEquilibrium>(v);
    f_or = std::make_unique<andor::OrEquilibrium>(v);
  } else {
    auto [fa, fo] =
        andor::io::read_profile_csv(profile, andor::default_bid_cap(v));
    f_and = std::make_unique<andor::GridDistribution>(std::move(fa));
    f_or = std::make_unique<andor::GridDistribution>(std::move(fo));
  }

  const andor::EquilibriumReport rep =
      andor::best_response_gap(*f_and, *f_or, v, tie, grid_step, epsilon);
  const andor::CharacterizationResult chr =
      andor::check_characterization(*f_and, *f_or, v, char_tol);

  const std::string path = resolve_out(out, "verify.json");
  andor::io::write_file(path, andor::io::equilibrium_json(rep, chr, v, seed));

  std::cout << "u_and_star " << andor::io::format_number(rep.u_and_star)
            << ", u_or_star " << andor::io::format_number(rep.u_or_star)
            << "\n"
            << "eps_and " << andor::io::format_number(rep.eps_and)
            << ", eps_or " << andor::io::format_number(rep.eps_or) << "\n"
            << "characterization " << (chr.ok ? "ok" : "violated") << "\n";
  for (const andor::Violation& vi : chr.violations) {
    std::cout << "  clause " << vi.clause << " at (" << vi.x << "," << vi.y
              << ") magnitude " << andor::io::format_number(vi.magnitude)
              << "\n";
  }
  std::cout << "wrote " << path << "\n";
  return rep.is_eps_nash ? kExitOk : kExitNotNash;
}

int cmd_solve(double v, const std::string& mode_spec, int grid, long iters,
              std::uint64_t seed, const std::string& tie_spec, bool pure,
              int support, const std::string& out) {
  const andor::TieBreakRule tie = parse_tie(tie_spec);
  andor::GridMode mode;
  if (mode_spec == "full") {
    mode = andor::GridMode::Full;
  } else if (mode_spec == "structured") {
    mode = andor::GridMode::Structured;
  } else {
    throw std::invalid_argument("mode must be full or structured");
  }

  const andor::GridGame game = andor::build_grid_game(v, grid, mode, tie);

  if (pure) {
    const auto nash = andor::enumerate_pure_nash(game);
    std::cout << "pure Nash profiles: " << nash.size() << "\n";
    for (const auto& [i, j] : nash) {
      const andor::BidPair& a = game.and_strategies[i];
      const andor::BidPair& o = game.or_strategies[j];
      std::cout << "  and=(" << a.x1 << "," << a.x2 << ") or=(" << o.x1 << ","
                << o.x2 << ")\n";
    }
    return kExitOk;
  }

  andor::MixedProfile profile;
  if (support > 0) {
    const auto res = andor::solve_support_enumeration(game, support);
    std::cout << "support enumeration: " << res.equilibria.size()
              << " equilibria, " << res.candidates_skipped
              << " candidates skipped\n";
    if (res.equilibria.empty()) {
      std::cerr << "no equilibrium found up to support size " << support
                << "\n";
      return kExitNotNash;
    }
    profile = res.equilibria.front();
  } else {
    profile = andor::solve_fictitious_play(game, iters, seed);
  }

  const andor::AnalyticComparison cmp =
      andor::compare_to_analytic(game, profile, v);
  const std::string csv_path = resolve_out(out, "profile.csv");
  andor::io::write_file(csv_path, andor::io::profile_csv(game, profile, seed));
  const std::string json_path =
      std::filesystem::path(csv_path).replace_extension(".json").string();
  andor::io::write_file(json_path,
                        andor::io::profile_json(game, profile, cmp, seed));

  std::cout << "eps " << andor::io::format_number(profile.eps) << "\n"
            << "KS and (" << andor::io::format_number(cmp.ks_and_1) << ","
            << andor::io::format_number(cmp.ks_and_2) << ") or ("
            << andor::io::format_number(cmp.ks_or_1) << ","
            << andor::io::format_number(cmp.ks_or_2) << ")\n"
            << "origin atom deviation "
            << andor::io::format_number(cmp.origin_atom_deviation) << "\n"
            << "wrote " << csv_path << " and " << json_path << "\n";
  return kExitOk;
}

int cmd_figures(const std::string& figure, double v_min, double v_max,
                double step, const std::string& dir_flag) {
  const std::filesystem::path dir =
      dir_flag.empty() ? out_dir() : std::filesystem::path(dir_flag);
  std::filesystem::create_directories(dir);

  std::vector<std::string> ids;
  if (figure.empty()) {
    ids = andor::figure_ids();
  } else {
    ids.push_back(figure);
  }
  for (const std::string& id : ids) {
    const andor::FigureSeries s = andor::figure_series(id, v_min, v_max, step);
    const std::string path = (dir / (id + ".csv")).string();
    andor::io::write_file(path, andor::io::figure_csv(s));
    std::cout << "wrote " << path << "\n";
  }

  if (figure.empty()) {
    const auto [below, above] = andor::find_poa_minima();
    const double loss_at_large_v = andor::report(1e4).welfare_loss;
    std::ostringstream os;
    os << "{\n"
       << "  \"version\": \"" << andor::io::kVersion << "\",\n"
       << "  \"poa_minimum_below_1\": {\"v\": "
       << andor::io::format_number(below.v)
       << ", \"poa\": " << andor::io::format_number(below.poa) << "},\n"
       << "  \"poa_minimum_above_1\": {\"v\": "
       << andor::io::format_number(above.v)
       << ", \"poa\": " << andor::io::format_number(above.poa) << "},\n"
       << "  \"welfare_loss_at_1e4\": "
       << andor::io::format_number(loss_at_large_v) << "\n"
       << "}\n";
    const std::string path = (dir / "summary.json").string();
    andor::io::write_file(path, os.str());
    std::cout << "wrote " << path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AND-OR simultaneous first-price auction toolkit"};
  app.require_subcommand(1);

  double v = 1.0;
  std::uint64_t seed = kDefaultSeed;
  std::string tie_spec = "fair";
  std::string out;

  auto* sim = app.add_subcommand("simulate", "Monte Carlo equilibrium report");
  long samples = 100000;
  std::string format = "json";
  sim->add_option("--v", v, "OR player's value");
  sim->add_option("--samples", samples, "number of draws")
      ->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "RNG seed");
  sim->add_option("--tie", tie_spec, "tie rule");
  sim->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sim->add_option("--out", out, "output file");

  auto* ver = app.add_subcommand("verify", "equilibrium verification");
  double grid_step = 0.01;
  double epsilon = 1e-6;
  double char_tol = 1e-9;
  std::string profile_file;
  ver->add_option("--v", v, "OR player's value");
  ver->add_option("--grid-step", grid_step, "deviation grid step")
      ->check(CLI::PositiveNumber);
  ver->add_option("--epsilon", epsilon, "eps-Nash threshold")
      ->check(CLI::PositiveNumber);
  ver->add_option("--char-tol", char_tol, "characterization tolerance")
      ->check(CLI::PositiveNumber);
  ver->add_option("--profile", profile_file, "profile CSV to verify");
  ver->add_option("--seed", seed, "RNG seed");
  ver->add_option("--tie", tie_spec, "tie rule");
  ver->add_option("--out", out, "output file");

  auto* sol = app.add_subcommand("solve", "grid-game solvers");
  std::string mode = "structured";
  int grid = 51;
  long iters = 100000;
  bool pure = false;
  int support = 0;
  sol->add_option("--v", v, "OR player's value");
  auto* mode_opt = sol->add_option("--mode", mode, "full or structured");
  sol->add_option("--grid", grid, "number of bid levels")
      ->check(CLI::PositiveNumber);
  sol->add_option("--iters", iters, "fictitious play iterations")
      ->check(CLI::PositiveNumber);
  sol->add_option("--seed", seed, "RNG seed");
  sol->add_option("--tie", tie_spec, "tie rule");
  sol->add_flag("--pure", pure, "enumerate pure Nash equilibria only");
  sol->add_option("--support", support,
                  "use support enumeration up to this support size");
  sol->add_option("--out", out, "profile CSV path");

  auto* fig = app.add_subcommand("figures", "figure data export");
  std::string figure;
  double v_min = 0.51;
  double v_max = 10.0;
  double step = 0.01;
  std::string fig_dir;
  fig->add_option("--figure", figure, "emit only this series");
  fig->add_option("--v-min", v_min, "range start");
  fig->add_option("--v-max", v_max, "range end");
  fig->add_option("--step", step, "v step")->check(CLI::PositiveNumber);
  fig->add_option("--out-dir", fig_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(v, samples, seed, tie_spec, format, out);
    }
    if (ver->parsed()) {
      return cmd_verify(v, grid_step, epsilon, char_tol, profile_file, seed,
                        tie_spec, out);
    }
    if (sol->parsed()) {
      // pure-NE scans default to the full strategy grid, where the
      // Walrasian profiles are representable
      if (pure && mode_opt->count() == 0) mode = "full";
      return cmd_solve(v, mode, grid, iters, seed, tie_spec, pure, support,
                       out);
    }
    if (fig->parsed()) {
      return cmd_figures(figure, v_min, v_max, step, fig_dir);
    }
  } catch (const andor::RegimeError& e) {
    std::cerr << "regime error: " << e.what()
              << " (for v <= 1/2 the market has Walrasian prices and pure "
                 "equilibria; try `solve --pure --tie and-wins`)\n";
    return kExitRegime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
