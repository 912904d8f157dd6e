#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "andor/analytics.hpp"
#include "andor/solver.hpp"

namespace andor::io {

inline constexpr const char* kVersion = "1.0.0";

// 12 significant digits, '.' decimal separator, locale independent.
std::string format_number(double x);

// Column name for a figure id, e.g. "and-wins" -> "p_and_wins".
std::string figure_column(const std::string& figure_id);

// CSV with header "v,<quantity>" and LF line endings.
std::string figure_csv(const FigureSeries& s);
std::string figure_json(const FigureSeries& s);

std::string analytics_json(const AnalyticsReport& r, std::uint64_t seed);
std::string monte_carlo_json(const MonteCarloReport& r, std::uint64_t seed);
std::string equilibrium_json(const EquilibriumReport& r,
                             const CharacterizationResult& c, double v,
                             std::uint64_t seed);

// Rows "player,bid1,bid2,probability" preceded by '#' metadata lines.
std::string profile_csv(const GridGame& game, const MixedProfile& profile,
                        std::uint64_t seed);
std::string profile_json(const GridGame& game, const MixedProfile& profile,
                         const AnalyticComparison& cmp, std::uint64_t seed);

// Parses a profile CSV back into one joint distribution per player.
std::pair<GridDistribution, GridDistribution> read_profile_csv(
    const std::string& path, double bid_cap);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace andor::io
