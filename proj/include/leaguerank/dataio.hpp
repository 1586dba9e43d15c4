#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "leaguerank/rankers.hpp"
#include "leaguerank/synth.hpp"

namespace leaguerank {

// One real-data season with its team roster. Team ids are per-season interning
// indices (first appearance in the input, drawn games excluded); games are
// sorted by the date string and numbered chronologically.
struct SeasonData {
  std::string season;
  std::vector<std::string> team_names;
  ResultSet results;
};

struct LoadReport {
  std::vector<SeasonData> seasons;
  std::vector<std::string> warnings;  // dropped draws, skipped empty seasons
};

enum class InputFormat { kAuto, kCsv, kJsonLines };

// Reads `season,date,home,away,outcome` rows (CSV with a header, or JSON
// lines with those keys). Outcome tokens: H (home win), A (away win),
// D (draw, dropped with a warning). Rows within a season are ordered by a
// stable lexicographic sort on the date string, so sortable date formats
// (e.g. ISO-8601) order chronologically. Malformed rows, unknown outcome
// tokens, and self-games raise std::runtime_error naming the line.
LoadReport load_seasons(const std::string& path,
                        InputFormat format = InputFormat::kAuto);
LoadReport load_seasons_stream(std::istream& in, const std::string& name,
                               InputFormat format);

// First floor(frac * season length) games, in chronological order.
// frac outside [0, 1] throws std::invalid_argument.
ResultSet truncate_season(const SeasonData& season, double frac);

// Shortest round-trip decimal form of a double (used by all CSV writers so
// output is deterministic and re-readable).
std::string format_double(double value);

// ResultSet CSV: header `order,home,away,home_won`, one game per row,
// home_won in {0,1}.
void write_result_set_csv(std::ostream& out, const ResultSet& results);
ResultSet read_result_set_csv(std::istream& in, const std::string& name,
                              int n_teams_hint = 0);

// Fitness CSV: header `team,fitness`, one team per row, ids 0..N-1.
void write_fitness_csv(std::ostream& out, const FitnessVector& fitness);
FitnessVector read_fitness_csv(std::istream& in, const std::string& name);

// Scores CSV: header `method,team,score`, grouped by method.
void write_scores_csv(std::ostream& out,
                      const std::vector<ScoreVector>& scores);
std::vector<ScoreVector> read_scores_csv(std::istream& in,
                                         const std::string& name);

}  // namespace leaguerank
