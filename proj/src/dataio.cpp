#include "leaguerank/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace leaguerank {

namespace {

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& message) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + message);
}

// RFC-4180-style field splitting: commas inside double quotes are literal,
// doubled quotes escape a quote.
std::vector<std::string> split_csv_row(const std::string& row,
                                       const std::string& name, int line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < row.size() && row[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) fail(name, line, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

long parse_long(const std::string& text, const std::string& name, int line,
                const std::string& what) {
  long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(name, line, "bad " + what + " value '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const std::string& name, int line,
                    const std::string& what) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(name, line, "bad " + what + " value '" + text + "'");
  }
  return value;
}

struct RawRow {
  std::string season;
  std::string date;
  std::string home;
  std::string away;
  char outcome = '?';
  int line = 0;
};

char parse_outcome(const std::string& token, const std::string& name,
                   int line) {
  if (token == "H" || token == "A" || token == "D") return token[0];
  fail(name, line, "unknown outcome token '" + token +
                       "' (expected H, A, or D)");
}

std::vector<RawRow> read_rows_csv(std::istream& in, const std::string& name) {
  std::string line_text;
  if (!std::getline(in, line_text)) fail(name, 1, "empty input");
  // Tolerate a UTF-8 byte-order mark on the first line.
  if (line_text.rfind("\xEF\xBB\xBF", 0) == 0) line_text.erase(0, 3);
  const auto header = split_csv_row(line_text, name, 1);
  const std::vector<std::string> expected{"season", "date", "home", "away",
                                          "outcome"};
  if (std::vector<std::string>(header.begin(), header.end()) != expected) {
    fail(name, 1, "expected header 'season,date,home,away,outcome'");
  }
  std::vector<RawRow> rows;
  int line_no = 1;
  while (std::getline(in, line_text)) {
    ++line_no;
    if (line_text.empty() || line_text == "\r") continue;
    const auto fields = split_csv_row(line_text, name, line_no);
    if (fields.size() != 5) {
      fail(name, line_no, "expected 5 fields, found " +
                              std::to_string(fields.size()));
    }
    rows.push_back(RawRow{fields[0], fields[1], fields[2], fields[3],
                          parse_outcome(fields[4], name, line_no), line_no});
  }
  return rows;
}

std::vector<RawRow> read_rows_jsonl(std::istream& in,
                                    const std::string& name) {
  std::vector<RawRow> rows;
  std::string line_text;
  int line_no = 0;
  while (std::getline(in, line_text)) {
    ++line_no;
    if (line_text.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line_text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(name, line_no, std::string("bad JSON: ") + e.what());
    }
    for (const char* key : {"season", "date", "home", "away", "outcome"}) {
      if (!j.contains(key) || !j[key].is_string()) {
        fail(name, line_no,
             std::string("missing or non-string field '") + key + "'");
      }
    }
    rows.push_back(RawRow{j["season"].get<std::string>(),
                          j["date"].get<std::string>(),
                          j["home"].get<std::string>(),
                          j["away"].get<std::string>(),
                          parse_outcome(j["outcome"].get<std::string>(), name,
                                        line_no),
                          line_no});
  }
  return rows;
}

LoadReport assemble_seasons(std::vector<RawRow> rows, const std::string& name) {
  LoadReport report;
  // Season labels keep first-appearance order even when rows interleave.
  std::vector<std::string> season_order;
  std::map<std::string, std::vector<RawRow>> by_season;
  for (RawRow& row : rows) {
    if (row.home == row.away) {
      fail(name, row.line, "home and away name the same team '" + row.home +
                               "'");
    }
    if (by_season.find(row.season) == by_season.end()) {
      season_order.push_back(row.season);
    }
    by_season[row.season].push_back(std::move(row));
  }
  for (const std::string& label : season_order) {
    auto& season_rows = by_season[label];
    const std::size_t total = season_rows.size();
    std::erase_if(season_rows,
                  [](const RawRow& r) { return r.outcome == 'D'; });
    const std::size_t dropped = total - season_rows.size();
    if (dropped > 0) {
      report.warnings.push_back(
          "season " + label + ": dropped " + std::to_string(dropped) +
          " drawn games of " + std::to_string(total));
    }
    if (season_rows.empty()) {
      report.warnings.push_back("season " + label +
                                ": no decisive games, skipped");
      continue;
    }
    SeasonData season;
    season.season = label;
    std::map<std::string, int> team_ids;
    auto intern = [&](const std::string& team) {
      const auto [it, inserted] =
          team_ids.emplace(team, static_cast<int>(season.team_names.size()));
      if (inserted) season.team_names.push_back(team);
      return it->second;
    };
    for (const RawRow& r : season_rows) {
      intern(r.home);
      intern(r.away);
    }
    // Stable sort on the date string: sortable formats order chronologically
    // and same-date games keep input order.
    std::stable_sort(season_rows.begin(), season_rows.end(),
                     [](const RawRow& a, const RawRow& b) {
                       return a.date < b.date;
                     });
    season.results.n_teams = static_cast<int>(season.team_names.size());
    season.results.games.reserve(season_rows.size());
    for (std::size_t i = 0; i < season_rows.size(); ++i) {
      const RawRow& r = season_rows[i];
      season.results.games.push_back(GameRecord{team_ids[r.home],
                                                team_ids[r.away],
                                                r.outcome == 'H',
                                                static_cast<int>(i)});
    }
    report.seasons.push_back(std::move(season));
  }
  return report;
}

InputFormat detect_format(const std::string& name, std::istream& in) {
  if (name.size() >= 4 && name.substr(name.size() - 4) == ".csv") {
    return InputFormat::kCsv;
  }
  if ((name.size() >= 6 && name.substr(name.size() - 6) == ".jsonl") ||
      (name.size() >= 7 && name.substr(name.size() - 7) == ".ndjson")) {
    return InputFormat::kJsonLines;
  }
  // Fall back to sniffing: JSON lines start with '{'.
  const int c = in.peek();
  return c == '{' ? InputFormat::kJsonLines : InputFormat::kCsv;
}

}  // namespace

LoadReport load_seasons_stream(std::istream& in, const std::string& name,
                               InputFormat format) {
  if (format == InputFormat::kAuto) format = detect_format(name, in);
  std::vector<RawRow> rows = format == InputFormat::kCsv
                                 ? read_rows_csv(in, name)
                                 : read_rows_jsonl(in, name);
  return assemble_seasons(std::move(rows), name);
}

LoadReport load_seasons(const std::string& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_seasons_stream(in, path, format);
}

ResultSet truncate_season(const SeasonData& season, double frac) {
  if (!(frac >= 0.0) || frac > 1.0) {
    throw std::invalid_argument("truncate_season: frac must lie in [0, 1]");
  }
  const auto keep = static_cast<std::size_t>(
      std::floor(frac * static_cast<double>(season.results.games.size())));
  ResultSet out;
  out.n_teams = season.results.n_teams;
  out.games.assign(season.results.games.begin(),
                   season.results.games.begin() +
                       static_cast<std::ptrdiff_t>(keep));
  return out;
}

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buffer, ptr);
}

void write_result_set_csv(std::ostream& out, const ResultSet& results) {
  out << "order,home,away,home_won\n";
  for (const GameRecord& g : results.games) {
    out << g.order << ',' << g.home << ',' << g.away << ','
        << (g.home_won ? 1 : 0) << '\n';
  }
}

ResultSet read_result_set_csv(std::istream& in, const std::string& name,
                              int n_teams_hint) {
  std::string line_text;
  if (!std::getline(in, line_text)) fail(name, 1, "empty input");
  if (line_text.rfind("\xEF\xBB\xBF", 0) == 0) line_text.erase(0, 3);
  if (split_csv_row(line_text, name, 1) !=
      std::vector<std::string>{"order", "home", "away", "home_won"}) {
    fail(name, 1, "expected header 'order,home,away,home_won'");
  }
  ResultSet results;
  int max_team = -1;
  int line_no = 1;
  while (std::getline(in, line_text)) {
    ++line_no;
    if (line_text.empty() || line_text == "\r") continue;
    const auto fields = split_csv_row(line_text, name, line_no);
    if (fields.size() != 4) {
      fail(name, line_no,
           "expected 4 fields, found " + std::to_string(fields.size()));
    }
    GameRecord g;
    g.order = static_cast<int>(parse_long(fields[0], name, line_no, "order"));
    g.home = static_cast<int>(parse_long(fields[1], name, line_no, "home"));
    g.away = static_cast<int>(parse_long(fields[2], name, line_no, "away"));
    const long won = parse_long(fields[3], name, line_no, "home_won");
    if (won != 0 && won != 1) {
      fail(name, line_no, "home_won must be 0 or 1");
    }
    g.home_won = won == 1;
    if (g.home < 0 || g.away < 0) fail(name, line_no, "negative team id");
    if (g.home == g.away) fail(name, line_no, "home and away are equal");
    max_team = std::max({max_team, g.home, g.away});
    results.games.push_back(g);
  }
  results.n_teams = std::max(n_teams_hint, max_team + 1);
  if (results.n_teams < 1) fail(name, line_no, "no games and no team count");
  std::stable_sort(results.games.begin(), results.games.end(),
                   [](const GameRecord& a, const GameRecord& b) {
                     return a.order < b.order;
                   });
  return results;
}

void write_fitness_csv(std::ostream& out, const FitnessVector& fitness) {
  out << "team,fitness\n";
  for (int i = 0; i < fitness.size(); ++i) {
    out << i << ',' << format_double(fitness[i]) << '\n';
  }
}

FitnessVector read_fitness_csv(std::istream& in, const std::string& name) {
  std::string line_text;
  if (!std::getline(in, line_text)) fail(name, 1, "empty input");
  if (line_text.rfind("\xEF\xBB\xBF", 0) == 0) line_text.erase(0, 3);
  if (split_csv_row(line_text, name, 1) !=
      std::vector<std::string>{"team", "fitness"}) {
    fail(name, 1, "expected header 'team,fitness'");
  }
  std::vector<std::pair<int, double>> entries;
  int line_no = 1;
  while (std::getline(in, line_text)) {
    ++line_no;
    if (line_text.empty() || line_text == "\r") continue;
    const auto fields = split_csv_row(line_text, name, line_no);
    if (fields.size() != 2) {
      fail(name, line_no,
           "expected 2 fields, found " + std::to_string(fields.size()));
    }
    entries.emplace_back(
        static_cast<int>(parse_long(fields[0], name, line_no, "team")),
        parse_double(fields[1], name, line_no, "fitness"));
  }
  std::sort(entries.begin(), entries.end());
  FitnessVector fitness;
  fitness.values.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first != static_cast<int>(i)) {
      fail(name, 1, "team ids must cover 0..N-1 exactly once");
    }
    fitness.values.push_back(entries[i].second);
  }
  return fitness;
}

void write_scores_csv(std::ostream& out,
                      const std::vector<ScoreVector>& scores) {
  out << "method,team,score\n";
  for (const ScoreVector& sv : scores) {
    for (int i = 0; i < sv.size(); ++i) {
      out << method_name(sv.method) << ',' << i << ','
          << format_double(sv.scores[static_cast<std::size_t>(i)]) << '\n';
    }
  }
}

std::vector<ScoreVector> read_scores_csv(std::istream& in,
                                         const std::string& name) {
  std::string line_text;
  if (!std::getline(in, line_text)) fail(name, 1, "empty input");
  if (line_text.rfind("\xEF\xBB\xBF", 0) == 0) line_text.erase(0, 3);
  if (split_csv_row(line_text, name, 1) !=
      std::vector<std::string>{"method", "team", "score"}) {
    fail(name, 1, "expected header 'method,team,score'");
  }
  std::vector<ScoreVector> out;
  std::vector<std::vector<std::pair<int, double>>> entries;
  auto slot_for = [&](Method m) -> std::size_t {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].method == m) return i;
    }
    out.push_back(ScoreVector{m, {}});
    entries.emplace_back();
    return out.size() - 1;
  };
  int line_no = 1;
  while (std::getline(in, line_text)) {
    ++line_no;
    if (line_text.empty() || line_text == "\r") continue;
    const auto fields = split_csv_row(line_text, name, line_no);
    if (fields.size() != 3) {
      fail(name, line_no,
           "expected 3 fields, found " + std::to_string(fields.size()));
    }
    Method method;
    try {
      method = method_from_name(fields[0]);
    } catch (const std::invalid_argument& e) {
      fail(name, line_no, e.what());
    }
    entries[slot_for(method)].emplace_back(
        static_cast<int>(parse_long(fields[1], name, line_no, "team")),
        parse_double(fields[2], name, line_no, "score"));
  }
  for (std::size_t m = 0; m < out.size(); ++m) {
    std::sort(entries[m].begin(), entries[m].end());
    out[m].scores.reserve(entries[m].size());
    for (std::size_t i = 0; i < entries[m].size(); ++i) {
      if (entries[m][i].first != static_cast<int>(i)) {
        fail(name, 1, "method " + method_name(out[m].method) +
                          ": team ids must cover 0..N-1 exactly once");
      }
      out[m].scores.push_back(entries[m][i].second);
    }
  }
  return out;
}

}  // namespace leaguerank
