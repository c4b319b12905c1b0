#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "vgk/error.hpp"
#include "vgk/ranking/ranking.hpp"

namespace vgk {

enum class Answer { True, False, Unknown };
enum class Verdict { True, False };

inline std::string answer_name(Answer a) {
  switch (a) {
    case Answer::True: return "TRUE";
    case Answer::False: return "FALSE";
    case Answer::Unknown: return "UNKNOWN";
  }
  return "";
}

// One verification run: (TIME, ANSWER) for a tool on a task, plus the task's
// expected verdict.
struct TaskOutcome {
  std::string task;
  std::string tool;
  double time_s = 0.0;
  Answer answer = Answer::Unknown;
  Verdict expected = Verdict::True;
};

// Points per outcome cell. The competition's actual values are configuration;
// the repo ships an example file with placeholder values.
struct ScoringSchema {
  int correct_true = 0;
  int correct_false = 0;
  int incorrect_true = 0;
  int incorrect_false = 0;
  int unknown = 0;

  bool sane() const {
    return correct_true >= 0 && correct_false >= 0 && incorrect_true <= 0 &&
           incorrect_false <= 0;
  }

  static ScoringSchema from_json(const nlohmann::json& j, bool allow_insane = false) {
    ScoringSchema s;
    s.correct_true = j.at("correct_true").get<int>();
    s.correct_false = j.at("correct_false").get<int>();
    s.incorrect_true = j.at("incorrect_true").get<int>();
    s.incorrect_false = j.at("incorrect_false").get<int>();
    s.unknown = j.at("unknown").get<int>();
    if (!allow_insane && !s.sane())
      throw Error("scoring schema fails the sanity check (correct >= 0 >= incorrect); "
                  "pass the override flag to use it anyway");
    return s;
  }

  nlohmann::json to_json() const {
    return {{"correct_true", correct_true},
            {"correct_false", correct_false},
            {"incorrect_true", incorrect_true},
            {"incorrect_false", incorrect_false},
            {"unknown", unknown}};
  }
};

inline int score(const TaskOutcome& o, const ScoringSchema& s) {
  switch (o.answer) {
    case Answer::Unknown:
      return s.unknown;
    case Answer::True:
      return o.expected == Verdict::True ? s.correct_true : s.incorrect_true;
    case Answer::False:
      return o.expected == Verdict::False ? s.correct_false : s.incorrect_false;
  }
  return s.unknown;
}

inline bool outcome_correct(const TaskOutcome& o) {
  return (o.answer == Answer::True && o.expected == Verdict::True) ||
         (o.answer == Answer::False && o.expected == Verdict::False);
}

// Ranks the tool set over one aggregation unit (normally the outcomes of a
// single task): total score descending, ties by total runtime of correct runs
// ascending, remaining ties lexicographic by tool name. Tools without a
// record are treated as UNKNOWN with time 0 and reported via `warnings`.
inline Ranking rank_tools(const std::vector<TaskOutcome>& unit, const ToolSet& tools,
                          const ScoringSchema& schema,
                          std::vector<std::string>* warnings = nullptr) {
  if (unit.empty()) throw Error("rank_tools: empty aggregation unit");
  const int k = tools.size();
  std::vector<long long> total(k, 0);
  std::vector<double> success_time(k, 0.0);
  std::vector<bool> seen(k, false);
  for (const TaskOutcome& o : unit) {
    const int t = tools.index_of(o.tool);
    if (o.time_s < 0) throw Error("rank_tools: negative time for tool " + o.tool);
    seen[t] = true;
    total[t] += score(o, schema);
    if (outcome_correct(o)) success_time[t] += o.time_s;
  }
  for (int t = 0; t < k; ++t) {
    if (!seen[t]) {
      total[t] += schema.unknown;
      if (warnings)
        warnings->push_back("missing outcome for tool '" + tools.names[t] +
                            "' treated as UNKNOWN");
    }
  }
  std::vector<int> order(k);
  for (int t = 0; t < k; ++t) order[t] = t;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (total[a] != total[b]) return total[a] > total[b];
    if (success_time[a] != success_time[b]) return success_time[a] < success_time[b];
    return tools.names[a] < tools.names[b];
  });
  std::vector<int> positions(k);
  for (int r = 0; r < k; ++r) positions[order[r]] = r + 1;
  return Ranking(std::move(positions));
}

// Outcomes CSV: header "task,tool,time_s,answer,expected"; one record per
// (task, tool). No quoting; fields must not contain commas.
inline std::vector<TaskOutcome> parse_outcomes_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("outcomes CSV is empty");
  auto strip = [](std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    size_t b = 0;
    while (b < s.size() && s[b] == ' ') ++b;
    return s.substr(b);
  };
  if (strip(line) != "task,tool,time_s,answer,expected")
    throw Error("outcomes CSV must start with header 'task,tool,time_s,answer,expected'");
  std::vector<TaskOutcome> out;
  std::set<std::pair<std::string, std::string>> seen;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty()) continue;
    std::vector<std::string> fields;
    size_t pos = 0;
    while (true) {
      const size_t comma = s.find(',', pos);
      fields.push_back(strip(s.substr(pos, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 5)
      throw Error("outcomes CSV line " + std::to_string(lineno) + ": expected 5 fields");
    TaskOutcome o;
    o.task = fields[0];
    o.tool = fields[1];
    try {
      o.time_s = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw Error("outcomes CSV line " + std::to_string(lineno) + ": bad time_s");
    }
    if (o.time_s < 0)
      throw Error("outcomes CSV line " + std::to_string(lineno) + ": negative time_s");
    if (fields[3] == "TRUE")
      o.answer = Answer::True;
    else if (fields[3] == "FALSE")
      o.answer = Answer::False;
    else if (fields[3] == "UNKNOWN")
      o.answer = Answer::Unknown;
    else
      throw Error("outcomes CSV line " + std::to_string(lineno) + ": bad answer '" +
                  fields[3] + "'");
    if (fields[4] == "TRUE")
      o.expected = Verdict::True;
    else if (fields[4] == "FALSE")
      o.expected = Verdict::False;
    else
      throw Error("outcomes CSV line " + std::to_string(lineno) + ": bad expected '" +
                  fields[4] + "'");
    if (!seen.insert({o.task, o.tool}).second)
      throw Error("outcomes CSV line " + std::to_string(lineno) +
                  ": duplicate record for (" + o.task + ", " + o.tool + ")");
    out.push_back(std::move(o));
  }
  return out;
}

} // namespace vgk
