// Copyright 2026 The markovplay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "markovplay/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <system_error>
#include <thread>
#include <utility>

#include <fmt/format.h>

#include "json.hpp"
#include "markovplay/builtins.h"
#include "markovplay/errors.h"

namespace markovplay {
namespace {

using nlohmann::json;

constexpr std::int64_t kBuiltinIterations = 500000;
constexpr int kBuiltinReplications = 20;

struct PlayerDraft {
  std::optional<Procedure> procedure;
  std::optional<Eigen::MatrixXd> exploration;
  std::optional<BetaSchedule> schedule;
};

// Everything a spec needs, before the game is built and the chains are
// certified.
struct Draft {
  std::string name;
  std::optional<std::string> builtin;
  std::optional<Eigen::MatrixXd> payoff1;
  std::optional<Eigen::MatrixXd> payoff2;
  std::vector<std::string> labels1;
  std::vector<std::string> labels2;
  std::optional<Eigen::MatrixXd> potential;
  std::optional<double> value;
  std::array<PlayerDraft, 2> players;
  std::int64_t iterations = 1;
  std::uint64_t seed_base = 0;
  int replications = 1;
  RecordPolicy record;
  double tail_fraction = 0.2;
  OutputOptions outputs;
};

Draft DraftFromBuiltin(const std::string& name) {
  Draft draft;
  draft.name = name;
  draft.builtin = name;
  draft.iterations = kBuiltinIterations;
  draft.replications = kBuiltinReplications;
  draft.seed_base = 1;
  Game game = builtins::RockScissorsPaper();
  Eigen::MatrixXd exploration = builtins::PathExploration();
  if (name == "rsp") {
    draft.value = 0.0;
  } else if (name == "potential_gprime") {
    game = builtins::PotentialGamePrime();
    draft.potential = builtins::PotentialGamePrimePotential();
  } else if (name == "coordination_c") {
    game = builtins::CoordinationGame();
    exploration = builtins::StarExploration();
  } else {
    throw ConfigError("builtin: unknown experiment \"" + name +
                      "\" (expected rsp, potential_gprime or coordination_c)");
  }
  draft.payoff1 = game.payoff(Side::kRow);
  draft.payoff2 = game.payoff(Side::kColumn);
  draft.labels1 = game.labels(Side::kRow);
  draft.labels2 = game.labels(Side::kColumn);
  for (auto& player : draft.players) {
    player.procedure = Procedure::kPayoffBased;
    player.exploration = exploration;
    player.schedule = BetaSchedule::LogPower(1.0, 0.8);
  }
  return draft;
}

// --- JSON reading -------------------------------------------------------

void CheckKeys(const json& object, const std::string& path,
               const std::set<std::string>& allowed) {
  if (!object.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& item : object.items()) {
    if (!allowed.contains(item.key())) {
      throw ConfigError((path.empty() ? "" : path + ".") + item.key() +
                        ": unknown key");
    }
  }
}

double ParseDecimal(std::string_view text, const std::string& path) {
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(path + ": cannot parse \"" + std::string(text) +
                      "\" as a number");
  }
  return value;
}

double ParseEntry(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string text = j.get<std::string>();
    const auto slash = text.find('/');
    if (slash == std::string::npos) return ParseDecimal(text, path);
    const double num = ParseDecimal(std::string_view(text).substr(0, slash), path);
    const double den = ParseDecimal(std::string_view(text).substr(slash + 1), path);
    if (den == 0.0) throw ConfigError(path + ": zero denominator");
    return num / den;
  }
  throw ConfigError(path + ": expected a number or a fraction string");
}

double ParseNumber(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

std::int64_t ParseInteger(const json& j, const std::string& path,
                          std::int64_t minimum) {
  if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  const std::int64_t value = j.get<std::int64_t>();
  if (value < minimum) {
    throw ConfigError(path + ": must be >= " + std::to_string(minimum));
  }
  return value;
}

bool ParseBool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path + ": expected true or false");
  return j.get<bool>();
}

Eigen::MatrixXd ParseMatrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(path + ": expected a nonempty list of rows");
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].empty()) {
      throw ConfigError(row_path + ": expected a nonempty list of entries");
    }
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) {
      throw ConfigError(row_path + ": has " + std::to_string(j[r].size()) +
                        " entries, expected " + std::to_string(cols));
    }
  }
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = ParseEntry(j[r][c], path + "[" + std::to_string(r) + "][" +
                                        std::to_string(c) + "]");
    }
  }
  return m;
}

std::vector<std::string> ParseLabels(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected a list of strings");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) {
      throw ConfigError(path + "[" + std::to_string(i) + "]: expected a string");
    }
    labels.push_back(j[i].get<std::string>());
  }
  return labels;
}

BetaSchedule ParseSchedule(const json& j, const std::string& path) {
  CheckKeys(j, path, {"kind", "a0", "p", "a"});
  std::string kind = "H";
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw ConfigError(path + ".kind: expected a string");
    kind = j["kind"].get<std::string>();
  }
  BetaSchedule schedule;
  if (kind == "H") {
    schedule.kind = BetaSchedule::Kind::kLogPower;
    if (j.contains("a0")) schedule.a0 = ParseNumber(j["a0"], path + ".a0");
    if (j.contains("p")) schedule.p = ParseNumber(j["p"], path + ".p");
    if (j.contains("a")) throw ConfigError(path + ".a: only valid for kind Hprime");
  } else if (kind == "Hprime") {
    schedule.kind = BetaSchedule::Kind::kLogLinear;
    if (!j.contains("a")) throw ConfigError(path + ".a: required for kind Hprime");
    schedule.a_const = ParseNumber(j["a"], path + ".a");
    if (j.contains("a0") || j.contains("p")) {
      throw ConfigError(path + ": a0 and p are only valid for kind H");
    }
  } else {
    throw ConfigError(path + ".kind: expected \"H\" or \"Hprime\", got \"" +
                      kind + "\"");
  }
  // The payoff-spread condition of Hprime is checked once the game is known.
  if (schedule.kind == BetaSchedule::Kind::kLogPower) {
    try {
      schedule.Validate();
    } catch (const DomainError& e) {
      throw ConfigError(path + ": " + e.what());
    }
  } else if (!(schedule.a_const > 0.0)) {
    throw ConfigError(path + ".a: must be positive");
  }
  return schedule;
}

void ReadPlayer(const json& j, const std::string& path, PlayerDraft& player) {
  CheckKeys(j, path, {"procedure", "exploration", "schedule"});
  if (j.contains("procedure")) {
    if (!j["procedure"].is_string()) {
      throw ConfigError(path + ".procedure: expected a string");
    }
    try {
      player.procedure = ParseProcedure(j["procedure"].get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(path + "." + e.what());
    }
  }
  if (j.contains("exploration")) {
    player.exploration = ParseMatrix(j["exploration"], path + ".exploration");
  }
  if (j.contains("schedule")) {
    player.schedule = ParseSchedule(j["schedule"], path + ".schedule");
  }
}

void ReadDraft(const json& root, Draft& draft) {
  CheckKeys(root, "", {"name", "builtin", "game", "potential", "value",
                       "players", "iterations", "seed_base", "replications",
                       "record_stride", "geometric_ratio", "tail_fraction",
                       "outputs"});
  if (root.contains("name")) {
    if (!root["name"].is_string()) throw ConfigError("name: expected a string");
    draft.name = root["name"].get<std::string>();
  }
  if (root.contains("game")) {
    const json& game = root["game"];
    CheckKeys(game, "game", {"payoff1", "payoff2", "labels1", "labels2"});
    if (game.contains("payoff1")) {
      draft.payoff1 = ParseMatrix(game["payoff1"], "game.payoff1");
    }
    if (game.contains("payoff2")) {
      draft.payoff2 = ParseMatrix(game["payoff2"], "game.payoff2");
    }
    if (game.contains("labels1")) {
      draft.labels1 = ParseLabels(game["labels1"], "game.labels1");
    }
    if (game.contains("labels2")) {
      draft.labels2 = ParseLabels(game["labels2"], "game.labels2");
    }
  }
  if (root.contains("potential")) {
    if (root["potential"].is_null()) {
      draft.potential.reset();
    } else {
      draft.potential = ParseMatrix(root["potential"], "potential");
    }
  }
  if (root.contains("value")) {
    if (root["value"].is_null()) {
      draft.value.reset();
    } else {
      draft.value = ParseNumber(root["value"], "value");
    }
  }
  if (root.contains("players")) {
    const json& players = root["players"];
    if (!players.is_array() || players.size() != 2) {
      throw ConfigError("players: expected a list of exactly two players");
    }
    for (int i = 0; i < 2; ++i) {
      ReadPlayer(players[i], "players[" + std::to_string(i) + "]",
                 draft.players[i]);
    }
  }
  if (root.contains("iterations")) {
    draft.iterations = ParseInteger(root["iterations"], "iterations", 1);
  }
  if (root.contains("seed_base")) {
    if (!root["seed_base"].is_number_unsigned()) {
      throw ConfigError("seed_base: expected a nonnegative integer");
    }
    draft.seed_base = root["seed_base"].get<std::uint64_t>();
  }
  if (root.contains("replications")) {
    draft.replications =
        static_cast<int>(ParseInteger(root["replications"], "replications", 1));
  }
  if (root.contains("record_stride")) {
    draft.record.stride = ParseInteger(root["record_stride"], "record_stride", 1);
  }
  if (root.contains("geometric_ratio")) {
    draft.record.geometric_ratio =
        ParseNumber(root["geometric_ratio"], "geometric_ratio");
  }
  if (root.contains("tail_fraction")) {
    draft.tail_fraction = ParseNumber(root["tail_fraction"], "tail_fraction");
    if (!(draft.tail_fraction > 0.0 && draft.tail_fraction <= 1.0)) {
      throw ConfigError("tail_fraction: must lie in (0, 1]");
    }
  }
  if (root.contains("outputs")) {
    const json& outputs = root["outputs"];
    CheckKeys(outputs, "outputs", {"trajectory_csv", "summary_json"});
    if (outputs.contains("trajectory_csv")) {
      draft.outputs.trajectory_csv =
          ParseBool(outputs["trajectory_csv"], "outputs.trajectory_csv");
    }
    if (outputs.contains("summary_json")) {
      draft.outputs.summary_json =
          ParseBool(outputs["summary_json"], "outputs.summary_json");
    }
  }
}

ExplorationChain CertifyChain(const Eigen::MatrixXd& m, const std::string& path) {
  try {
    return CheckExploration(StochasticMatrix(m));
  } catch (const StructuralError& e) {
    throw StructuralError(path + ": " + e.what(), e.from(), e.to());
  } catch (const ReversibilityError& e) {
    throw ReversibilityError(path + ": " + e.what(), e.max_violation());
  } catch (const ShapeError& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ExperimentSpec Finalize(const Draft& draft) {
  if (draft.name.empty()) throw ConfigError("name: required");
  if (!draft.payoff1) throw ConfigError("game.payoff1: required");
  if (!draft.payoff2) throw ConfigError("game.payoff2: required");
  std::optional<Game> game;
  try {
    game.emplace(*draft.payoff1, *draft.payoff2, draft.labels1, draft.labels2);
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("game: ") + e.what());
  }
  std::vector<PlayerSetup> setups;
  for (int i = 0; i < 2; ++i) {
    const std::string path = "players[" + std::to_string(i) + "]";
    const PlayerDraft& player = draft.players[i];
    if (!player.exploration) throw ConfigError(path + ".exploration: required");
    setups.push_back(PlayerSetup{
        player.procedure.value_or(Procedure::kPayoffBased),
        CertifyChain(*player.exploration, path + ".exploration"),
        player.schedule.value_or(BetaSchedule::LogPower(1.0, 0.8))});
  }
  if (draft.value && Classify(*game) != GameClass::kZeroSum) {
    throw ConfigError("value: only meaningful for a zero-sum game");
  }
  SimulationConfig simulation{*game,
                              {setups[0], setups[1]},
                              draft.iterations,
                              draft.seed_base,
                              draft.record,
                              draft.potential};
  ValidateConfig(simulation);
  if (draft.potential) {
    const PotentialCertificate certificate =
        VerifyPotential(*game, *draft.potential);
    if (certificate.max_residual > kDefaultTolerance) {
      throw ConfigError("potential: not a potential of the game (residual " +
                        std::to_string(certificate.max_residual) + ")");
    }
  }
  return ExperimentSpec{draft.name,         draft.builtin,
                        std::move(simulation), draft.replications,
                        draft.seed_base,    draft.outputs,
                        draft.value,        draft.tail_fraction};
}

json VectorJson(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json QuartilesJson(const Quartiles& q) {
  return json{{"median", q.median}, {"q1", q.q1}, {"q3", q.q3}, {"iqr", q.iqr()}};
}

std::string FormatNumber(double x) { return fmt::format("{:.12g}", x); }

// Matrices are emitted one row per line. They go into the tree as
// placeholder strings and are spliced in after dumping.
class MatrixSplicer {
 public:
  json Placeholder(const Eigen::MatrixXd& m) {
    matrices_.push_back(m);
    return Token(matrices_.size() - 1);
  }

  std::string Splice(std::string text) const {
    for (std::size_t k = 0; k < matrices_.size(); ++k) {
      const std::string token = "\"" + Token(k) + "\"";
      const std::size_t at = text.find(token);
      const std::size_t line_start = text.rfind('\n', at) + 1;
      const std::string indent(text.find_first_not_of(' ', line_start) - line_start, ' ');
      text.replace(at, token.size(), Rows(matrices_[k], indent));
    }
    return text;
  }

 private:
  static std::string Token(std::size_t k) { return "@matrix" + std::to_string(k) + "@"; }

  static std::string Rows(const Eigen::MatrixXd& m, const std::string& indent) {
    std::string out = "[\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      out += indent + "  " + row.dump() + (r + 1 < m.rows() ? ",\n" : "\n");
    }
    return out + indent + "]";
  }

  std::vector<Eigen::MatrixXd> matrices_;
};

}  // namespace

std::vector<std::string> BuiltinNames() {
  return {"rsp", "potential_gprime", "coordination_c"};
}

ExperimentSpec BuiltinSpec(const std::string& name) {
  return Finalize(DraftFromBuiltin(name));
}

ExperimentSpec ParseConfig(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<document>: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("<document>: expected an object");
  Draft draft;
  if (root.contains("builtin") && !root["builtin"].is_null()) {
    if (!root["builtin"].is_string()) {
      throw ConfigError("builtin: expected a string");
    }
    draft = DraftFromBuiltin(root["builtin"].get<std::string>());
  }
  ReadDraft(root, draft);
  return Finalize(draft);
}

std::string EmitConfig(const ExperimentSpec& spec) {
  const SimulationConfig& sim = spec.simulation;
  MatrixSplicer splicer;
  json root;
  root["name"] = spec.name;
  if (spec.builtin) root["builtin"] = *spec.builtin;
  root["game"] = {{"payoff1", splicer.Placeholder(sim.game.payoff(Side::kRow))},
                  {"payoff2", splicer.Placeholder(sim.game.payoff(Side::kColumn))},
                  {"labels1", sim.game.labels(Side::kRow)},
                  {"labels2", sim.game.labels(Side::kColumn)}};
  if (sim.potential) root["potential"] = splicer.Placeholder(*sim.potential);
  if (spec.value) root["value"] = *spec.value;
  json players = json::array();
  for (const PlayerSetup& setup : sim.players) {
    json schedule;
    schedule["kind"] = ToString(setup.schedule.kind);
    if (setup.schedule.kind == BetaSchedule::Kind::kLogPower) {
      schedule["a0"] = setup.schedule.a0;
      schedule["p"] = setup.schedule.p;
    } else {
      schedule["a"] = setup.schedule.a_const;
    }
    players.push_back({{"procedure", ToString(setup.procedure)},
                       {"exploration", splicer.Placeholder(setup.chain.m0().entries())},
                       {"schedule", schedule}});
  }
  root["players"] = players;
  root["iterations"] = sim.iterations;
  root["seed_base"] = spec.seed_base;
  root["replications"] = spec.replications;
  root["record_stride"] = sim.record.stride;
  root["geometric_ratio"] = sim.record.geometric_ratio;
  root["tail_fraction"] = spec.tail_fraction;
  root["outputs"] = {{"trajectory_csv", spec.outputs.trajectory_csv},
                     {"summary_json", spec.outputs.summary_json}};
  return splicer.Splice(root.dump(2)) + "\n";
}

Quartiles ComputeQuartiles(std::vector<double> values) {
  if (values.empty()) throw DomainError("quartiles of an empty sample");
  std::sort(values.begin(), values.end());
  const auto at = [&values](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return Quartiles{at(0.25), at(0.5), at(0.75)};
}

ExperimentSummary RunReplications(const ExperimentSpec& spec, int threads) {
  const GameClass game_class = Classify(spec.simulation.game);
  const int count = spec.replications;
  if (count < 1) throw ConfigError("replications: must be >= 1");
  ValidateConfig(spec.simulation);

  std::vector<std::optional<ReplicationResult>> results(count);
  std::vector<std::string> failures(count);
  std::atomic<int> next{0};
  const auto worker = [&]() {
    for (int k = next++; k < count; k = next++) {
      const std::uint64_t seed = spec.seed_base + static_cast<std::uint64_t>(k);
      try {
        SimulationConfig config = spec.simulation;
        config.seed = seed;
        Trajectory trajectory = Run(config);
        ConvergenceReport report = Evaluate(config.game, trajectory, spec.value,
                                            spec.tail_fraction);
        MixedProfile profile = trajectory.FinalProfile();
        ReplicationResult result{seed,
                                 std::move(trajectory),
                                 report,
                                 profile,
                                 0.0,
                                 0.0,
                                 0.0,
                                 std::nullopt,
                                 std::nullopt};
        result.gbar1 = result.trajectory.gbar1.back();
        result.gbar2 = result.trajectory.gbar2.back();
        result.gbar1_tail_mean =
            PayoffTailMean(result.trajectory, spec.tail_fraction);
        if (game_class == GameClass::kIdentical) {
          result.nearest_strict = NearestStrictEquilibrium(config.game, profile);
          if (result.nearest_strict) {
            result.gbar_limit = config.game.payoff(
                Side::kRow, result.nearest_strict->profile.row,
                result.nearest_strict->profile.column);
          }
        }
        results[k] = std::move(result);
      } catch (const std::exception& e) {
        failures[k] = e.what();
        if (failures[k].empty()) failures[k] = "unknown error";
      }
    }
  };

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, count);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (int k = 0; k < count; ++k) {
    if (!failures[k].empty()) {
      throw std::runtime_error(
          "replication with seed " +
          std::to_string(spec.seed_base + static_cast<std::uint64_t>(k)) +
          " failed: " + failures[k]);
    }
  }

  ExperimentSummary summary;
  summary.name = spec.name;
  summary.game_class = game_class;
  std::vector<double> exploitability, abs_gbar1, value_error, drift, tail_mean;
  for (auto& result : results) {
    exploitability.push_back(result->report.exploitability);
    abs_gbar1.push_back(std::abs(result->gbar1));
    if (result->report.value_error) value_error.push_back(*result->report.value_error);
    if (result->report.potential_drift) drift.push_back(*result->report.potential_drift);
    if (result->report.potential_tail_mean) {
      tail_mean.push_back(*result->report.potential_tail_mean);
    }
    summary.replications.push_back(std::move(*result));
  }
  summary.exploitability = ComputeQuartiles(exploitability);
  summary.abs_gbar1 = ComputeQuartiles(abs_gbar1);
  if (!value_error.empty()) summary.value_error = ComputeQuartiles(value_error);
  if (!drift.empty()) summary.potential_drift = ComputeQuartiles(drift);
  if (!tail_mean.empty()) summary.potential_tail_mean = ComputeQuartiles(tail_mean);
  return summary;
}

std::string TrajectoryFileName(const std::string& name, std::uint64_t seed) {
  return name + "_seed" + std::to_string(seed) + ".csv";
}

std::string SummaryFileName(const std::string& name) {
  return name + "_summary.json";
}

std::string FormatTrajectoryCsv(const Trajectory& trajectory) {
  if (trajectory.stages.empty()) throw DomainError("empty trajectory");
  std::string out = "n";
  const Eigen::Index k1 = trajectory.v1.front().size();
  const Eigen::Index k2 = trajectory.v2.front().size();
  for (Eigen::Index i = 0; i < k1; ++i) out += fmt::format(",v1_{}", i);
  for (Eigen::Index i = 0; i < k2; ++i) out += fmt::format(",v2_{}", i);
  out += ",gbar1,gbar2";
  if (trajectory.has_potential()) out += ",phibar";
  out += '\n';
  for (std::size_t row = 0; row < trajectory.stages.size(); ++row) {
    out += std::to_string(trajectory.stages[row]);
    for (Eigen::Index i = 0; i < k1; ++i) {
      out += ',' + FormatNumber(trajectory.v1[row][i]);
    }
    for (Eigen::Index i = 0; i < k2; ++i) {
      out += ',' + FormatNumber(trajectory.v2[row][i]);
    }
    out += ',' + FormatNumber(trajectory.gbar1[row]);
    out += ',' + FormatNumber(trajectory.gbar2[row]);
    if (trajectory.has_potential()) out += ',' + FormatNumber(trajectory.phibar[row]);
    out += '\n';
  }
  return out;
}

void WriteTrajectoryCsv(const Trajectory& trajectory,
                        const std::filesystem::path& path) {
  const std::string text = FormatTrajectoryCsv(trajectory);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string());
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw std::runtime_error("write failed for " + path.string());
}

std::string FormatSummaryJson(const ExperimentSpec& spec,
                              const ExperimentSummary& summary) {
  const Game& game = spec.simulation.game;
  json seeds = json::array();
  std::map<std::string, int> limit_counts;
  for (const ReplicationResult& r : summary.replications) {
    json entry = {{"seed", r.seed},
                  {"csv", TrajectoryFileName(spec.name, r.seed)},
                  {"final_exploitability", r.report.exploitability},
                  {"gbar1", r.gbar1},
                  {"gbar2", r.gbar2},
                  {"gbar1_tail_mean", r.gbar1_tail_mean},
                  {"v1", VectorJson(r.final_profile.row.weights())},
                  {"v2", VectorJson(r.final_profile.column.weights())}};
    if (r.report.value_error) entry["value_error"] = *r.report.value_error;
    if (r.report.potential_drift) {
      entry["potential_drift"] = *r.report.potential_drift;
      entry["potential_tail_mean"] = *r.report.potential_tail_mean;
    }
    if (r.nearest_strict) {
      const std::string row = game.ActionName(Side::kRow, r.nearest_strict->profile.row);
      const std::string col =
          game.ActionName(Side::kColumn, r.nearest_strict->profile.column);
      entry["nearest_strict_ne"] = {{"row", row},
                                    {"column", col},
                                    {"distance", r.nearest_strict->distance}};
      entry["gbar_limit"] = *r.gbar_limit;
      ++limit_counts["(" + row + "," + col + ")"];
    }
    seeds.push_back(std::move(entry));
  }
  json procedures = json::array();
  for (const PlayerSetup& setup : spec.simulation.players) {
    procedures.push_back(ToString(setup.procedure));
  }
  json aggregate = {{"replications", summary.replications.size()},
                    {"iterations", spec.simulation.iterations},
                    {"game_class", ToString(summary.game_class)},
                    {"procedures", procedures},
                    {"tail_fraction", spec.tail_fraction},
                    {"final_exploitability", QuartilesJson(summary.exploitability)},
                    {"abs_gbar1", QuartilesJson(summary.abs_gbar1)}};
  if (summary.value_error) {
    aggregate["value"] = *spec.value;
    aggregate["value_error"] = QuartilesJson(*summary.value_error);
  }
  if (summary.potential_drift) {
    aggregate["potential_drift"] = QuartilesJson(*summary.potential_drift);
    aggregate["potential_tail_mean"] = QuartilesJson(*summary.potential_tail_mean);
  }
  if (!limit_counts.empty()) aggregate["nearest_strict_ne_counts"] = limit_counts;
  const json root = {{"name", spec.name}, {"seeds", seeds}, {"aggregate", aggregate}};
  return root.dump(2) + "\n";
}

ExperimentSummary RunExperiment(const ExperimentSpec& spec,
                                const std::filesystem::path& out_dir,
                                int threads) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + out_dir.string() + ": " +
                             ec.message());
  }
  ExperimentSummary summary = RunReplications(spec, threads);
  if (spec.outputs.trajectory_csv) {
    for (const ReplicationResult& r : summary.replications) {
      WriteTrajectoryCsv(r.trajectory, out_dir / TrajectoryFileName(spec.name, r.seed));
    }
  }
  if (spec.outputs.summary_json) {
    const std::filesystem::path path = out_dir / SummaryFileName(spec.name);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + path.string());
    file << FormatSummaryJson(spec, summary);
    if (!file) throw std::runtime_error("write failed for " + path.string());
  }
  return summary;
}

}  // namespace markovplay
