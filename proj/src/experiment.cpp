#include "stratfuse/experiment.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stratfuse/errors.hpp"
#include "stratfuse/rng.hpp"

namespace stratfuse::harness {

using nlohmann::json;

void ExperimentConfig::validate() const {
  sim.validate();
  if (nodes < 1) throw ConfigError("ExperimentConfig: nodes must be >= 1");
  train.validate();
  fuse.validate();
  prior.validate();
  if (roster.empty()) throw ConfigError("ExperimentConfig: empty adversary roster");
  for (const auto& row : roster)
    if (static_cast<int>(row.size()) != sim.red_team_size)
      throw ConfigError("ExperimentConfig: roster rows must match red team size");
  if (static_cast<int>(fixed_u.size()) != sim.red_team_size)
    throw ConfigError("ExperimentConfig: fixed_u needs one matrix per red robot");
  for (const auto& m : fixed_u) {
    m.validate();
    if (m.r != stratagem_count())
      throw ConfigError("ExperimentConfig: fixed_u order must equal roster size");
  }
  if (adversary_initial_tactic < 0 || adversary_initial_tactic >= stratagem_count())
    throw ConfigError("ExperimentConfig: adversary_initial_tactic out of range");
  if (eval_episodes < 1) throw ConfigError("ExperimentConfig: eval_episodes must be >= 1");
  if (heldout_count < 1) throw ConfigError("ExperimentConfig: heldout_count must be >= 1");
  if (init_gate < 0.0 || init_gate > 1.0)
    throw ConfigError("ExperimentConfig: init_gate outside [0,1]");
}

ExperimentConfig default_experiment() {
  ExperimentConfig cfg;
  cfg.sim = ctf::default_config();
  cfg.roster = ctf::default_roster();
  const int r = cfg.stratagem_count();
  cfg.fixed_u.assign(static_cast<std::size_t>(cfg.sim.red_team_size),
                     fusion::AgentSwitchMatrix::uniform(r));
  apply_profile(cfg, "desk");
  return cfg;
}

void apply_profile(ExperimentConfig& cfg, const std::string& profile) {
  if (profile == "desk") {
    cfg.train.iterations = 120;
    cfg.train.samples_per_iteration = 48;
    cfg.train.elite_count = 5;
    cfg.train.episodes_per_evaluation = 16;
    cfg.fuse = cfg.train;
    cfg.fuse.iterations = 120;
    cfg.fuse.samples_per_iteration = 56;
    cfg.fuse.episodes_per_evaluation = 12;
    cfg.eval_episodes = 200;
  } else if (profile == "full") {
    cfg.train.iterations = 300;
    cfg.train.samples_per_iteration = 50;
    cfg.train.elite_count = 5;
    cfg.train.episodes_per_evaluation = 30;
    cfg.fuse = cfg.train;
    cfg.fuse.episodes_per_evaluation = 8;
    cfg.eval_episodes = 1000;
  } else {
    throw ConfigError("unknown profile '" + profile + "' (expected desk or full)");
  }
  cfg.profile = profile;
}

namespace {

ctf::Cell cell_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("config: cell must be [x, y]");
  return {j[0].get<int>(), j[1].get<int>()};
}

json cell_to_json(ctf::Cell c) { return json::array({c.x, c.y}); }

void load_gdice(const json& j, gdice::GDiceConfig& g) {
  if (j.contains("iterations")) g.iterations = j["iterations"].get<int>();
  if (j.contains("samples_per_iteration"))
    g.samples_per_iteration = j["samples_per_iteration"].get<int>();
  if (j.contains("elite_count")) g.elite_count = j["elite_count"].get<int>();
  if (j.contains("learning_rate")) g.learning_rate = j["learning_rate"].get<double>();
  if (j.contains("episodes_per_evaluation"))
    g.episodes_per_evaluation = j["episodes_per_evaluation"].get<int>();
  if (j.contains("prob_floor")) g.prob_floor = j["prob_floor"].get<double>();
  if (j.contains("retain_best")) g.retain_best = j["retain_best"].get<bool>();
}

json gdice_to_json(const gdice::GDiceConfig& g) {
  return json{{"iterations", g.iterations},
              {"samples_per_iteration", g.samples_per_iteration},
              {"elite_count", g.elite_count},
              {"learning_rate", g.learning_rate},
              {"episodes_per_evaluation", g.episodes_per_evaluation},
              {"prob_floor", g.prob_floor},
              {"retain_best", g.retain_best}};
}

void load_sim(const json& j, ctf::SimConfig& s) {
  if (j.contains("grid_width")) s.grid_width = j["grid_width"].get<int>();
  if (j.contains("grid_height")) s.grid_height = j["grid_height"].get<int>();
  if (j.contains("vantage_points_per_side"))
    s.vantage_points_per_side = j["vantage_points_per_side"].get<int>();
  if (j.contains("blue_team_size")) s.blue_team_size = j["blue_team_size"].get<int>();
  if (j.contains("red_team_size")) s.red_team_size = j["red_team_size"].get<int>();
  if (j.contains("horizon")) s.horizon = j["horizon"].get<int>();
  if (j.contains("gamma")) s.gamma = j["gamma"].get<double>();
  if (j.contains("tag_range")) s.tag_range = j["tag_range"].get<int>();
  if (j.contains("close_range")) s.close_range = j["close_range"].get<int>();
  if (j.contains("far_range")) s.far_range = j["far_range"].get<int>();
  if (j.contains("flag_sight_range")) s.flag_sight_range = j["flag_sight_range"].get<int>();
  if (j.contains("step_penalty")) s.step_penalty = j["step_penalty"].get<double>();
  if (j.contains("tag_reward")) s.tag_reward = j["tag_reward"].get<double>();
  if (j.contains("capture_reward")) s.capture_reward = j["capture_reward"].get<double>();
  if (j.contains("flag_rule")) {
    std::string rule = j["flag_rule"].get<std::string>();
    if (rule == "fixed") s.flag_rule = ctf::FlagRule::Fixed;
    else if (rule == "random") s.flag_rule = ctf::FlagRule::Random;
    else throw ConfigError("config: flag_rule must be 'fixed' or 'random'");
  }
  if (j.contains("flag_index")) {
    s.flag_index[0] = j["flag_index"][0].get<int>();
    s.flag_index[1] = j["flag_index"][1].get<int>();
  }
  auto load_cells = [&](const char* key, std::vector<ctf::Cell>& out) {
    if (!j.contains(key)) return;
    out.clear();
    for (const json& c : j[key]) out.push_back(cell_from_json(c));
  };
  load_cells("vantage_blue", s.vantage[0]);
  load_cells("vantage_red", s.vantage[1]);
  load_cells("spawns_blue", s.spawns[0]);
  load_cells("spawns_red", s.spawns[1]);
  if (j.contains("sentries")) {
    s.sentries.clear();
    for (const json& row : j["sentries"]) {
      if (!row.is_array() || row.size() != 3) throw ConfigError("config: sentry needs 3 points");
      s.sentries.push_back({{row[0].get<int>(), row[1].get<int>(), row[2].get<int>()}});
    }
  }
  if (j.contains("pincers")) {
    s.pincers.clear();
    for (const json& row : j["pincers"]) {
      if (!row.is_array() || row.size() != 4) throw ConfigError("config: pincer needs 4 points");
      s.pincers.push_back(
          {{row[0].get<int>(), row[1].get<int>(), row[2].get<int>(), row[3].get<int>()}});
    }
  }
}

json sim_to_json(const ctf::SimConfig& s) {
  json j{{"grid_width", s.grid_width},
         {"grid_height", s.grid_height},
         {"vantage_points_per_side", s.vantage_points_per_side},
         {"blue_team_size", s.blue_team_size},
         {"red_team_size", s.red_team_size},
         {"horizon", s.horizon},
         {"gamma", s.gamma},
         {"tag_range", s.tag_range},
         {"close_range", s.close_range},
         {"far_range", s.far_range},
         {"flag_sight_range", s.flag_sight_range},
         {"step_penalty", s.step_penalty},
         {"tag_reward", s.tag_reward},
         {"capture_reward", s.capture_reward},
         {"flag_rule", s.flag_rule == ctf::FlagRule::Fixed ? "fixed" : "random"},
         {"flag_index", json::array({s.flag_index[0], s.flag_index[1]})}};
  auto cells = [](const std::vector<ctf::Cell>& v) {
    json a = json::array();
    for (ctf::Cell c : v) a.push_back(cell_to_json(c));
    return a;
  };
  j["vantage_blue"] = cells(s.vantage[0]);
  j["vantage_red"] = cells(s.vantage[1]);
  j["spawns_blue"] = cells(s.spawns[0]);
  j["spawns_red"] = cells(s.spawns[1]);
  json sentries = json::array();
  for (const auto& x : s.sentries)
    sentries.push_back(json::array({x.points[0], x.points[1], x.points[2]}));
  j["sentries"] = sentries;
  json pincers = json::array();
  for (const auto& x : s.pincers)
    pincers.push_back(json::array({x.points[0], x.points[1], x.points[2], x.points[3]}));
  j["pincers"] = pincers;
  return j;
}

fusion::AdversarySwitchWeights u_from_json(const json& j, int agents, int r) {
  if (j.is_string()) {
    std::string kind = j.get<std::string>();
    fusion::AgentSwitchMatrix m;
    if (kind == "uniform") m = fusion::AgentSwitchMatrix::uniform(r);
    else if (kind == "identity") m = fusion::AgentSwitchMatrix::identity(r);
    else throw ConfigError("config: fixed_u string must be 'uniform' or 'identity'");
    return fusion::AdversarySwitchWeights(static_cast<std::size_t>(agents), m);
  }
  fusion::AdversarySwitchWeights u;
  for (const json& agent : j) {
    fusion::AgentSwitchMatrix m;
    m.r = r;
    for (const json& row : agent)
      for (const json& v : row) m.p.push_back(v.get<double>());
    m.validate();
    u.push_back(std::move(m));
  }
  if (static_cast<int>(u.size()) != agents)
    throw ConfigError("config: fixed_u must have one matrix per red robot");
  return u;
}

json u_to_json(const fusion::AdversarySwitchWeights& u) {
  json agents = json::array();
  for (const auto& m : u) {
    json rows = json::array();
    for (int s = 0; s < m.r; ++s) {
      json row = json::array();
      for (double v : m.row(s)) row.push_back(v);
      rows.push_back(row);
    }
    agents.push_back(rows);
  }
  return agents;
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  ExperimentConfig cfg = default_experiment();
  if (j.contains("profile")) apply_profile(cfg, j["profile"].get<std::string>());
  if (j.contains("sim")) load_sim(j["sim"], cfg.sim);
  if (j.contains("nodes")) cfg.nodes = j["nodes"].get<int>();
  if (j.contains("train")) load_gdice(j["train"], cfg.train);
  if (j.contains("fuse")) load_gdice(j["fuse"], cfg.fuse);
  if (j.contains("prior")) {
    if (j["prior"].contains("concentration"))
      cfg.prior.concentration = j["prior"]["concentration"].get<double>();
    if (j["prior"].contains("candidate_count"))
      cfg.prior.candidate_count = j["prior"]["candidate_count"].get<int>();
  }
  if (j.contains("roster")) {
    cfg.roster.clear();
    for (const json& row : j["roster"]) {
      ctf::TeamTactic tt;
      for (const json& name : row) tt.push_back(ctf::tactic_from_name(name.get<std::string>()));
      cfg.roster.push_back(std::move(tt));
    }
  }
  if (j.contains("fixed_u"))
    cfg.fixed_u = u_from_json(j["fixed_u"], cfg.sim.red_team_size, cfg.stratagem_count());
  else if (static_cast<int>(cfg.fixed_u.size()) != cfg.sim.red_team_size ||
           (!cfg.fixed_u.empty() && cfg.fixed_u.front().r != cfg.stratagem_count()))
    cfg.fixed_u.assign(static_cast<std::size_t>(cfg.sim.red_team_size),
                       fusion::AgentSwitchMatrix::uniform(cfg.stratagem_count()));
  if (j.contains("adversary_initial_tactic"))
    cfg.adversary_initial_tactic = j["adversary_initial_tactic"].get<int>();
  if (j.contains("eval_episodes")) cfg.eval_episodes = j["eval_episodes"].get<int>();
  if (j.contains("heldout_count")) cfg.heldout_count = j["heldout_count"].get<int>();
  if (j.contains("init_gate")) cfg.init_gate = j["init_gate"].get<double>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  if (j.contains("seed")) cfg.master_seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();

  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment(text.str());
}

std::string experiment_to_json(const ExperimentConfig& cfg) {
  json j;
  j["sim"] = sim_to_json(cfg.sim);
  j["nodes"] = cfg.nodes;
  j["train"] = gdice_to_json(cfg.train);
  j["fuse"] = gdice_to_json(cfg.fuse);
  j["prior"] = json{{"concentration", cfg.prior.concentration},
                    {"candidate_count", cfg.prior.candidate_count}};
  json roster = json::array();
  for (const auto& row : cfg.roster) {
    json names = json::array();
    for (ctf::TacticId t : row) names.push_back(ctf::tactic_name(t));
    roster.push_back(names);
  }
  j["roster"] = roster;
  j["fixed_u"] = u_to_json(cfg.fixed_u);
  j["adversary_initial_tactic"] = cfg.adversary_initial_tactic;
  j["eval_episodes"] = cfg.eval_episodes;
  j["heldout_count"] = cfg.heldout_count;
  j["init_gate"] = cfg.init_gate;
  j["profile"] = cfg.profile;
  return j.dump(2);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  return rng::fnv1a64(experiment_to_json(cfg));
}

std::string provenance_comment(const ExperimentConfig& cfg) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "config=%016llx seed=%llu",
                static_cast<unsigned long long>(config_hash(cfg)),
                static_cast<unsigned long long>(cfg.master_seed));
  return buf;
}

}  // namespace stratfuse::harness
