#include "stratfuse/episode.hpp"

#include <sstream>

#include "stratfuse/errors.hpp"

namespace stratfuse::ctf {

EpisodeResult run_episode(const SimConfig& cfg, const MacroSet& set, const TeamSpec& blue,
                          const TeamSpec& red, std::uint64_t seed, bool record_trace) {
  WorldState state = reset(cfg, seed);
  const std::size_t n = state.robots.size();

  // Decision draws and actuation-slip draws live on separate per-robot
  // streams, so a policy that consumes more randomness (say, switch draws at
  // terminations) never perturbs anyone's low-level navigation.
  std::vector<rng::Stream> streams;
  std::vector<rng::Stream> exec_streams;
  std::vector<std::unique_ptr<AgentPolicy>> policies;
  streams.reserve(n);
  exec_streams.reserve(n);
  policies.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Robot& r = state.robots[i];
    streams.emplace_back(rng::derive(seed, "agent", static_cast<std::uint64_t>(i)));
    exec_streams.emplace_back(rng::derive(seed, "slip", static_cast<std::uint64_t>(i)));
    policies.push_back(r.team == Team::Blue ? blue.make_agent(r.slot)
                                            : red.make_agent(r.slot));
    policies.back()->begin(streams.back());
  }

  EpisodeResult result;
  if (record_trace) result.trace.emplace();

  std::vector<std::uint8_t> eligible(static_cast<std::size_t>(set.size()));
  std::vector<Primitive> intents(n);
  double discount = 1.0;

  while (!state.terminal(cfg)) {
    // Decision points: robots whose macro terminated (or was never chosen).
    for (std::size_t i = 0; i < n; ++i) {
      Robot& r = state.robots[i];
      if (r.exec.macro >= 0 && !r.exec.finished) continue;

      for (int a = 0; a < set.size(); ++a)
        eligible[static_cast<std::size_t>(a)] =
            macro_eligible(cfg, set, state, static_cast<int>(i), a) ? 1 : 0;
      AgentContext ctx;
      ctx.robot = static_cast<int>(i);
      ctx.slot = r.slot;
      ctx.team = r.team;
      ctx.pos = r.pos;
      ctx.obs = observe(cfg, state, static_cast<int>(i));
      ctx.cfg = &cfg;
      ctx.macros = &set;
      ctx.eligible = &eligible;

      if (r.exec.macro >= 0) {
        if (result.trace)
          result.trace->terminations.push_back(
              {state.clock, static_cast<int>(i), r.exec.macro, r.exec.interrupted});
        policies[i]->macro_done(ctx, streams[i]);
      }
      int macro = policies[i]->choose(ctx, streams[i]);
      if (macro < 0 || macro >= set.size() ||
          !macro_eligible(cfg, set, state, static_cast<int>(i), macro))
        throw EligibilityError(static_cast<int>(i),
                               macro >= 0 && macro < set.size() ? set.name(macro)
                                                                : std::to_string(macro));
      begin_macro(cfg, set, state, static_cast<int>(i), macro);
      if (result.trace)
        result.trace->choices.push_back({state.clock, static_cast<int>(i), macro});
    }

    for (std::size_t i = 0; i < n; ++i)
      intents[i] = run_macro_step(cfg, set, state, static_cast<int>(i), exec_streams[i]).intent;

    StepResult sr = step_primitive(cfg, set, state, intents);
    result.blue_return += discount * sr.team_reward[0];
    result.red_return += discount * sr.team_reward[1];
    discount *= cfg.gamma;

    if (result.trace) {
      TraceStep ts;
      ts.step = state.clock;
      ts.team_reward = sr.team_reward;
      ts.tags = sr.events.tags;
      ts.captured_by = sr.events.captured_by;
      for (const Robot& r : state.robots) {
        ts.positions.push_back(r.pos);
        ts.macros.push_back(r.exec.macro);
      }
      result.trace->steps.push_back(std::move(ts));
    }
  }

  // Episode end terminates every outstanding macro, so each choice has
  // exactly one matching termination in the trace.
  if (result.trace) {
    for (std::size_t i = 0; i < n; ++i) {
      const Robot& r = state.robots[i];
      if (r.exec.macro >= 0)
        result.trace->terminations.push_back(
            {state.clock, static_cast<int>(i), r.exec.macro, r.exec.interrupted});
    }
  }

  result.steps = state.clock;
  result.captured[0] = state.flag_captured[1];  // blue captured red's flag
  result.captured[1] = state.flag_captured[0];
  return result;
}

std::string trace_to_lines(const MacroSet& set, const EpisodeTrace& trace) {
  std::ostringstream out;
  for (const TraceStep& ts : trace.steps) {
    for (std::size_t i = 0; i < ts.positions.size(); ++i) {
      out << "step=" << ts.step << " robot=" << i << " pos=" << ts.positions[i].x << ','
          << ts.positions[i].y << " macro="
          << (ts.macros[i] >= 0 ? set.name(ts.macros[i]) : "none");
      out << " events=";
      bool first = true;
      for (const TagEvent& e : ts.tags) {
        if (e.tagger == static_cast<int>(i) || e.victim == static_cast<int>(i)) {
          if (!first) out << '+';
          out << (e.tagger == static_cast<int>(i) ? "tag" : "tagged");
          first = false;
        }
      }
      if (ts.captured_by[0] || ts.captured_by[1]) {
        if (!first) out << '+';
        out << "capture";
        first = false;
      }
      if (first) out << '-';
      out << " reward=" << ts.team_reward[0] << '/' << ts.team_reward[1] << '\n';
    }
  }
  return out.str();
}

}  // namespace stratfuse::ctf
