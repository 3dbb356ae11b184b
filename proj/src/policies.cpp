#include "stratfuse/policies.hpp"

#include "stratfuse/errors.hpp"

namespace stratfuse::fsc {

int masked_sample(std::span<const double> probs, const std::vector<std::uint8_t>& eligible,
                  rng::Stream& stream) {
  double mass = 0.0;
  int eligible_count = 0;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (eligible[a]) {
      mass += probs[a];
      ++eligible_count;
    }
  }
  if (eligible_count == 0) throw UsageError("masked_sample: no eligible action");

  double u = stream.next_double();
  if (mass > 0.0) {
    double acc = 0.0;
    int last = -1;
    for (std::size_t a = 0; a < probs.size(); ++a) {
      if (!eligible[a]) continue;
      last = static_cast<int>(a);
      acc += probs[a];
      if (u * mass < acc) return last;
    }
    return last;
  }
  // Zero eligible mass: uniform over the eligible set.
  int pick = static_cast<int>(u * eligible_count);
  if (pick >= eligible_count) pick = eligible_count - 1;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (!eligible[a]) continue;
    if (pick-- == 0) return static_cast<int>(a);
  }
  return -1;  // unreachable
}

int ControllerPolicy::choose(const ctf::AgentContext& ctx, rng::Stream& stream) {
  return masked_sample(controller_->lambda_row(node_), *ctx.eligible, stream);
}

void ControllerPolicy::macro_done(const ctf::AgentContext& ctx, rng::Stream& stream) {
  node_ = next_node(*controller_, node_, ctx.obs.index, stream);
}

void UnifiedPolicy::begin(rng::Stream& stream) {
  // Episode start is the first decision boundary: the entry node's gate may
  // fire before any macro is chosen, so the controller can open in any
  // sub-controller.  A zero gate consumes no randomness.
  pos_ = {0, 0};
  if (unified_->foreign_nodes() == 0) return;
  double g = unified_->gate[static_cast<std::size_t>(unified_->global_index(0, 0))];
  if (g <= 0.0) return;
  if (stream.next_double() < g) {
    int slot = static_cast<int>(stream.categorical(unified_->edge_row(0)));
    pos_ = unified_->foreign_target(0, slot);
  }
}

int UnifiedPolicy::choose(const ctf::AgentContext& ctx, rng::Stream& stream) {
  const Controller& active = unified_->subs[static_cast<std::size_t>(pos_.sub)];
  return masked_sample(active.lambda_row(pos_.node), *ctx.eligible, stream);
}

void UnifiedPolicy::macro_done(const ctf::AgentContext& ctx, rng::Stream& stream) {
  pos_ = unified_step(*unified_, pos_, ctx.obs.index, stream);
}

std::unique_ptr<ctf::AgentPolicy> ControllerTeam::make_agent(int slot) const {
  if (slot < 0 || slot >= static_cast<int>(per_agent_.size()))
    throw ConfigError("ControllerTeam: no controller for slot " + std::to_string(slot));
  return std::make_unique<ControllerPolicy>(per_agent_[static_cast<std::size_t>(slot)]);
}

std::unique_ptr<ctf::AgentPolicy> UnifiedTeam::make_agent(int slot) const {
  if (slot < 0 || slot >= static_cast<int>(per_agent_.size()))
    throw ConfigError("UnifiedTeam: no controller for slot " + std::to_string(slot));
  return std::make_unique<UnifiedPolicy>(per_agent_[static_cast<std::size_t>(slot)]);
}

}  // namespace stratfuse::fsc
