#pragma once

#include <memory>
#include <vector>

#include "stratfuse/controller.hpp"
#include "stratfuse/episode.hpp"
#include "stratfuse/unified.hpp"

namespace stratfuse::fsc {

// Samples from `probs` restricted to eligible entries.  Falls back to a
// uniform draw over the eligible set when the restricted mass is zero (a
// deterministic one-hot row whose action is currently ineligible).  Always
// consumes exactly one uniform, which keeps controller and zero-gate unified
// executions on identical random streams.
int masked_sample(std::span<const double> probs, const std::vector<std::uint8_t>& eligible,
                  rng::Stream& stream);

// Executes one frozen controller: macro choices from lambda at the current
// node, node transitions from delta on each termination observation.
class ControllerPolicy : public ctf::AgentPolicy {
 public:
  explicit ControllerPolicy(const Controller& c) : controller_(&c) {}

  void begin(rng::Stream&) override { node_ = 0; }
  int choose(const ctf::AgentContext& ctx, rng::Stream& stream) override;
  void macro_done(const ctf::AgentContext& ctx, rng::Stream& stream) override;

  int node() const { return node_; }

 private:
  const Controller* controller_;
  int node_ = 0;
};

// Executes a switching controller.  Execution starts at node 0 of
// sub-controller 0; switches happen at decision boundaries only - episode
// start (the entry node's gate may redirect the opening stratagem) and every
// macro termination thereafter.
class UnifiedPolicy : public ctf::AgentPolicy {
 public:
  explicit UnifiedPolicy(const UnifiedController& u) : unified_(&u) {}

  void begin(rng::Stream& stream) override;
  int choose(const ctf::AgentContext& ctx, rng::Stream& stream) override;
  void macro_done(const ctf::AgentContext& ctx, rng::Stream& stream) override;

  UnifiedPosition position() const { return pos_; }

 private:
  const UnifiedController* unified_;
  UnifiedPosition pos_{0, 0};
};

// One controller per agent slot.
class ControllerTeam : public ctf::TeamSpec {
 public:
  explicit ControllerTeam(std::vector<Controller> per_agent)
      : per_agent_(std::move(per_agent)) {}

  std::unique_ptr<ctf::AgentPolicy> make_agent(int slot) const override;
  const std::vector<Controller>& controllers() const { return per_agent_; }

 private:
  std::vector<Controller> per_agent_;
};

class UnifiedTeam : public ctf::TeamSpec {
 public:
  explicit UnifiedTeam(std::vector<UnifiedController> per_agent)
      : per_agent_(std::move(per_agent)) {}

  std::unique_ptr<ctf::AgentPolicy> make_agent(int slot) const override;
  const std::vector<UnifiedController>& controllers() const { return per_agent_; }

 private:
  std::vector<UnifiedController> per_agent_;
};

}  // namespace stratfuse::fsc
