#pragma once

// Small scripted team specs shared by several test files.

#include <memory>
#include <vector>

#include "stratfuse/episode.hpp"
#include "stratfuse/sim_config.hpp"

namespace testutil {

using namespace stratfuse;

// Repeatedly issues Move(own vantage[slot]); with the vantage equal to the
// robot's spawn cell this is an explicit "never move" policy.
class ParkTeam : public ctf::TeamSpec {
 public:
  explicit ParkTeam(std::vector<int> vantages) : vantages_(std::move(vantages)) {}

  std::unique_ptr<ctf::AgentPolicy> make_agent(int slot) const override {
    class Policy : public ctf::AgentPolicy {
     public:
      explicit Policy(int vantage) : vantage_(vantage) {}
      int choose(const ctf::AgentContext& ctx, rng::Stream&) override {
        return ctx.macros->move_own(vantage_);
      }

     private:
      int vantage_;
    };
    return std::make_unique<Policy>(vantages_[static_cast<std::size_t>(slot)]);
  }

 private:
  std::vector<int> vantages_;
};

// Slot 0 walks straight to one enemy vantage point; other slots park.
class BeelineTeam : public ctf::TeamSpec {
 public:
  BeelineTeam(int target_enemy_vantage, std::vector<int> park_vantages)
      : target_(target_enemy_vantage), park_(std::move(park_vantages)) {}

  std::unique_ptr<ctf::AgentPolicy> make_agent(int slot) const override {
    class Policy : public ctf::AgentPolicy {
     public:
      Policy(bool attacker, int target, int park) : attacker_(attacker), target_(target), park_(park) {}
      int choose(const ctf::AgentContext& ctx, rng::Stream&) override {
        return attacker_ ? ctx.macros->move_enemy(target_) : ctx.macros->move_own(park_);
      }

     private:
      bool attacker_;
      int target_;
      int park_;
    };
    return std::make_unique<Policy>(slot == 0, target_, park_[static_cast<std::size_t>(slot)]);
  }

 private:
  int target_;
  std::vector<int> park_;
};

// Always asks for Tag, eligible or not.
class IllegalTeam : public ctf::TeamSpec {
 public:
  std::unique_ptr<ctf::AgentPolicy> make_agent(int) const override {
    class Policy : public ctf::AgentPolicy {
     public:
      int choose(const ctf::AgentContext& ctx, rng::Stream&) override {
        return ctx.macros->tag();
      }
    };
    return std::make_unique<Policy>();
  }
};

// A 30x30 arena where the straight-line distance from the attacker's spawn
// to the enemy flag is exactly 40 primitive steps.
inline ctf::SimConfig beeline_config() {
  ctf::SimConfig cfg;
  cfg.grid_width = 30;
  cfg.grid_height = 30;
  cfg.vantage[0] = {{0, 0}, {20, 0}, {22, 0}, {5, 5}, {6, 6},
                    {1, 10}, {2, 10}, {3, 10}, {4, 10}, {5, 10}};
  cfg.vantage[1] = {{25, 29}, {27, 29}, {29, 29}, {11, 29}, {5, 20},
                    {6, 20}, {7, 20}, {8, 20}, {9, 20}, {10, 20}};
  cfg.spawns[0] = {{0, 0}, {20, 0}, {22, 0}};
  cfg.spawns[1] = {{25, 29}, {27, 29}, {29, 29}};
  cfg.flag_index = {3, 3};  // blue (5,5), red (11,29)
  cfg.move_slip = 0.0;      // exact hand-traceable navigation
  cfg.sentries.assign(5, ctf::SentryDef{{0, 1, 2}});
  cfg.pincers.assign(3, ctf::PincerDef{{0, 1, 2, 3}});
  return cfg;
}

}  // namespace testutil
