#pragma once

#include <string>
#include <vector>

#include "gatehound/netlist.hpp"

namespace gatehound {

// Cycle-based two-valued simulator. Per cycle: input ports are applied,
// the combinational fabric settles in topological order, then every FF
// updates simultaneously (read-before-write; CE=0 holds) and every SRL
// with CE=1 shifts its config left by one, inserting 0 at index 0.

struct EvalPlan {
  const Netlist* netlist = nullptr;
  std::vector<std::size_t> comb_order;  // gate indices, topological
  std::vector<std::size_t> ffs;         // gate indices
  std::vector<std::size_t> srls;        // gate indices
  std::vector<int> srl_slot;            // gate index -> slot in srls, or -1
  std::vector<NetId> input_nets;        // aligned with netlist->inputs
  std::vector<NetId> output_nets;       // aligned with netlist->outputs
};

// Throws Error on validation failure (including combinational cycles).
EvalPlan elaborate(const Netlist& n);

struct SimState {
  std::vector<std::uint8_t> ff;        // aligned with plan.ffs
  std::vector<std::uint64_t> srl;      // aligned with plan.srls
  std::uint64_t cycle = 0;
};

SimState initial_state(const EvalPlan& plan);

// Computes one cycle: `inputs` aligned with plan.input_nets. After the call
// `values` holds the settled value of every net for this cycle and `state`
// has advanced to the next cycle.
void step(const EvalPlan& plan, SimState& state,
          const std::vector<std::uint8_t>& inputs,
          std::vector<std::uint8_t>& values);

struct Stimuli {
  // cycles[c] aligned with netlist inputs.
  std::vector<std::vector<std::uint8_t>> cycles;
};

struct Trace {
  std::vector<std::string> columns;  // outputs, then probed nets
  std::vector<std::vector<std::uint8_t>> rows;

  bool operator==(const Trace&) const = default;
};

Trace run(const Netlist& n, const Stimuli& stimuli,
          const std::vector<std::string>& probes = {});

// `name=bit` pairs, one cycle per line; every cycle must assign every input.
Stimuli parse_stimuli(const Netlist& n, const std::string& text);
std::string format_stimuli(const Netlist& n, const Stimuli& stimuli);
std::string format_trace(const Trace& trace);

// Deterministic random stimuli for equivalence checks.
Stimuli random_stimuli(const Netlist& n, std::size_t cycles,
                       std::uint64_t seed);

// Step-at-a-time driver used by protocol-level tests and tools.
class Simulator {
 public:
  explicit Simulator(const Netlist& n);

  void set_input(const std::string& port, bool value);
  void set_inputs(const std::vector<std::uint8_t>& values);
  // Applies the pending inputs, settles the fabric and advances the state.
  void step();

  bool output(const std::string& port) const;
  bool net(const std::string& net_name) const;
  bool net(NetId id) const;
  std::uint64_t cycle() const { return state_.cycle; }

 private:
  const Netlist* netlist_;
  EvalPlan plan_;
  SimState state_;
  std::vector<std::uint8_t> pending_inputs_;
  std::vector<std::uint8_t> values_;
};

}  // namespace gatehound
