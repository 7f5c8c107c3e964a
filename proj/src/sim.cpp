#include "gatehound/sim.hpp"

#include <random>
#include <sstream>

#include "gatehound/util.hpp"

namespace gatehound {

EvalPlan elaborate(const Netlist& n) {
  ValidationReport report = validate(n);
  if (!report.ok())
    throw Error("cannot elaborate: " + report.errors.front().message);

  EvalPlan plan;
  plan.netlist = &n;
  for (const std::string& p : n.inputs) plan.input_nets.push_back(*n.find_net(p));
  for (const std::string& p : n.outputs)
    plan.output_nets.push_back(*n.find_net(p));

  // Kahn order over combinational gates; FF outputs and ports are sources.
  std::vector<int> pending(n.gates.size(), 0);
  std::unordered_map<NetId, std::vector<std::size_t>> waiters;
  std::vector<std::size_t> ready;
  std::unordered_map<GateId, std::size_t> index;
  for (std::size_t i = 0; i < n.gates.size(); ++i) index[n.gates[i].id] = i;

  plan.srl_slot.assign(n.gates.size(), -1);
  for (std::size_t i = 0; i < n.gates.size(); ++i) {
    const Gate& g = n.gates[i];
    if (g.kind == GateKind::Ff) {
      plan.ffs.push_back(i);
      continue;
    }
    if (g.kind == GateKind::Srl) {
      plan.srl_slot[i] = static_cast<int>(plan.srls.size());
      plan.srls.push_back(i);
    }
    int deps = 0;
    for (NetId in : g.inputs) {
      const NetConn& c = n.conn(in);
      if (c.driver_gates.empty()) continue;
      const Gate& drv = n.gates[index[c.driver_gates.front()]];
      if (drv.kind == GateKind::Ff || drv.kind == GateKind::Gnd ||
          drv.kind == GateKind::Vcc)
        continue;
      ++deps;
      waiters[in].push_back(i);
    }
    pending[i] = deps;
    if (deps == 0) ready.push_back(i);
  }
  // Constants first so dependents see them; they have no inputs, so they are
  // already in `ready`; just emit in deterministic order.
  std::size_t emitted = 0;
  std::vector<char> done(n.gates.size(), 0);
  while (!ready.empty()) {
    std::size_t i = ready.back();
    ready.pop_back();
    plan.comb_order.push_back(i);
    done[i] = 1;
    ++emitted;
    const Gate& g = n.gates[i];
    auto it = waiters.find(g.output);
    if (it == waiters.end()) continue;
    for (std::size_t w : it->second)
      if (--pending[w] == 0) ready.push_back(w);
  }
  std::size_t comb_total = 0;
  for (const Gate& g : n.gates)
    if (g.kind != GateKind::Ff) ++comb_total;
  if (emitted != comb_total) throw Error("combinational cycle");
  return plan;
}

SimState initial_state(const EvalPlan& plan) {
  SimState s;
  s.ff.resize(plan.ffs.size());
  for (std::size_t i = 0; i < plan.ffs.size(); ++i)
    s.ff[i] = plan.netlist->gates[plan.ffs[i]].init ? 1 : 0;
  s.srl.resize(plan.srls.size());
  for (std::size_t i = 0; i < plan.srls.size(); ++i)
    s.srl[i] = plan.netlist->gates[plan.srls[i]].config.bits;
  return s;
}

void step(const EvalPlan& plan, SimState& state,
          const std::vector<std::uint8_t>& inputs,
          std::vector<std::uint8_t>& values) {
  const Netlist& n = *plan.netlist;
  if (inputs.size() != plan.input_nets.size())
    throw Error("stimulus does not cover all input ports");
  values.assign(n.net_count(), 0);

  for (std::size_t i = 0; i < inputs.size(); ++i)
    values[plan.input_nets[i]] = inputs[i] ? 1 : 0;
  for (std::size_t i = 0; i < plan.ffs.size(); ++i)
    values[n.gates[plan.ffs[i]].output] = state.ff[i];

  for (std::size_t i : plan.comb_order) {
    const Gate& g = n.gates[i];
    switch (g.kind) {
      case GateKind::Gnd:
        values[g.output] = 0;
        break;
      case GateKind::Vcc:
        values[g.output] = 1;
        break;
      case GateKind::Buf:
        values[g.output] = values[g.inputs[0]];
        break;
      case GateKind::Lut: {
        std::uint64_t idx = 0;
        for (std::size_t p = 0; p < g.inputs.size(); ++p)
          idx |= static_cast<std::uint64_t>(values[g.inputs[p]]) << p;
        values[g.output] = g.config.get(idx) ? 1 : 0;
        break;
      }
      case GateKind::Srl: {
        std::uint64_t idx = 0;
        for (std::size_t p = 0; p < g.inputs.size(); ++p)
          idx |= static_cast<std::uint64_t>(values[g.inputs[p]]) << p;
        std::uint64_t config = state.srl[plan.srl_slot[i]];
        values[g.output] = (config >> idx) & 1;
        break;
      }
      case GateKind::Ff:
        break;
    }
  }

  // Simultaneous sequential update.
  std::vector<std::uint8_t> next_ff(state.ff);
  for (std::size_t i = 0; i < plan.ffs.size(); ++i) {
    const Gate& g = n.gates[plan.ffs[i]];
    if (g.ce != kNoNet && !values[g.ce]) continue;
    next_ff[i] = values[g.inputs[0]];
  }
  for (std::size_t k = 0; k < plan.srls.size(); ++k) {
    const Gate& g = n.gates[plan.srls[k]];
    if (g.ce != kNoNet && values[g.ce]) {
      std::uint64_t width_mask = g.config.mask();
      state.srl[k] = (state.srl[k] << 1) & width_mask;
    }
  }
  state.ff = std::move(next_ff);
  ++state.cycle;
}

Trace run(const Netlist& n, const Stimuli& stimuli,
          const std::vector<std::string>& probes) {
  EvalPlan plan = elaborate(n);
  SimState state = initial_state(plan);

  Trace trace;
  trace.columns = n.outputs;
  std::vector<NetId> probe_nets;
  for (const std::string& p : probes) {
    auto id = n.find_net(p);
    if (!id) throw Error("probe net '" + p + "' not found");
    probe_nets.push_back(*id);
    trace.columns.push_back(p);
  }

  std::vector<std::uint8_t> values;
  for (const auto& inputs : stimuli.cycles) {
    step(plan, state, inputs, values);
    std::vector<std::uint8_t> row;
    row.reserve(plan.output_nets.size() + probe_nets.size());
    for (NetId out : plan.output_nets) row.push_back(values[out]);
    for (NetId p : probe_nets) row.push_back(values[p]);
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

Stimuli parse_stimuli(const Netlist& n, const std::string& text) {
  Stimuli stim;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    // strip comments
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos)
      line = line.substr(0, pos);
    std::istringstream ls(line);
    std::string tok;
    std::unordered_map<std::string, std::uint8_t> assigns;
    bool any = false;
    while (ls >> tok) {
      any = true;
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw Error("stimuli line " + std::to_string(lineno) +
                    ": expected name=bit, got '" + tok + "'");
      std::string port = tok.substr(0, eq);
      std::string value = tok.substr(eq + 1);
      if (value != "0" && value != "1")
        throw Error("stimuli line " + std::to_string(lineno) +
                    ": bit must be 0 or 1");
      assigns[port] = value == "1";
    }
    if (!any) continue;
    std::vector<std::uint8_t> row;
    row.reserve(n.inputs.size());
    for (const std::string& port : n.inputs) {
      auto it = assigns.find(port);
      if (it == assigns.end())
        throw Error("stimuli line " + std::to_string(lineno) +
                    ": input port '" + port + "' unassigned");
      row.push_back(it->second);
      assigns.erase(it);
    }
    if (!assigns.empty())
      throw Error("stimuli line " + std::to_string(lineno) +
                  ": unknown input port '" + assigns.begin()->first + "'");
    stim.cycles.push_back(std::move(row));
  }
  return stim;
}

std::string format_stimuli(const Netlist& n, const Stimuli& stimuli) {
  std::ostringstream out;
  for (const auto& row : stimuli.cycles) {
    for (std::size_t i = 0; i < n.inputs.size(); ++i) {
      if (i) out << " ";
      out << n.inputs[i] << "=" << (row[i] ? 1 : 0);
    }
    out << "\n";
  }
  return out.str();
}

std::string format_trace(const Trace& trace) {
  std::ostringstream out;
  for (const auto& row : trace.rows) {
    for (std::size_t i = 0; i < trace.columns.size(); ++i) {
      if (i) out << " ";
      out << trace.columns[i] << "=" << (row[i] ? 1 : 0);
    }
    out << "\n";
  }
  return out.str();
}

Stimuli random_stimuli(const Netlist& n, std::size_t cycles,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Stimuli stim;
  stim.cycles.reserve(cycles);
  for (std::size_t c = 0; c < cycles; ++c) {
    std::vector<std::uint8_t> row(n.inputs.size());
    for (auto& b : row) b = static_cast<std::uint8_t>(rng() & 1);
    stim.cycles.push_back(std::move(row));
  }
  return stim;
}

Simulator::Simulator(const Netlist& n)
    : netlist_(&n), plan_(elaborate(n)), state_(initial_state(plan_)) {
  pending_inputs_.assign(plan_.input_nets.size(), 0);
  values_.assign(n.net_count(), 0);
}

void Simulator::set_input(const std::string& port, bool value) {
  for (std::size_t i = 0; i < netlist_->inputs.size(); ++i) {
    if (netlist_->inputs[i] == port) {
      pending_inputs_[i] = value ? 1 : 0;
      return;
    }
  }
  throw Error("unknown input port '" + port + "'");
}

void Simulator::set_inputs(const std::vector<std::uint8_t>& values) {
  if (values.size() != pending_inputs_.size())
    throw Error("input vector size mismatch");
  pending_inputs_ = values;
}

void Simulator::step() {
  gatehound::step(plan_, state_, pending_inputs_, values_);
}

bool Simulator::output(const std::string& port) const {
  auto id = netlist_->find_net(port);
  if (!id) throw Error("unknown output port '" + port + "'");
  return values_[*id] != 0;
}

bool Simulator::net(const std::string& net_name) const {
  auto id = netlist_->find_net(net_name);
  if (!id) throw Error("unknown net '" + net_name + "'");
  return values_[*id] != 0;
}

bool Simulator::net(NetId id) const {
  if (id >= values_.size()) throw Error("net id out of range");
  return values_[id] != 0;
}

}  // namespace gatehound
