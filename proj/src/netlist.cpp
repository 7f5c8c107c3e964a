#include "gatehound/netlist.hpp"

#include <algorithm>
#include <unordered_set>

#include "gatehound/util.hpp"

namespace gatehound {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Lut: return "LUT";
    case GateKind::Srl: return "SRL";
    case GateKind::Ff: return "FF";
    case GateKind::Buf: return "BUF";
    case GateKind::Gnd: return "GND";
    case GateKind::Vcc: return "VCC";
  }
  return "?";
}

std::vector<PinBinding> gate_pins(const Gate& g) {
  std::vector<PinBinding> pins;
  switch (g.kind) {
    case GateKind::Lut:
    case GateKind::Srl:
      for (std::size_t i = 0; i < g.inputs.size(); ++i)
        pins.push_back({"I" + std::to_string(i), g.inputs[i], false});
      if (g.kind == GateKind::Srl) pins.push_back({"CE", g.ce, false});
      pins.push_back({"O", g.output, true});
      break;
    case GateKind::Ff:
      pins.push_back({"D", g.inputs.empty() ? kNoNet : g.inputs[0], false});
      pins.push_back({"Q", g.output, true});
      pins.push_back({"CLK", g.clk, false});
      if (g.ce != kNoNet) pins.push_back({"CE", g.ce, false});
      break;
    case GateKind::Buf:
      pins.push_back({"I", g.inputs.empty() ? kNoNet : g.inputs[0], false});
      pins.push_back({"O", g.output, true});
      break;
    case GateKind::Gnd:
    case GateKind::Vcc:
      pins.push_back({"O", g.output, true});
      break;
  }
  return pins;
}

NetId Netlist::intern_net(const std::string& net_name) {
  auto it = net_ids_.find(net_name);
  if (it != net_ids_.end()) return it->second;
  NetId id = static_cast<NetId>(net_names_.size());
  net_names_.push_back(net_name);
  net_ids_.emplace(net_name, id);
  links_current_ = false;
  return id;
}

std::optional<NetId> Netlist::find_net(const std::string& net_name) const {
  auto it = net_ids_.find(net_name);
  if (it == net_ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Netlist::net_name(NetId id) const {
  if (id >= net_names_.size()) throw Error("net id out of range");
  return net_names_[id];
}

const Gate* Netlist::find_gate(GateId id) const {
  auto it = gate_index_.find(id);
  if (it == gate_index_.end()) return nullptr;
  return &gates[it->second];
}

Gate* Netlist::find_gate(GateId id) {
  auto it = gate_index_.find(id);
  if (it == gate_index_.end()) return nullptr;
  return &gates[it->second];
}

GateId Netlist::next_gate_id() const {
  GateId next = 0;
  for (const Gate& g : gates) next = std::max(next, g.id + 1);
  return next;
}

NetId Netlist::add_input(const std::string& net_name) {
  inputs.push_back(net_name);
  return intern_net(net_name);
}

NetId Netlist::add_output(const std::string& net_name) {
  outputs.push_back(net_name);
  return intern_net(net_name);
}

NetId Netlist::set_clock(const std::string& net_name) {
  clock = net_name;
  return intern_net(net_name);
}

NetId Netlist::fresh_net(const std::string& prefix) {
  for (;;) {
    std::string candidate = prefix + std::to_string(fresh_counter_++);
    if (!net_ids_.count(candidate)) return intern_net(candidate);
  }
}

GateId Netlist::add_lut(const TruthTable& config,
                        const std::vector<NetId>& ins, NetId out) {
  Gate g;
  g.id = next_gate_id();
  g.kind = GateKind::Lut;
  g.arity = static_cast<int>(ins.size());
  g.config = config;
  g.inputs = ins;
  g.output = out;
  gates.push_back(g);
  links_current_ = false;
  return g.id;
}

GateId Netlist::add_srl(const TruthTable& config,
                        const std::vector<NetId>& ins, NetId ce, NetId out) {
  Gate g;
  g.id = next_gate_id();
  g.kind = GateKind::Srl;
  g.arity = static_cast<int>(ins.size());
  g.config = config;
  g.inputs = ins;
  g.ce = ce;
  g.output = out;
  gates.push_back(g);
  links_current_ = false;
  return g.id;
}

GateId Netlist::add_ff(NetId d, NetId q, NetId ce, bool init) {
  if (clock.empty()) throw Error("netlist has no clock; cannot add FF");
  Gate g;
  g.id = next_gate_id();
  g.kind = GateKind::Ff;
  g.inputs = {d};
  g.output = q;
  g.clk = intern_net(clock);
  g.ce = ce;
  g.init = init;
  gates.push_back(g);
  links_current_ = false;
  return g.id;
}

GateId Netlist::add_buf(NetId in, NetId out) {
  Gate g;
  g.id = next_gate_id();
  g.kind = GateKind::Buf;
  g.inputs = {in};
  g.output = out;
  gates.push_back(g);
  links_current_ = false;
  return g.id;
}

GateId Netlist::add_gnd(NetId out) {
  Gate g;
  g.id = next_gate_id();
  g.kind = GateKind::Gnd;
  g.output = out;
  gates.push_back(g);
  links_current_ = false;
  return g.id;
}

GateId Netlist::add_vcc(NetId out) {
  Gate g;
  g.id = next_gate_id();
  g.kind = GateKind::Vcc;
  g.output = out;
  gates.push_back(g);
  links_current_ = false;
  return g.id;
}

void Netlist::rebuild() {
  std::sort(gates.begin(), gates.end(),
            [](const Gate& a, const Gate& b) { return a.id < b.id; });
  gate_index_.clear();
  for (std::size_t i = 0; i < gates.size(); ++i)
    gate_index_.emplace(gates[i].id, i);

  for (const std::string& p : inputs) intern_net(p);
  for (const std::string& p : outputs) intern_net(p);
  if (!clock.empty()) intern_net(clock);

  conns_.assign(net_names_.size(), NetConn{});
  for (const Gate& g : gates) {
    if (g.output != kNoNet && g.output < conns_.size())
      conns_[g.output].driver_gates.push_back(g.id);
    auto note_reader = [&](NetId n) {
      if (n != kNoNet && n < conns_.size()) conns_[n].readers.push_back(g.id);
    };
    for (NetId n : g.inputs) note_reader(n);
    note_reader(g.clk);
    note_reader(g.ce);
  }
  for (const std::string& p : inputs) {
    auto id = find_net(p);
    if (id) conns_[*id].driven_by_input_port = true;
  }
  // The clock is an external port as well.
  if (!clock.empty()) conns_[*find_net(clock)].driven_by_input_port = true;
  for (const std::string& p : outputs) {
    auto id = find_net(p);
    if (id) conns_[*id].read_by_output_port = true;
  }
  links_current_ = true;
}

const NetConn& Netlist::conn(NetId id) const {
  if (!links_current_) throw Error("netlist links are stale; call rebuild()");
  if (id >= conns_.size()) throw Error("net id out of range");
  return conns_[id];
}

std::optional<NetId> Netlist::clock_net() const {
  if (clock.empty()) return std::nullopt;
  return find_net(clock);
}

bool Netlist::structurally_equal(const Netlist& other) const {
  if (name != other.name || inputs != other.inputs ||
      outputs != other.outputs || clock != other.clock ||
      gates.size() != other.gates.size())
    return false;
  auto net_str = [](const Netlist& n, NetId id) -> std::string {
    return id == kNoNet ? std::string() : n.net_name(id);
  };
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& a = gates[i];
    const Gate& b = other.gates[i];
    if (a.id != b.id || a.kind != b.kind || a.arity != b.arity ||
        a.config != b.config || a.init != b.init)
      return false;
    if (a.inputs.size() != b.inputs.size()) return false;
    for (std::size_t k = 0; k < a.inputs.size(); ++k)
      if (net_str(*this, a.inputs[k]) != net_str(other, b.inputs[k]))
        return false;
    if (net_str(*this, a.output) != net_str(other, b.output)) return false;
    if (net_str(*this, a.clk) != net_str(other, b.clk)) return false;
    if (net_str(*this, a.ce) != net_str(other, b.ce)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateGateId: return "duplicate-gate-id";
    case ViolationKind::DuplicatePort: return "duplicate-port";
    case ViolationKind::ArityRange: return "arity-range";
    case ViolationKind::ConfigWidth: return "config-width";
    case ViolationKind::MissingPin: return "missing-pin";
    case ViolationKind::DanglingNet: return "dangling-net";
    case ViolationKind::MultiDriver: return "multi-driver";
    case ViolationKind::NoDriver: return "no-driver";
    case ViolationKind::NoClock: return "no-clock";
    case ViolationKind::ClockMismatch: return "clock-mismatch";
    case ViolationKind::CombinationalCycle: return "combinational-cycle";
    case ViolationKind::DanglingOutput: return "dangling-output";
    case ViolationKind::ClockAsData: return "clock-as-data";
  }
  return "?";
}

namespace {

bool is_combinational(GateKind kind) {
  // SRL output is a combinational read of its (sequential) config.
  return kind != GateKind::Ff;
}

}  // namespace

ValidationReport validate(const Netlist& n) {
  ValidationReport report;
  auto err = [&](ViolationKind kind, std::string msg,
                 std::optional<GateId> gate = std::nullopt,
                 std::optional<std::string> net = std::nullopt) {
    report.errors.push_back({kind, std::move(msg), gate, net});
  };
  auto warn = [&](ViolationKind kind, std::string msg,
                  std::optional<GateId> gate = std::nullopt,
                  std::optional<std::string> net = std::nullopt) {
    report.warnings.push_back({kind, std::move(msg), gate, net});
  };

  if (!n.links_current()) {
    err(ViolationKind::DanglingNet, "netlist links are stale");
    return report;
  }

  {
    std::unordered_map<GateId, int> seen;
    for (const Gate& g : n.gates) {
      if (++seen[g.id] == 2)
        err(ViolationKind::DuplicateGateId,
            "gate id " + std::to_string(g.id) + " declared more than once",
            g.id);
    }
  }
  {
    std::unordered_set<std::string> seen_ports;
    auto check_port = [&](const std::string& p) {
      if (!seen_ports.insert(p).second)
        err(ViolationKind::DuplicatePort, "port '" + p + "' declared twice",
            std::nullopt, p);
    };
    if (!n.clock.empty()) check_port(n.clock);
    for (const std::string& p : n.inputs) check_port(p);
    for (const std::string& p : n.outputs) check_port(p);
  }

  auto clock_id = n.clock_net();

  for (const Gate& g : n.gates) {
    if (g.has_config()) {
      if (g.arity < 1 || g.arity > TruthTable::kMaxWidth)
        err(ViolationKind::ArityRange,
            std::string(to_string(g.kind)) + " arity " +
                std::to_string(g.arity) + " outside 1..6",
            g.id);
      else if (g.config.width != g.arity)
        err(ViolationKind::ConfigWidth,
            "config width mismatch: " + std::to_string(g.config.width) +
                "-input table on " + std::to_string(g.arity) + "-input " +
                to_string(g.kind),
            g.id);
      if (static_cast<int>(g.inputs.size()) != g.arity)
        err(ViolationKind::MissingPin,
            std::string(to_string(g.kind)) + " has " +
                std::to_string(g.inputs.size()) + " input pins, expected " +
                std::to_string(g.arity),
            g.id);
    }
    for (const PinBinding& pin : gate_pins(g)) {
      if (pin.net == kNoNet) {
        // FF CE is the only optional pin and gate_pins skips it when absent.
        err(ViolationKind::MissingPin,
            "pin " + pin.pin + " of gate " + std::to_string(g.id) +
                " is unconnected",
            g.id);
      } else if (pin.net >= n.net_count()) {
        err(ViolationKind::DanglingNet,
            "pin " + pin.pin + " of gate " + std::to_string(g.id) +
                " references an unknown net",
            g.id);
      }
    }
    if (g.is_ff()) {
      if (!clock_id)
        err(ViolationKind::NoClock,
            "FF " + std::to_string(g.id) + " present but netlist declares no clock",
            g.id);
      else if (g.clk != *clock_id)
        err(ViolationKind::ClockMismatch,
            "FF " + std::to_string(g.id) + " is not on the declared clock",
            g.id);
    }
    if (g.kind == GateKind::Srl && !clock_id)
      err(ViolationKind::NoClock,
          "SRL " + std::to_string(g.id) + " present but netlist declares no clock",
          g.id);
  }

  if (clock_id) {
    for (const Gate& g : n.gates) {
      bool reads_clock = g.ce == *clock_id;
      for (NetId in : g.inputs) reads_clock = reads_clock || in == *clock_id;
      if (reads_clock)
        warn(ViolationKind::ClockAsData,
             "gate " + std::to_string(g.id) + " reads the clock as data",
             g.id);
    }
  }

  for (NetId id = 0; id < n.net_count(); ++id) {
    const NetConn& c = n.conn(id);
    int drivers = c.driver_count();
    if (drivers > 1)
      err(ViolationKind::MultiDriver,
          "net '" + n.net_name(id) + "' has " + std::to_string(drivers) +
              " drivers",
          std::nullopt, n.net_name(id));
    if (drivers == 0 && c.has_sink())
      err(ViolationKind::NoDriver, "net '" + n.net_name(id) + "' has no driver",
          std::nullopt, n.net_name(id));
    if (drivers == 1 && !c.has_sink() && (!clock_id || id != *clock_id))
      warn(ViolationKind::DanglingOutput,
           "net '" + n.net_name(id) + "' has no sinks", std::nullopt,
           n.net_name(id));
  }

  // Combinational cycle check: Kahn over LUT/SRL/BUF gates; FF outputs,
  // ports and constants are sources.
  {
    std::unordered_map<GateId, int> pending;
    std::unordered_map<NetId, std::vector<GateId>> waiters;
    std::vector<GateId> ready;
    for (const Gate& g : n.gates) {
      if (!is_combinational(g.kind)) continue;
      int deps = 0;
      for (NetId in : g.inputs) {
        if (in == kNoNet || in >= n.net_count()) continue;
        const NetConn& c = n.conn(in);
        if (c.driven_by_input_port || c.driver_gates.empty()) continue;
        const Gate* drv = n.find_gate(c.driver_gates.front());
        if (drv && is_combinational(drv->kind) && drv->kind != GateKind::Gnd &&
            drv->kind != GateKind::Vcc) {
          ++deps;
          waiters[in].push_back(g.id);
        }
      }
      pending[g.id] = deps;
      if (deps == 0) ready.push_back(g.id);
    }
    std::size_t resolved = 0;
    while (!ready.empty()) {
      GateId id = ready.back();
      ready.pop_back();
      ++resolved;
      const Gate* g = n.find_gate(id);
      if (!g || g->output == kNoNet) continue;
      auto it = waiters.find(g->output);
      if (it == waiters.end()) continue;
      for (GateId w : it->second) {
        if (--pending[w] == 0) ready.push_back(w);
      }
    }
    if (resolved < pending.size()) {
      std::vector<GateId> stuck;
      for (const auto& [id, deps] : pending)
        if (deps > 0) stuck.push_back(id);
      std::sort(stuck.begin(), stuck.end());
      std::string msg = "combinational cycle through gates";
      for (GateId id : stuck) msg += " " + std::to_string(id);
      err(ViolationKind::CombinationalCycle, msg,
          stuck.empty() ? std::nullopt : std::optional<GateId>(stuck.front()));
    }
  }

  return report;
}

// ---------------------------------------------------------------------------

NetId resolve_transparent(const Netlist& n, NetId net) {
  std::vector<bool> seen(n.net_count(), false);
  NetId cur = net;
  for (;;) {
    if (cur >= n.net_count() || seen[cur]) return cur;
    seen[cur] = true;
    const NetConn& c = n.conn(cur);
    if (c.driven_by_input_port || c.driver_gates.size() != 1) return cur;
    const Gate* g = n.find_gate(c.driver_gates.front());
    if (!g) return cur;
    if (g->kind == GateKind::Buf) {
      cur = g->inputs[0];
      continue;
    }
    if (g->kind == GateKind::Lut) {
      int pin = g->config.projection_pin();
      if (pin >= 0 && pin < static_cast<int>(g->inputs.size())) {
        cur = g->inputs[static_cast<std::size_t>(pin)];
        continue;
      }
    }
    return cur;
  }
}

std::optional<TracedConstant> trace_constant_ex(const Netlist& n, NetId net,
                                                const OpaqueConstants& opaque) {
  if (net >= n.net_count()) throw Error("trace_constant: unknown net");
  std::vector<bool> seen(n.net_count(), false);
  NetId cur = net;
  bool hopped = false;
  for (;;) {
    if (seen[cur]) return std::nullopt;
    seen[cur] = true;
    if (auto it = opaque.values.find(cur); it != opaque.values.end())
      return TracedConstant{it->second, ConstProvenance::Opaque, cur};
    const NetConn& c = n.conn(cur);
    if (c.driver_gates.size() != 1) return std::nullopt;
    const Gate* g = n.find_gate(c.driver_gates.front());
    if (!g) return std::nullopt;
    switch (g->kind) {
      case GateKind::Gnd:
        return TracedConstant{false,
                              hopped ? ConstProvenance::Traced
                                     : ConstProvenance::Direct,
                              cur};
      case GateKind::Vcc:
        return TracedConstant{true,
                              hopped ? ConstProvenance::Traced
                                     : ConstProvenance::Direct,
                              cur};
      case GateKind::Buf:
        cur = g->inputs[0];
        hopped = true;
        continue;
      case GateKind::Lut: {
        int pin = g->config.projection_pin();
        if (pin >= 0 && pin < static_cast<int>(g->inputs.size())) {
          cur = g->inputs[static_cast<std::size_t>(pin)];
          hopped = true;
          continue;
        }
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }
}

std::optional<bool> trace_constant(const Netlist& n, NetId net,
                                   const OpaqueConstants& opaque) {
  auto traced = trace_constant_ex(n, net, opaque);
  if (!traced) return std::nullopt;
  return traced->value;
}

}  // namespace gatehound
