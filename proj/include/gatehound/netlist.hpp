#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gatehound/truth_table.hpp"

namespace gatehound {

using GateId = std::uint32_t;
using NetId = std::uint32_t;
inline constexpr NetId kNoNet = 0xffffffffu;
inline constexpr GateId kNoGate = 0xffffffffu;

enum class GateKind { Lut, Srl, Ff, Buf, Gnd, Vcc };
const char* to_string(GateKind kind);

// One gate instance. Pin layout per kind:
//   LUT k : I0..I{k-1} -> inputs, O -> output
//   SRL k : like LUT plus CE (shift enable); shifts config on CE=1
//   FF    : D -> inputs[0], Q -> output, CLK -> clk, optional CE
//   BUF   : I -> inputs[0], O -> output
//   GND   : O -> output (constant 0); VCC likewise constant 1
struct Gate {
  GateId id = 0;
  GateKind kind = GateKind::Lut;
  int arity = 0;          // LUT/SRL input count, 1..6
  TruthTable config;      // LUT/SRL only
  bool init = false;      // FF initial value
  std::vector<NetId> inputs;
  NetId output = kNoNet;
  NetId clk = kNoNet;     // FF only
  NetId ce = kNoNet;      // FF optional, SRL required

  bool has_config() const {
    return kind == GateKind::Lut || kind == GateKind::Srl;
  }
  bool is_ff() const { return kind == GateKind::Ff; }
};

// Named pin of a gate, for reports and IO.
struct PinBinding {
  std::string pin;
  NetId net = kNoNet;
  bool is_output = false;
};
std::vector<PinBinding> gate_pins(const Gate& g);

// Derived per-net connectivity (rebuilt by Netlist::rebuild).
struct NetConn {
  std::vector<GateId> driver_gates;  // gates driving via O/Q
  bool driven_by_input_port = false;
  std::vector<GateId> readers;       // gates with any input/clk/ce pin here
  bool read_by_output_port = false;

  int driver_count() const {
    return static_cast<int>(driver_gates.size()) +
           (driven_by_input_port ? 1 : 0);
  }
  bool has_sink() const { return !readers.empty() || read_by_output_port; }
};

// Flattened gate-level netlist. Nets are interned by name; top-level ports
// are nets named in the port lists. Analyses require rebuild() after any
// structural change; transforms copy, edit, rebuild.
class Netlist {
 public:
  std::string name;
  std::vector<std::string> inputs;   // input port (= net) names, in order
  std::vector<std::string> outputs;  // output port names
  std::string clock;                 // clock port name, empty if none
  std::vector<Gate> gates;           // kept sorted by id after rebuild()

  NetId intern_net(const std::string& net_name);
  std::optional<NetId> find_net(const std::string& net_name) const;
  const std::string& net_name(NetId id) const;
  std::size_t net_count() const { return net_names_.size(); }

  const Gate* find_gate(GateId id) const;
  Gate* find_gate(GateId id);
  GateId next_gate_id() const;

  // Convenience builders; callers rebuild() when done.
  NetId add_input(const std::string& net_name);
  NetId add_output(const std::string& net_name);
  NetId set_clock(const std::string& net_name);
  NetId fresh_net(const std::string& prefix);
  GateId add_lut(const TruthTable& config, const std::vector<NetId>& ins,
                 NetId out);
  GateId add_srl(const TruthTable& config, const std::vector<NetId>& ins,
                 NetId ce, NetId out);
  GateId add_ff(NetId d, NetId q, NetId ce = kNoNet, bool init = false);
  GateId add_buf(NetId in, NetId out);
  GateId add_gnd(NetId out);
  GateId add_vcc(NetId out);

  void rebuild();
  bool links_current() const { return links_current_; }
  const NetConn& conn(NetId id) const;
  std::optional<NetId> clock_net() const;

  bool structurally_equal(const Netlist& other) const;

 private:
  std::vector<std::string> net_names_;
  std::unordered_map<std::string, NetId> net_ids_;
  std::unordered_map<GateId, std::size_t> gate_index_;
  std::vector<NetConn> conns_;
  bool links_current_ = false;
  std::uint64_t fresh_counter_ = 0;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  DuplicateGateId,
  DuplicatePort,
  ArityRange,
  ConfigWidth,
  MissingPin,
  DanglingNet,
  MultiDriver,
  NoDriver,
  NoClock,
  ClockMismatch,
  CombinationalCycle,
  DanglingOutput,  // warning: net with driver but no sink
  ClockAsData,     // warning: clock net read by a data pin
};
const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
  std::optional<GateId> gate;
  std::optional<std::string> net;
};

struct ValidationReport {
  std::vector<Violation> errors;
  std::vector<Violation> warnings;
  bool ok() const { return errors.empty(); }
};

// Reports every invariant violation; never throws. Two calls on the same
// netlist return identical reports.
ValidationReport validate(const Netlist& n);

// ---------------------------------------------------------------------------
// Constant tracing

enum class ConstProvenance { Direct, Traced, Opaque };

struct OpaqueConstants {
  std::unordered_map<NetId, bool> values;
  bool empty() const { return values.empty(); }
};

struct TracedConstant {
  bool value = false;
  ConstProvenance provenance = ConstProvenance::Direct;
  NetId source = kNoNet;  // net the constant originates from
};

// Resolves a net to 0/1 when it is driven by GND/VCC, transitively through
// BUFs and pass-through LUTs (exact projections), or listed in `opaque`.
std::optional<TracedConstant> trace_constant_ex(
    const Netlist& n, NetId net, const OpaqueConstants& opaque = {});
std::optional<bool> trace_constant(const Netlist& n, NetId net,
                                   const OpaqueConstants& opaque = {});

// Follows BUFs and pass-through LUTs from `net` back to its first
// non-transparent driver net. Used by chain building and constant tracing.
NetId resolve_transparent(const Netlist& n, NetId net);

}  // namespace gatehound
