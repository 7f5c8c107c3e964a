#include "gatehound/watermark.hpp"

#include <algorithm>
#include <set>

#include "gatehound/util.hpp"

namespace gatehound {

namespace {

// Tied pins and the unreachable table entries they imply, or nothing when
// no pin is tied. SRLs only qualify once their shift enable traces to 0.
std::optional<WatermarkSlot> analyze_slot(const Netlist& n, const Gate& g,
                                          const OpaqueConstants& opaque) {
  if (!g.has_config()) return std::nullopt;
  if (g.kind == GateKind::Srl) {
    auto ce = trace_constant(n, g.ce, opaque);
    if (!ce || *ce != false) return std::nullopt;
  }
  WatermarkSlot slot;
  slot.gate = g.id;
  slot.kind = g.kind;
  slot.arity = g.arity;
  for (int p = 0; p < g.arity; ++p) {
    auto traced = trace_constant_ex(n, g.inputs[p], opaque);
    if (!traced) continue;
    slot.tied_pins.push_back({p, traced->value, traced->provenance,
                              traced->source});
  }
  if (slot.tied_pins.empty()) return std::nullopt;
  for (std::uint32_t i = 0; i < g.config.entries(); ++i) {
    bool reachable = true;
    for (const TiedPin& tp : slot.tied_pins) {
      if ((((i >> tp.pin) & 1) != 0) != tp.value) {
        reachable = false;
        break;
      }
    }
    if (!reachable) {
      slot.unreachable_indices.push_back(i);
      bool bit = g.config.get(i);
      slot.payload_bits.push_back(bit ? 1 : 0);
      slot.positive = slot.positive || bit;
    }
  }
  return slot;
}

}  // namespace

std::size_t WatermarkReport::total_capacity() const {
  std::size_t total = 0;
  for (const auto& s : slots) total += s.capacity();
  return total;
}

std::size_t WatermarkReport::positive_slots() const {
  std::size_t total = 0;
  for (const auto& s : slots) total += s.positive ? 1 : 0;
  return total;
}

OpaqueConstants discover_opaque_constants(const Netlist& n,
                                          const LfsrDetectOptions& opts) {
  OpaqueConstants constants;
  for (const LfsrDescriptor& lfsr : detect_lfsrs(n, opts)) {
    if (auto sig = classify_constant_generator(n, lfsr, opts))
      constants.values[sig->net] = sig->value;
  }
  return constants;
}

WatermarkReport detect_watermarks(const Netlist& n,
                                  const OpaqueConstants& opaque) {
  WatermarkReport report;
  std::set<NetId> sources;
  for (const Gate& g : n.gates) {
    auto slot = analyze_slot(n, g, opaque);
    if (!slot) continue;
    for (const TiedPin& tp : slot->tied_pins) sources.insert(tp.source);
    report.slots.push_back(std::move(*slot));
  }
  report.constant_sources_used.assign(sources.begin(), sources.end());
  return report;
}

std::vector<std::uint8_t> extract_payload(const WatermarkReport& report) {
  std::vector<std::uint8_t> bits;
  for (const WatermarkSlot& slot : report.slots)
    bits.insert(bits.end(), slot.payload_bits.begin(),
                slot.payload_bits.end());
  return bits;
}

namespace {

// Checks the report still describes this netlist and returns the gate.
Gate& checked_gate(Netlist& n, const WatermarkSlot& slot) {
  Gate* g = n.find_gate(slot.gate);
  if (!g) throw Error("stale report: gate " + std::to_string(slot.gate) +
                      " not in netlist");
  if (!g->has_config() || g->arity != slot.arity)
    throw Error("stale report: gate " + std::to_string(slot.gate) +
                " changed shape");
  if (slot.payload_bits.size() != slot.unreachable_indices.size())
    throw Error("malformed report: payload/index size mismatch");
  for (std::size_t k = 0; k < slot.unreachable_indices.size(); ++k) {
    std::uint32_t idx = slot.unreachable_indices[k];
    if (idx >= g->config.entries())
      throw Error("stale report: index out of range on gate " +
                  std::to_string(slot.gate));
    if (g->config.get(idx) != (slot.payload_bits[k] != 0))
      throw Error("stale report: config mismatch on gate " +
                  std::to_string(slot.gate));
  }
  return *g;
}

}  // namespace

Netlist strip_watermark(const Netlist& n, const WatermarkReport& report) {
  Netlist out = n;
  for (const WatermarkSlot& slot : report.slots) {
    Gate& g = checked_gate(out, slot);
    for (std::uint32_t idx : slot.unreachable_indices) g.config.put(idx, false);
  }
  out.rebuild();
  return out;
}

Netlist alter_watermark(const Netlist& n, const WatermarkReport& report,
                        const std::vector<std::uint8_t>& forged) {
  if (forged.size() > report.total_capacity())
    throw Error("forged payload of " + std::to_string(forged.size()) +
                " bits exceeds capacity " +
                std::to_string(report.total_capacity()));
  Netlist out = n;
  std::size_t at = 0;
  for (const WatermarkSlot& slot : report.slots) {
    Gate& g = checked_gate(out, slot);
    for (std::uint32_t idx : slot.unreachable_indices) {
      bool bit = at < forged.size() && forged[at];
      ++at;
      g.config.put(idx, bit);
    }
  }
  out.rebuild();
  return out;
}

EmbedResult embed_watermark(const Netlist& n,
                            const std::vector<std::uint8_t>& payload,
                            const EmbedOptions& opts) {
  EmbedResult result;
  result.netlist = n;
  Netlist& out = result.netlist;
  if (!out.links_current()) out.rebuild();

  OpaqueConstants tie_constants;
  if (opts.protection == WatermarkProtection::Opaque) {
    OpaquePredicate pred =
        emit_opaque_predicate(out, opts.lfsr_length, opts.lfsr_taps,
                              ReduceKind::Nor, opts.lfsr_init, opts.net_prefix);
    out.rebuild();
    result.predicate = pred;
    result.tie_net = pred.output;
    tie_constants.values[pred.output] = false;
  } else {
    // Reuse an existing ground net if one is around.
    NetId gnd = kNoNet;
    for (const Gate& g : out.gates) {
      if (g.kind == GateKind::Gnd) {
        gnd = g.output;
        break;
      }
    }
    if (gnd == kNoNet) {
      gnd = out.fresh_net(opts.net_prefix + "gnd");
      out.add_gnd(gnd);
      out.rebuild();
    }
    result.tie_net = gnd;
  }

  // Select host LUTs in gate id order until the payload fits.
  std::vector<GateId> candidates;
  for (const Gate& g : out.gates)
    if (g.kind == GateKind::Lut) candidates.push_back(g.id);

  std::size_t capacity = 0;
  std::vector<GateId> hosts;
  for (GateId id : candidates) {
    if (capacity >= payload.size()) break;
    const Gate& g = *out.find_gate(id);
    std::vector<int> eligible;
    bool blocked = false;
    for (int p = 0; p < g.arity; ++p) {
      bool ignored = !g.config.depends_on(p);
      auto traced = trace_constant(out, g.inputs[p], tie_constants);
      if (ignored || (traced && *traced == false)) {
        eligible.push_back(p);
      } else if (traced && *traced == true &&
                 opts.protection == WatermarkProtection::Opaque) {
        // A remaining plain-constant tie would stay visible to constant-only
        // detection; do not host here.
        blocked = true;
      }
    }
    if (blocked || eligible.empty()) continue;
    Gate& host = *out.find_gate(id);
    for (int p : eligible)
      host.inputs[static_cast<std::size_t>(p)] = result.tie_net;
    out.rebuild();
    auto slot = analyze_slot(out, *out.find_gate(id), tie_constants);
    if (!slot) throw Error("internal: embedded host lost its tie");
    capacity += slot->capacity();
    hosts.push_back(id);
  }
  if (capacity < payload.size())
    throw Error("insufficient capacity: need " +
                std::to_string(payload.size()) + " bits, hosts provide " +
                std::to_string(capacity));

  // Write the payload (zero-fill the remainder) in slot order.
  std::size_t at = 0;
  for (GateId id : hosts) {
    Gate& g = *out.find_gate(id);
    auto slot = analyze_slot(out, g, tie_constants);
    for (std::uint32_t idx : slot->unreachable_indices) {
      bool bit = at < payload.size() && payload[at];
      ++at;
      g.config.put(idx, bit);
    }
  }
  out.rebuild();

  result.hosts = hosts;
  result.plan = detect_watermarks(out, tie_constants);
  return result;
}

}  // namespace gatehound
