#include "gatehound/designgen.hpp"

#include <algorithm>

#include "gatehound/util.hpp"

namespace gatehound {

namespace {

using nlohmann::json;

TruthTable xor2() { return table_parity(2); }

// f(I0..I3, I4, I5) with the 16-bit `low` table in the I4=I5=0 leaf and
// zeros everywhere else.
TruthTable lut6_low_leaf(std::uint16_t low) {
  return TruthTable(6, static_cast<std::uint64_t>(low));
}

// The 16-bit table replicated across all four I4/I5 leaves, so the function
// ignores the two high pins entirely.
TruthTable lut6_ignore_high(std::uint16_t low) {
  std::uint64_t bits = low;
  bits |= bits << 16;
  bits |= bits << 32;
  return TruthTable(6, bits);
}

// f = I5 ? I4 : low(I0..I3) — a 2:1 load mux packed beside a 4-input
// function, using the two otherwise free pins of a LUT6.
TruthTable lut6_with_load_mux(std::uint16_t low) {
  TruthTable t(6, 0);
  for (std::uint64_t i = 0; i < 64; ++i) {
    bool sel = (i >> 5) & 1;
    bool data = (i >> 4) & 1;
    bool value = sel ? data : ((low >> (i & 0xf)) & 1);
    if (value) t.put(i, value);
  }
  return t;
}

// Comparator tables built by enumeration.
TruthTable table_value_lt(int width, std::uint64_t bound) {
  TruthTable t(width, 0);
  for (std::uint64_t i = 0; i < t.entries(); ++i)
    if (i < bound) t.put(i, true);
  return t;
}

TruthTable table_value_eq(int width, std::uint64_t value) {
  TruthTable t(width, 0);
  t.put(value, true);
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// PRESENT-80 fixture

GeneratedFixture gen_present(bool merged) {
  Netlist n;
  n.name = merged ? "present80_merged" : "present80";
  n.set_clock("clk");

  NetId load = n.add_input("load");
  std::vector<NetId> pt(64), key_in(80), state_q(64), key_q(80);
  for (int j = 0; j < 64; ++j) pt[j] = n.add_input("pt" + std::to_string(j));
  for (int i = 0; i < 80; ++i)
    key_in[i] = n.add_input("key" + std::to_string(i));
  for (int j = 0; j < 64; ++j)
    state_q[j] = n.intern_net("state" + std::to_string(j));
  for (int i = 0; i < 80; ++i)
    key_q[i] = n.intern_net("kreg" + std::to_string(i));

  NetId gnd = kNoNet;
  if (!merged) {
    gnd = n.intern_net("const0");
    n.add_gnd(gnd);
  }

  // Round counter: 6 bits, 0 idle, 1..31 rounds, 32 done (held).
  std::vector<NetId> r(6);
  for (int b = 0; b < 6; ++b) r[b] = n.intern_net("round" + std::to_string(b));
  NetId is32 = n.intern_net("round_is32");
  n.add_lut(table_value_eq(6, 32), r, is32);
  NetId is0 = n.intern_net("round_is0");
  n.add_lut(table_value_eq(6, 0), r, is0);
  NetId running = n.intern_net("running");
  n.add_lut(table_and(2, 0b11), {is0, is32}, running);  // NOR
  NetId ce = n.intern_net("regs_ce");
  n.add_lut(table_or(2), {load, running}, ce);

  // carries for the +1 increment
  std::vector<NetId> carry(6);
  for (int b = 1; b < 6; ++b) {
    if (b == 1) {
      carry[1] = r[0];
      continue;
    }
    carry[b] = n.intern_net("round_c" + std::to_string(b));
    std::vector<NetId> ins(r.begin(), r.begin() + b);
    n.add_lut(table_and(b), ins, carry[b]);
  }
  for (int b = 0; b < 6; ++b) {
    NetId next = n.intern_net("round_n" + std::to_string(b));
    if (b == 0) {
      // load ? 1 : r0 ^ running
      TruthTable t(3, 0);
      for (std::uint64_t i = 0; i < 8; ++i) {
        bool ld = i & 1, rb = (i >> 1) & 1, run = (i >> 2) & 1;
        if (ld ? true : (rb ^ run)) t.put(i, true);
      }
      n.add_lut(t, {load, r[0], running}, next);
    } else {
      // load ? 0 : rb ^ (running & carry)
      TruthTable t(4, 0);
      for (std::uint64_t i = 0; i < 16; ++i) {
        bool ld = i & 1, rb = (i >> 1) & 1, run = (i >> 2) & 1,
             cy = (i >> 3) & 1;
        if (ld ? false : (rb ^ (run && cy))) t.put(i, true);
      }
      n.add_lut(t, {load, r[b], running, carry[b]}, next);
    }
    n.add_ff(next, r[b]);
  }
  NetId done = n.add_output("done");
  n.add_buf(is32, done);

  // addRoundKey: x[j] = state[j] ^ kreg[16+j]; doubles as the ciphertext
  // because the held key register equals the final round key when done.
  std::vector<NetId> x(64);
  for (int j = 0; j < 64; ++j) {
    x[j] = n.intern_net("addkey" + std::to_string(j));
    n.add_lut(xor2(), {state_q[j], key_q[16 + j]}, x[j]);
    NetId ct = n.add_output("ct" + std::to_string(j));
    n.add_buf(x[j], ct);
  }

  // inverse permutation: state bit m is fed by sbox output y[pinv[m]]
  std::array<int, 64> pinv{};
  for (int i = 0; i < 64; ++i) pinv[present_p_layer(i)] = i;

  json sbox_gates = json::array();

  // SBOX layer: 16 datapath nibbles, one LUT6 per output bit.
  std::vector<NetId> y(64);
  for (int nib = 0; nib < 16; ++nib) {
    for (int b = 0; b < 4; ++b) {
      int out_index = 4 * nib + b;
      y[out_index] = n.intern_net("sbox" + std::to_string(out_index));
      std::uint16_t pattern =
          sbox_output_table(kPresentSbox, {0, 1, 2, 3}, b);
      std::vector<NetId> ins = {x[4 * nib + 0], x[4 * nib + 1],
                                x[4 * nib + 2], x[4 * nib + 3]};
      GateId gate;
      int state_bit = present_p_layer(out_index);
      if (merged) {
        ins.push_back(pt[state_bit]);
        ins.push_back(load);
        gate = n.add_lut(lut6_with_load_mux(pattern), ins, y[out_index]);
      } else {
        ins.push_back(gnd);
        ins.push_back(gnd);
        gate = n.add_lut(lut6_low_leaf(pattern), ins, y[out_index]);
      }
      sbox_gates.push_back({{"gate", gate},
                            {"role", "datapath"},
                            {"nibble", nib},
                            {"out_bit", b},
                            {"state_bit", state_bit},
                            {"removed_pins", {4, 5}},
                            {"selector", 0}});
    }
  }

  // State registers: next = load ? pt : y[pinv[m]] (mux merged into the
  // sbox LUT when merged=true).
  for (int m = 0; m < 64; ++m) {
    if (merged) {
      n.add_ff(y[pinv[m]], state_q[m], ce);
    } else {
      NetId next = n.intern_net("state_n" + std::to_string(m));
      n.add_lut(table_mux2(), {y[pinv[m]], pt[m], load}, next);
      n.add_ff(next, state_q[m], ce);
    }
  }

  // Key schedule: rotate left 61 (wiring), sbox on bits 79..76, round
  // counter xor into bits 19..15, load mux in front of every register.
  auto rotated = [&](int i) { return key_q[(i + 19) % 80]; };
  std::vector<NetId> ky(80, kNoNet);
  for (int t = 0; t < 5; ++t) {
    int i = 15 + t;
    ky[i] = n.intern_net("ksched_x" + std::to_string(i));
    n.add_lut(xor2(), {rotated(i), r[t]}, ky[i]);
  }
  for (int b = 0; b < 4; ++b) {
    int i = 76 + b;
    std::uint16_t pattern = sbox_output_table(kPresentSbox, {0, 1, 2, 3}, b);
    // rotated bits 79..76 are kreg[18..15]; nibble LSB is kreg[15]
    std::vector<NetId> ins = {key_q[15], key_q[16], key_q[17], key_q[18]};
    ky[i] = n.intern_net("ksched_s" + std::to_string(i));
    GateId gate;
    if (merged) {
      ins.push_back(key_in[i]);
      ins.push_back(load);
      gate = n.add_lut(lut6_with_load_mux(pattern), ins, ky[i]);
    } else {
      ins.push_back(gnd);
      ins.push_back(gnd);
      gate = n.add_lut(lut6_low_leaf(pattern), ins, ky[i]);
    }
    sbox_gates.push_back({{"gate", gate},
                          {"role", "keyschedule"},
                          {"nibble", 0},
                          {"out_bit", b},
                          {"key_bit", i},
                          {"removed_pins", {4, 5}},
                          {"selector", 0}});
  }
  for (int i = 0; i < 80; ++i) {
    bool merged_slot = merged && i >= 76;
    if (merged_slot) {
      n.add_ff(ky[i], key_q[i], ce);
      continue;
    }
    NetId data = ky[i] == kNoNet ? rotated(i) : ky[i];
    NetId next = n.intern_net("key_n" + std::to_string(i));
    n.add_lut(table_mux2(), {data, key_in[i], load}, next);
    n.add_ff(next, key_q[i], ce);
  }

  n.rebuild();

  GeneratedFixture fixture;
  fixture.netlist = std::move(n);
  fixture.manifest = {
      {"family", "present"},
      {"merged", merged},
      {"protocol",
       {{"load_cycle", 0}, {"rounds", 31}, {"done_cycle", 32}}},
      {"sbox_gates", sbox_gates},
      {"expected_matches", 68}};
  return fixture;
}

std::uint64_t present_fixture_encrypt(Simulator& sim, const Key80& key,
                                      std::uint64_t plaintext) {
  auto drive = [&](bool load_cycle) {
    sim.set_input("load", load_cycle);
    for (int j = 0; j < 64; ++j)
      sim.set_input("pt" + std::to_string(j),
                    load_cycle && ((plaintext >> j) & 1));
    for (int i = 0; i < 80; ++i)
      sim.set_input("key" + std::to_string(i),
                    load_cycle && key80_bit(key, i));
  };
  drive(true);
  sim.step();
  for (int round = 0; round < 32; ++round) {
    drive(false);
    sim.step();
  }
  if (!sim.output("done")) throw Error("present fixture: done not asserted");
  std::uint64_t ct = 0;
  for (int j = 0; j < 64; ++j)
    if (sim.output("ct" + std::to_string(j))) ct |= 1ull << j;
  return ct;
}

// ---------------------------------------------------------------------------
// A5/1 fixture

GeneratedFixture gen_a51() {
  const A51Profile& profile = a51_toolkit_profile();
  Netlist n;
  n.name = "a51_core";
  n.set_clock("clk");
  NetId load_bit = n.add_input("load_bit");
  NetId data_in = n.add_input("data_in");

  // 8-bit cycle counter, held once it reaches 186.
  std::vector<NetId> c(8);
  for (int b = 0; b < 8; ++b) c[b] = n.intern_net("cnt" + std::to_string(b));
  NetId ready = n.intern_net("ready");
  {
    NetId hi = n.intern_net("ready_hi");
    // 186 = 0b10111010: c7..c4 = 1011, c3..c0 = 1010
    n.add_lut(table_value_eq(4, 0b1011), {c[4], c[5], c[6], c[7]}, hi);
    NetId lo = n.intern_net("ready_lo");
    n.add_lut(table_value_eq(4, 0b1010), {c[0], c[1], c[2], c[3]}, lo);
    n.add_lut(table_and(2), {hi, lo}, ready);
  }
  NetId loading = n.intern_net("loading");
  {
    // count < 86 <=> c7=0 and (c6=0 or low6 < 22)
    NetId lt22 = n.intern_net("load_lt22");
    n.add_lut(table_value_lt(6, 22), {c[0], c[1], c[2], c[3], c[4], c[5]},
              lt22);
    TruthTable t(3, 0);
    for (std::uint64_t i = 0; i < 8; ++i) {
      bool c7 = i & 1, c6 = (i >> 1) & 1, lt = (i >> 2) & 1;
      if (!c7 && (!c6 || lt)) t.put(i, true);
    }
    n.add_lut(t, {c[7], c[6], lt22}, loading);
  }
  {
    // increment with hold at ready
    NetId and03 = n.intern_net("cnt_and03");
    n.add_lut(table_and(4), {c[0], c[1], c[2], c[3]}, and03);
    std::vector<NetId> carry(8, kNoNet);
    carry[1] = c[0];
    carry[2] = n.intern_net("cnt_c2");
    n.add_lut(table_and(2), {c[0], c[1]}, carry[2]);
    carry[3] = n.intern_net("cnt_c3");
    n.add_lut(table_and(3), {c[0], c[1], c[2]}, carry[3]);
    carry[4] = and03;
    carry[5] = n.intern_net("cnt_c5");
    n.add_lut(table_and(2), {and03, c[4]}, carry[5]);
    carry[6] = n.intern_net("cnt_c6");
    n.add_lut(table_and(3), {and03, c[4], c[5]}, carry[6]);
    carry[7] = n.intern_net("cnt_c7");
    n.add_lut(table_and(4), {and03, c[4], c[5], c[6]}, carry[7]);
    for (int b = 0; b < 8; ++b) {
      NetId next = n.intern_net("cnt_n" + std::to_string(b));
      if (b == 0) {
        // ready ? c0 : ~c0
        TruthTable t(2, 0);
        for (std::uint64_t i = 0; i < 4; ++i) {
          bool cb = i & 1, rd = (i >> 1) & 1;
          if (rd ? cb : !cb) t.put(i, true);
        }
        n.add_lut(t, {c[0], ready}, next);
      } else {
        TruthTable t(3, 0);
        for (std::uint64_t i = 0; i < 8; ++i) {
          bool cb = i & 1, cy = (i >> 1) & 1, rd = (i >> 2) & 1;
          if (rd ? cb : (cb ^ cy)) t.put(i, true);
        }
        n.add_lut(t, {c[b], carry[b], ready}, next);
      }
      n.add_ff(next, c[b]);
    }
  }
  n.add_output("ready");  // the comparator net doubles as the port

  // Three LFSRs with CE-gated majority clocking and load-phase injection.
  std::array<std::vector<NetId>, 3> q;
  std::vector<GateId> lfsr_regs[3];
  std::array<NetId, 3> clock_tap_nets{};
  std::array<NetId, 3> out_tap_nets{};
  std::array<NetId, 3> ce_nets{};
  for (int r = 0; r < 3; ++r) {
    int len = profile.lengths[r];
    q[r].resize(len);
    for (int i = 0; i < len; ++i)
      q[r][i] = n.intern_net("l" + std::to_string(r + 1) + "_q" +
                             std::to_string(i));
    ce_nets[r] = n.intern_net("l" + std::to_string(r + 1) + "_ce");
    // head: parity(taps) ^ (loading & load_bit), one LUT
    const std::vector<int>& taps = profile.feedback_taps[r];
    std::vector<NetId> ins;
    for (int t : taps) ins.push_back(q[r][t]);
    ins.push_back(loading);
    ins.push_back(load_bit);
    int k = static_cast<int>(ins.size());
    TruthTable t(k, 0);
    for (std::uint64_t i = 0; i < t.entries(); ++i) {
      int parity = 0;
      for (std::size_t tap = 0; tap < taps.size(); ++tap)
        parity ^= static_cast<int>((i >> tap) & 1);
      bool ld = (i >> (k - 2)) & 1, lb = (i >> (k - 1)) & 1;
      if (parity ^ (ld && lb)) t.put(i, true);
    }
    NetId feed = n.intern_net("l" + std::to_string(r + 1) + "_feed");
    n.add_lut(t, ins, feed);
    for (int i = 0; i < len; ++i) {
      GateId ff = n.add_ff(i == 0 ? feed : q[r][i - 1], q[r][i], ce_nets[r]);
      lfsr_regs[r].push_back(ff);
    }
    clock_tap_nets[r] = q[r][profile.clock_taps[r]];
    out_tap_nets[r] = q[r][len - 1];
  }

  NetId maj = n.intern_net("majority");
  GateId maj_gate = n.add_lut(table_majority3(),
                              {clock_tap_nets[0], clock_tap_nets[1],
                               clock_tap_nets[2]},
                              maj);
  for (int r = 0; r < 3; ++r) {
    // ce = loading | (tap == maj)
    TruthTable t(3, 0);
    for (std::uint64_t i = 0; i < 8; ++i) {
      bool ld = i & 1, tp = (i >> 1) & 1, mj = (i >> 2) & 1;
      if (ld || tp == mj) t.put(i, true);
    }
    n.add_lut(t, {loading, clock_tap_nets[r], maj}, ce_nets[r]);
  }

  NetId ks = n.intern_net("keystream");
  GateId ks_gate = n.add_lut(table_parity(3),
                             {out_tap_nets[0], out_tap_nets[1],
                              out_tap_nets[2]},
                             ks);
  NetId ct_raw = n.intern_net("ct_raw");
  GateId cipher_gate = n.add_lut(xor2(), {ks, data_in}, ct_raw);
  NetId ct_out = n.add_output("ct_out");
  GateId out_ff = n.add_ff(ct_raw, ct_out, ready);

  n.rebuild();

  json lfsrs = json::array();
  const char* names[3] = {"L1", "L2", "L3"};
  for (int r = 0; r < 3; ++r) {
    lfsrs.push_back({{"name", names[r]},
                     {"length", profile.lengths[r]},
                     {"taps", profile.feedback_taps[r]},
                     {"clock_tap", profile.clock_taps[r]},
                     {"registers", lfsr_regs[r]}});
  }
  GeneratedFixture fixture;
  fixture.netlist = std::move(n);
  fixture.manifest = {
      {"family", "a51"},
      {"protocol",
       {{"key_cycles", {0, 64}},
        {"frame_cycles", {64, 86}},
        {"warmup_cycles", {86, 186}},
        {"ready_cycle", kA51ReadyCycle},
        {"first_data_cycle", kA51FirstDataCycle},
        {"first_ct_cycle", kA51FirstCtCycle}}},
      {"lfsrs", lfsrs},
      {"majority_gate", maj_gate},
      {"keystream_xor", ks_gate},
      {"cipher_xor", cipher_gate},
      {"output_ff", out_ff},
      {"ready_net", "ready"}};
  return fixture;
}

A51DriveResult drive_a51_fixture(const Netlist& n, std::uint64_t key,
                                 std::uint32_t frame,
                                 const std::vector<std::uint8_t>& plaintext,
                                 std::size_t stream_len,
                                 const std::vector<NetId>& probes) {
  Simulator sim(n);
  A51DriveResult result;
  int last_cycle = kA51FirstCtCycle + static_cast<int>(stream_len);
  for (int cycle = 0; cycle < last_cycle; ++cycle) {
    bool load_bit = false;
    if (cycle < 64) {
      load_bit = (key >> cycle) & 1;
    } else if (cycle < 86) {
      load_bit = (frame >> (cycle - 64)) & 1;
    }
    sim.set_input("load_bit", load_bit);
    int data_index = cycle - kA51FirstDataCycle;
    bool data = data_index >= 0 &&
                data_index < static_cast<int>(plaintext.size()) &&
                plaintext[static_cast<std::size_t>(data_index)];
    sim.set_input("data_in", data);
    sim.step();
    if (result.ready_cycle < 0 && sim.output("ready")) {
      result.ready_cycle = cycle;
      for (NetId p : probes)
        result.probes_at_ready.push_back(sim.net(p) ? 1 : 0);
    }
    if (cycle >= kA51FirstCtCycle)
      result.stream.push_back(sim.output("ct_out") ? 1 : 0);
  }
  return result;
}

// ---------------------------------------------------------------------------
// LFSR and opaque-predicate fixtures

namespace {

json lfsr_manifest(const char* family, const OpaquePredicate& pred, int length,
                   const std::vector<int>& taps, std::uint64_t init) {
  LfsrDescriptor desc;
  desc.registers = pred.registers;
  desc.taps = taps;
  std::sort(desc.taps.begin(), desc.taps.end());
  return {{"family", family},
          {"length", length},
          {"taps", desc.taps},
          {"polynomial", desc.polynomial_string()},
          {"init", init},
          {"registers", pred.registers}};
}

}  // namespace

GeneratedFixture gen_lfsr(int length, const std::vector<int>& taps,
                          std::uint64_t init, FeedbackKind kind) {
  Netlist n;
  n.name = "lfsr" + std::to_string(length);
  n.set_clock("clk");
  LfsrChain chain = emit_lfsr_chain(n, length, taps, kind, init, "");
  NetId out = n.add_output("stream_out");
  n.add_buf(chain.q.back(), out);
  n.rebuild();

  OpaquePredicate pred;
  pred.registers = chain.registers;
  GeneratedFixture fixture;
  json manifest = lfsr_manifest("lfsr", pred, length, taps, init);
  manifest["feedback"] = to_string(kind);
  manifest["output"] = "stream_out";
  fixture.netlist = std::move(n);
  fixture.manifest = std::move(manifest);
  return fixture;
}

GeneratedFixture gen_opaque_demo(int length, const std::vector<int>& taps,
                                 ReduceKind kind, std::uint64_t init) {
  Netlist n;
  n.name = "opaque" + std::to_string(length);
  n.set_clock("clk");
  OpaquePredicate pred = emit_opaque_predicate(n, length, taps, kind, init,
                                               "op_");
  NetId out = n.add_output("const_out");
  n.add_buf(pred.output, out);
  n.rebuild();

  GeneratedFixture fixture;
  json manifest = lfsr_manifest("opaque-demo", pred, length, taps, init);
  manifest["reduce"] = to_string(kind);
  manifest["constant_value"] = kind == ReduceKind::Or ? 1 : 0;
  manifest["constant_net"] = "const_out";
  fixture.netlist = std::move(n);
  fixture.manifest = std::move(manifest);
  return fixture;
}

// ---------------------------------------------------------------------------
// Watermark demo carrier

Netlist watermark_carrier() {
  Netlist n;
  n.name = "pipeline8";
  n.set_clock("clk");
  std::vector<NetId> d(8);
  for (int i = 0; i < 8; ++i) d[i] = n.add_input("d" + std::to_string(i));

  // Two LUT6 hosts computing 4-input functions; pins I4/I5 are wired to
  // live data but ignored by the table, the degree of freedom the
  // watermark exploits.
  std::uint16_t f0 = 0x6996;  // 4-input parity
  std::uint16_t f1 = 0x17E8;  // 4-input majority-flavored mix
  NetId h0 = n.intern_net("mix0");
  n.add_lut(lut6_ignore_high(f0), {d[0], d[1], d[2], d[3], d[6], d[7]}, h0);
  NetId h1 = n.intern_net("mix1");
  n.add_lut(lut6_ignore_high(f1), {d[4], d[5], d[6], d[7], d[0], d[1]}, h1);

  for (int i = 0; i < 8; ++i) {
    NetId mixed = n.intern_net("stage" + std::to_string(i));
    n.add_lut(table_parity(3), {d[i], i < 4 ? h0 : h1, d[(i + 3) % 8]}, mixed);
    NetId qn = n.add_output("q" + std::to_string(i));
    n.add_ff(mixed, qn);
  }
  n.rebuild();
  return n;
}

GeneratedFixture gen_watermark_demo(const std::vector<std::uint8_t>& payload,
                                    const EmbedOptions& opts) {
  Netlist carrier = watermark_carrier();
  EmbedResult embedded = embed_watermark(carrier, payload, opts);

  json slots = json::array();
  for (const WatermarkSlot& slot : embedded.plan.slots) {
    json tied = json::array();
    for (const TiedPin& tp : slot.tied_pins)
      tied.push_back({{"pin", tp.pin}, {"value", tp.value ? 1 : 0}});
    slots.push_back({{"gate", slot.gate},
                     {"tied_pins", tied},
                     {"capacity", slot.capacity()},
                     {"bits", bits_to_string(slot.payload_bits)}});
  }
  GeneratedFixture fixture;
  fixture.manifest = {
      {"family", "watermark-demo"},
      {"payload", bits_to_string(payload)},
      {"protection",
       opts.protection == WatermarkProtection::Opaque ? "opaque" : "none"},
      {"slots", slots}};
  if (embedded.predicate) {
    fixture.manifest["opaque"] = {
        {"length", opts.lfsr_length},
        {"taps", opts.lfsr_taps},
        {"init", opts.lfsr_init},
        {"constant_net", embedded.netlist.net_name(embedded.tie_net)},
        {"registers", embedded.predicate->registers}};
  }
  fixture.netlist = std::move(embedded.netlist);
  return fixture;
}

}  // namespace gatehound
