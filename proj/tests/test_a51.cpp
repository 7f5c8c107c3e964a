#include <doctest.h>

#include <random>

#include "gatehound/a51.hpp"
#include "gatehound/designgen.hpp"
#include "gatehound/netlist_io.hpp"
#include "gatehound/sim.hpp"

using namespace gatehound;

namespace {

std::vector<NetId> leak_probe_nets(const Netlist& n,
                                   const A51Descriptor& desc) {
  std::vector<NetId> nets;
  for (const LfsrDescriptor& lfsr : desc.lfsrs)
    for (NetId net : lfsr.register_nets(n)) nets.push_back(net);
  return nets;
}

}  // namespace

TEST_CASE("detect_a51 recovers the planted architecture") {
  GeneratedFixture fx = gen_a51();
  A51Descriptor desc = detect_a51(fx.netlist);

  CHECK(desc.lfsrs[0].length() == 19);
  CHECK(desc.lfsrs[1].length() == 22);
  CHECK(desc.lfsrs[2].length() == 21);
  CHECK(desc.lfsrs[0].taps == std::vector<int>{13, 16, 17, 18});
  CHECK(desc.lfsrs[1].taps == std::vector<int>{20, 21});
  CHECK(desc.lfsrs[2].taps == std::vector<int>{18, 20});

  // clock taps sit at state positions 8/10/10
  const A51Profile& profile = a51_toolkit_profile();
  for (int r = 0; r < 3; ++r) {
    std::vector<NetId> nets = desc.lfsrs[r].register_nets(fx.netlist);
    CHECK(desc.clock_tap_nets[r] == nets[profile.clock_taps[r]]);
  }

  CHECK(desc.keystream_xor == fx.manifest["keystream_xor"].get<GateId>());
  CHECK(desc.cipher_xor == fx.manifest["cipher_xor"].get<GateId>());
  CHECK(desc.output_ff == fx.manifest["output_ff"].get<GateId>());
  CHECK(fx.netlist.net_name(desc.ready) == "ready");
  REQUIRE(desc.majority_gates.size() == 1);
  CHECK(desc.majority_gates[0] == fx.manifest["majority_gate"].get<GateId>());
}

TEST_CASE("detect_a51 reports no candidate on a block cipher") {
  GeneratedFixture fx = gen_present(false);
  CHECK_THROWS_WITH_AS(detect_a51(fx.netlist), doctest::Contains("no candidate"),
                       NoCandidate);
}

TEST_CASE("ready hint overrides the heuristic") {
  GeneratedFixture fx = gen_a51();
  A51Descriptor plain = detect_a51(fx.netlist);
  A51Descriptor hinted = detect_a51(fx.netlist, std::string("ready"));
  CHECK(hinted.ready == plain.ready);
  CHECK(hinted.output_ff == plain.output_ff);
  CHECK_THROWS_AS(detect_a51(fx.netlist, std::string("no_such_net")), Error);
}

TEST_CASE("ungated output register makes the ready heuristic refuse") {
  GeneratedFixture fx = gen_a51();
  A51Descriptor desc = detect_a51(fx.netlist);
  Netlist n = fx.netlist;
  n.find_gate(desc.output_ff)->ce = kNoNet;
  n.rebuild();
  CHECK_THROWS_WITH_AS(detect_a51(n), doctest::Contains("ambiguous ready"),
                       NoCandidate);
}

TEST_CASE("trojan adds a fixed number of gates and keeps ports") {
  GeneratedFixture fx = gen_a51();
  A51Descriptor desc = detect_a51(fx.netlist);
  Netlist trojaned = inject_a51_trojan(fx.netlist, desc);
  CHECK(validate(trojaned).ok());
  CHECK(trojaned.gates.size() - fx.netlist.gates.size() == 153);
  CHECK(trojaned.inputs == fx.netlist.inputs);
  CHECK(trojaned.outputs == fx.netlist.outputs);

  // original gates are untouched except the output register D pin
  for (const Gate& g : fx.netlist.gates) {
    const Gate* t = trojaned.find_gate(g.id);
    REQUIRE(t != nullptr);
    CHECK(t->config == g.config);
    if (g.id == desc.output_ff) {
      CHECK(t->inputs != g.inputs);
    } else {
      CHECK(t->inputs == g.inputs);
    }
  }
}

TEST_CASE("trojaned stream leaks the captured state then resumes") {
  GeneratedFixture fx = gen_a51();
  A51Descriptor desc = detect_a51(fx.netlist);
  Netlist trojaned = inject_a51_trojan(fx.netlist, desc);
  std::vector<NetId> probes = leak_probe_nets(fx.netlist, desc);

  std::mt19937_64 rng(555);
  for (int rep = 0; rep < 5; ++rep) {
    std::uint64_t key = rng();
    std::uint32_t frame = static_cast<std::uint32_t>(rng() & 0x3FFFFF);
    std::vector<std::uint8_t> pt(200);
    for (auto& b : pt) b = static_cast<std::uint8_t>(rng() & 1);

    A51DriveResult original =
        drive_a51_fixture(fx.netlist, key, frame, pt, 200, probes);
    A51DriveResult leaked =
        drive_a51_fixture(trojaned, key, frame, pt, 200, probes);
    CHECK(original.ready_cycle == kA51ReadyCycle);
    CHECK(leaked.ready_cycle == kA51ReadyCycle);

    // first 64 bits: the documented layout (62 state bits, two zero pads)
    REQUIRE(original.probes_at_ready.size() == 62);
    for (int i = 0; i < 62; ++i)
      CHECK(leaked.stream[i] == original.probes_at_ready[i]);
    CHECK(leaked.stream[62] == 0);
    CHECK(leaked.stream[63] == 0);

    // bits 64.. equal the untrojaned stream
    for (std::size_t i = 64; i < 200; ++i)
      CHECK(leaked.stream[i] == original.stream[i]);
  }
}

TEST_CASE("with ready never reached, traces are identical") {
  GeneratedFixture fx = gen_a51();
  A51Descriptor desc = detect_a51(fx.netlist);
  Netlist trojaned = inject_a51_trojan(fx.netlist, desc);
  Stimuli stim = random_stimuli(fx.netlist, kA51ReadyCycle, 22);
  CHECK(run(fx.netlist, stim) == run(trojaned, stim));
}

TEST_CASE("mitm decrypts everything from bit 64 on") {
  GeneratedFixture fx = gen_a51();
  A51Descriptor desc = detect_a51(fx.netlist);
  Netlist trojaned = inject_a51_trojan(fx.netlist, desc);

  std::mt19937_64 rng(556);
  for (int rep = 0; rep < 10; ++rep) {
    std::uint64_t key = rng();
    std::uint32_t frame = static_cast<std::uint32_t>(rng() & 0x3FFFFF);
    std::vector<std::uint8_t> pt(512);
    for (auto& b : pt) b = static_cast<std::uint8_t>(rng() & 1);

    A51DriveResult leaked = drive_a51_fixture(trojaned, key, frame, pt, 512);
    std::array<std::uint8_t, kA51LeakBits> leak{};
    for (int i = 0; i < kA51LeakBits; ++i) leak[i] = leaked.stream[i];

    bool pad_warning = true;
    auto plain = mitm_decrypt(leak, leaked.stream, &pad_warning);
    CHECK_FALSE(pad_warning);
    REQUIRE(plain.size() == 512 - 64);
    for (std::size_t i = 64; i < 512; ++i) CHECK(plain[i - 64] == pt[i]);
  }
}

TEST_CASE("descriptor from another netlist is rejected") {
  GeneratedFixture a51 = gen_a51();
  A51Descriptor desc = detect_a51(a51.netlist);
  GeneratedFixture other = gen_present(false);
  CHECK_THROWS_WITH_AS(inject_a51_trojan(other.netlist, desc),
                       doctest::Contains("descriptor mismatch"), Error);
}

TEST_CASE("mitm edge cases") {
  std::array<std::uint8_t, kA51LeakBits> zero_leak{};

  // short stream: nothing to decrypt
  CHECK(mitm_decrypt(zero_leak, std::vector<std::uint8_t>(64, 1)).empty());
  CHECK(mitm_decrypt(zero_leak, {}).empty());

  // all-zero state: keystream stays zero, decryption copies the stream
  std::vector<std::uint8_t> stream(100, 1);
  auto plain = mitm_decrypt(zero_leak, stream);
  REQUIRE(plain.size() == 36);
  for (auto b : plain) CHECK(b == 1);

  // nonzero pad bits warn but proceed
  std::array<std::uint8_t, kA51LeakBits> bad_pad{};
  bad_pad[63] = 1;
  bool warn = false;
  mitm_decrypt(bad_pad, stream, &warn);
  CHECK(warn);
}
