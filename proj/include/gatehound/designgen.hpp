#pragma once

#include <json.hpp>

#include "gatehound/lfsr.hpp"
#include "gatehound/netlist.hpp"
#include "gatehound/reference_ciphers.hpp"
#include "gatehound/sim.hpp"
#include "gatehound/watermark.hpp"

namespace gatehound {

// Synthetic ground-truth fixtures. Every generator is deterministic for a
// given parameter set and emits a manifest describing what was planted, so
// detection reports can be diffed against known truth.

struct GeneratedFixture {
  Netlist netlist;
  nlohmann::json manifest;
};

// Round-based PRESENT-80: one round per cycle, 64 state and 80 key FFs,
// plaintext/key loaded in parallel under `load`, ciphertext valid with
// `done`. merged=false hosts each SBOX output bit in a LUT6 with two
// GND-tied pins; merged=true packs the plaintext-load mux into the two free
// pins so only sub-configuration scanning can find the SBOX.
GeneratedFixture gen_present(bool merged);

// Drives the fixture through one encryption: load pulse, 31 rounds, final
// key add; returns the ciphertext sampled when done goes high.
std::uint64_t present_fixture_encrypt(Simulator& sim, const Key80& key,
                                      std::uint64_t plaintext);

// A5/1 core with serial key/frame loading, 100 warm-up cycles, majority
// clocking, keystream XOR against a data port, and a CE-gated output
// register. ready rises at cycle 186; ciphertext bit j of the stream is
// visible on ct_out at cycle 188 + j.
GeneratedFixture gen_a51();

inline constexpr int kA51ReadyCycle = 186;
inline constexpr int kA51FirstDataCycle = 187;
inline constexpr int kA51FirstCtCycle = 188;

struct A51DriveResult {
  std::vector<std::uint8_t> stream;  // ct_out sampled from kA51FirstCtCycle
  int ready_cycle = -1;              // first cycle with ready high
  std::vector<std::uint8_t> probes_at_ready;  // probe values at that cycle
};

// Serial key (64 bits LSB first) and frame (22 bits) on load_bit, plaintext
// bit j on data_in at cycle kA51FirstDataCycle + j, stream sampled from
// kA51FirstCtCycle. Works on the clean core and on trojaned variants.
A51DriveResult drive_a51_fixture(const Netlist& n, std::uint64_t key,
                                 std::uint32_t frame,
                                 const std::vector<std::uint8_t>& plaintext,
                                 std::size_t stream_len,
                                 const std::vector<NetId>& probes = {});

// Fibonacci LFSR with declared register inits and the oldest bit exposed.
GeneratedFixture gen_lfsr(int length, const std::vector<int>& taps,
                          std::uint64_t init,
                          FeedbackKind kind = FeedbackKind::Xor);

// Standalone LFSR-based constant generator with its output on a port.
GeneratedFixture gen_opaque_demo(int length, const std::vector<int>& taps,
                                 ReduceKind kind, std::uint64_t init);

// Small pipelined carrier with exactly two LUT6 hosts (two ignored pins
// each, 48 payload bits per host), watermarked with `payload`.
GeneratedFixture gen_watermark_demo(const std::vector<std::uint8_t>& payload,
                                    const EmbedOptions& opts = {});

// The bare carrier, before any watermark is embedded.
Netlist watermark_carrier();

}  // namespace gatehound
