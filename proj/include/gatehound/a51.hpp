#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gatehound/lfsr.hpp"
#include "gatehound/netlist.hpp"
#include "gatehound/util.hpp"

namespace gatehound {

// Structural description of a detected A5/1 core: three LFSRs of lengths
// 19/22/21, majority clocking off state positions 8/10/10, a 3-input parity
// combining the oldest bits into the keystream, and a 2-input XOR against a
// data port. `ready` gates the output register; the trojan uses its rising
// edge as the capture trigger.
struct A51Descriptor {
  std::array<LfsrDescriptor, 3> lfsrs;  // L1 (19), L2 (22), L3 (21)
  std::array<NetId, 3> clock_tap_nets{kNoNet, kNoNet, kNoNet};
  std::vector<GateId> majority_gates;
  GateId keystream_xor = kNoGate;
  GateId cipher_xor = kNoGate;
  GateId output_ff = kNoGate;
  NetId ready = kNoNet;
};

// Thrown when the netlist does not contain the searched-for structure;
// the CLI maps it to the analysis-negative exit status.
struct NoCandidate : Error {
  explicit NoCandidate(const std::string& what) : Error(what) {}
};

A51Descriptor detect_a51(const Netlist& n,
                         const std::optional<std::string>& ready_hint = {},
                         const LfsrDetectOptions& opts = {});

// 62 register bits L1[0..18] | L2[0..21] | L3[0..20], zero-padded to 64.
inline constexpr int kA51LeakBits = 64;
inline constexpr int kA51StateBits = 62;

// Splices the state-leak trojan: a shadow register captures all LFSR bits
// on ready's rising edge and a counter-driven mux replaces the first 64
// post-trigger cipher bits with the captured state, then hands the channel
// back to the original cipher output. All original gates are untouched
// except the output register's D pin.
Netlist inject_a51_trojan(const Netlist& n, const A51Descriptor& desc);

// Rebuilds the three LFSR states from a leaked 64-bit block, advances the
// cipher model past the 64 suppressed keystream bits and decrypts the rest
// of the stream. `stream` is the trojaned output starting at the leak;
// bits 0..63 of it are the leak slot and are not decryptable. Nonzero pad
// bits are tolerated (the layout promises zeros).
std::vector<std::uint8_t> mitm_decrypt(
    const std::array<std::uint8_t, kA51LeakBits>& leak,
    const std::vector<std::uint8_t>& stream, bool* pad_warning = nullptr);

}  // namespace gatehound
