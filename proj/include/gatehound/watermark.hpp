#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatehound/lfsr.hpp"
#include "gatehound/netlist.hpp"

namespace gatehound {

// Constraint-based LUT watermarking: payload bits live in table entries made
// unreachable by constant-tied input pins.

struct TiedPin {
  int pin = 0;
  bool value = false;
  ConstProvenance provenance = ConstProvenance::Direct;
  NetId source = kNoNet;
};

struct WatermarkSlot {
  GateId gate = 0;
  GateKind kind = GateKind::Lut;
  int arity = 0;
  std::vector<TiedPin> tied_pins;
  std::vector<std::uint32_t> unreachable_indices;  // ascending
  std::vector<std::uint8_t> payload_bits;          // config at those indices
  bool positive = false;  // at least one unreachable bit set

  std::size_t capacity() const { return unreachable_indices.size(); }
};

struct WatermarkReport {
  std::vector<WatermarkSlot> slots;  // gate id ascending
  std::vector<NetId> constant_sources_used;

  std::size_t total_capacity() const;
  std::size_t positive_slots() const;
};

// Scans every LUT, and every SRL whose shift enable traces to constant 0,
// for constant-tied input pins. `opaque` supplies nets proven constant by
// opaque-predicate analysis.
WatermarkReport detect_watermarks(const Netlist& n,
                                  const OpaqueConstants& opaque = {});

// Runs LFSR detection and constant-generator classification and returns
// every proven-constant net, ready to feed detect_watermarks.
OpaqueConstants discover_opaque_constants(const Netlist& n,
                                          const LfsrDetectOptions& opts = {});

// Deterministic concatenation: slots by ascending gate id, indices ascending.
std::vector<std::uint8_t> extract_payload(const WatermarkReport& report);

// Zeroes every unreachable bit. Errors if the report is stale for this
// netlist. Output is simulation-trace-equal to the input.
Netlist strip_watermark(const Netlist& n, const WatermarkReport& report);

// Overwrites the unreachable bits with `forged` (zero-padded to capacity).
Netlist alter_watermark(const Netlist& n, const WatermarkReport& report,
                        const std::vector<std::uint8_t>& forged);

enum class WatermarkProtection { None, Opaque };

struct EmbedOptions {
  WatermarkProtection protection = WatermarkProtection::None;
  // LFSR parameters for opaque protection.
  int lfsr_length = 8;
  std::vector<int> lfsr_taps = {3, 4, 5, 7};  // x^8 + x^6 + x^5 + x^4 + 1
  std::uint64_t lfsr_init = 0x9D;
  std::string net_prefix = "wm_";
};

struct EmbedResult {
  Netlist netlist;
  WatermarkReport plan;          // slots as the detector will see them
  std::vector<GateId> hosts;     // gates the payload was written into
  NetId tie_net = kNoNet;        // GND or opaque predicate output
  std::optional<OpaquePredicate> predicate;
};

// Hosts the payload in LUTs with constant-eligible pins (pins the function
// ignores, or pins already tied to 0). With no protection the hosting pins
// are tied to GND; with opaque protection an LFSR constant generator is
// instantiated and the pins tie to its NOR output.
EmbedResult embed_watermark(const Netlist& n,
                            const std::vector<std::uint8_t>& payload,
                            const EmbedOptions& opts = {});

}  // namespace gatehound
