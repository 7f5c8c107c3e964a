#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatehound/netlist.hpp"

namespace gatehound {

enum class FeedbackKind { Xor, Xnor };
const char* to_string(FeedbackKind kind);

// A recovered Fibonacci LFSR. registers[0] is the initial FF (it stores the
// next-state bit); taps are register positions whose outputs feed the
// XOR/XNOR back into registers[0]. The feedback polynomial over GF(2) is
// 1 + sum of x^(tap+1); the tap at position n-1 makes it degree n.
struct LfsrDescriptor {
  std::vector<GateId> registers;
  std::vector<int> taps;  // ascending
  FeedbackKind kind = FeedbackKind::Xor;

  int length() const { return static_cast<int>(registers.size()); }
  std::vector<int> polynomial_exponents() const;  // ascending, starts with 0
  std::string polynomial_string() const;          // e.g. "1 + x^3 + x^4"
  std::uint64_t init_value(const Netlist& n) const;
  std::vector<NetId> register_nets(const Netlist& n) const;
};

std::vector<int> taps_from_polynomial(const std::vector<int>& exponents);
std::vector<int> parse_polynomial(const std::string& text);  // "1+x^3+x^4"

struct LfsrDetectOptions {
  int max_tree_depth = 8;     // LUT levels composed per analysis
  int max_free_inputs = 8;    // non-chain cone inputs tried exhaustively
  std::size_t max_monomials = 4096;
};

// Maximal FF chains linked D <- Q through BUFs and pass-through LUTs,
// ordered head (receives non-FF logic) first.
std::vector<std::vector<GateId>> find_ff_chains(const Netlist& n);

// Chains whose head D input computes XOR/XNOR of a subset of the chain's
// own outputs, once every cone input that cannot reach the chain is fixed
// to some constant. Chains longer than the highest tap are trimmed to the
// registers the feedback actually spans. Chains that defeat the analysis
// (cone too deep, too many free inputs, non-parity or ambiguous feedback)
// are appended to `near_misses` as head gates for manual review.
std::vector<LfsrDescriptor> detect_lfsrs(const Netlist& n,
                                         const LfsrDetectOptions& opts = {},
                                         std::vector<GateId>* near_misses = nullptr);

enum class ReduceKind { Or, Nor };
const char* to_string(ReduceKind kind);

struct ConstantSignal {
  NetId net = kNoNet;
  bool value = false;
  std::vector<GateId> witness_gates;  // reduction tree proving constancy
};

// Finds an OR/NOR (XOR feedback) or AND/NAND (XNOR feedback) reduction over
// all registers of the LFSR, composed across LUTs/BUFs, and returns the
// constant it generates. Requires a non-degenerate declared init (nonzero
// for XOR, not-all-ones for XNOR).
std::optional<ConstantSignal> classify_constant_generator(
    const Netlist& n, const LfsrDescriptor& lfsr,
    const LfsrDetectOptions& opts = {});

struct OpaquePredicate {
  NetId output = kNoNet;
  std::vector<GateId> registers;  // chain head first
  std::vector<GateId> gates;      // everything emitted
};

struct LfsrChain {
  std::vector<GateId> registers;  // head first
  std::vector<GateId> gates;      // registers plus feedback tree
  std::vector<NetId> q;           // register output nets, head first
};

// Appends an n-bit Fibonacci LFSR (FF chain plus XOR/XNOR feedback tree
// over `taps`) to `host`. Net names start with `prefix`.
LfsrChain emit_lfsr_chain(Netlist& host, int n, const std::vector<int>& taps,
                          FeedbackKind kind, std::uint64_t init,
                          const std::string& prefix);

// Appends an LFSR constant generator to `host` (which must have a clock):
// FF chain, tap parity tree, OR/NOR reduction tree over all registers.
// The output net is constant 1 (OR) or 0 (NOR) from cycle 0 onward.
OpaquePredicate emit_opaque_predicate(Netlist& host, int n,
                                      const std::vector<int>& taps,
                                      ReduceKind kind, std::uint64_t init,
                                      const std::string& prefix);

}  // namespace gatehound
