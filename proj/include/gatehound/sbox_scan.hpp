#pragma once

#include <string>
#include <vector>

#include "gatehound/netlist.hpp"
#include "gatehound/truth_table.hpp"

namespace gatehound {

// One detected SBOX output function inside a LUT. For LUT5/LUT6 hosts the
// match names the removed pin (pair) and the cofactor leaf that equals a
// pattern table; LUT4 hosts match their configuration directly.
struct SboxMatch {
  GateId gate = 0;
  std::vector<int> removed_pins;  // ascending; empty for direct LUT4 matches
  int selector = 0;               // leaf index under decompose()'s ordering
  Perm4 perm = {0, 1, 2, 3};
  int out_bit = 0;
  std::uint16_t table = 0;

  bool operator==(const SboxMatch&) const = default;
};

struct SboxScanReport {
  std::vector<SboxMatch> matches;  // deduplicated, deterministic order

  std::size_t total() const { return matches.size(); }
  std::vector<GateId> gates() const;
  std::size_t gate_count() const { return gates().size(); }
};

// Tests every LUT4 directly, every LUT5 under all single-pin removals and
// every LUT6 under all 15 pin pairs. Every leaf equal to a pattern table
// yields one raw match per (perm, out_bit) annotation; matches are then
// deduplicated per (gate, out_bit) keeping the lexicographically smallest
// (removed_pins, selector, perm).
SboxScanReport scan_for_sbox(const Netlist& n, const PatternSet& patterns);

// Rewrites each matched leaf to the identity SBOX seen through the match's
// permutation and output bit: every leaf equal to the matched table becomes
// T[i] = bit_b(perm(i)); all other leaves are untouched. Errors on stale
// reports and on matches that disagree about a leaf's replacement.
Netlist inject_identity_sbox(const Netlist& n, const SboxScanReport& report);

}  // namespace gatehound
