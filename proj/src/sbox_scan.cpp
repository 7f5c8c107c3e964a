#include "gatehound/sbox_scan.hpp"

#include <algorithm>
#include <map>

#include "gatehound/util.hpp"

namespace gatehound {

std::vector<GateId> SboxScanReport::gates() const {
  std::vector<GateId> ids;
  for (const SboxMatch& m : matches) ids.push_back(m.gate);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

namespace {

// Identity SBOX seen through the same annotation: T[i] = bit_b(perm(i)).
std::uint16_t identity_replacement(const Perm4& perm, int out_bit) {
  std::uint16_t table = 0;
  for (std::uint16_t i = 0; i < 16; ++i) {
    std::uint8_t mapped = permute_bits4(static_cast<std::uint8_t>(i), perm);
    if ((mapped >> out_bit) & 1) table |= static_cast<std::uint16_t>(1u << i);
  }
  return table;
}

// Removal pin sets per arity: {} for 4, singles for 5, pairs for 6.
std::vector<std::vector<int>> removal_sets(int arity) {
  std::vector<std::vector<int>> sets;
  if (arity == 4) {
    sets.push_back({});
  } else if (arity == 5) {
    for (int p = 0; p < 5; ++p) sets.push_back({p});
  } else if (arity == 6) {
    for (int p = 0; p < 6; ++p)
      for (int q = p + 1; q < 6; ++q) sets.push_back({p, q});
  }
  return sets;
}

void scan_gate(const Gate& g, const PatternSet& patterns,
               std::vector<SboxMatch>& out) {
  if (g.arity < 4 || g.arity > 6) return;
  for (const std::vector<int>& removed : removal_sets(g.arity)) {
    std::vector<TruthTable> leaves = decompose(g.config, removed);
    for (std::size_t leaf = 0; leaf < leaves.size(); ++leaf) {
      std::uint16_t table = static_cast<std::uint16_t>(leaves[leaf].bits);
      const PatternSet::Entry* entry = patterns.find(table);
      if (!entry) continue;
      for (const PatternAnnotation& ann : entry->annotations) {
        SboxMatch m;
        m.gate = g.id;
        m.removed_pins = removed;
        m.selector = static_cast<int>(leaf);
        m.perm = ann.perm;
        m.out_bit = ann.out_bit;
        m.table = table;
        out.push_back(std::move(m));
      }
    }
  }
}

}  // namespace

SboxScanReport scan_for_sbox(const Netlist& n, const PatternSet& patterns) {
  if (patterns.entries.empty()) throw Error("empty pattern set");

  // LUTs always; SRLs only once their shift enable is proven constant 0,
  // which freezes the config into an ordinary truth table.
  std::vector<char> scannable(n.gates.size(), 0);
  for (std::size_t i = 0; i < n.gates.size(); ++i) {
    const Gate& g = n.gates[i];
    if (g.kind == GateKind::Lut) {
      scannable[i] = 1;
    } else if (g.kind == GateKind::Srl) {
      auto ce = trace_constant(n, g.ce);
      scannable[i] = ce && *ce == false;
    }
  }

  std::vector<std::vector<SboxMatch>> partial(n.gates.size());
  parallel_chunks(n.gates.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      if (scannable[i]) scan_gate(n.gates[i], patterns, partial[i]);
  });

  std::vector<SboxMatch> raw;
  for (auto& chunk : partial)
    raw.insert(raw.end(), chunk.begin(), chunk.end());

  // Deduplicate per (gate, out_bit), keeping the lexicographically smallest
  // (removed_pins, selector, perm).
  std::sort(raw.begin(), raw.end(), [](const SboxMatch& a, const SboxMatch& b) {
    if (a.gate != b.gate) return a.gate < b.gate;
    if (a.out_bit != b.out_bit) return a.out_bit < b.out_bit;
    if (a.removed_pins != b.removed_pins) return a.removed_pins < b.removed_pins;
    if (a.selector != b.selector) return a.selector < b.selector;
    return a.perm < b.perm;
  });
  SboxScanReport report;
  for (const SboxMatch& m : raw) {
    if (!report.matches.empty() && report.matches.back().gate == m.gate &&
        report.matches.back().out_bit == m.out_bit)
      continue;
    report.matches.push_back(m);
  }
  return report;
}

Netlist inject_identity_sbox(const Netlist& n, const SboxScanReport& report) {
  Netlist out = n;

  // Group matches by gate, then by removed-pin set; identical matched
  // tables must agree on their replacement.
  std::map<GateId, std::map<std::vector<int>,
                            std::map<std::uint16_t, std::uint16_t>>>
      plan;
  for (const SboxMatch& m : report.matches) {
    const Gate* g = out.find_gate(m.gate);
    if (!g || !g->has_config())
      throw Error("stale report: gate " + std::to_string(m.gate) +
                  " carries no configuration in this netlist");
    std::uint16_t replacement = identity_replacement(m.perm, m.out_bit);
    auto& per_removal = plan[m.gate][m.removed_pins];
    auto [it, inserted] = per_removal.emplace(m.table, replacement);
    if (!inserted && it->second != replacement)
      throw Error("ambiguous match on gate " + std::to_string(m.gate) +
                  ": one sub-configuration implies two different identity "
                  "replacements, resolve via --select");
  }

  for (const auto& [gate_id, removals] : plan) {
    Gate& g = *out.find_gate(gate_id);
    for (const auto& [removed, replacements] : removals) {
      std::vector<TruthTable> leaves = decompose(g.config, removed);
      bool any = false;
      for (TruthTable& leaf : leaves) {
        auto it = replacements.find(static_cast<std::uint16_t>(leaf.bits));
        if (it == replacements.end()) continue;
        leaf = TruthTable(4, it->second);
        any = true;
      }
      if (!any)
        throw Error("stale report: gate " + std::to_string(gate_id) +
                    " no longer holds the matched sub-configuration");
      g.config = merge_subconfigs(leaves, removed);
    }
  }
  out.rebuild();
  return out;
}

}  // namespace gatehound
