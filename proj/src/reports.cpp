#include "gatehound/reports.hpp"

#include <sstream>

#include "gatehound/util.hpp"

namespace gatehound {

using nlohmann::json;

namespace {

const char* provenance_name(ConstProvenance p) {
  switch (p) {
    case ConstProvenance::Direct: return "direct";
    case ConstProvenance::Traced: return "traced";
    case ConstProvenance::Opaque: return "opaque";
  }
  return "?";
}

std::string perm_string(const Perm4& perm) {
  std::string s;
  for (int i = 0; i < 4; ++i) s += static_cast<char>('0' + perm[i]);
  return s;
}

Perm4 perm_from_string(const std::string& s) {
  if (s.size() != 4) throw Error("bad permutation '" + s + "'");
  Perm4 perm{};
  bool seen[4] = {false, false, false, false};
  for (int i = 0; i < 4; ++i) {
    int v = s[i] - '0';
    if (v < 0 || v > 3 || seen[v]) throw Error("bad permutation '" + s + "'");
    seen[v] = true;
    perm[i] = static_cast<std::uint8_t>(v);
  }
  return perm;
}

}  // namespace

std::string format_validation(const ValidationReport& report) {
  std::ostringstream out;
  out << "errors " << report.errors.size() << " warnings "
      << report.warnings.size() << "\n";
  for (const Violation& v : report.errors)
    out << "error [" << to_string(v.kind) << "] " << v.message << "\n";
  for (const Violation& v : report.warnings)
    out << "warning [" << to_string(v.kind) << "] " << v.message << "\n";
  return out.str();
}

std::string format_watermark_report(const Netlist& n,
                                    const WatermarkReport& report,
                                    bool full_slots) {
  std::ostringstream out;
  out << "watermark slots " << report.slots.size() << " positive "
      << report.positive_slots() << " capacity " << report.total_capacity()
      << "\n";
  out << "constant sources:";
  for (NetId net : report.constant_sources_used)
    out << " " << n.net_name(net);
  out << "\n";
  for (const WatermarkSlot& slot : report.slots) {
    out << "slot gate " << slot.gate << " kind " << to_string(slot.kind)
        << " arity " << slot.arity << " capacity " << slot.capacity()
        << (slot.positive ? " positive" : " empty") << "\n";
    out << "  tied:";
    for (const TiedPin& tp : slot.tied_pins)
      out << " I" << tp.pin << "=" << (tp.value ? 1 : 0) << "("
          << provenance_name(tp.provenance) << ")";
    out << "\n";
    if (full_slots) {
      out << "  payload " << bits_to_string(slot.payload_bits) << "\n";
      out << "  indices";
      for (auto idx : slot.unreachable_indices) out << " " << idx;
      out << "\n";
    }
  }
  out << "payload " << bits_to_string(extract_payload(report)) << "\n";
  return out.str();
}

json watermark_report_json(const Netlist& n, const WatermarkReport& report) {
  json slots = json::array();
  for (const WatermarkSlot& slot : report.slots) {
    json tied = json::array();
    for (const TiedPin& tp : slot.tied_pins)
      tied.push_back({{"pin", tp.pin},
                      {"value", tp.value ? 1 : 0},
                      {"provenance", provenance_name(tp.provenance)},
                      {"source", n.net_name(tp.source)}});
    slots.push_back({{"gate", slot.gate},
                     {"kind", to_string(slot.kind)},
                     {"arity", slot.arity},
                     {"tied_pins", tied},
                     {"indices", slot.unreachable_indices},
                     {"payload", bits_to_string(slot.payload_bits)},
                     {"positive", slot.positive}});
  }
  json sources = json::array();
  for (NetId net : report.constant_sources_used)
    sources.push_back(n.net_name(net));
  return {{"slots", slots},
          {"constant_sources", sources},
          {"capacity", report.total_capacity()},
          {"payload", bits_to_string(extract_payload(report))}};
}

std::string format_lfsr_report(const Netlist& n,
                               const std::vector<LfsrDescriptor>& lfsrs) {
  std::ostringstream out;
  out << "lfsrs " << lfsrs.size() << "\n";
  for (const LfsrDescriptor& d : lfsrs) {
    out << "lfsr n=" << d.length() << " kind=" << to_string(d.kind)
        << " polynomial " << d.polynomial_string() << " taps";
    for (int t : d.taps) out << " " << t;
    out << " head gate " << d.registers.front() << " init 0x" << std::hex
        << d.init_value(n) << std::dec << "\n";
  }
  return out.str();
}

std::string format_opaque_report(const Netlist& n,
                                 const std::vector<LfsrDescriptor>& lfsrs,
                                 const std::vector<ConstantSignal>& constants) {
  std::ostringstream out;
  out << format_lfsr_report(n, lfsrs);
  out << "constant generators " << constants.size() << "\n";
  for (const ConstantSignal& sig : constants) {
    out << "constant net " << n.net_name(sig.net) << " value "
        << (sig.value ? 1 : 0) << " witness gates";
    for (GateId g : sig.witness_gates) out << " " << g;
    out << "\n";
  }
  return out.str();
}

namespace {

json lfsr_json(const Netlist& n, const LfsrDescriptor& d) {
  return {{"length", d.length()},
          {"kind", to_string(d.kind)},
          {"taps", d.taps},
          {"polynomial", d.polynomial_string()},
          {"registers", d.registers},
          {"init", d.init_value(n)}};
}

}  // namespace

json lfsr_report_json(const Netlist& n,
                      const std::vector<LfsrDescriptor>& lfsrs) {
  json arr = json::array();
  for (const LfsrDescriptor& d : lfsrs) arr.push_back(lfsr_json(n, d));
  return {{"lfsrs", arr}};
}

json opaque_report_json(const Netlist& n,
                        const std::vector<LfsrDescriptor>& lfsrs,
                        const std::vector<ConstantSignal>& constants) {
  json out = lfsr_report_json(n, lfsrs);
  json arr = json::array();
  for (const ConstantSignal& sig : constants)
    arr.push_back({{"net", n.net_name(sig.net)},
                   {"value", sig.value ? 1 : 0},
                   {"witness_gates", sig.witness_gates}});
  out["constants"] = arr;
  return out;
}

std::string format_sbox_report(const SboxScanReport& report) {
  std::ostringstream out;
  out << "sbox matches total " << report.total() << " gates "
      << report.gate_count() << "\n";
  for (const SboxMatch& m : report.matches) {
    out << "match gate " << m.gate << " removed";
    if (m.removed_pins.empty()) out << " -";
    for (int p : m.removed_pins) out << " I" << p;
    out << " selector " << m.selector << " perm " << perm_string(m.perm)
        << " bit " << m.out_bit << " table "
        << to_hex(m.table, 4) << "\n";
  }
  return out.str();
}

json sbox_report_json(const SboxScanReport& report) {
  json arr = json::array();
  for (const SboxMatch& m : report.matches)
    arr.push_back({{"gate", m.gate},
                   {"removed_pins", m.removed_pins},
                   {"selector", m.selector},
                   {"perm", perm_string(m.perm)},
                   {"out_bit", m.out_bit},
                   {"table", to_hex(m.table, 4)}});
  return {{"matches", arr}, {"total", report.total()}};
}

SboxScanReport sbox_report_from_json(const json& j) {
  SboxScanReport report;
  if (!j.contains("matches") || !j["matches"].is_array())
    throw Error("matches file: missing 'matches' array");
  for (const json& e : j["matches"]) {
    SboxMatch m;
    m.gate = e.at("gate").get<GateId>();
    m.removed_pins = e.at("removed_pins").get<std::vector<int>>();
    m.selector = e.at("selector").get<int>();
    m.perm = perm_from_string(e.at("perm").get<std::string>());
    m.out_bit = e.at("out_bit").get<int>();
    m.table = static_cast<std::uint16_t>(
        parse_hex(e.at("table").get<std::string>()));
    report.matches.push_back(std::move(m));
  }
  return report;
}

std::string format_a51_descriptor(const Netlist& n, const A51Descriptor& desc) {
  std::ostringstream out;
  static const char* names[3] = {"L1", "L2", "L3"};
  for (int r = 0; r < 3; ++r) {
    const LfsrDescriptor& d = desc.lfsrs[r];
    out << names[r] << " n=" << d.length() << " polynomial "
        << d.polynomial_string() << " clock tap net "
        << n.net_name(desc.clock_tap_nets[r]) << "\n";
  }
  out << "majority gates";
  for (GateId g : desc.majority_gates) out << " " << g;
  out << "\n";
  out << "keystream xor gate " << desc.keystream_xor << "\n";
  out << "cipher xor gate " << desc.cipher_xor << "\n";
  out << "output register gate " << desc.output_ff << "\n";
  out << "ready net " << n.net_name(desc.ready) << "\n";
  out << "leak layout L1[0..18] L2[0..21] L3[0..20] pad 0 0\n";
  return out.str();
}

json a51_descriptor_json(const Netlist& n, const A51Descriptor& desc) {
  json lfsrs = json::array();
  static const char* names[3] = {"L1", "L2", "L3"};
  for (int r = 0; r < 3; ++r) {
    json d = lfsr_json(n, desc.lfsrs[r]);
    d["name"] = names[r];
    d["clock_tap_net"] = n.net_name(desc.clock_tap_nets[r]);
    lfsrs.push_back(std::move(d));
  }
  return {{"lfsrs", lfsrs},
          {"majority_gates", desc.majority_gates},
          {"keystream_xor", desc.keystream_xor},
          {"cipher_xor", desc.cipher_xor},
          {"output_ff", desc.output_ff},
          {"ready_net", n.net_name(desc.ready)},
          {"leak_layout", "L1[0..18] L2[0..21] L3[0..20] pad 0 0"}};
}

}  // namespace gatehound
