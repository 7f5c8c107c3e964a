#pragma once

#include <json.hpp>
#include <string>

#include "gatehound/a51.hpp"
#include "gatehound/lfsr.hpp"
#include "gatehound/netlist.hpp"
#include "gatehound/sbox_scan.hpp"
#include "gatehound/watermark.hpp"

namespace gatehound {

// Human-readable report rendering with stable field order, plus the JSON
// forms used as inter-step pipeline files.

std::string format_validation(const ValidationReport& report);

std::string format_watermark_report(const Netlist& n,
                                    const WatermarkReport& report,
                                    bool full_slots);
nlohmann::json watermark_report_json(const Netlist& n,
                                     const WatermarkReport& report);

std::string format_lfsr_report(const Netlist& n,
                               const std::vector<LfsrDescriptor>& lfsrs);
std::string format_opaque_report(const Netlist& n,
                                 const std::vector<LfsrDescriptor>& lfsrs,
                                 const std::vector<ConstantSignal>& constants);
nlohmann::json lfsr_report_json(const Netlist& n,
                                const std::vector<LfsrDescriptor>& lfsrs);
nlohmann::json opaque_report_json(const Netlist& n,
                                  const std::vector<LfsrDescriptor>& lfsrs,
                                  const std::vector<ConstantSignal>& constants);

std::string format_sbox_report(const SboxScanReport& report);
nlohmann::json sbox_report_json(const SboxScanReport& report);
SboxScanReport sbox_report_from_json(const nlohmann::json& j);

std::string format_a51_descriptor(const Netlist& n, const A51Descriptor& desc);
nlohmann::json a51_descriptor_json(const Netlist& n,
                                   const A51Descriptor& desc);

}  // namespace gatehound
