#include <CLI11.hpp>
#include <iostream>
#include <random>

#include "gatehound/a51.hpp"
#include "gatehound/designgen.hpp"
#include "gatehound/netlist_io.hpp"
#include "gatehound/reports.hpp"
#include "gatehound/sbox_scan.hpp"
#include "gatehound/sim.hpp"
#include "gatehound/watermark.hpp"

using namespace gatehound;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 3;

struct GlobalOptions {
  bool lenient = false;
};

Netlist load(const std::string& path, const GlobalOptions& g) {
  return load_netlist(path, ParseOptions{.lenient = g.lenient});
}

void emit_netlist(const Netlist& n, const std::string& out_path) {
  std::string text = serialize_netlist(n);
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

std::vector<std::uint8_t> payload_bits(const std::string& text) {
  return bits_from_string(text);
}

Sbox4 sbox_from_string(const std::string& hex) {
  if (hex.size() != 16) throw Error("--sbox needs exactly 16 hex nibbles");
  Sbox4 sbox{};
  for (int i = 0; i < 16; ++i)
    sbox[i] = static_cast<std::uint8_t>(parse_hex(hex.substr(i, 1)));
  return sbox;
}

std::vector<int> taps_option(const std::string& poly, int length) {
  if (poly.empty()) throw Error("--poly is required for this family");
  std::vector<int> exps = parse_polynomial(poly);
  std::vector<int> taps = taps_from_polynomial(exps);
  int degree = *std::max_element(exps.begin(), exps.end());
  if (length != 0 && degree != length)
    throw Error("polynomial degree " + std::to_string(degree) +
                " does not match --length " + std::to_string(length));
  return taps;
}

OpaqueConstants opaque_for(const Netlist& n, bool enabled) {
  return enabled ? discover_opaque_constants(n) : OpaqueConstants{};
}

// Allow/deny filters of the form "gate" or "gate:bit".
struct MatchFilter {
  std::vector<std::string> keep;
  std::vector<std::string> drop;

  static bool hits(const std::string& spec, const SboxMatch& m) {
    auto colon = spec.find(':');
    GateId gate = static_cast<GateId>(
        std::stoul(spec.substr(0, colon)));
    if (gate != m.gate) return false;
    if (colon == std::string::npos) return true;
    return std::stoi(spec.substr(colon + 1)) == m.out_bit;
  }

  SboxScanReport apply(const SboxScanReport& in) const {
    SboxScanReport out;
    for (const SboxMatch& m : in.matches) {
      bool dropped = false;
      for (const std::string& d : drop) dropped = dropped || hits(d, m);
      if (dropped) continue;
      if (!keep.empty()) {
        bool kept = false;
        for (const std::string& k : keep) kept = kept || hits(k, m);
        // --select narrows only the gates it names
        bool named = false;
        for (const std::string& k : keep)
          named = named ||
                  static_cast<GateId>(std::stoul(
                      k.substr(0, k.find(':')))) == m.gate;
        if (named && !kept) continue;
      }
      out.matches.push_back(m);
    }
    return out;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gatehound: gate-level netlist reverse engineering toolkit"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_flag("--lenient", global.lenient,
               "tolerate unknown fields when parsing netlists");

  int status = kExitOk;
  std::function<void()> action;

  // -------------------------------------------------------------- validate
  {
    auto* cmd = app.add_subcommand("validate", "check netlist invariants");
    auto in = std::make_shared<std::string>();
    cmd->add_option("netlist", *in, "input .ghn file")->required();
    cmd->callback([&, in] {
      action = [&, in] {
        ParseOptions opts{.lenient = true, .validate = false};
        Netlist n = parse_netlist(read_text_file(*in), opts);
        ValidationReport report = validate(n);
        std::cout << format_validation(report);
        if (!report.ok()) status = kExitNegative;
      };
    });
  }

  // ------------------------------------------------------------------- gen
  {
    auto* cmd = app.add_subcommand("gen", "generate a ground-truth fixture");
    struct GenOpts {
      std::string family;
      bool merged = false;
      std::uint64_t seed = 1;
      int length = 8;
      std::string poly;
      std::uint64_t init = 1;
      std::string reduce = "nor";
      std::string payload;
      std::string protect = "none";
      bool xnor = false;
      std::string out, manifest;
    };
    auto o = std::make_shared<GenOpts>();
    cmd->add_option("--family", o->family,
                    "present | a51 | lfsr | opaque-demo | watermark-demo")
        ->required();
    cmd->add_flag("--merged", o->merged, "merge sbox and control logic");
    cmd->add_option("--seed", o->seed, "generation seed");
    cmd->add_option("--length", o->length, "lfsr length");
    cmd->add_option("--poly", o->poly, "feedback polynomial, e.g. 1+x^3+x^4");
    cmd->add_option("--init", o->init, "lfsr initial state");
    cmd->add_option("--reduce", o->reduce, "opaque reduction: or | nor");
    cmd->add_flag("--xnor", o->xnor, "xnor feedback (lfsr family)");
    cmd->add_option("--payload", o->payload, "watermark payload bits");
    cmd->add_option("--protect", o->protect, "watermark protection: none | opaque");
    cmd->add_option("-o,--out", o->out, "output .ghn path (default stdout)");
    cmd->add_option("--manifest", o->manifest, "ground-truth manifest path");
    cmd->callback([&, o] {
      action = [&, o] {
        GeneratedFixture fx;
        if (o->family == "present") {
          fx = gen_present(o->merged);
        } else if (o->family == "a51") {
          fx = gen_a51();
        } else if (o->family == "lfsr") {
          fx = gen_lfsr(o->length, taps_option(o->poly, o->length), o->init,
                        o->xnor ? FeedbackKind::Xnor : FeedbackKind::Xor);
        } else if (o->family == "opaque-demo") {
          ReduceKind kind = o->reduce == "or" ? ReduceKind::Or : ReduceKind::Nor;
          fx = gen_opaque_demo(o->length, taps_option(o->poly, o->length),
                               kind, o->init);
        } else if (o->family == "watermark-demo") {
          std::vector<std::uint8_t> payload;
          if (o->payload.empty()) {
            std::mt19937_64 rng(o->seed);
            payload.resize(96);
            for (auto& b : payload)
              b = static_cast<std::uint8_t>(rng() & 1);
          } else {
            payload = payload_bits(o->payload);
          }
          EmbedOptions eo;
          if (o->protect == "opaque") {
            eo.protection = WatermarkProtection::Opaque;
            eo.lfsr_length = o->length;
            if (!o->poly.empty())
              eo.lfsr_taps = taps_option(o->poly, o->length);
            eo.lfsr_init = o->init;
          }
          fx = gen_watermark_demo(payload, eo);
        } else {
          throw Error("unknown family '" + o->family + "'");
        }
        fx.manifest["seed"] = o->seed;
        emit_netlist(fx.netlist, o->out);
        if (!o->manifest.empty())
          write_text_file(o->manifest, fx.manifest.dump(2) + "\n");
      };
    });
  }

  // ------------------------------------------------------- watermark family
  {
    auto* cmd = app.add_subcommand("detect-watermark",
                                   "find constant-tied LUT payload slots");
    auto in = std::make_shared<std::string>();
    auto use_opaque = std::make_shared<bool>(false);
    auto full = std::make_shared<bool>(false);
    auto as_json = std::make_shared<bool>(false);
    cmd->add_option("netlist", *in)->required();
    cmd->add_flag("--opaque", *use_opaque,
                  "feed opaque-predicate constants into the tracer");
    cmd->add_flag("--report", *full, "print per-slot payload and indices");
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([&, in, use_opaque, full, as_json] {
      action = [&, in, use_opaque, full, as_json] {
        Netlist n = load(*in, global);
        WatermarkReport report =
            detect_watermarks(n, opaque_for(n, *use_opaque));
        if (*as_json)
          std::cout << watermark_report_json(n, report).dump(2) << "\n";
        else
          std::cout << format_watermark_report(n, report, *full);
        if (report.slots.empty()) status = kExitNegative;
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("strip-watermark",
                                   "zero every unreachable payload bit");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto use_opaque = std::make_shared<bool>(false);
    cmd->add_option("netlist", *in)->required();
    cmd->add_option("-o,--out", *out)->required();
    cmd->add_flag("--opaque", *use_opaque);
    cmd->callback([&, in, out, use_opaque] {
      action = [&, in, out, use_opaque] {
        Netlist n = load(*in, global);
        WatermarkReport report =
            detect_watermarks(n, opaque_for(n, *use_opaque));
        emit_netlist(strip_watermark(n, report), *out);
        std::cout << "stripped " << report.total_capacity() << " bits in "
                  << report.slots.size() << " slots\n";
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("alter-watermark",
                                   "overwrite the payload with forged bits");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto payload = std::make_shared<std::string>();
    auto use_opaque = std::make_shared<bool>(false);
    cmd->add_option("netlist", *in)->required();
    cmd->add_option("-o,--out", *out)->required();
    cmd->add_option("--payload", *payload, "forged payload bits")->required();
    cmd->add_flag("--opaque", *use_opaque);
    cmd->callback([&, in, out, payload, use_opaque] {
      action = [&, in, out, payload, use_opaque] {
        Netlist n = load(*in, global);
        WatermarkReport report =
            detect_watermarks(n, opaque_for(n, *use_opaque));
        emit_netlist(alter_watermark(n, report, payload_bits(*payload)), *out);
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("embed-watermark",
                                   "host a payload in constant-eligible pins");
    struct EmbedCli {
      std::string in, out, payload, protect = "none", poly;
      int length = 8;
      std::uint64_t init = 0x9D;
    };
    auto o = std::make_shared<EmbedCli>();
    cmd->add_option("netlist", o->in)->required();
    cmd->add_option("-o,--out", o->out)->required();
    cmd->add_option("--payload", o->payload)->required();
    cmd->add_option("--protect", o->protect, "none | opaque");
    cmd->add_option("--length", o->length, "opaque lfsr length");
    cmd->add_option("--poly", o->poly, "opaque lfsr polynomial");
    cmd->add_option("--init", o->init, "opaque lfsr init");
    cmd->callback([&, o] {
      action = [&, o] {
        Netlist n = load(o->in, global);
        EmbedOptions eo;
        if (o->protect == "opaque") {
          eo.protection = WatermarkProtection::Opaque;
          eo.lfsr_length = o->length;
          if (!o->poly.empty()) eo.lfsr_taps = taps_option(o->poly, o->length);
          eo.lfsr_init = o->init;
        }
        EmbedResult result = embed_watermark(n, payload_bits(o->payload), eo);
        emit_netlist(result.netlist, o->out);
        std::cout << "embedded " << o->payload.size() << " bits in "
                  << result.hosts.size() << " slots, tie net "
                  << result.netlist.net_name(result.tie_net) << "\n";
      };
    });
  }

  // ------------------------------------------------------------ lfsr family
  {
    auto* cmd = app.add_subcommand("detect-lfsr", "recover lfsr structures");
    auto in = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    cmd->add_option("netlist", *in)->required();
    cmd->add_flag("--json", *as_json);
    cmd->callback([&, in, as_json] {
      action = [&, in, as_json] {
        Netlist n = load(*in, global);
        std::vector<GateId> near_misses;
        auto lfsrs = detect_lfsrs(n, {}, &near_misses);
        if (*as_json) {
          json j = lfsr_report_json(n, lfsrs);
          j["near_miss_heads"] = near_misses;
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << format_lfsr_report(n, lfsrs);
          if (!near_misses.empty()) {
            std::cout << "near-miss chains (manual review):";
            for (GateId g : near_misses) std::cout << " " << g;
            std::cout << "\n";
          }
        }
        if (lfsrs.empty()) status = kExitNegative;
      };
    });
  }
  {
    auto* cmd = app.add_subcommand(
        "detect-opaque", "classify lfsr-based constant generators");
    auto in = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    cmd->add_option("netlist", *in)->required();
    cmd->add_flag("--json", *as_json);
    cmd->callback([&, in, as_json] {
      action = [&, in, as_json] {
        Netlist n = load(*in, global);
        auto lfsrs = detect_lfsrs(n);
        std::vector<ConstantSignal> constants;
        for (const LfsrDescriptor& d : lfsrs)
          if (auto sig = classify_constant_generator(n, d))
            constants.push_back(*sig);
        if (*as_json)
          std::cout << opaque_report_json(n, lfsrs, constants).dump(2)
                    << "\n";
        else
          std::cout << format_opaque_report(n, lfsrs, constants);
        if (constants.empty()) status = kExitNegative;
      };
    });
  }

  // ------------------------------------------------------------ sbox family
  {
    auto* cmd = app.add_subcommand("detect-sbox",
                                   "find sbox output functions in LUTs");
    struct SboxCli {
      std::string in, cipher = "present", sbox_hex, out;
      bool as_json = false;
    };
    auto o = std::make_shared<SboxCli>();
    cmd->add_option("netlist", o->in)->required();
    cmd->add_option("--cipher", o->cipher, "present (built-in sbox)");
    cmd->add_option("--sbox", o->sbox_hex, "custom sbox, 16 hex nibbles");
    cmd->add_option("-o,--out", o->out, "write the JSON match report here");
    cmd->add_flag("--json", o->as_json);
    cmd->callback([&, o] {
      action = [&, o] {
        Netlist n = load(o->in, global);
        Sbox4 sbox;
        if (!o->sbox_hex.empty()) {
          sbox = sbox_from_string(o->sbox_hex);
        } else if (o->cipher == "present") {
          sbox = kPresentSbox;
        } else {
          throw Error("unknown cipher '" + o->cipher + "'");
        }
        SboxScanReport report =
            scan_for_sbox(n, generate_sbox_patterns(sbox));
        if (o->as_json)
          std::cout << sbox_report_json(report).dump(2) << "\n";
        else
          std::cout << format_sbox_report(report);
        if (!o->out.empty())
          write_text_file(o->out, sbox_report_json(report).dump(2) + "\n");
        if (report.matches.empty()) status = kExitNegative;
      };
    });
  }

  // ---------------------------------------------------------------- inject
  {
    auto* cmd = app.add_subcommand("inject", "splice a trojan into the netlist");
    struct InjectCli {
      std::string in, out, trojan, matches, ready;
      std::vector<std::string> select, drop;
    };
    auto o = std::make_shared<InjectCli>();
    cmd->add_option("netlist", o->in)->required();
    cmd->add_option("-o,--out", o->out)->required();
    cmd->add_option("--trojan", o->trojan, "identity-sbox | a51-leak")
        ->required();
    cmd->add_option("--matches", o->matches,
                    "JSON match report from detect-sbox");
    cmd->add_option("--select", o->select,
                    "keep only these matches (gate or gate:bit)");
    cmd->add_option("--drop", o->drop, "drop these matches (gate or gate:bit)");
    cmd->add_option("--ready", o->ready, "ready net hint for a51-leak");
    cmd->callback([&, o] {
      action = [&, o] {
        Netlist n = load(o->in, global);
        if (o->trojan == "identity-sbox") {
          if (o->matches.empty())
            throw Error("--matches is required for identity-sbox");
          SboxScanReport report = sbox_report_from_json(
              json::parse(read_text_file(o->matches)));
          MatchFilter filter{o->select, o->drop};
          report = filter.apply(report);
          emit_netlist(inject_identity_sbox(n, report), o->out);
          std::cout << "rewrote " << report.gate_count()
                    << " gates to the identity sbox\n";
        } else if (o->trojan == "a51-leak") {
          std::optional<std::string> hint;
          if (!o->ready.empty()) hint = o->ready;
          A51Descriptor desc = detect_a51(n, hint);
          emit_netlist(inject_a51_trojan(n, desc), o->out);
          std::cout << "spliced the state-leak trojan on ready net "
                    << n.net_name(desc.ready) << "\n";
        } else {
          throw Error("unknown trojan '" + o->trojan + "'");
        }
      };
    });
  }

  // ------------------------------------------------------------- a51 family
  {
    auto* cmd = app.add_subcommand("detect-a51",
                                   "locate the a5/1 architecture");
    auto in = std::make_shared<std::string>();
    auto ready = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    cmd->add_option("netlist", *in)->required();
    cmd->add_option("--ready", *ready, "ready net hint");
    cmd->add_flag("--json", *as_json);
    cmd->callback([&, in, ready, as_json] {
      action = [&, in, ready, as_json] {
        Netlist n = load(*in, global);
        std::optional<std::string> hint;
        if (!ready->empty()) hint = *ready;
        A51Descriptor desc = detect_a51(n, hint);
        if (*as_json)
          std::cout << a51_descriptor_json(n, desc).dump(2) << "\n";
        else
          std::cout << format_a51_descriptor(n, desc);
      };
    });
  }
  {
    auto* cmd = app.add_subcommand(
        "mitm", "decrypt a trojaned stream from the leaked state");
    struct MitmCli {
      std::string leak_hex, ct_path, out;
    };
    auto o = std::make_shared<MitmCli>();
    cmd->add_option("--leak", o->leak_hex, "leaked 64 bits as 16 hex digits")
        ->required();
    cmd->add_option("--ct", o->ct_path, "captured stream file of 0/1 bits")
        ->required();
    cmd->add_option("-o,--out", o->out, "plaintext output (default stdout)");
    cmd->callback([&, o] {
      action = [&, o] {
        if (o->leak_hex.size() != 16)
          throw Error("--leak needs exactly 16 hex digits");
        std::uint64_t word = parse_hex(o->leak_hex);
        std::array<std::uint8_t, kA51LeakBits> leak{};
        for (int i = 0; i < kA51LeakBits; ++i)
          leak[i] = (word >> (63 - i)) & 1;  // stream order, left to right
        auto stream = bits_from_string(read_text_file(o->ct_path));
        bool pad_warning = false;
        auto plaintext = mitm_decrypt(leak, stream, &pad_warning);
        if (pad_warning)
          std::cerr << "warning: nonzero pad bits in the leak\n";
        emit_text(bits_to_string(plaintext) + "\n", o->out);
      };
    });
  }

  // ------------------------------------------------------------------- sim
  {
    auto* cmd = app.add_subcommand("sim", "cycle-based simulation");
    struct SimCli {
      std::string in, stimuli, out;
      std::vector<std::string> probes;
      std::uint64_t cycles = 0;
    };
    auto o = std::make_shared<SimCli>();
    cmd->add_option("netlist", o->in)->required();
    cmd->add_option("--stimuli", o->stimuli, "one cycle per line, name=bit");
    cmd->add_option("--cycles", o->cycles,
                    "cycle count for netlists without input ports");
    cmd->add_option("--probe", o->probes, "also trace this net");
    cmd->add_option("-o,--out", o->out, "trace output (default stdout)");
    cmd->callback([&, o] {
      action = [&, o] {
        Netlist n = load(o->in, global);
        Stimuli stim;
        if (!o->stimuli.empty())
          stim = parse_stimuli(n, read_text_file(o->stimuli));
        if (o->cycles > 0) {
          if (!n.inputs.empty() && stim.cycles.empty())
            throw Error("--cycles without --stimuli needs a netlist with no "
                        "input ports");
          if (stim.cycles.empty())
            stim.cycles.assign(o->cycles, {});
        }
        if (stim.cycles.empty())
          throw Error("nothing to simulate: pass --stimuli or --cycles");
        Trace trace = run(n, stim, o->probes);
        emit_text(format_trace(trace), o->out);
      };
    });
  }

  // ------------------------------------------------------------------ diff
  {
    auto* cmd = app.add_subcommand("diff", "structural diff of two netlists");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    cmd->add_option("a", *a)->required();
    cmd->add_option("b", *b)->required();
    cmd->callback([&, a, b] {
      action = [&, a, b] {
        Netlist na = load(*a, global);
        Netlist nb = load(*b, global);
        auto net_str = [](const Netlist& n, NetId id) {
          return id == kNoNet ? std::string("-") : n.net_name(id);
        };
        auto same_wiring = [&](const Gate& ga, const Gate& gb) {
          if (ga.kind != gb.kind || ga.arity != gb.arity ||
              ga.inputs.size() != gb.inputs.size())
            return false;
          for (std::size_t i = 0; i < ga.inputs.size(); ++i)
            if (net_str(na, ga.inputs[i]) != net_str(nb, gb.inputs[i]))
              return false;
          return net_str(na, ga.output) == net_str(nb, gb.output) &&
                 net_str(na, ga.clk) == net_str(nb, gb.clk) &&
                 net_str(na, ga.ce) == net_str(nb, gb.ce);
        };
        std::size_t changed = 0;
        for (const Gate& ga : na.gates) {
          const Gate* gb = nb.find_gate(ga.id);
          if (!gb) {
            std::cout << "removed gate " << ga.id << "\n";
            ++changed;
          } else if (!same_wiring(ga, *gb)) {
            std::cout << "gate " << ga.id << " rewired\n";
            ++changed;
          } else if (ga.config != gb->config) {
            std::cout << "gate " << ga.id << " init " << ga.config.to_hex()
                      << " -> " << gb->config.to_hex() << "\n";
            ++changed;
          } else if (ga.init != gb->init) {
            std::cout << "gate " << ga.id << " init " << (ga.init ? 1 : 0)
                      << " -> " << (gb->init ? 1 : 0) << "\n";
            ++changed;
          }
        }
        for (const Gate& gb : nb.gates) {
          if (!na.find_gate(gb.id)) {
            std::cout << "added gate " << gb.id << " " << to_string(gb.kind)
                      << "\n";
            ++changed;
          }
        }
        std::cout << "differences " << changed << "\n";
        if (changed > 0) status = kExitNegative;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : 2;  // usage error
  }

  try {
    action();
  } catch (const NoCandidate& e) {
    std::cout << e.what() << "\n";
    return kExitNegative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return status;
}
