#include <doctest.h>

#include <random>

#include "gatehound/designgen.hpp"
#include "gatehound/netlist_io.hpp"
#include "gatehound/sim.hpp"
#include "gatehound/watermark.hpp"

using namespace gatehound;

namespace {

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> bits(count);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
  return bits;
}

bool trace_equal(const Netlist& a, const Netlist& b, std::size_t cycles,
                 std::uint64_t seed) {
  Stimuli stim = random_stimuli(a, cycles, seed);
  return run(a, stim) == run(b, stim);
}

// LUT-k with `tied` pins on GND and the rest on input ports.
Netlist lut_with_ties(int k, int tied, std::uint64_t config) {
  Netlist n;
  n.name = "ties";
  NetId gnd = n.intern_net("g");
  n.add_gnd(gnd);
  std::vector<NetId> ins;
  for (int p = 0; p < k; ++p) {
    if (p >= k - tied)
      ins.push_back(gnd);
    else
      ins.push_back(n.add_input("a" + std::to_string(p)));
  }
  NetId y = n.add_output("y");
  n.add_lut(TruthTable(k, config), ins, y);
  n.rebuild();
  return n;
}

}  // namespace

TEST_CASE("lut6 with two gnd pins exposes 48 unreachable bits") {
  Netlist n = lut_with_ties(6, 2, 0xFFFFFFFFFFFFFFFFull);
  WatermarkReport report = detect_watermarks(n);
  REQUIRE(report.slots.size() == 1);
  const WatermarkSlot& slot = report.slots[0];
  CHECK(slot.tied_pins.size() == 2);
  CHECK(slot.tied_pins[0].pin == 4);
  CHECK(slot.tied_pins[1].pin == 5);
  CHECK(slot.capacity() == 48);
  CHECK(slot.positive);

  // indices are exactly those with bit4 or bit5 set
  for (std::uint32_t idx : slot.unreachable_indices)
    CHECK(((idx >> 4) & 1 || (idx >> 5) & 1));
}

TEST_CASE("lut with no tied pins yields no slot") {
  Netlist n = lut_with_ties(6, 0, 0x123456789ABCDEFull);
  CHECK(detect_watermarks(n).slots.empty());
}

TEST_CASE("capacity law over every width and tie count") {
  for (int k = 1; k <= 6; ++k) {
    for (int t = 1; t <= k; ++t) {
      Netlist n = lut_with_ties(k, t, 0);
      WatermarkReport report = detect_watermarks(n);
      REQUIRE(report.slots.size() == 1);
      std::size_t expect = (1ull << k) - (1ull << (k - t));
      CHECK(report.slots[0].capacity() == expect);
    }
  }
}

TEST_CASE("extraction basics") {
  CHECK(extract_payload(WatermarkReport{}).empty());
  Netlist n = lut_with_ties(6, 2, 0xFFFFFFFFFFFFFFFFull);
  auto bits = extract_payload(detect_watermarks(n));
  REQUIRE(bits.size() == 48);
  for (auto b : bits) CHECK(b == 1);
}

TEST_CASE("srl with grounded shift enable is scanned, live ce is skipped") {
  Netlist n;
  n.name = "srl_wm";
  n.set_clock("clk");
  NetId a = n.add_input("a");
  NetId b = n.add_input("b");
  NetId gnd = n.intern_net("g");
  n.add_gnd(gnd);
  NetId y = n.add_output("y");
  // payload 1011 sits in the half the grounded I2 makes unreachable
  n.add_srl(TruthTable(3, 0b10110110), {a, b, gnd}, gnd, y);
  n.rebuild();
  WatermarkReport report = detect_watermarks(n);
  REQUIRE(report.slots.size() == 1);
  CHECK(report.slots[0].kind == GateKind::Srl);
  CHECK(report.slots[0].capacity() == 4);
  CHECK(bits_to_string(report.slots[0].payload_bits) == "1101");

  Netlist live = n;
  live.find_gate(report.slots[0].gate)->ce = a;
  live.rebuild();
  CHECK(detect_watermarks(live).slots.empty());
}

TEST_CASE("embed then detect round-trips the payload on the demo carrier") {
  auto payload = random_bits(96, 101);
  GeneratedFixture fx = gen_watermark_demo(payload);
  CHECK(validate(fx.netlist).ok());

  WatermarkReport report = detect_watermarks(fx.netlist);
  REQUIRE(report.slots.size() == 2);
  CHECK(report.slots[0].capacity() == 48);
  CHECK(report.slots[1].capacity() == 48);
  CHECK(extract_payload(report) == payload);

  // embedding preserved behavior
  CHECK(trace_equal(fx.netlist, watermark_carrier(), 1000, 7));
}

TEST_CASE("embed leaves reachable configuration bits untouched") {
  auto payload = random_bits(96, 102);
  GeneratedFixture fx = gen_watermark_demo(payload);
  Netlist carrier = watermark_carrier();
  for (const Gate& g : carrier.gates) {
    if (g.kind != GateKind::Lut || g.arity != 6) continue;
    const Gate* wm = fx.netlist.find_gate(g.id);
    REQUIRE(wm != nullptr);
    // low leaf (both tied pins zero) is the live function
    CHECK((wm->config.bits & 0xFFFF) == (g.config.bits & 0xFFFF));
  }
}

TEST_CASE("embed empty payload changes no configuration") {
  GeneratedFixture fx = gen_watermark_demo({});
  Netlist carrier = watermark_carrier();
  for (const Gate& g : carrier.gates) {
    const Gate* after = fx.netlist.find_gate(g.id);
    REQUIRE(after != nullptr);
    CHECK(after->config == g.config);
  }
  CHECK(trace_equal(fx.netlist, carrier, 1000, 8));
}

TEST_CASE("insufficient capacity is rejected") {
  CHECK_THROWS_WITH_AS(gen_watermark_demo(random_bits(97, 103)),
                       doctest::Contains("insufficient capacity"), Error);
}

TEST_CASE("a 48-bit payload fits one lut6 host by tying two pins") {
  auto payload = random_bits(48, 112);
  GeneratedFixture fx = gen_watermark_demo(payload);
  WatermarkReport report = detect_watermarks(fx.netlist);
  REQUIRE(report.slots.size() == 1);
  CHECK(report.slots[0].tied_pins.size() == 2);
  CHECK(report.slots[0].capacity() == 48);
  CHECK(extract_payload(report) == payload);
}

TEST_CASE("strip zeroes the watermark and preserves behavior") {
  GeneratedFixture fx = gen_watermark_demo(random_bits(96, 104));
  WatermarkReport report = detect_watermarks(fx.netlist);
  Netlist stripped = strip_watermark(fx.netlist, report);

  CHECK(trace_equal(stripped, fx.netlist, 1000, 9));
  WatermarkReport re = detect_watermarks(stripped);
  REQUIRE(re.slots.size() == 2);
  CHECK(re.positive_slots() == 0);
  for (auto b : extract_payload(re)) CHECK(b == 0);

  // idempotent: stripping the stripped netlist changes nothing
  Netlist twice = strip_watermark(stripped, re);
  CHECK(serialize_netlist(twice) == serialize_netlist(stripped));
}

TEST_CASE("strip on a netlist with no slots is the identity") {
  Netlist n = lut_with_ties(6, 0, 0xABCDEF0123456789ull);
  WatermarkReport report = detect_watermarks(n);
  CHECK(report.slots.empty());
  CHECK(serialize_netlist(strip_watermark(n, report)) == serialize_netlist(n));
}

TEST_CASE("stale reports are rejected") {
  GeneratedFixture fx = gen_watermark_demo(random_bits(96, 105));
  WatermarkReport report = detect_watermarks(fx.netlist);
  Netlist altered = alter_watermark(fx.netlist, report, random_bits(96, 106));
  CHECK_THROWS_WITH_AS(strip_watermark(altered, report),
                       doctest::Contains("stale report"), Error);
}

TEST_CASE("alter forges a payload in place") {
  auto original = random_bits(96, 107);
  auto forged = random_bits(96, 108);
  GeneratedFixture fx = gen_watermark_demo(original);
  WatermarkReport report = detect_watermarks(fx.netlist);

  Netlist forged_netlist = alter_watermark(fx.netlist, report, forged);
  CHECK(extract_payload(detect_watermarks(forged_netlist)) == forged);
  CHECK(trace_equal(forged_netlist, fx.netlist, 1000, 10));

  // forging zeros equals stripping
  std::vector<std::uint8_t> zeros(96, 0);
  CHECK(serialize_netlist(alter_watermark(fx.netlist, report, zeros)) ==
        serialize_netlist(strip_watermark(fx.netlist, report)));

  // forging the original payload is the identity on configs
  CHECK(serialize_netlist(alter_watermark(fx.netlist, report, original)) ==
        serialize_netlist(fx.netlist));

  CHECK_THROWS_WITH_AS(
      alter_watermark(fx.netlist, report, random_bits(97, 109)),
      doctest::Contains("exceeds capacity"), Error);
}

TEST_CASE("watermarked present fixture: embed, detect, strip, verify") {
  GeneratedFixture present = gen_present(false);
  auto payload = random_bits(96, 110);
  EmbedResult embedded = embed_watermark(present.netlist, payload);

  // detection sees every gnd-tied sbox lut; payload sits in the first two
  WatermarkReport report = detect_watermarks(embedded.netlist);
  CHECK(report.slots.size() == 68);
  auto bits = extract_payload(report);
  REQUIRE(bits.size() >= 96);
  CHECK(std::vector<std::uint8_t>(bits.begin(), bits.begin() + 96) == payload);

  Netlist stripped = strip_watermark(embedded.netlist, report);
  CHECK(trace_equal(stripped, present.netlist, 1000, 11));
  CHECK(detect_watermarks(stripped).positive_slots() == 0);

  // the fixture still encrypts correctly after stripping
  Simulator sim(stripped);
  Key80 zeros{};
  CHECK(present_fixture_encrypt(sim, zeros, 0) == 0x5579C1387B228445ull);
}

TEST_CASE("opaque protection defeats constant-only detection") {
  auto payload = random_bits(96, 111);
  EmbedOptions opts;
  opts.protection = WatermarkProtection::Opaque;
  GeneratedFixture fx = gen_watermark_demo(payload, opts);
  CHECK(validate(fx.netlist).ok());

  // constant-only scan: nothing
  CHECK(detect_watermarks(fx.netlist).slots.empty());

  // lfsr opaque-predicate analysis recovers everything
  OpaqueConstants discovered = discover_opaque_constants(fx.netlist);
  REQUIRE(discovered.values.size() == 1);
  CHECK(discovered.values.begin()->second == false);

  WatermarkReport report = detect_watermarks(fx.netlist, discovered);
  REQUIRE(report.slots.size() == 2);
  CHECK(extract_payload(report) == payload);
  for (const WatermarkSlot& slot : report.slots)
    for (const TiedPin& tp : slot.tied_pins)
      CHECK(tp.provenance == ConstProvenance::Opaque);

  // behavior is still that of the bare carrier
  CHECK(trace_equal(fx.netlist, watermark_carrier(), 1000, 12));

  // strip works through the opaque report too
  Netlist stripped = strip_watermark(fx.netlist, report);
  CHECK(detect_watermarks(stripped, discovered).positive_slots() == 0);
}

TEST_CASE("detector flags positive slots only when unreachable bits are set") {
  Netlist n = lut_with_ties(6, 2, 0x0000000000001234ull);  // zeros up high
  WatermarkReport report = detect_watermarks(n);
  REQUIRE(report.slots.size() == 1);
  CHECK_FALSE(report.slots[0].positive);
}

TEST_CASE("positivity agrees with the dnf clause condition") {
  // A slot is positive exactly when some DNF clause of the config requires
  // a tied pin to differ from its constant.
  std::mt19937_64 rng(2718);
  for (int rep = 0; rep < 200; ++rep) {
    int k = 2 + static_cast<int>(rng() % 5);
    int tied = 1 + static_cast<int>(rng() % k);
    std::uint64_t mask = k == 6 ? ~0ull : ((1ull << (1ull << k)) - 1);
    std::uint64_t config = rng() & mask;
    Netlist n = lut_with_ties(k, tied, config);
    WatermarkReport report = detect_watermarks(n);
    REQUIRE(report.slots.size() == 1);
    const WatermarkSlot& slot = report.slots[0];

    bool clause_hits = false;
    for (const Minterm& clause : to_dnf(TruthTable(k, config))) {
      for (const TiedPin& tp : slot.tied_pins) {
        if (clause.requires_one(tp.pin) != tp.value) {
          clause_hits = true;
          break;
        }
      }
    }
    CHECK(slot.positive == clause_hits);
  }
}
