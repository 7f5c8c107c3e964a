#include <doctest.h>

#include "gatehound/netlist.hpp"
#include "gatehound/sim.hpp"
#include "gatehound/util.hpp"

using namespace gatehound;

namespace {

// LUT2 AND fed from two ports, output to a port.
Netlist and2_netlist() {
  Netlist n;
  n.name = "and2";
  NetId a = n.add_input("a");
  NetId b = n.add_input("b");
  NetId y = n.add_output("y");
  n.add_lut(TruthTable(2, 0b1000), {a, b}, y);
  n.rebuild();
  return n;
}

}  // namespace

TEST_CASE("minimal well-formed netlist validates with an empty report") {
  Netlist n = and2_netlist();
  ValidationReport report = validate(n);
  CHECK(report.ok());
  CHECK(report.errors.empty());
  CHECK(report.warnings.empty());
}

TEST_CASE("validate is idempotent") {
  Netlist n = and2_netlist();
  ValidationReport a = validate(n);
  ValidationReport b = validate(n);
  REQUIRE(a.errors.size() == b.errors.size());
  REQUIRE(a.warnings.size() == b.warnings.size());
  for (std::size_t i = 0; i < a.errors.size(); ++i)
    CHECK(a.errors[i].message == b.errors[i].message);
}

TEST_CASE("multi-driver net is reported") {
  Netlist n = and2_netlist();
  NetId y = *n.find_net("y");
  n.add_gnd(y);  // second driver on y
  n.rebuild();
  ValidationReport report = validate(n);
  REQUIRE(report.errors.size() == 1);
  CHECK(report.errors[0].kind == ViolationKind::MultiDriver);
}

TEST_CASE("combinational self-loop is reported") {
  Netlist n;
  n.name = "loop";
  NetId y = n.add_output("y");
  n.add_lut(TruthTable(1, 0b10), {y}, y);  // identity LUT feeding itself
  n.rebuild();
  ValidationReport report = validate(n);
  REQUIRE(report.errors.size() == 1);
  CHECK(report.errors[0].kind == ViolationKind::CombinationalCycle);
}

TEST_CASE("undriven and unread nets") {
  Netlist n = and2_netlist();
  NetId dangling = n.intern_net("nowhere");
  n.add_lut(TruthTable(1, 0b10), {dangling}, n.intern_net("spare"));
  n.rebuild();
  ValidationReport report = validate(n);
  REQUIRE(report.errors.size() == 1);
  CHECK(report.errors[0].kind == ViolationKind::NoDriver);
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0].kind == ViolationKind::DanglingOutput);
}

TEST_CASE("config width mismatch is reported") {
  Netlist n = and2_netlist();
  n.gates[0].config = TruthTable(3, 0);
  n.rebuild();
  ValidationReport report = validate(n);
  REQUIRE_FALSE(report.ok());
  CHECK(report.errors[0].kind == ViolationKind::ConfigWidth);
}

TEST_CASE("ff off the declared clock is reported") {
  Netlist n;
  n.name = "ffclk";
  n.set_clock("clk");
  NetId d = n.add_input("d");
  NetId q = n.add_output("q");
  n.add_ff(d, q);
  n.rebuild();
  CHECK(validate(n).ok());

  n.gates[0].clk = n.intern_net("other_clk");
  n.add_input("other_clk");
  n.rebuild();
  ValidationReport report = validate(n);
  REQUIRE_FALSE(report.ok());
  CHECK(report.errors[0].kind == ViolationKind::ClockMismatch);
}

TEST_CASE("trace_constant resolves direct ties") {
  Netlist n = and2_netlist();
  NetId g = n.intern_net("gnd_net");
  n.add_gnd(g);
  NetId v = n.intern_net("vcc_net");
  n.add_vcc(v);
  n.add_lut(TruthTable(2, 0b0110), {g, v}, n.add_output("y2"));
  n.rebuild();

  auto traced = trace_constant_ex(n, g);
  REQUIRE(traced.has_value());
  CHECK(traced->value == false);
  CHECK(traced->provenance == ConstProvenance::Direct);
  CHECK(trace_constant(n, v) == true);
  CHECK_FALSE(trace_constant(n, *n.find_net("a")).has_value());
}

TEST_CASE("trace_constant follows bufs and pass-through luts") {
  Netlist n;
  n.name = "chain";
  NetId g = n.intern_net("g");
  n.add_gnd(g);
  NetId b = n.intern_net("b");
  n.add_buf(g, b);
  // pass-through LUT2: projection of I1, with I0 fed by some live input
  NetId live = n.add_input("live");
  NetId p = n.intern_net("p");
  n.add_lut(table_projection(2, 1), {live, b}, p);
  NetId y = n.add_output("y");
  n.add_lut(TruthTable(1, 0b10), {p}, y);
  n.rebuild();

  auto traced = trace_constant_ex(n, p);
  REQUIRE(traced.has_value());
  CHECK(traced->value == false);
  CHECK(traced->provenance == ConstProvenance::Traced);

  // verify the pass-through claim by simulation: y == 0 for both live values
  Stimuli stim;
  stim.cycles = {{0}, {1}};
  Trace trace = run(n, stim);
  CHECK(trace.rows[0][0] == 0);
  CHECK(trace.rows[1][0] == 0);

  // a non-projection LUT blocks the trace
  n.gates[2].config = TruthTable(2, 0b0110);
  n.rebuild();
  CHECK_FALSE(trace_constant(n, p).has_value());
}

TEST_CASE("trace_constant honors opaque constants") {
  Netlist n = and2_netlist();
  NetId a = *n.find_net("a");
  OpaqueConstants opaque;
  opaque.values[a] = true;
  auto traced = trace_constant_ex(n, a, opaque);
  REQUIRE(traced.has_value());
  CHECK(traced->value == true);
  CHECK(traced->provenance == ConstProvenance::Opaque);
}

TEST_CASE("traced constants agree with simulation on random stimuli") {
  // GND -> BUF -> pass-through -> BUF chain, queried at each stage.
  Netlist n;
  n.name = "closure";
  NetId live = n.add_input("live");
  NetId g = n.intern_net("g");
  n.add_gnd(g);
  NetId b1 = n.intern_net("b1");
  n.add_buf(g, b1);
  NetId p = n.intern_net("p");
  n.add_lut(table_projection(2, 0), {b1, live}, p);
  NetId y = n.add_output("y");
  n.add_buf(p, y);
  n.rebuild();

  std::vector<NetId> closure = {g, b1, p, y};
  Stimuli stim = random_stimuli(n, 100, 99);
  Trace trace = run(n, stim, {"g", "b1", "p", "y"});
  for (NetId net : closure) {
    auto traced = trace_constant(n, net);
    REQUIRE(traced.has_value());
    for (std::size_t c = 0; c < trace.rows.size(); ++c) {
      for (std::size_t col = 0; col < trace.columns.size(); ++col) {
        if (n.find_net(trace.columns[col]) == net)
          CHECK(trace.rows[c][col] == (*traced ? 1 : 0));
      }
    }
  }
}

TEST_CASE("structural equality tracks names not ids") {
  Netlist a = and2_netlist();
  Netlist b = and2_netlist();
  CHECK(a.structurally_equal(b));
  b.gates[0].config = TruthTable(2, 0b1110);
  CHECK_FALSE(a.structurally_equal(b));
}
