#include "gatehound/netlist_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace gatehound {

namespace {

constexpr const char* kVersion = "ghn-1";

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  auto head = s[0];
  if (!(std::isalpha(static_cast<unsigned char>(head)) || head == '_'))
    return false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) continue;
    switch (c) {
      case '_': case '.': case '[': case ']': case '/': case '$': case '-':
        continue;
      default:
        return false;
    }
  }
  return true;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

struct GateLine {
  int line = 0;
  GateId id = 0;
  GateKind kind = GateKind::Lut;
  int arity = 0;
  bool has_init = false;
  std::string init;
  std::vector<std::pair<std::string, std::string>> pins;  // pin -> net
};

}  // namespace

Netlist parse_netlist(const std::string& text, const ParseOptions& opts) {
  Netlist n;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool saw_version = false;
  bool saw_name = false;
  std::unordered_set<GateId> seen_gate_ids;

  auto net_of = [&](const std::string& name, int line) {
    if (!valid_name(name))
      throw ParseError(line, "bad net name '" + name + "'");
    return n.intern_net(name);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::vector<std::string> tok = tokenize(raw);
    if (tok.empty()) continue;

    if (!saw_version) {
      if (tok.size() == 1 && tok[0] == kVersion) {
        saw_version = true;
        continue;
      }
      if (tok.size() == 1 && tok[0].rfind("ghn-", 0) == 0)
        throw ParseError(lineno, "unsupported format version '" + tok[0] +
                                     "', expected " + kVersion);
      throw ParseError(lineno, "missing version line '" + std::string(kVersion) +
                                   "'");
    }

    const std::string& head = tok[0];
    if (head == "name") {
      if (tok.size() != 2) throw ParseError(lineno, "name takes one value");
      if (saw_name) throw ParseError(lineno, "duplicate name directive");
      if (!valid_name(tok[1]))
        throw ParseError(lineno, "bad design name '" + tok[1] + "'");
      n.name = tok[1];
      saw_name = true;
    } else if (head == "input" || head == "output" || head == "clock") {
      if (tok.size() != 2)
        throw ParseError(lineno, head + " takes one net name");
      net_of(tok[1], lineno);
      if (head == "input") {
        n.inputs.push_back(tok[1]);
      } else if (head == "output") {
        n.outputs.push_back(tok[1]);
      } else {
        if (!n.clock.empty())
          throw ParseError(lineno, "duplicate clock directive");
        n.clock = tok[1];
      }
    } else if (head == "gate") {
      if (tok.size() < 3) throw ParseError(lineno, "truncated gate line");
      GateLine gl;
      gl.line = lineno;
      try {
        std::size_t used = 0;
        unsigned long v = std::stoul(tok[1], &used);
        if (used != tok[1].size() || v > 0xfffffffeul) throw Error("range");
        gl.id = static_cast<GateId>(v);
      } catch (...) {
        throw ParseError(lineno, "bad gate id '" + tok[1] + "'");
      }
      std::size_t at = 2;
      const std::string& kind = tok[at++];
      if (kind == "LUT" || kind == "SRL") {
        gl.kind = kind == "LUT" ? GateKind::Lut : GateKind::Srl;
        if (at >= tok.size())
          throw ParseError(lineno, kind + " needs an arity");
        try {
          gl.arity = std::stoi(tok[at]);
        } catch (...) {
          throw ParseError(lineno, "bad arity '" + tok[at] + "'");
        }
        ++at;
        if (gl.arity < 1 || gl.arity > TruthTable::kMaxWidth)
          throw ParseError(lineno, "arity " + std::to_string(gl.arity) +
                                       " outside 1..6");
      } else if (kind == "FF") {
        gl.kind = GateKind::Ff;
      } else if (kind == "BUF") {
        gl.kind = GateKind::Buf;
      } else if (kind == "GND") {
        gl.kind = GateKind::Gnd;
      } else if (kind == "VCC") {
        gl.kind = GateKind::Vcc;
      } else {
        throw ParseError(lineno, "unknown gate kind '" + kind + "'");
      }
      for (; at < tok.size(); ++at) {
        std::size_t eq = tok[at].find('=');
        if (eq == std::string::npos)
          throw ParseError(lineno, "expected key=value, got '" + tok[at] + "'");
        std::string key = tok[at].substr(0, eq);
        std::string value = tok[at].substr(eq + 1);
        if (key == "init") {
          if (gl.has_init)
            throw ParseError(lineno, "duplicate init attribute");
          gl.has_init = true;
          gl.init = value;
        } else {
          gl.pins.emplace_back(key, value);
        }
      }

      // Pin set per kind.
      Gate g;
      g.id = gl.id;
      g.kind = gl.kind;
      g.arity = gl.arity;
      std::vector<std::string> expect_in;
      bool ce_required = false, ce_allowed = false, init_allowed = false;
      switch (gl.kind) {
        case GateKind::Lut:
        case GateKind::Srl:
          for (int i = 0; i < gl.arity; ++i)
            expect_in.push_back("I" + std::to_string(i));
          ce_required = gl.kind == GateKind::Srl;
          ce_allowed = ce_required;
          init_allowed = true;
          if (!gl.has_init)
            throw ParseError(lineno, std::string(to_string(gl.kind)) +
                                         " requires an init attribute");
          break;
        case GateKind::Ff:
          expect_in.push_back("D");
          ce_allowed = true;
          init_allowed = true;
          break;
        case GateKind::Buf:
          expect_in.push_back("I");
          break;
        case GateKind::Gnd:
        case GateKind::Vcc:
          break;
      }
      if (gl.has_init && !init_allowed)
        throw ParseError(lineno, std::string(to_string(gl.kind)) +
                                     " does not take init");
      if (gl.has_init) {
        if (gl.kind == GateKind::Ff) {
          if (gl.init != "0" && gl.init != "1")
            throw ParseError(lineno, "FF init must be 0 or 1");
          g.init = gl.init == "1";
        } else {
          try {
            g.config = TruthTable::from_hex(gl.arity, gl.init);
          } catch (const Error& e) {
            throw ParseError(lineno, e.what());
          }
        }
      }

      g.inputs.assign(expect_in.size(), kNoNet);
      std::string out_pin = gl.kind == GateKind::Ff ? "Q" : "O";
      for (const auto& [pin, net] : gl.pins) {
        bool matched = false;
        for (std::size_t i = 0; i < expect_in.size(); ++i) {
          if (pin == expect_in[i]) {
            if (g.inputs[i] != kNoNet)
              throw ParseError(lineno, "pin " + pin + " assigned twice");
            g.inputs[i] = net_of(net, lineno);
            matched = true;
            break;
          }
        }
        if (matched) continue;
        if (pin == out_pin) {
          if (g.output != kNoNet)
            throw ParseError(lineno, "pin " + pin + " assigned twice");
          g.output = net_of(net, lineno);
        } else if (pin == "CLK" && gl.kind == GateKind::Ff) {
          if (g.clk != kNoNet)
            throw ParseError(lineno, "pin CLK assigned twice");
          g.clk = net_of(net, lineno);
        } else if (pin == "CE" && ce_allowed) {
          if (g.ce != kNoNet) throw ParseError(lineno, "pin CE assigned twice");
          g.ce = net_of(net, lineno);
        } else if (!opts.lenient) {
          throw ParseError(lineno, "unknown attribute '" + pin + "' for " +
                                       to_string(gl.kind));
        }
      }
      for (std::size_t i = 0; i < expect_in.size(); ++i)
        if (g.inputs[i] == kNoNet)
          throw ParseError(lineno, "pin " + expect_in[i] + " of gate " +
                                       std::to_string(g.id) + " unassigned");
      if (g.output == kNoNet)
        throw ParseError(lineno, "pin " + out_pin + " of gate " +
                                     std::to_string(g.id) + " unassigned");
      if (gl.kind == GateKind::Ff && g.clk == kNoNet)
        throw ParseError(lineno, "pin CLK of gate " + std::to_string(g.id) +
                                     " unassigned");
      if (ce_required && g.ce == kNoNet)
        throw ParseError(lineno, "pin CE of gate " + std::to_string(g.id) +
                                     " unassigned");
      if (!seen_gate_ids.insert(g.id).second)
        throw ParseError(lineno,
                         "gate id " + std::to_string(g.id) + " redeclared");
      n.gates.push_back(std::move(g));
    } else if (!opts.lenient) {
      throw ParseError(lineno, "unknown directive '" + head + "'");
    }
  }

  if (!saw_version) throw ParseError("empty document, missing version line");
  if (!saw_name) throw ParseError("missing name directive");

  n.rebuild();
  if (opts.validate) {
    ValidationReport report = validate(n);
    if (!report.ok()) {
      std::string msg = "netlist does not validate:";
      for (const Violation& v : report.errors)
        msg += "\n  [" + std::string(to_string(v.kind)) + "] " + v.message;
      throw ParseError(msg);
    }
  }
  return n;
}

std::string serialize_netlist(const Netlist& n) {
  Netlist copy;
  const Netlist* src = &n;
  if (!n.links_current()) {
    copy = n;
    copy.rebuild();
    src = &copy;
  }
  ValidationReport report = validate(*src);
  if (!report.ok())
    throw Error("cannot serialize: netlist does not validate (" +
                report.errors.front().message + ")");

  std::ostringstream out;
  out << kVersion << "\n";
  out << "name " << src->name << "\n";
  if (!src->clock.empty()) out << "clock " << src->clock << "\n";
  for (const std::string& p : src->inputs) out << "input " << p << "\n";
  for (const std::string& p : src->outputs) out << "output " << p << "\n";
  for (const Gate& g : src->gates) {
    out << "gate " << g.id << " " << to_string(g.kind);
    if (g.has_config()) out << " " << g.arity;
    if (g.has_config())
      out << " init=" << g.config.to_hex();
    else if (g.is_ff())
      out << " init=" << (g.init ? 1 : 0);
    for (const PinBinding& pin : gate_pins(g))
      out << " " << pin.pin << "=" << src->net_name(pin.net);
    out << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

Netlist load_netlist(const std::string& path, const ParseOptions& opts) {
  return parse_netlist(read_text_file(path), opts);
}

void save_netlist(const Netlist& n, const std::string& path) {
  write_text_file(path, serialize_netlist(n));
}

}  // namespace gatehound
