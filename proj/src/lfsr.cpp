#include "gatehound/lfsr.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "gatehound/util.hpp"

namespace gatehound {

const char* to_string(FeedbackKind kind) {
  return kind == FeedbackKind::Xor ? "XOR" : "XNOR";
}

const char* to_string(ReduceKind kind) {
  return kind == ReduceKind::Or ? "OR" : "NOR";
}

std::vector<int> LfsrDescriptor::polynomial_exponents() const {
  std::vector<int> exps = {0};
  for (int tap : taps) exps.push_back(tap + 1);
  std::sort(exps.begin(), exps.end());
  return exps;
}

std::string LfsrDescriptor::polynomial_string() const {
  std::ostringstream out;
  bool first = true;
  for (int e : polynomial_exponents()) {
    if (!first) out << " + ";
    first = false;
    if (e == 0)
      out << "1";
    else if (e == 1)
      out << "x";
    else
      out << "x^" << e;
  }
  return out.str();
}

std::uint64_t LfsrDescriptor::init_value(const Netlist& n) const {
  if (registers.size() > 64)
    throw Error("lfsr longer than 64 bits has no packed init value");
  std::uint64_t init = 0;
  for (std::size_t i = 0; i < registers.size(); ++i) {
    const Gate* g = n.find_gate(registers[i]);
    if (!g) throw Error("descriptor register missing from netlist");
    if (g->init) init |= 1ull << i;
  }
  return init;
}

std::vector<NetId> LfsrDescriptor::register_nets(const Netlist& n) const {
  std::vector<NetId> nets;
  nets.reserve(registers.size());
  for (GateId id : registers) {
    const Gate* g = n.find_gate(id);
    if (!g) throw Error("descriptor register missing from netlist");
    nets.push_back(g->output);
  }
  return nets;
}

std::vector<int> taps_from_polynomial(const std::vector<int>& exponents) {
  std::vector<int> exps = exponents;
  std::sort(exps.begin(), exps.end());
  if (exps.empty() || exps.front() != 0)
    throw Error("feedback polynomial must have constant term 1");
  std::vector<int> taps;
  for (std::size_t i = 1; i < exps.size(); ++i) {
    if (exps[i] == exps[i - 1]) throw Error("duplicate polynomial exponent");
    taps.push_back(exps[i] - 1);
  }
  if (taps.empty()) throw Error("feedback polynomial has no taps");
  return taps;
}

std::vector<int> parse_polynomial(const std::string& text) {
  std::vector<int> exps;
  std::string term;
  auto flush = [&]() {
    if (term.empty()) return;
    if (term == "1") {
      exps.push_back(0);
    } else if (term == "x") {
      exps.push_back(1);
    } else if (term.rfind("x^", 0) == 0) {
      try {
        std::size_t used = 0;
        int e = std::stoi(term.substr(2), &used);
        if (used != term.size() - 2 || e < 0) throw Error("range");
        exps.push_back(e);
      } catch (...) {
        throw Error("bad polynomial term '" + term + "'");
      }
    } else {
      throw Error("bad polynomial term '" + term + "'");
    }
    term.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t') continue;
    if (c == '+') {
      flush();
    } else {
      term.push_back(c);
    }
  }
  flush();
  if (exps.empty()) throw Error("empty polynomial");
  return exps;
}

// ---------------------------------------------------------------------------
// FF chains

namespace {

// FF feeding this FF's D through transparent hops, if any.
std::optional<GateId> chain_pred(const Netlist& n, const Gate& ff) {
  NetId src = resolve_transparent(n, ff.inputs[0]);
  const NetConn& c = n.conn(src);
  if (c.driver_gates.size() != 1) return std::nullopt;
  const Gate* drv = n.find_gate(c.driver_gates.front());
  if (!drv || drv->kind != GateKind::Ff) return std::nullopt;
  return drv->id;
}

}  // namespace

std::vector<std::vector<GateId>> find_ff_chains(const Netlist& n) {
  std::unordered_map<GateId, GateId> pred;
  std::unordered_map<GateId, std::vector<GateId>> succ;
  std::vector<GateId> ffs;
  for (const Gate& g : n.gates) {
    if (g.kind != GateKind::Ff) continue;
    ffs.push_back(g.id);
    if (auto p = chain_pred(n, g)) {
      pred.emplace(g.id, *p);
      succ[*p].push_back(g.id);
    }
  }
  for (auto& [id, list] : succ) std::sort(list.begin(), list.end());

  std::vector<std::vector<GateId>> chains;
  std::unordered_set<GateId> used;
  for (GateId id : ffs) {
    bool is_start = false;
    auto p = pred.find(id);
    if (p == pred.end()) {
      is_start = true;  // head: preceding gate is not an FF
    } else {
      auto s = succ.find(p->second);
      if (s != succ.end() && s->second.size() >= 2)
        is_start = true;  // fork point: predecessor feeds several FFs
    }
    if (!is_start) continue;
    std::vector<GateId> chain;
    GateId cur = id;
    while (!used.count(cur)) {
      chain.push_back(cur);
      used.insert(cur);
      auto s = succ.find(cur);
      if (s == succ.end() || s->second.size() != 1) break;
      GateId next = s->second.front();
      if (used.count(next)) break;
      cur = next;
    }
    if (!chain.empty()) chains.push_back(std::move(chain));
  }
  return chains;
}

// ---------------------------------------------------------------------------
// Feedback recognition via algebraic normal forms over the head cone.

namespace {

// XOR of monomials; each monomial is a variable mask, mask 0 = constant 1.
struct Anf {
  std::set<std::uint64_t> monomials;

  static Anf constant(bool v) {
    Anf a;
    if (v) a.monomials.insert(0);
    return a;
  }
  static Anf var(int index) {
    Anf a;
    a.monomials.insert(1ull << index);
    return a;
  }
  void toggle(std::uint64_t m) {
    auto it = monomials.find(m);
    if (it == monomials.end())
      monomials.insert(m);
    else
      monomials.erase(it);
  }
};

Anf anf_xor(const Anf& a, const Anf& b, std::size_t cap) {
  Anf out = a;
  for (auto m : b.monomials) out.toggle(m);
  if (out.monomials.size() > cap) throw Error("anf blowup");
  return out;
}

Anf anf_mul(const Anf& a, const Anf& b, std::size_t cap) {
  Anf out;
  for (auto ma : a.monomials)
    for (auto mb : b.monomials) out.toggle(ma | mb);
  if (out.monomials.size() > cap) throw Error("anf blowup");
  return out;
}

// Local ANF coefficients of a truth table (Moebius transform).
std::vector<std::uint64_t> table_anf_monomials(const TruthTable& t) {
  std::vector<std::uint8_t> f(t.entries());
  for (std::uint64_t i = 0; i < t.entries(); ++i) f[i] = t.get(i) ? 1 : 0;
  for (int p = 0; p < t.width; ++p) {
    for (std::uint64_t i = 0; i < t.entries(); ++i) {
      if (i & (1ull << p)) f[i] = f[i] ^ f[i ^ (1ull << p)];
    }
  }
  std::vector<std::uint64_t> monomials;
  for (std::uint64_t i = 0; i < t.entries(); ++i)
    if (f[i]) monomials.push_back(i);
  return monomials;
}

struct ConeAnalysis {
  Anf anf;
  std::vector<NetId> var_nets;          // variable index -> net
  std::unordered_map<NetId, int> vars;  // net -> variable index
  std::vector<bool> var_is_chain;
};

class ConeComposer {
 public:
  ConeComposer(const Netlist& n, const std::unordered_map<NetId, int>& chain_pos,
               const LfsrDetectOptions& opts)
      : n_(n), chain_pos_(chain_pos), opts_(opts) {}

  ConeAnalysis run(NetId root) {
    out_ = ConeAnalysis{};
    reach_memo_.clear();
    anf_memo_.clear();
    out_.anf = compose(root, opts_.max_tree_depth);
    return std::move(out_);
  }

 private:
  bool reaches_chain(NetId net, int depth) {
    if (chain_pos_.count(net)) return true;
    if (depth <= 0) return false;
    auto key = net;
    if (auto it = reach_memo_.find(key); it != reach_memo_.end())
      return it->second;
    reach_memo_[key] = false;  // cycle guard
    const NetConn& c = n_.conn(net);
    bool reach = false;
    if (c.driver_gates.size() == 1 && !c.driven_by_input_port) {
      const Gate* g = n_.find_gate(c.driver_gates.front());
      if (g && (g->kind == GateKind::Lut || g->kind == GateKind::Buf)) {
        for (NetId in : g->inputs) {
          if (reaches_chain(in, depth - 1)) {
            reach = true;
            break;
          }
        }
      }
    }
    reach_memo_[key] = reach;
    return reach;
  }

  int var_for(NetId net, bool is_chain) {
    auto it = out_.vars.find(net);
    if (it != out_.vars.end()) return it->second;
    int index = static_cast<int>(out_.var_nets.size());
    if (index >= 63) throw Error("cone has too many inputs");
    out_.vars.emplace(net, index);
    out_.var_nets.push_back(net);
    out_.var_is_chain.push_back(is_chain);
    return index;
  }

  Anf compose(NetId net, int depth) {
    if (chain_pos_.count(net)) return Anf::var(var_for(net, true));
    if (auto it = anf_memo_.find(net); it != anf_memo_.end()) return it->second;

    const NetConn& c = n_.conn(net);
    Anf result;
    bool as_free = false;
    if (c.driven_by_input_port || c.driver_gates.size() != 1) {
      as_free = true;
    } else {
      const Gate* g = n_.find_gate(c.driver_gates.front());
      if (!g) {
        as_free = true;
      } else if (g->kind == GateKind::Gnd) {
        result = Anf::constant(false);
      } else if (g->kind == GateKind::Vcc) {
        result = Anf::constant(true);
      } else if (g->kind == GateKind::Buf) {
        if (depth <= 0) throw Error("cone too deep");
        result = compose(g->inputs[0], depth);
      } else if (g->kind == GateKind::Lut && reaches_chain(net, depth)) {
        if (depth <= 0) throw Error("cone too deep");
        std::vector<Anf> ins;
        ins.reserve(g->inputs.size());
        for (NetId in : g->inputs) ins.push_back(compose(in, depth - 1));
        result = Anf{};
        for (std::uint64_t mono : table_anf_monomials(g->config)) {
          Anf term = Anf::constant(true);
          for (std::size_t p = 0; p < g->inputs.size(); ++p)
            if (mono & (1ull << p))
              term = anf_mul(term, ins[p], opts_.max_monomials);
          result = anf_xor(result, term, opts_.max_monomials);
        }
      } else {
        // FF of another chain, SRL, or logic that never reaches the chain:
        // treat the net as an opaque free input.
        as_free = true;
      }
    }
    if (as_free) result = Anf::var(var_for(net, false));
    anf_memo_.emplace(net, result);
    return result;
  }

  const Netlist& n_;
  const std::unordered_map<NetId, int>& chain_pos_;
  const LfsrDetectOptions& opts_;
  ConeAnalysis out_;
  std::unordered_map<NetId, bool> reach_memo_;
  std::unordered_map<NetId, Anf> anf_memo_;
};

struct LinearForm {
  std::vector<int> taps;  // chain positions, ascending
  bool complemented = false;
};

// Restricts the free variables to `assignment` and reports the linear form
// over chain variables, if the restriction is exactly linear.
std::optional<LinearForm> restrict_to_linear(
    const ConeAnalysis& cone, const std::unordered_map<NetId, int>& chain_pos,
    const std::vector<int>& free_vars, std::uint64_t assignment) {
  std::set<std::uint64_t> restricted;
  for (std::uint64_t mono : cone.anf.monomials) {
    std::uint64_t m = mono;
    bool alive = true;
    for (std::size_t k = 0; k < free_vars.size(); ++k) {
      std::uint64_t bit = 1ull << free_vars[k];
      if (m & bit) {
        if ((assignment >> k) & 1) {
          m &= ~bit;  // var fixed to 1 drops out of the product
        } else {
          alive = false;  // var fixed to 0 kills the monomial
          break;
        }
      }
    }
    if (!alive) continue;
    auto it = restricted.find(m);
    if (it == restricted.end())
      restricted.insert(m);
    else
      restricted.erase(it);
  }

  LinearForm form;
  for (std::uint64_t m : restricted) {
    int degree = std::popcount(m);
    if (degree == 0) {
      form.complemented = true;
    } else if (degree == 1) {
      int var = std::countr_zero(m);
      NetId net = cone.var_nets[var];
      auto it = chain_pos.find(net);
      if (it == chain_pos.end()) return std::nullopt;
      form.taps.push_back(it->second);
    } else {
      return std::nullopt;
    }
  }
  std::sort(form.taps.begin(), form.taps.end());
  return form;
}

}  // namespace

std::vector<LfsrDescriptor> detect_lfsrs(const Netlist& n,
                                         const LfsrDetectOptions& opts,
                                         std::vector<GateId>* near_misses) {
  std::vector<LfsrDescriptor> found;
  auto flag = [&](GateId head) {
    if (near_misses) near_misses->push_back(head);
  };
  for (const auto& chain : find_ff_chains(n)) {
    if (chain.size() < 2) continue;
    std::unordered_map<NetId, int> chain_pos;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const Gate* g = n.find_gate(chain[i]);
      chain_pos.emplace(g->output, static_cast<int>(i));
    }
    const Gate* head = n.find_gate(chain.front());

    ConeAnalysis cone;
    try {
      ConeComposer composer(n, chain_pos, opts);
      cone = composer.run(head->inputs[0]);
    } catch (const Error&) {
      flag(head->id);  // cone too deep or too wide for exact analysis
      continue;
    }

    std::vector<int> free_vars;
    bool touches_chain = false;
    for (std::size_t v = 0; v < cone.var_nets.size(); ++v) {
      if (cone.var_is_chain[v])
        touches_chain = true;
      else
        free_vars.push_back(static_cast<int>(v));
    }
    if (free_vars.size() > static_cast<std::size_t>(opts.max_free_inputs)) {
      flag(head->id);
      continue;
    }

    std::optional<LinearForm> first;
    bool consistent = true;
    for (std::uint64_t a = 0; a < (1ull << free_vars.size()); ++a) {
      auto form = restrict_to_linear(cone, chain_pos, free_vars, a);
      if (!form || form->taps.empty()) continue;
      if (!first) {
        first = form;
      } else if (form->taps != first->taps) {
        consistent = false;
        break;
      }
    }
    if (!first || !consistent) {
      // a plain shift register (no chain inputs at all) is not a near-miss
      if (touches_chain) flag(head->id);
      continue;
    }

    LfsrDescriptor desc;
    desc.taps = first->taps;
    desc.kind = first->complemented ? FeedbackKind::Xnor : FeedbackKind::Xor;
    int span = desc.taps.back() + 1;
    if (span > 63) {  // generators stop at 63 bits; so does recovery
      flag(head->id);
      continue;
    }
    desc.registers.assign(chain.begin(), chain.begin() + span);
    found.push_back(std::move(desc));
  }
  return found;
}

// ---------------------------------------------------------------------------
// Constant generator classification

namespace {

enum class ShapeOp { Literal, Or, Nor, And, Nand };

struct Shape {
  ShapeOp op = ShapeOp::Literal;
  std::set<int> covered;  // register positions
  std::vector<GateId> gates;
};

class ShapeComposer {
 public:
  ShapeComposer(const Netlist& n, const std::unordered_map<NetId, int>& targets,
                int max_depth)
      : n_(n), targets_(targets), max_depth_(max_depth) {}

  std::optional<Shape> shape_of(NetId net, int depth) {
    if (auto it = targets_.find(net); it != targets_.end()) {
      Shape s;
      s.op = ShapeOp::Literal;
      s.covered = {it->second};
      return s;
    }
    if (depth <= 0) return std::nullopt;
    const NetConn& c = n_.conn(net);
    if (c.driven_by_input_port || c.driver_gates.size() != 1)
      return std::nullopt;
    const Gate* g = n_.find_gate(c.driver_gates.front());
    if (!g) return std::nullopt;
    if (g->kind == GateKind::Buf) {
      auto inner = shape_of(g->inputs[0], depth - 1);
      if (inner) inner->gates.push_back(g->id);
      return inner;
    }
    if (g->kind != GateKind::Lut) return std::nullopt;

    int k = g->arity;
    bool plain_or = g->config == table_or(k);
    bool plain_nor = g->config.bits == (table_or(k).bits ^ g->config.mask());
    bool plain_and = g->config == table_and(k);
    bool plain_nand = g->config.bits == (table_and(k).bits ^ g->config.mask());
    if (k == 1) {
      // identity folds into the child; inversion flips its polarity
      auto inner = shape_of(g->inputs[0], depth - 1);
      if (!inner) return std::nullopt;
      inner->gates.push_back(g->id);
      if (g->config == table_projection(1, 0)) return inner;
      if (g->config == table_not()) {
        switch (inner->op) {
          case ShapeOp::Or: inner->op = ShapeOp::Nor; return inner;
          case ShapeOp::Nor: inner->op = ShapeOp::Or; return inner;
          case ShapeOp::And: inner->op = ShapeOp::Nand; return inner;
          case ShapeOp::Nand: inner->op = ShapeOp::And; return inner;
          case ShapeOp::Literal: return std::nullopt;
        }
      }
      return std::nullopt;
    }
    if (!(plain_or || plain_nor || plain_and || plain_nand))
      return std::nullopt;

    Shape out;
    out.gates.push_back(g->id);
    ShapeOp inner_ok;
    if (plain_or || plain_nor) {
      out.op = plain_or ? ShapeOp::Or : ShapeOp::Nor;
      inner_ok = ShapeOp::Or;
    } else {
      out.op = plain_and ? ShapeOp::And : ShapeOp::Nand;
      inner_ok = ShapeOp::And;
    }
    for (NetId in : g->inputs) {
      auto child = shape_of(in, depth - 1);
      if (!child) return std::nullopt;
      if (child->op != ShapeOp::Literal && child->op != inner_ok)
        return std::nullopt;
      out.covered.insert(child->covered.begin(), child->covered.end());
      out.gates.insert(out.gates.end(), child->gates.begin(),
                       child->gates.end());
    }
    return out;
  }

 private:
  const Netlist& n_;
  const std::unordered_map<NetId, int>& targets_;
  int max_depth_;
};

}  // namespace

std::optional<ConstantSignal> classify_constant_generator(
    const Netlist& n, const LfsrDescriptor& lfsr,
    const LfsrDetectOptions& opts) {
  std::unordered_map<NetId, int> targets;
  std::vector<NetId> reg_nets = lfsr.register_nets(n);
  for (std::size_t i = 0; i < reg_nets.size(); ++i)
    targets.emplace(reg_nets[i], static_cast<int>(i));

  std::uint64_t init = lfsr.init_value(n);
  std::uint64_t all_ones = lfsr.length() >= 64
                               ? ~0ull
                               : (1ull << lfsr.length()) - 1;
  // XOR feedback never leaves the nonzero orbit; XNOR never reaches
  // all-ones. A degenerate init makes the generator non-constant.
  if (lfsr.kind == FeedbackKind::Xor && init == 0) return std::nullopt;
  if (lfsr.kind == FeedbackKind::Xnor && init == all_ones) return std::nullopt;

  ShapeComposer composer(n, targets, opts.max_tree_depth);
  for (const Gate& g : n.gates) {
    if (g.kind != GateKind::Lut) continue;
    auto shape = composer.shape_of(g.output, opts.max_tree_depth);
    if (!shape) continue;
    if (shape->covered.size() != static_cast<std::size_t>(lfsr.length()))
      continue;
    std::optional<bool> value;
    if (lfsr.kind == FeedbackKind::Xor) {
      if (shape->op == ShapeOp::Or) value = true;
      if (shape->op == ShapeOp::Nor) value = false;
    } else {
      if (shape->op == ShapeOp::And) value = false;
      if (shape->op == ShapeOp::Nand) value = true;
    }
    if (!value) continue;
    ConstantSignal sig;
    sig.net = g.output;
    sig.value = *value;
    std::sort(shape->gates.begin(), shape->gates.end());
    shape->gates.erase(std::unique(shape->gates.begin(), shape->gates.end()),
                       shape->gates.end());
    sig.witness_gates = shape->gates;
    return sig;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Opaque predicate generation

namespace {

// Reduces `nets` with OR LUTs; the root gate applies `root_table_of(k)`.
NetId emit_reduce_tree(Netlist& host, std::vector<NetId> nets, bool root_invert,
                       bool use_and, const std::string& prefix,
                       std::vector<GateId>& gates) {
  int level = 0;
  while (nets.size() > 6) {
    std::vector<NetId> next;
    for (std::size_t at = 0; at < nets.size(); at += 6) {
      std::size_t take = std::min<std::size_t>(6, nets.size() - at);
      std::vector<NetId> group(nets.begin() + at, nets.begin() + at + take);
      if (group.size() == 1) {
        next.push_back(group[0]);
        continue;
      }
      NetId out = host.fresh_net(prefix + "red" + std::to_string(level) + "_");
      int k = static_cast<int>(group.size());
      TruthTable t = use_and ? table_and(k) : table_or(k);
      gates.push_back(host.add_lut(t, group, out));
      next.push_back(out);
    }
    nets = std::move(next);
    ++level;
  }
  NetId out = host.fresh_net(prefix + "const");
  int k = static_cast<int>(nets.size());
  TruthTable t = use_and ? table_and(k) : table_or(k);
  if (root_invert) t.bits ^= t.mask();
  gates.push_back(host.add_lut(t, nets, out));
  return out;
}

// Parity reduction; the root applies the inversion for XNOR feedback.
NetId emit_parity_tree(Netlist& host, std::vector<NetId> nets, bool invert_root,
                       const std::string& prefix, std::vector<GateId>& gates) {
  int level = 0;
  while (nets.size() > 6) {
    std::vector<NetId> next;
    for (std::size_t at = 0; at < nets.size(); at += 6) {
      std::size_t take = std::min<std::size_t>(6, nets.size() - at);
      std::vector<NetId> group(nets.begin() + at, nets.begin() + at + take);
      if (group.size() == 1) {
        next.push_back(group[0]);
        continue;
      }
      NetId out = host.fresh_net(prefix + "fbt" + std::to_string(level) + "_");
      gates.push_back(
          host.add_lut(table_parity(static_cast<int>(group.size())), group, out));
      next.push_back(out);
    }
    nets = std::move(next);
    ++level;
  }
  NetId out = host.fresh_net(prefix + "fb");
  gates.push_back(host.add_lut(
      table_parity(static_cast<int>(nets.size()), invert_root), nets, out));
  return out;
}

// First free net called `base`, or `base_2`, `base_3`, ... on collision.
NetId unique_net(Netlist& host, const std::string& base) {
  if (!host.find_net(base)) return host.intern_net(base);
  for (int k = 2;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!host.find_net(candidate)) return host.intern_net(candidate);
  }
}

}  // namespace

LfsrChain emit_lfsr_chain(Netlist& host, int n, const std::vector<int>& taps,
                          FeedbackKind kind, std::uint64_t init,
                          const std::string& prefix) {
  if (n < 2 || n > 63) throw Error("lfsr length outside 2..63");
  if (init >= (1ull << n)) throw Error("init wider than the register chain");
  if (host.clock.empty()) throw Error("host netlist has no clock");
  std::vector<int> sorted = taps;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != taps.size()) throw Error("duplicate tap positions");
  if (sorted.empty() || sorted.front() < 0 || sorted.back() != n - 1)
    throw Error("taps must lie in 0..n-1 and include n-1");
  if (sorted.size() < 2 && n > 1)
    throw Error("single-tap feedback degenerates to a shift ring");

  LfsrChain chain;
  chain.q.resize(n);
  for (int i = 0; i < n; ++i)
    chain.q[i] = unique_net(host, prefix + "q" + std::to_string(i));

  std::vector<NetId> tap_nets;
  for (int t : sorted) tap_nets.push_back(chain.q[t]);
  NetId fb = emit_parity_tree(host, tap_nets, kind == FeedbackKind::Xnor,
                              prefix, chain.gates);

  for (int i = 0; i < n; ++i) {
    GateId ff = host.add_ff(i == 0 ? fb : chain.q[i - 1], chain.q[i], kNoNet,
                            ((init >> i) & 1) != 0);
    chain.registers.push_back(ff);
    chain.gates.push_back(ff);
  }
  return chain;
}

OpaquePredicate emit_opaque_predicate(Netlist& host, int n,
                                      const std::vector<int>& taps,
                                      ReduceKind kind, std::uint64_t init,
                                      const std::string& prefix) {
  if (init == 0) throw Error("opaque predicate needs a nonzero init");
  LfsrChain chain =
      emit_lfsr_chain(host, n, taps, FeedbackKind::Xor, init, prefix);

  OpaquePredicate pred;
  pred.registers = chain.registers;
  pred.gates = chain.gates;
  pred.output = emit_reduce_tree(host, chain.q, kind == ReduceKind::Nor,
                                 /*use_and=*/false, prefix, pred.gates);
  return pred;
}

}  // namespace gatehound
