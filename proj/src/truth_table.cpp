#include "gatehound/truth_table.hpp"

#include <algorithm>
#include <bit>

#include "gatehound/util.hpp"

namespace gatehound {

TruthTable::TruthTable(int width_, std::uint64_t bits_) {
  if (width_ < 0 || width_ > kMaxWidth)
    throw Error("truth table width " + std::to_string(width_) +
                " out of range 0..6");
  width = width_;
  bits = bits_;
  if (width < 6 && bits >= (1ull << (1ull << width)))
    throw Error("truth table value does not fit width " +
                std::to_string(width_));
}

bool TruthTable::get(std::uint64_t index) const {
  if (index >= entries()) throw Error("truth table index out of range");
  return (bits >> index) & 1;
}

void TruthTable::put(std::uint64_t index, bool value) {
  if (index >= entries()) throw Error("truth table index out of range");
  if (value)
    bits |= 1ull << index;
  else
    bits &= ~(1ull << index);
}

bool TruthTable::is_constant() const {
  return bits == 0 || bits == mask();
}

int TruthTable::projection_pin() const {
  for (int p = 0; p < width; ++p) {
    if (*this == table_projection(width, p)) return p;
  }
  return -1;
}

std::vector<int> TruthTable::support() const {
  std::vector<int> pins;
  for (int p = 0; p < width; ++p) {
    if (depends_on(p)) pins.push_back(p);
  }
  return pins;
}

bool TruthTable::depends_on(int pin) const {
  if (pin < 0 || pin >= width) throw Error("pin out of range");
  return cofactor(*this, pin, false) != cofactor(*this, pin, true);
}

std::string TruthTable::to_hex() const {
  int digits = static_cast<int>((entries() + 3) / 4);
  return gatehound::to_hex(bits, digits);
}

TruthTable TruthTable::from_hex(int width, const std::string& hex) {
  if (width < 0 || width > kMaxWidth)
    throw Error("truth table width out of range 0..6");
  std::uint64_t wanted = (1ull << width);
  std::uint64_t digits = (wanted + 3) / 4;
  if (hex.size() != digits)
    throw Error("config width mismatch: " + std::to_string(1ull << width) +
                " bits require exactly " + std::to_string(digits) +
                " hex digits, got " + std::to_string(hex.size()));
  std::uint64_t value = parse_hex(hex);
  if (width < 6 && value >= (1ull << wanted))
    throw Error("config width mismatch: value exceeds " +
                std::to_string(wanted) + " bits");
  return TruthTable(width, value);
}

TruthTable table_constant(int width, bool value) {
  TruthTable t(width, 0);
  if (value) t.bits = t.mask();
  return t;
}

TruthTable table_projection(int width, int pin) {
  TruthTable t(width, 0);
  for (std::uint64_t i = 0; i < t.entries(); ++i)
    if ((i >> pin) & 1) t.bits |= 1ull << i;
  return t;
}

TruthTable table_and(int width, std::uint64_t inverted_pins) {
  TruthTable t(width, 0);
  std::uint64_t want = (~inverted_pins) & ((1ull << width) - 1);
  t.bits = 1ull << want;
  return t;
}

TruthTable table_or(int width, std::uint64_t inverted_pins) {
  TruthTable t = table_constant(width, true);
  std::uint64_t zero_at = inverted_pins & ((1ull << width) - 1);
  t.bits &= ~(1ull << zero_at);
  return t;
}

TruthTable table_parity(int width, bool invert) {
  TruthTable t(width, 0);
  for (std::uint64_t i = 0; i < t.entries(); ++i) {
    bool v = (std::popcount(i) & 1) != 0;
    if (v != invert) t.bits |= 1ull << i;
  }
  return t;
}

TruthTable table_not() { return TruthTable(1, 0b01); }

TruthTable table_majority3() {
  TruthTable t(3, 0);
  for (std::uint64_t i = 0; i < 8; ++i)
    if (std::popcount(i) >= 2) t.bits |= 1ull << i;
  return t;
}

TruthTable table_mux2() {
  TruthTable t(3, 0);
  for (std::uint64_t i = 0; i < 8; ++i) {
    bool lo = i & 1, hi = (i >> 1) & 1, sel = (i >> 2) & 1;
    if (sel ? hi : lo) t.bits |= 1ull << i;
  }
  return t;
}

bool evaluate(const TruthTable& t, std::uint64_t assignment) {
  if (assignment >= t.entries())
    throw Error("assignment width mismatch for truth table of width " +
                std::to_string(t.width));
  return t.get(assignment);
}

std::vector<Minterm> to_dnf(const TruthTable& t) {
  std::vector<Minterm> clauses;
  for (std::uint64_t i = 0; i < t.entries(); ++i) {
    if (t.get(i)) clauses.push_back(Minterm{t.width, i});
  }
  return clauses;
}

TruthTable cofactor(const TruthTable& t, int pin, bool value) {
  if (pin < 0 || pin >= t.width) throw Error("cofactor pin out of range");
  TruthTable out(t.width - 1, 0);
  std::uint64_t at = 0;
  for (std::uint64_t i = 0; i < t.entries(); ++i) {
    if (((i >> pin) & 1) != static_cast<std::uint64_t>(value)) continue;
    if (t.get(i)) out.bits |= 1ull << at;
    ++at;
  }
  return out;
}

namespace {

// Pin indices after removing `removed` from a wider table.
std::vector<int> shift_pins(const std::vector<int>& pins, int removed) {
  std::vector<int> out;
  out.reserve(pins.size());
  for (int p : pins) out.push_back(p > removed ? p - 1 : p);
  return out;
}

void check_pins(const TruthTable& t, const std::vector<int>& pins) {
  std::uint64_t seen = 0;
  for (int p : pins) {
    if (p < 0 || p >= t.width) throw Error("decompose pin out of range");
    if ((seen >> p) & 1) throw Error("decompose pin listed twice");
    seen |= 1ull << p;
  }
}

}  // namespace

std::vector<TruthTable> decompose(const TruthTable& t,
                                  const std::vector<int>& pins) {
  check_pins(t, pins);
  if (pins.empty()) return {t};
  int pin = pins.front();
  std::vector<int> rest(pins.begin() + 1, pins.end());
  rest = shift_pins(rest, pin);
  std::vector<TruthTable> leaves = decompose(cofactor(t, pin, false), rest);
  std::vector<TruthTable> hi = decompose(cofactor(t, pin, true), rest);
  leaves.insert(leaves.end(), hi.begin(), hi.end());
  return leaves;
}

TruthTable merge_subconfigs(const std::vector<TruthTable>& leaves,
                            const std::vector<int>& removal_order) {
  if (leaves.empty()) throw Error("merge needs at least one sub-configuration");
  std::size_t expect = 1ull << removal_order.size();
  if (leaves.size() != expect)
    throw Error("merge cardinality mismatch: " + std::to_string(leaves.size()) +
                " leaves for " + std::to_string(removal_order.size()) +
                " removed pins");
  for (const auto& l : leaves)
    if (l.width != leaves.front().width)
      throw Error("merge width mismatch among sub-configurations");
  if (removal_order.empty()) return leaves.front();

  int pin = removal_order.front();
  std::vector<int> rest(removal_order.begin() + 1, removal_order.end());
  rest = shift_pins(rest, pin);
  std::size_t half = leaves.size() / 2;
  TruthTable lo = merge_subconfigs(
      std::vector<TruthTable>(leaves.begin(), leaves.begin() + half), rest);
  TruthTable hi = merge_subconfigs(
      std::vector<TruthTable>(leaves.begin() + half, leaves.end()), rest);
  if (pin < 0 || pin > lo.width) throw Error("merge pin out of range");

  TruthTable out(lo.width + 1, 0);
  std::uint64_t lo_at = 0, hi_at = 0;
  for (std::uint64_t i = 0; i < out.entries(); ++i) {
    bool v = ((i >> pin) & 1) ? hi.get(hi_at++) : lo.get(lo_at++);
    if (v) out.bits |= 1ull << i;
  }
  return out;
}

std::uint8_t permute_bits4(std::uint8_t value, const Perm4& perm) {
  std::uint8_t out = 0;
  for (int j = 0; j < 4; ++j) {
    if ((value >> j) & 1) out |= static_cast<std::uint8_t>(1u << perm[j]);
  }
  return out;
}

const std::vector<Perm4>& all_perm4() {
  static const std::vector<Perm4> perms = [] {
    std::vector<Perm4> out;
    Perm4 p = {0, 1, 2, 3};
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

std::uint16_t sbox_output_table(const Sbox4& sbox, const Perm4& perm,
                                int out_bit) {
  std::uint16_t table = 0;
  for (std::uint16_t i = 0; i < 16; ++i) {
    std::uint8_t mapped = sbox[permute_bits4(static_cast<std::uint8_t>(i), perm)];
    if ((mapped >> out_bit) & 1) table |= static_cast<std::uint16_t>(1u << i);
  }
  return table;
}

const PatternSet::Entry* PatternSet::find(std::uint16_t table) const {
  auto it = by_table.find(table);
  return it == by_table.end() ? nullptr : &entries[it->second];
}

std::size_t PatternSet::annotation_count() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.annotations.size();
  return n;
}

PatternSet generate_sbox_patterns(const Sbox4& sbox) {
  for (auto v : sbox)
    if (v >= 16) throw Error("malformed sbox: entry out of 4-bit range");
  PatternSet set;
  for (const Perm4& perm : all_perm4()) {
    for (int b = 0; b < 4; ++b) {
      std::uint16_t table = sbox_output_table(sbox, perm, b);
      auto it = set.by_table.find(table);
      if (it == set.by_table.end()) {
        set.by_table.emplace(table, set.entries.size());
        set.entries.push_back({table, {PatternAnnotation{perm, b}}});
      } else {
        set.entries[it->second].annotations.push_back(
            PatternAnnotation{perm, b});
      }
    }
  }
  return set;
}

}  // namespace gatehound
