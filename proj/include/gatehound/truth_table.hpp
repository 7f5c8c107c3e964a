#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace gatehound {

// Truth table of a k-input, 1-output logic function. Bit i of `bits` is the
// output for the input assignment encoded by i, with pin I0 as the least
// significant bit of i. Width 0 (a bare constant) shows up as the result of
// cofactoring a LUT1 and is legal here even though gates never carry it.
struct TruthTable {
  int width = 0;
  std::uint64_t bits = 0;

  static constexpr int kMaxWidth = 6;

  TruthTable() = default;
  TruthTable(int width, std::uint64_t bits);

  std::uint64_t entries() const { return 1ull << width; }
  std::uint64_t mask() const {
    return width >= 6 ? ~0ull : (1ull << entries()) - 1;
  }
  bool get(std::uint64_t index) const;
  void put(std::uint64_t index, bool value);

  bool is_constant() const;
  // Returns the pin this table is an exact projection of, or -1.
  int projection_pin() const;
  // Pins the function actually depends on.
  std::vector<int> support() const;
  bool depends_on(int pin) const;

  // Big-endian hex, exactly ceil(2^width / 4) digits.
  std::string to_hex() const;
  static TruthTable from_hex(int width, const std::string& hex);

  bool operator==(const TruthTable&) const = default;
};

// Common tables.
TruthTable table_constant(int width, bool value);
TruthTable table_projection(int width, int pin);
TruthTable table_and(int width, std::uint64_t inverted_pins = 0);
TruthTable table_or(int width, std::uint64_t inverted_pins = 0);
TruthTable table_parity(int width, bool invert = false);
TruthTable table_not();
TruthTable table_majority3();
// f = sel ? hi : lo with pins (lo, hi, sel).
TruthTable table_mux2();

bool evaluate(const TruthTable& t, std::uint64_t assignment);

// One DNF clause: a fully specified input assignment whose output is 1.
struct Minterm {
  int width = 0;
  std::uint64_t index = 0;
  bool requires_one(int pin) const { return (index >> pin) & 1; }
};

// Full minterm expansion, no minimization; one clause per set bit.
std::vector<Minterm> to_dnf(const TruthTable& t);

// Shannon cofactor: fixes `pin` to `value`, remaining pins keep their
// relative order.
TruthTable cofactor(const TruthTable& t, int pin, bool value);

// Repeated cofactoring over `pins` (removed left to right). Returns the 2^m
// leaves ordered so that leaf j assigns the first-removed pin the most
// significant bit of j.
std::vector<TruthTable> decompose(const TruthTable& t,
                                  const std::vector<int>& pins);

// Exact inverse of decompose under the same leaf ordering.
TruthTable merge_subconfigs(const std::vector<TruthTable>& leaves,
                            const std::vector<int>& removal_order);

// ---------------------------------------------------------------------------
// SBOX pattern generation

using Sbox4 = std::array<std::uint8_t, 16>;
using Perm4 = std::array<std::uint8_t, 4>;

// Moves bit j of `value` to bit perm[j] of the result.
std::uint8_t permute_bits4(std::uint8_t value, const Perm4& perm);

// All 24 permutations of {0,1,2,3} in lexicographic order.
const std::vector<Perm4>& all_perm4();

// T[i] = bit `out_bit` of sbox[perm(i)].
std::uint16_t sbox_output_table(const Sbox4& sbox, const Perm4& perm,
                                int out_bit);

struct PatternAnnotation {
  Perm4 perm;
  int out_bit = 0;
};

// The distinct 16-bit tables generated by an SBOX over every input-bit
// permutation and output bit, with every (perm, out_bit) that produces each
// table. Entry order is first-seen over (perm asc, out_bit asc).
struct PatternSet {
  struct Entry {
    std::uint16_t table = 0;
    std::vector<PatternAnnotation> annotations;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::uint16_t, std::size_t> by_table;

  bool contains(std::uint16_t table) const {
    return by_table.count(table) != 0;
  }
  const Entry* find(std::uint16_t table) const;
  std::size_t table_count() const { return entries.size(); }
  std::size_t annotation_count() const;
};

PatternSet generate_sbox_patterns(const Sbox4& sbox);

}  // namespace gatehound
