#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gatehound/truth_table.hpp"

namespace gatehound {

// ---------------------------------------------------------------------------
// PRESENT-80 software oracle, parameterized on the SBOX so a weakened
// variant runs through the same code path.

extern const Sbox4 kPresentSbox;
extern const Sbox4 kIdentitySbox;

Sbox4 invert_sbox(const Sbox4& sbox);  // throws if not a permutation

// 80-bit key, big-endian bytes: key[0] holds bits 79..72.
using Key80 = std::array<std::uint8_t, 10>;

bool key80_bit(const Key80& key, int bit);       // bit 0 = LSB
Key80 key80_from_words(std::uint64_t hi64, std::uint16_t lo16);

// Destination of state bit i under the permutation layer.
int present_p_layer(int bit);

std::uint64_t present_encrypt(const Key80& key, std::uint64_t plaintext,
                              const Sbox4& sbox = kPresentSbox);
std::uint64_t present_decrypt(const Key80& key, std::uint64_t ciphertext,
                              const Sbox4& sbox = kPresentSbox);

// ---------------------------------------------------------------------------
// A5/1 software oracle.
//
// Register bits are numbered by age: position 0 is the newest bit (the one
// the feedback writes), position n-1 the oldest (the output tap). The
// toolkit profile follows the three-register architecture with lengths
// 19/22/21 and clocking taps 8/10/10; the GSM profile (19/22/23) exists to
// cross-check the machinery against the published keystream vectors.

struct A51Profile {
  std::array<int, 3> lengths;
  std::array<std::vector<int>, 3> feedback_taps;
  std::array<int, 3> clock_taps;
};

const A51Profile& a51_toolkit_profile();
const A51Profile& a51_gsm_profile();

class A51Core {
 public:
  explicit A51Core(const A51Profile& profile = a51_toolkit_profile());

  // Key (64 bits, LSB first) then frame (22 bits, LSB first) with
  // all-register clocking, then 100 majority-clocked warm-up cycles.
  void load(std::uint64_t key, std::uint32_t frame);

  void clock_all(int mix_bit);  // load-phase clock, mixes bit into feedback
  void clock();                 // majority-clocked step
  int output_bit() const;       // XOR of the three oldest bits

  // Clock-then-read keystream bit.
  int next_bit();
  std::vector<std::uint8_t> keystream(std::size_t n);

  const std::array<std::uint32_t, 3>& registers() const { return regs_; }
  void set_registers(const std::array<std::uint32_t, 3>& regs);
  const A51Profile& profile() const { return *profile_; }

 private:
  int feedback(int r) const;
  const A51Profile* profile_;
  std::array<std::uint32_t, 3> regs_{};
};

// Keystream of n bits for the toolkit profile.
std::vector<std::uint8_t> a51_keystream(std::uint64_t key, std::uint32_t frame,
                                        std::size_t n);

int majority3(int a, int b, int c);

}  // namespace gatehound
