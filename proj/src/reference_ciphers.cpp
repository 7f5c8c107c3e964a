#include "gatehound/reference_ciphers.hpp"

#include "gatehound/util.hpp"

namespace gatehound {

const Sbox4 kPresentSbox = {0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD,
                            0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2};

const Sbox4 kIdentitySbox = {0, 1, 2,  3,  4,  5,  6,  7,
                             8, 9, 10, 11, 12, 13, 14, 15};

Sbox4 invert_sbox(const Sbox4& sbox) {
  Sbox4 inv{};
  std::array<bool, 16> seen{};
  for (int i = 0; i < 16; ++i) {
    std::uint8_t v = sbox[i];
    if (v >= 16 || seen[v]) throw Error("sbox is not a permutation");
    seen[v] = true;
    inv[v] = static_cast<std::uint8_t>(i);
  }
  return inv;
}

bool key80_bit(const Key80& key, int bit) {
  if (bit < 0 || bit >= 80) throw Error("key bit out of range");
  return (key[9 - bit / 8] >> (bit % 8)) & 1;
}

Key80 key80_from_words(std::uint64_t hi64, std::uint16_t lo16) {
  Key80 key{};
  for (int i = 0; i < 8; ++i)
    key[i] = static_cast<std::uint8_t>(hi64 >> (8 * (7 - i)));
  key[8] = static_cast<std::uint8_t>(lo16 >> 8);
  key[9] = static_cast<std::uint8_t>(lo16 & 0xff);
  return key;
}

int present_p_layer(int bit) {
  if (bit < 0 || bit >= 64) throw Error("state bit out of range");
  return bit == 63 ? 63 : (16 * bit) % 63;
}

namespace {

struct KeyBits {
  // bit i of the 80-bit register, i = 0 is the LSB
  std::array<std::uint8_t, 80> b{};
};

KeyBits unpack(const Key80& key) {
  KeyBits k;
  for (int i = 0; i < 80; ++i) k.b[i] = key80_bit(key, i) ? 1 : 0;
  return k;
}

std::uint64_t round_key(const KeyBits& k) {
  std::uint64_t rk = 0;
  for (int j = 0; j < 64; ++j)
    rk |= static_cast<std::uint64_t>(k.b[16 + j]) << j;
  return rk;
}

// Rotate left 61, sbox on bits 79..76, xor round counter into bits 19..15.
KeyBits schedule_step(const KeyBits& k, int round, const Sbox4& sbox) {
  KeyBits next;
  for (int i = 0; i < 80; ++i) next.b[i] = k.b[(i + 19) % 80];
  int nib = next.b[76] | (next.b[77] << 1) | (next.b[78] << 2) |
            (next.b[79] << 3);
  int sub = sbox[nib];
  for (int t = 0; t < 4; ++t)
    next.b[76 + t] = static_cast<std::uint8_t>((sub >> t) & 1);
  for (int t = 0; t < 5; ++t)
    next.b[15 + t] = static_cast<std::uint8_t>(next.b[15 + t] ^
                                               ((round >> t) & 1));
  return next;
}

std::uint64_t sbox_layer(std::uint64_t state, const Sbox4& sbox) {
  std::uint64_t out = 0;
  for (int nib = 0; nib < 16; ++nib) {
    std::uint64_t v = (state >> (4 * nib)) & 0xf;
    out |= static_cast<std::uint64_t>(sbox[v]) << (4 * nib);
  }
  return out;
}

std::uint64_t p_layer(std::uint64_t state) {
  std::uint64_t out = 0;
  for (int i = 0; i < 64; ++i)
    if ((state >> i) & 1) out |= 1ull << present_p_layer(i);
  return out;
}

std::uint64_t p_layer_inv(std::uint64_t state) {
  std::uint64_t out = 0;
  for (int i = 0; i < 64; ++i)
    if ((state >> present_p_layer(i)) & 1) out |= 1ull << i;
  return out;
}

}  // namespace

std::uint64_t present_encrypt(const Key80& key, std::uint64_t plaintext,
                              const Sbox4& sbox) {
  KeyBits k = unpack(key);
  std::uint64_t state = plaintext;
  for (int round = 1; round <= 31; ++round) {
    state ^= round_key(k);
    state = sbox_layer(state, sbox);
    state = p_layer(state);
    k = schedule_step(k, round, sbox);
  }
  return state ^ round_key(k);
}

std::uint64_t present_decrypt(const Key80& key, std::uint64_t ciphertext,
                              const Sbox4& sbox) {
  Sbox4 inv = invert_sbox(sbox);
  std::array<std::uint64_t, 32> rks;
  KeyBits k = unpack(key);
  for (int round = 1; round <= 31; ++round) {
    rks[round - 1] = round_key(k);
    k = schedule_step(k, round, sbox);
  }
  rks[31] = round_key(k);

  std::uint64_t state = ciphertext ^ rks[31];
  for (int round = 31; round >= 1; --round) {
    state = p_layer_inv(state);
    state = sbox_layer(state, inv);
    state ^= rks[round - 1];
  }
  return state;
}

// ---------------------------------------------------------------------------

const A51Profile& a51_toolkit_profile() {
  static const A51Profile profile = {
      {19, 22, 21},
      {{{13, 16, 17, 18}, {20, 21}, {18, 20}}},
      {8, 10, 10}};
  return profile;
}

const A51Profile& a51_gsm_profile() {
  static const A51Profile profile = {
      {19, 22, 23},
      {{{13, 16, 17, 18}, {20, 21}, {7, 20, 21, 22}}},
      {8, 10, 10}};
  return profile;
}

int majority3(int a, int b, int c) { return (a + b + c) >= 2 ? 1 : 0; }

A51Core::A51Core(const A51Profile& profile) : profile_(&profile) {}

int A51Core::feedback(int r) const {
  int fb = 0;
  for (int tap : profile_->feedback_taps[r]) fb ^= (regs_[r] >> tap) & 1;
  return fb;
}

void A51Core::clock_all(int mix_bit) {
  std::array<std::uint32_t, 3> next = regs_;
  for (int r = 0; r < 3; ++r) {
    std::uint32_t mask = (1u << profile_->lengths[r]) - 1;
    next[r] = ((regs_[r] << 1) & mask) |
              static_cast<std::uint32_t>(feedback(r) ^ (mix_bit & 1));
  }
  regs_ = next;
}

void A51Core::clock() {
  int c0 = (regs_[0] >> profile_->clock_taps[0]) & 1;
  int c1 = (regs_[1] >> profile_->clock_taps[1]) & 1;
  int c2 = (regs_[2] >> profile_->clock_taps[2]) & 1;
  int maj = majority3(c0, c1, c2);
  std::array<int, 3> agree = {c0 == maj, c1 == maj, c2 == maj};
  std::array<std::uint32_t, 3> next = regs_;
  for (int r = 0; r < 3; ++r) {
    if (!agree[r]) continue;
    std::uint32_t mask = (1u << profile_->lengths[r]) - 1;
    next[r] = ((regs_[r] << 1) & mask) | static_cast<std::uint32_t>(feedback(r));
  }
  regs_ = next;
}

int A51Core::output_bit() const {
  int out = 0;
  for (int r = 0; r < 3; ++r)
    out ^= (regs_[r] >> (profile_->lengths[r] - 1)) & 1;
  return out;
}

int A51Core::next_bit() {
  clock();
  return output_bit();
}

void A51Core::load(std::uint64_t key, std::uint32_t frame) {
  regs_ = {0, 0, 0};
  for (int i = 0; i < 64; ++i) clock_all(static_cast<int>((key >> i) & 1));
  for (int i = 0; i < 22; ++i) clock_all(static_cast<int>((frame >> i) & 1));
  for (int i = 0; i < 100; ++i) clock();
}

std::vector<std::uint8_t> A51Core::keystream(std::size_t n) {
  std::vector<std::uint8_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(static_cast<std::uint8_t>(next_bit()));
  return out;
}

void A51Core::set_registers(const std::array<std::uint32_t, 3>& regs) {
  for (int r = 0; r < 3; ++r) {
    std::uint32_t mask = (1u << profile_->lengths[r]) - 1;
    if (regs[r] & ~mask) throw Error("register value exceeds profile length");
  }
  regs_ = regs;
}

std::vector<std::uint8_t> a51_keystream(std::uint64_t key, std::uint32_t frame,
                                        std::size_t n) {
  A51Core core;
  core.load(key, frame);
  return core.keystream(n);
}

}  // namespace gatehound
