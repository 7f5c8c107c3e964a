#include "gatehound/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace gatehound {

std::string to_hex(std::uint64_t value, int digits) {
  static const char* kDigits = "0123456789ABCDEF";
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::uint64_t parse_hex(const std::string& text) {
  if (text.empty() || text.size() > 16) throw Error("bad hex literal '" + text + "'");
  std::uint64_t value = 0;
  for (char c : text) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else throw Error("bad hex literal '" + text + "'");
    value = (value << 4) | static_cast<std::uint64_t>(digit);
  }
  return value;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

std::vector<std::uint8_t> bits_from_string(const std::string& text) {
  std::vector<std::uint8_t> out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0') out.push_back(0);
    else if (c == '1') out.push_back(1);
    else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    else throw Error(std::string("bad bit character '") + c + "'");
  }
  return out;
}

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("GATEHOUND_THREADS")) {
    int wanted = std::atoi(env);
    if (wanted >= 1) return std::min(wanted, hw);
  }
  return hw;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  std::size_t workers = static_cast<std::size_t>(thread_budget());
  if (workers <= 1 || n < 64) {
    fn(0, n);
    return;
  }
  workers = std::min(workers, n);
  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gatehound
