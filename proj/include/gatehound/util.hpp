#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gatehound {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Uppercase hex, fixed digit count.
std::string to_hex(std::uint64_t value, int digits);

// Parses up to 16 hex digits; throws Error on junk or overflow.
std::uint64_t parse_hex(const std::string& text);

std::string bits_to_string(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> bits_from_string(const std::string& text);

// Worker count: min(GATEHOUND_THREADS, hardware_concurrency), at least 1.
int thread_budget();

// Runs fn(begin, end) over chunks of [0, n), possibly on several threads.
// fn must be safe to run concurrently on disjoint ranges.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace gatehound
