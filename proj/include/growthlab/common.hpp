#ifndef GROWTHLAB_COMMON_HPP
#define GROWTHLAB_COMMON_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace growthlab {

inline constexpr const char* kVersion = "0.1.0";

// Canonical element codes are base-p digit strings packed into one integer.
// 128 bits cover the supported caps (p <= 2^21 for 2x2, p <= 16381 for 3x3).
using Code = unsigned __int128;

std::string code_to_string(Code c);
Code code_from_string(const std::string& s);

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CodeHash {
  std::size_t operator()(Code c) const {
    auto lo = static_cast<std::uint64_t>(c);
    auto hi = static_cast<std::uint64_t>(c >> 64);
    return splitmix64(lo ^ splitmix64(hi));
  }
};

// Open-addressing set for codes. Set products insert hundreds of millions of
// candidates, so this is the hot path; std::unordered_set is too slow there.
class CodeHashSet {
 public:
  explicit CodeHashSet(std::size_t expected = 16) { rehash_for(expected); }

  bool insert(Code c) {
    if (size_ * 8 >= cap_ * 7) rehash_for(cap_);
    std::size_t mask = cap_ - 1;
    std::size_t i = CodeHash{}(c)&mask;
    while (used_[i]) {
      if (slots_[i] == c) return false;
      i = (i + 1) & mask;
    }
    used_[i] = 1;
    slots_[i] = c;
    ++size_;
    return true;
  }

  bool contains(Code c) const {
    std::size_t mask = cap_ - 1;
    std::size_t i = CodeHash{}(c)&mask;
    while (used_[i]) {
      if (slots_[i] == c) return true;
      i = (i + 1) & mask;
    }
    return false;
  }

  std::size_t size() const { return size_; }

  // Sorted snapshot; canonical order for all deterministic outputs.
  std::vector<Code> sorted() const;

  void reserve(std::size_t expected) { rehash_for(expected); }

 private:
  void rehash_for(std::size_t expected);

  std::vector<Code> slots_;
  std::vector<char> used_;
  std::size_t cap_ = 0;
  std::size_t size_ = 0;
};

// Soft limit on set sizes. Operations that would exceed it report overflow
// instead of aborting, so sweeps can degrade to flagged lower bounds.
struct Budget {
  std::size_t max_codes = 100000000;  // 1e8
  static Budget from_env();
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A soft resource cap was hit (distinct exit path from config errors).
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace growthlab

#endif
