#include "growthlab/common.hpp"

#include <algorithm>
#include <cstring>

namespace growthlab {

std::string code_to_string(Code c) {
  if (c == 0) return "0";
  char buf[48];
  int i = 48;
  while (c > 0) {
    buf[--i] = static_cast<char>('0' + static_cast<int>(c % 10));
    c /= 10;
  }
  return std::string(buf + i, 48 - i);
}

Code code_from_string(const std::string& s) {
  if (s.empty()) throw ConfigError("empty code string");
  Code c = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw ConfigError("bad code digit: " + s);
    Code next = c * 10 + static_cast<unsigned>(ch - '0');
    if (next < c) throw ConfigError("code overflows 128 bits: " + s);
    c = next;
  }
  return c;
}

std::vector<Code> CodeHashSet::sorted() const {
  std::vector<Code> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < cap_; i++)
    if (used_[i]) out.push_back(slots_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

void CodeHashSet::rehash_for(std::size_t expected) {
  std::size_t want = 16;
  while (want * 7 < (expected + 1) * 8) want <<= 1;
  if (want <= cap_ && size_ > 0) want = cap_ << 1;
  std::vector<Code> old_slots;
  std::vector<char> old_used;
  old_slots.swap(slots_);
  old_used.swap(used_);
  std::size_t old_cap = cap_;
  cap_ = std::max<std::size_t>(want, 16);
  slots_.assign(cap_, 0);
  used_.assign(cap_, 0);
  std::size_t mask = cap_ - 1;
  for (std::size_t i = 0; i < old_cap; i++) {
    if (!old_used[i]) continue;
    Code c = old_slots[i];
    std::size_t j = CodeHash{}(c)&mask;
    while (used_[j]) j = (j + 1) & mask;
    used_[j] = 1;
    slots_[j] = c;
  }
}

Budget Budget::from_env() {
  Budget b;
  if (const char* env = std::getenv("GROWTHLAB_CAP_BYTES")) {
    char* end = nullptr;
    unsigned long long bytes = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && bytes >= 16)
      b.max_codes = static_cast<std::size_t>(bytes / sizeof(Code));
  }
  return b;
}

}  // namespace growthlab
