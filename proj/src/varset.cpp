#include "gateshare/varset.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gateshare {

int VarSet::lowest_bit(std::uint64_t w) { return std::countr_zero(w); }

void VarSet::add(VarId v) {
  if (v < 0) throw std::out_of_range("VarSet::add: negative variable index");
  std::size_t w = static_cast<std::size_t>(v) / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  std::uint64_t bit = 1ull << (static_cast<std::size_t>(v) % 64);
  if (!(words_[w] & bit)) {
    words_[w] |= bit;
    ++count_;
  }
}

bool VarSet::contains(VarId v) const {
  std::size_t w = static_cast<std::size_t>(v) / 64;
  if (v < 0 || w >= words_.size()) return false;
  return (words_[w] >> (static_cast<std::size_t>(v) % 64)) & 1;
}

bool VarSet::disjoint_with(const VarSet& o) const {
  std::size_t n = std::min(words_.size(), o.words_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (words_[i] & o.words_[i]) return false;
  return true;
}

bool VarSet::subset_of(const VarSet& o) const {
  if (words_.size() > o.words_.size()) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

VarSet VarSet::unite(const VarSet& o) const {
  VarSet r;
  r.words_.resize(std::max(words_.size(), o.words_.size()), 0);
  for (std::size_t i = 0; i < r.words_.size(); ++i) {
    std::uint64_t w = (i < words_.size() ? words_[i] : 0) | (i < o.words_.size() ? o.words_[i] : 0);
    r.words_[i] = w;
    r.count_ += std::popcount(w);
  }
  return r;
}

VarSet VarSet::intersect(const VarSet& o) const {
  VarSet r;
  r.words_.resize(std::min(words_.size(), o.words_.size()), 0);
  for (std::size_t i = 0; i < r.words_.size(); ++i) {
    r.words_[i] = words_[i] & o.words_[i];
    r.count_ += std::popcount(r.words_[i]);
  }
  r.trim();
  return r;
}

VarSet VarSet::minus(const VarSet& o) const {
  VarSet r;
  r.words_ = words_;
  r.count_ = 0;
  for (std::size_t i = 0; i < r.words_.size(); ++i) {
    if (i < o.words_.size()) r.words_[i] &= ~o.words_[i];
    r.count_ += std::popcount(r.words_[i]);
  }
  r.trim();
  return r;
}

VarId VarSet::min_var() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return static_cast<VarId>(i * 64 + lowest_bit(words_[i]));
  return -1;
}

VarId VarSet::max_var() const {
  for (std::size_t i = words_.size(); i-- > 0;)
    if (words_[i]) return static_cast<VarId>(i * 64 + 63 - std::countl_zero(words_[i]));
  return -1;
}

std::vector<VarId> VarSet::vars() const {
  std::vector<VarId> out;
  out.reserve(static_cast<std::size_t>(count_));
  for_each([&](VarId v) { out.push_back(v); });
  return out;
}

// Lexicographic on the ascending index sequence: the set owning the smallest
// element of the symmetric difference wins, unless the other set has no
// element beyond that point (a strict prefix sorts first).
bool VarSet::operator<(const VarSet& o) const {
  std::size_t n = std::max(words_.size(), o.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t a = i < words_.size() ? words_[i] : 0;
    std::uint64_t b = i < o.words_.size() ? o.words_[i] : 0;
    std::uint64_t diff = a ^ b;
    if (!diff) continue;
    std::uint64_t first = diff & (~diff + 1);
    bool mine = (a & first) != 0;
    const std::vector<std::uint64_t>& other_words = mine ? o.words_ : words_;
    // Does the non-owner have anything at or above the first difference?
    std::uint64_t other_here = (i < other_words.size() ? other_words[i] : 0) & ~(first - 1);
    if (other_here) return mine;
    for (std::size_t j = i + 1; j < other_words.size(); ++j)
      if (other_words[j]) return mine;
    return !mine;  // non-owner is a strict prefix
  }
  return false;
}

std::size_t VarSet::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint64_t w : words_) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::string VarSet::str() const {
  std::string s = "{";
  bool first = true;
  for_each([&](VarId v) {
    if (!first) s += ",";
    s += std::to_string(v);
    first = false;
  });
  s += "}";
  return s;
}

void VarSet::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

}  // namespace gateshare
