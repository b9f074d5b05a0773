#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gateshare {

using VarId = int;

// A set of variable indices, bit-packed into 64-bit words. The stored form
// is canonical (trailing zero words trimmed) so equality and hashing do not
// depend on how the set was produced. operator< is lexicographic on the
// ascending index sequence; that order is the canonical tie-breaker used by
// all solvers.
class VarSet {
public:
  VarSet() = default;
  VarSet(std::initializer_list<VarId> vars) {
    for (VarId v : vars) add(v);
  }

  static VarSet single(VarId v) {
    VarSet s;
    s.add(v);
    return s;
  }

  static VarSet from_vars(const std::vector<VarId>& vars) {
    VarSet s;
    for (VarId v : vars) s.add(v);
    return s;
  }

  void add(VarId v);
  bool contains(VarId v) const;

  bool empty() const { return words_.empty(); }
  int count() const { return count_; }

  bool disjoint_with(const VarSet& o) const;
  bool subset_of(const VarSet& o) const;
  bool strict_subset_of(const VarSet& o) const { return count_ < o.count_ && subset_of(o); }

  VarSet unite(const VarSet& o) const;
  VarSet intersect(const VarSet& o) const;
  VarSet minus(const VarSet& o) const;

  VarId min_var() const;  // -1 when empty
  VarId max_var() const;  // -1 when empty
  std::vector<VarId> vars() const;

  // Bits 0..63 as a machine word. Callers must ensure max_var() < 64.
  std::uint64_t low_mask() const { return words_.empty() ? 0 : words_[0]; }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(static_cast<VarId>(w * 64 + lowest_bit(bits)));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const VarSet& o) const { return words_ == o.words_; }
  bool operator!=(const VarSet& o) const { return words_ != o.words_; }
  bool operator<(const VarSet& o) const;

  std::size_t hash() const;
  std::string str() const;  // "{1,2,3}"

private:
  static int lowest_bit(std::uint64_t w);
  void trim();

  std::vector<std::uint64_t> words_;
  int count_ = 0;
};

struct VarSetHash {
  std::size_t operator()(const VarSet& s) const { return s.hash(); }
};

}  // namespace gateshare
