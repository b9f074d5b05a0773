#include <doctest.h>

#include "gateshare/algo_general.hpp"
#include "gateshare/algo_k3.hpp"
#include "gateshare/exact.hpp"

#include "helpers.hpp"

using namespace gateshare;
using namespace testutil;

namespace {

// Exhaustive reference for the shared-subset test: intersections of every
// nonempty subfamily.
std::optional<SharedSubset> subset_oracle(const std::vector<VarSet>& trees, int i, int k) {
  REQUIRE(trees.size() <= 10);
  std::optional<SharedSubset> best;
  for (std::uint32_t sel = 1; sel < (1u << trees.size()); ++sel) {
    VarSet s;
    bool first = true;
    for (std::size_t t = 0; t < trees.size(); ++t) {
      if (!(sel >> t & 1)) continue;
      s = first ? trees[t] : s.intersect(trees[t]);
      first = false;
    }
    if (3 * (i - 1) * s.count() < i * k) continue;
    std::vector<VarSet> owners;
    for (const VarSet& t : trees)
      if (s.subset_of(t)) owners.push_back(t);
    if (static_cast<int>(owners.size()) < i) continue;
    bool better = !best || owners.size() > best->owners.size() ||
                  (owners.size() == best->owners.size() && s.count() > best->shared.count()) ||
                  (owners.size() == best->owners.size() && s.count() == best->shared.count() &&
                   s < best->shared);
    if (better) best = SharedSubset{s, owners};
  }
  return best;
}

}  // namespace

TEST_CASE("supersets of big-enough contained trees are set aside") {
  // k = 6: a contained tree needs at least 2 variables.
  Instance with_sub = make_instance(9, Op::And,
                                    {VarSet{1, 2, 3}, VarSet{1, 2, 3, 4, 5, 6}});
  auto [sup, rest] = preprocess_sup(with_sub);
  REQUIRE(sup.size() == 1);
  CHECK(sup[0].tree == VarSet{1, 2, 3, 4, 5, 6});
  CHECK(sup[0].parent == VarSet{1, 2, 3});
  CHECK(rest == std::vector<VarSet>{VarSet{1, 2, 3}});

  // The threshold is not strict: a parent of size exactly k/3 qualifies.
  Instance boundary = make_instance(9, Op::And, {VarSet{1, 2}, VarSet{1, 2, 3, 4, 5, 6}});
  auto [sup_b, rest_b] = preprocess_sup(boundary);
  REQUIRE(sup_b.size() == 1);
  CHECK(sup_b[0].parent == VarSet{1, 2});
  CHECK(rest_b.size() == 1);

  Instance below = make_instance(9, Op::And, {VarSet{1, 2}, VarSet{1, 2, 3, 4, 5, 6, 7}});
  auto [sup2, rest2] = preprocess_sup(below);
  CHECK(sup2.empty());  // k = 7: 3*2 < 7 fails the threshold
  CHECK(rest2.size() == 2);
}

TEST_CASE("nested chains complete from their parents in size order") {
  Instance inst = make_instance(10, Op::And,
                                {VarSet{1, 2, 3}, VarSet{1, 2, 3, 4, 5},
                                 VarSet{1, 2, 3, 4, 5, 6, 7, 8, 9}});
  auto [sup, rest] = preprocess_sup(inst);
  REQUIRE(sup.size() == 2);  // k = 9, both supersets contain {1,2,3} (size 3 >= 9/3)
  CHECK(rest == std::vector<VarSet>{VarSet{1, 2, 3}});
  CHECK(sup[0].parent == VarSet{1, 2, 3});
  CHECK(sup[1].parent == VarSet{1, 2, 3, 4, 5});  // the largest contained tree wins

  GeneralResult r = solve_general(inst);
  // Completion cost is the size difference along each link: 2 + (5-3) + (9-5).
  CHECK(r.phases.get("scratch") == 2);
  CHECK(r.phases.get("sup_completion") == 6);
  CHECK(circuit_size(r.circuit) == 8);
  CHECK(validate(r.circuit, inst).ok);
}

TEST_CASE("shared subset discovery honors the exact threshold") {
  int k = 6;
  std::vector<VarSet> trees{VarSet{1, 2, 3, 4, 5, 6}, VarSet{1, 2, 3, 4, 7, 8}};
  auto f = find_shared_subset(trees, 2, k);
  REQUIRE(f.has_value());
  CHECK(f->shared == VarSet{1, 2, 3, 4});  // 4 >= 2*6/3 exactly
  CHECK(f->owners.size() == 2);

  std::vector<VarSet> small{VarSet{1, 2, 3, 5, 6, 7}, VarSet{1, 2, 3, 8, 9, 10}};
  CHECK(!find_shared_subset(small, 2, k).has_value());  // intersection of 3 misses 4
}

TEST_CASE("shared subset discovery matches the exhaustive closure oracle") {
  Rng rng(171717);
  for (int it = 0; it < 60; ++it) {
    GenParams p;
    p.num_vars = rng.range(6, 10);
    p.max_size = rng.range(3, 6);
    p.num_trees = rng.range(2, 6);
    p.overlap_bias = rng.unit();
    p.seed = rng.next();
    Instance inst = gen_random(p);
    int k = max_tree_size(inst);
    for (int i = 2; i <= static_cast<int>(inst.trees.size()); ++i) {
      auto got = find_shared_subset(inst.trees, i, k);
      auto want = subset_oracle(inst.trees, i, k);
      REQUIRE(got.has_value() == want.has_value());
      if (got) {
        CHECK(got->shared == want->shared);
        CHECK(got->owners == want->owners);
      }
    }
  }
}

TEST_CASE("a qualifying group obeys the documented cost bound") {
  // Two trees of size 6 sharing 4 variables: 3 + 2 + 2 = 7 <= (2/3)*2*6.
  Instance inst = make_instance(9, Op::And,
                                {VarSet{1, 2, 3, 4, 5, 6}, VarSet{1, 2, 3, 4, 7, 8}});
  GeneralResult r = solve_general(inst);
  REQUIRE(r.groups.size() == 1);
  CHECK(r.groups[0].shared == VarSet{1, 2, 3, 4});
  CHECK(r.groups[0].gates == 7);
  CHECK(circuit_size(r.circuit) == 7);
  CHECK(validate(r.circuit, inst).ok);
}

TEST_CASE("single trees are built optimally") {
  Instance inst = make_instance(7, Op::Xor, {VarSet{0, 1, 2, 3, 4, 5, 6}});
  GeneralResult r = solve_general(inst);
  CHECK(circuit_size(r.circuit) == 6);
  CHECK(solve_exact(inst).size == 6);
}

TEST_CASE("group accounting stays within two thirds of owners times k") {
  Rng rng(55555);
  for (int it = 0; it < 40; ++it) {
    GenParams p;
    p.num_vars = rng.range(7, 10);
    p.max_size = rng.range(3, 7);
    p.num_trees = rng.range(2, 6);
    p.overlap_bias = 0.4 + 0.6 * rng.unit();
    p.seed = rng.next();
    Instance inst = gen_random(p);
    GeneralResult r = solve_general(inst);
    CHECK(validate(r.circuit, inst).ok);
    for (const SharedGroup& g : r.groups)
      CHECK(3 * g.gates <= 2 * static_cast<int>(g.owners.size()) * r.k);
  }
}

TEST_CASE("never worse than building every tree from scratch") {
  Rng rng(8642);
  for (int it = 0; it < 40; ++it) {
    GenParams p;
    p.num_vars = rng.range(7, 10);
    p.max_size = rng.range(2, 7);
    p.num_trees = rng.range(1, 6);
    p.overlap_bias = rng.unit();
    p.seed = rng.next();
    Instance inst = gen_random(p);
    GeneralResult r = solve_general(inst);
    int scratch = 0;
    for (const VarSet& t : inst.trees) scratch += t.count() - 1;
    CHECK(circuit_size(r.circuit) <= scratch);
  }
}

TEST_CASE("after the loop no qualifying subset remains") {
  Rng rng(31337);
  for (int it = 0; it < 25; ++it) {
    GenParams p;
    p.num_vars = rng.range(6, 10);
    p.max_size = rng.range(3, 7);
    p.num_trees = rng.range(2, 6);
    p.overlap_bias = 0.5 + 0.5 * rng.unit();
    p.seed = rng.next();
    Instance inst = gen_random(p);
    GeneralResult r = solve_general(inst);
    REQUIRE(!r.guarantee_unverified);
    for (int i = 2; i <= static_cast<int>(r.scratch_trees.size()); ++i)
      CHECK(!subset_oracle(r.scratch_trees, i, r.k).has_value());
  }
}

TEST_CASE("ratio on small-k instances stays within the guarantee") {
  Rng rng(11888);
  for (int it = 0; it < 30; ++it) {
    GenParams p;
    p.num_vars = rng.range(4, 8);
    p.max_size = 3;
    p.num_trees = rng.range(2, 6);
    p.overlap_bias = rng.unit();
    p.seed = rng.next();
    Instance inst = gen_random(p);
    GeneralResult r = solve_general(inst);
    K3Result k3 = solve_k3(inst);
    ExactResult opt = solve_exact(inst);
    REQUIRE(opt.exact);
    // (2/3)k with k <= 3 caps the ratio at 2.
    CHECK(circuit_size(r.circuit) <= 2 * opt.size);
    CHECK(circuit_size(r.circuit) <= 2 * circuit_size(k3.circuit));
  }
}

TEST_CASE("the candidate cap falls back to pairwise intersections and flags it") {
  GenParams p;
  p.num_vars = 10;
  p.max_size = 6;
  p.num_trees = 6;
  p.overlap_bias = 0.9;
  p.seed = 4;
  Instance inst = gen_random(p);
  GeneralResult capped = solve_general(inst, GeneralOptions{1});
  CHECK(capped.guarantee_unverified);
  CHECK(validate(capped.circuit, inst).ok);
  int scratch = 0;
  for (const VarSet& t : inst.trees) scratch += t.count() - 1;
  CHECK(circuit_size(capped.circuit) <= scratch);
}
