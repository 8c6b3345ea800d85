#include "doctest.h"

#include <set>

#include "phylorel/codec.hpp"
#include "phylorel/oracles.hpp"
#include "phylorel/rare_events.hpp"

using namespace phylorel;

namespace {

// all binary labeled explainers by brute force (reference answer)
std::set<std::string> brute_binary(const EventRelation& r) {
  std::set<std::string> out;
  for (const auto& t : brute_force_explainers(r, 2 * static_cast<int>(r.taxa().size()) + 2))
    if (t.tree.is_binary()) out.insert(canonical_form(t));
  return out;
}

std::set<std::string> enumerated(const BinaryEnumeration& e) {
  std::set<std::string> out;
  for (const auto& t : e.trees) out.insert(canonical_form(t));
  return out;
}

}  // namespace

TEST_CASE("binary count helper") {
  CHECK(unrooted_binary_count(3) == 1);
  CHECK(unrooted_binary_count(4) == 3);
  CHECK(unrooted_binary_count(5) == 15);
  CHECK(unrooted_binary_count(6) == 105);
}

TEST_CASE("empty relation on four taxa: t(4) * 2 = 6 binary trees") {
  auto r = parse_relation("taxa\ta,b,c,d\n");
  auto e = enumerate_binary(r);
  CHECK_FALSE(e.two_components);
  REQUIRE(e.least_resolved.size() == 1);
  CHECK(binary_count_formula(e.least_resolved[0]) == 6);
  CHECK(e.per_tree_counts[0] == 6);
  CHECK(e.trees.size() == 6);
  for (const auto& t : e.trees) {
    CHECK(t.tree.is_binary());
    CHECK(explains(t, r));
  }
  CHECK(enumerated(e) == brute_binary(r));
}

TEST_CASE("connected path quotient yields exactly the least resolved tree") {
  auto r = parse_relation("a\tb\tS\nb\tc\tS\nc\td\tS\n");
  auto e = enumerate_binary(r);
  REQUIRE(e.trees.size() == 1);
  CHECK(e.trees[0].tree.is_binary());
  CHECK(canonical_form(e.trees[0]) == canonical_form(reconstruct_relation(r).tree));
  CHECK(enumerated(e) == brute_binary(r));
}

TEST_CASE("two components cannot be explained by a binary tree") {
  auto r = parse_relation("taxa\ta,b\n");
  auto e = enumerate_binary(r);
  CHECK(e.two_components);
  CHECK(e.trees.empty());
  CHECK(brute_binary(r).empty());

  auto relaxed = enumerate_binary(r, true);
  CHECK(relaxed.trees.size() == 1);
  CHECK(explains(relaxed.trees[0], r));
  CHECK(relaxed.trees[0].tree.vertex_count() == 3);  // degree-2 hub tolerated
}

TEST_CASE("type (b) star: t(5) locals, all silent interiors") {
  // quotient star: center c, leaves l1..l4
  auto r = parse_relation("c\tl1\tS\nc\tl2\tS\nc\tl3\tS\nc\tl4\tS\n");
  auto e = enumerate_binary(r);
  REQUIRE(e.least_resolved.size() == 1);
  CHECK(binary_count_formula(e.least_resolved[0]) == 15);
  CHECK(e.per_tree_counts[0] == 15);
  CHECK(e.trees.size() == 15);
  for (const auto& t : e.trees) {
    CHECK(t.tree.is_binary());
    CHECK(explains(t, r));
  }
  CHECK(enumerated(e) == brute_binary(r));
}

TEST_CASE("five isolated taxa: type (a) star with free interiors") {
  auto r = parse_relation("taxa\ta,b,c,d,e\n");
  auto e = enumerate_binary(r);
  REQUIRE(e.least_resolved.size() == 1);
  // t(5) * 2^(5-3) = 15 * 4 = 60
  CHECK(binary_count_formula(e.least_resolved[0]) == 60);
  CHECK(e.per_tree_counts[0] == 60);
  CHECK(e.trees.size() == 60);
  CHECK(enumerated(e) == brute_binary(r));
}

TEST_CASE("edge component plus isolated vertices") {
  auto r = parse_relation("v\tw\tS\ntaxa\ta,b\n");
  auto e = enumerate_binary(r);
  // hub degree 3, subdivider degree 3: both orientations already binary
  CHECK(e.trees.size() == 2);
  for (const auto& t : e.trees) {
    CHECK(t.tree.is_binary());
    CHECK(explains(t, r));
  }
  CHECK(enumerated(e) == brute_binary(r));
}

TEST_CASE("non-discrete zero relation is out of scope") {
  auto r = parse_relation("a1\ta2\tZ\na1\tb\tS\na2\tb\tS\n");
  CHECK_THROWS_WITH_AS(enumerate_binary(r), doctest::Contains("discrete"), Error);
}

TEST_CASE("exhaustive agreement with brute force on up to five taxa") {
  // every valid discrete symmetric relation derived from 3..5-leaf trees
  std::set<std::string> done;
  for (int n = 3; n <= 5; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    enumerate_phylo_trees(names, [&](const Tree& t) {
      enumerate_edge_labelings(t, [&](const EdgeLabeledTree& lt) {
        auto r = derive_relation(lt, RelationMode::Symmetric);
        auto key = serialize_relation(r);
        if (!done.insert(key).second) return;
        auto g = build_quotient(r);
        if (!g.discrete()) return;
        auto e = enumerate_binary(r);
        if (e.two_components) {
          CHECK(brute_binary(r).empty());
          return;
        }
        CHECK(enumerated(e) == brute_binary(r));
        for (std::size_t i = 0; i < e.least_resolved.size(); ++i)
          CHECK(e.per_tree_counts[i] == binary_count_formula(e.least_resolved[i]));
      });
    });
  }
}
