#include "doctest.h"

#include <set>

#include "phylorel/codec.hpp"
#include "phylorel/tree.hpp"

using namespace phylorel;

namespace {

EdgeLabeledTree labeled(const std::string& text) { return to_edge_labeled(parse_tree(text)); }

}  // namespace

TEST_CASE("paths on stars and caterpillars") {
  auto star = labeled("(a:0,b:0,c:1)v;");
  int va = star.tree.vertex_of("a");
  int vb = star.tree.vertex_of("b");
  CHECK(star.tree.path(va, vb).size() == 2);
  CHECK(star.tree.path(va, va).empty());

  auto cat = labeled("((a:0,x:0)p:1,(b:0,y:0)q:0)r;");
  int a = cat.tree.vertex_of("a");
  int b = cat.tree.vertex_of("b");
  CHECK(cat.tree.path(a, b).size() == 4);
}

TEST_CASE("median of spec examples") {
  auto star = labeled("(a:0,b:0,c:0)v;");
  int med = star.tree.median("a", "b", "c");
  CHECK_FALSE(star.tree.has_taxon(med));

  auto quartet = labeled("((a:0,b:0)p:1,c:0,d:0)q;");
  CHECK(quartet.tree.median("a", "b", "c") == quartet.tree.median("a", "b", "d"));
  CHECK(quartet.tree.median("a", "c", "d") == quartet.tree.median("b", "c", "d"));
  CHECK(quartet.tree.median("a", "b", "c") != quartet.tree.median("a", "c", "d"));

  // five-leaf caterpillar with cherries {x1,x2} and {z1,z2} around y
  auto cat = parse_tree("((x1,x2)v1,y,(z1,z2)v3)v2;");
  const Tree& t = cat.tree;
  CHECK(t.median("x1", "x2", "y") == t.median("x1", "x2", "z1"));
  CHECK(t.median("z1", "z2", "x1") == t.median("z1", "z2", "y"));
  CHECK(t.median("x1", "y", "z1") == t.median("x2", "y", "z2"));
  CHECK(t.median("x1", "x2", "y") != t.median("x1", "y", "z1"));
  // permutation invariance
  CHECK(t.median("x1", "y", "z1") == t.median("z1", "x1", "y"));
}

TEST_CASE("median lies on the path and equals an lca candidate when rooted") {
  auto p = parse_tree("#rooted\n((a,b)u,(c,(d,e)w)v)r;");
  const Tree& t = p.tree;
  for (const auto& x : t.taxa())
    for (const auto& y : t.taxa())
      for (const auto& z : t.taxa()) {
        if (x == y || y == z || x == z) continue;
        int med = t.median(x, y, z);
        auto onpath = t.path_vertices(t.vertex_of(x), t.vertex_of(y));
        CHECK(std::find(onpath.begin(), onpath.end(), med) != onpath.end());
        std::set<int> lcas{t.lca({x, y}), t.lca({x, z}), t.lca({y, z})};
        CHECK(lcas.count(med) == 1);
      }
}

TEST_CASE("lca basics") {
  auto p = parse_tree("#rooted\n((b,c)u,a)rho;");
  const Tree& t = p.tree;
  CHECK(t.lca({"b", "c"}) != t.root());
  CHECK(t.lca({"a", "b"}) == t.root());
  CHECK(t.lca({"b"}) == t.vertex_of("b"));
  CHECK_THROWS_AS(parse_tree("(a,b,c)v;").tree.lca({"a", "b"}), Error);
}

TEST_CASE("restrict_display sums suppressed labels") {
  auto quartet = labeled("((a:0,b:0)p:1,c:0,d:0)q;");
  SUBCASE("identity restriction") {
    auto same = restrict_display(quartet, {"a", "b", "c", "d"});
    CHECK(canonical_form(same) == canonical_form(quartet));
  }
  SUBCASE("suppression creates a summed edge") {
    auto small = restrict_display(quartet, {"a", "c", "d"});
    CHECK(small.tree.taxa() == std::vector<std::string>{"a", "c", "d"});
    int a = small.tree.vertex_of("a");
    int c = small.tree.vertex_of("c");
    int d = small.tree.vertex_of("d");
    CHECK(small.path_sum(a, c) == 1);
    CHECK(small.path_sum(a, d) == 1);
    CHECK(small.path_sum(c, d) == 0);
    CHECK(small.tree.vertex_count() == 4);
  }
  SUBCASE("chain restriction sums to 2") {
    // a - u - v - b with labels 1,1,0 plus fillers to keep degrees >= 3
    auto chain = labeled("((a:1,x:0)u:1,b:0,y:0)v;");
    auto ab = restrict_display(chain, {"a", "b"});
    CHECK(ab.tree.vertex_count() == 2);
    CHECK(ab.path_sum(ab.tree.vertex_of("a"), ab.tree.vertex_of("b")) == 2);
  }
  SUBCASE("path sums preserved on every pair") {
    auto big = labeled("(((a:1,b:0)p:0,c:1)q:1,(d:0,e:1)r:0,f:1)s;");
    std::vector<std::string> sub{"a", "c", "e", "f"};
    auto small = restrict_display(big, sub);
    for (const auto& x : sub)
      for (const auto& y : sub) {
        long long want =
            big.path_sum(big.tree.vertex_of(x), big.tree.vertex_of(y));
        long long got =
            small.path_sum(small.tree.vertex_of(x), small.tree.vertex_of(y));
        CHECK(want == got);
      }
  }
  CHECK_THROWS_AS(restrict_display(quartet, {}), Error);
}

TEST_CASE("contract_edge") {
  auto quartet = labeled("((a:0,b:0)p:1,c:0,d:0)q;");
  Edge inner{-1, -1};
  for (const auto& [e, lab] : quartet.labels) {
    (void)lab;
    if (!quartet.tree.has_taxon(e.first) && !quartet.tree.has_taxon(e.second)) inner = e;
  }
  auto star = contract_edge(quartet, inner);
  CHECK(star.tree.vertex_count() == 5);
  CHECK(canonical_form(star) == canonical_form(labeled("(a:0,b:0,c:0,d:0)v;")));

  // a star has no interior edge
  auto s3 = labeled("(a:0,b:0,c:1)v;");
  for (const auto& [e, lab] : s3.labels) {
    (void)lab;
    CHECK_THROWS_AS(contract_edge(s3, e), Error);
  }
}

TEST_CASE("canonical_form is id- and order-insensitive") {
  auto a = parse_tree("(a:0,b:0,c:1)v;");
  auto b = parse_tree("(c:1,b:0,a:0)v;");
  CHECK(serialize_tree(a) == serialize_tree(b));

  auto ab_cd = parse_tree("((a,b)p,c,d)q;");
  auto ac_bd = parse_tree("((a,c)p,b,d)q;");
  CHECK(canonical_form(ab_cd.tree) != canonical_form(ac_bd.tree));
}

TEST_CASE("parse and serialize spec examples") {
  SUBCASE("unrooted header with labels and colors") {
    auto p = parse_tree("#unrooted\n((a:0,b:1)p:1,c:0)q;");
    CHECK(p.tree.vertex_count() == 5);
    CHECK_FALSE(p.tree.rooted());
    CHECK(p.labels_complete);
    CHECK(p.colors_complete);
    CHECK(p.discriminating);
    auto roundtrip = parse_tree(serialize_tree(p));
    CHECK(serialize_tree(roundtrip) == serialize_tree(p));
  }
  SUBCASE("star serialization is the golden byte string") {
    auto p = parse_tree("(b:0,c:0,a:0)red;");
    CHECK(serialize_tree(p) == "#unrooted\n(a:0,b:0,c:0)red;\n");
  }
  SUBCASE("non-discriminating flag") {
    auto p = parse_tree("((a,b)p,c)p;");
    CHECK_FALSE(p.discriminating);
  }
  SUBCASE("duplicate taxon") { CHECK_THROWS_AS(parse_tree("(a,a,b)v;"), Error); }
  SUBCASE("bad label") { CHECK_THROWS_AS(parse_tree("(a:2,b:0,c:0)v;"), Error); }
  SUBCASE("one- and two-taxon trees") {
    auto single = parse_tree("a;");
    CHECK(single.tree.vertex_count() == 1);
    CHECK(serialize_tree(single) == "#unrooted\na;\n");
    auto edge = parse_tree("(b:1)a;");
    CHECK(edge.tree.vertex_count() == 2);
    CHECK(edge.tree.taxa() == std::vector<std::string>{"a", "b"});
    auto back = parse_tree(serialize_tree(edge));
    CHECK(serialize_tree(back) == serialize_tree(edge));
  }
  SUBCASE("rooted tree keeps its root") {
    auto p = parse_tree("#rooted\n((b:1,c:1)u:1,a:0)rho;");
    CHECK(p.tree.rooted());
    CHECK(p.tree.degree(p.tree.root()) == 2);
    auto rt = parse_tree(serialize_tree(p));
    CHECK(rt.tree.rooted());
    CHECK(serialize_tree(rt) == serialize_tree(p));
  }
  SUBCASE("comments are ignored") {
    auto p = parse_tree("# a comment\n#unrooted\n# another\n(a:0,b:0,c:0)v;\n# trailing\n");
    CHECK(p.tree.vertex_count() == 4);
  }
}

TEST_CASE("phylogenetic and binary predicates") {
  CHECK(parse_tree("(a,b,c)v;").tree.is_phylogenetic());
  CHECK(parse_tree("(a,b,c)v;").tree.is_binary());
  CHECK_FALSE(parse_tree("(a,b,c,d)v;").tree.is_binary());
  // degree-2 interior vertex: tolerated by the type, rejected by the predicate
  auto deg2 = parse_tree("(a,(b,c)q);");
  CHECK_FALSE(deg2.tree.is_phylogenetic());
  auto p = parse_tree("#rooted\n((a,b)p,(c,d)q)r;");
  CHECK(p.tree.is_phylogenetic());  // root of degree 2 is fine
  CHECK(p.tree.is_binary());
}
