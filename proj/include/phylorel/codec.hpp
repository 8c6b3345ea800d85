#pragma once

#include <map>
#include <string>
#include <string_view>

#include "phylorel/tree.hpp"

namespace phylorel {

// Result of parsing one tree document. Edge labels and interior colors are
// both optional in the grammar; converters below enforce completeness.
struct ParsedTree {
  Tree tree;
  std::map<Edge, int> labels;        // only explicitly written labels
  std::map<int, std::string> colors; // only explicitly written colors
  bool labels_complete = false;      // every edge labeled
  bool colors_complete = false;      // every interior vertex colored
  bool discriminating = true;        // false iff adjacent interiors share a color
};

// Grammar (one document):
//   header?  expr ';'
//   header := '#rooted' | '#unrooted'            (default: unrooted)
//   expr   := TOKEN (':' INT)?                   -- leaf
//           | '(' expr (',' expr)* ')' TOKEN? (':' INT)?
// '#'-lines other than the header are comments. Edge labels must be 0 or 1
// on input. An unrooted outermost node with exactly one child is a leaf and
// its token is a taxon (the two-taxon tree `(a:1)b;`); a bare `a;` is the
// single-vertex tree.
ParsedTree parse_tree(std::string_view text);

EdgeLabeledTree to_edge_labeled(const ParsedTree& p);  // requires all edges labeled
DatedTree to_dated(const ParsedTree& p);               // requires all interiors colored

// Deterministic serialization: rooted trees start at the root, unrooted
// trees at the neighbor of the lexicographically smallest taxon; children
// ordered by smallest descendant taxon. Isomorphic inputs produce identical
// bytes, so these strings double as canonical forms.
std::string serialize_tree(const Tree& t, const std::map<Edge, int>* labels,
                           const std::map<int, std::string>* colors);
std::string serialize_tree(const EdgeLabeledTree& t);
std::string serialize_tree(const DatedTree& t);
std::string serialize_tree(const ParsedTree& t);

std::string canonical_form(const Tree& t);
std::string canonical_form(const EdgeLabeledTree& t);
std::string canonical_form(const DatedTree& t);

}  // namespace phylorel
