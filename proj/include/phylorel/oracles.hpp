#pragma once

#include <functional>
#include <string>
#include <vector>

#include "phylorel/relation.hpp"
#include "phylorel/tree.hpp"

namespace phylorel {

// All pairwise non-isomorphic unrooted phylogenetic trees on the taxa set
// (every interior degree >= 3), each exactly once, by recursive leaf
// insertion with canonical-form dedup. Hard guard: |taxa| <= 8.
void enumerate_phylo_trees(const std::vector<std::string>& taxa,
                           const std::function<void(const Tree&)>& fn);
std::vector<Tree> all_phylo_trees(const std::vector<std::string>& taxa);

// Rooted variants: every interior vertex as root plus every edge subdivided
// by a fresh degree-2 root.
void enumerate_rooted_phylo_trees(const std::vector<std::string>& taxa,
                                  const std::function<void(const Tree&)>& fn);

// All 2^|E| assignments of {0,1}.
void enumerate_edge_labelings(const Tree& t,
                              const std::function<void(const EdgeLabeledTree&)>& fn);

// All colorings of the interior vertices over the alphabet; optionally only
// those where adjacent interiors differ.
void enumerate_datings(const Tree& t, const std::vector<std::string>& alphabet,
                       bool discriminating_only,
                       const std::function<void(const DatedTree&)>& fn);

// Every labeled tree explaining r with at most max_vertices vertices.
// Symmetric relations search unrooted trees, directed/mixed search rooted
// ones. Guards: |taxa| <= 6, max_vertices <= 2|taxa| + 2.
std::vector<EdgeLabeledTree> brute_force_explainers(const EventRelation& r, int max_vertices);

// Fewest vertex count among all explainers; -1 when none exists.
int minimal_explainer_size(const EventRelation& r);

}  // namespace phylorel
