#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "phylorel/quartets.hpp"
#include "phylorel/tree.hpp"

namespace phylorel {

// A total symmetric map from the 3-subsets of a taxa set (|X| >= 3) into an
// opaque color alphabet. Only distinct unordered triples are stored, so
// symmetry and the non-event condition hold by construction.
class TernaryMap {
 public:
  TernaryMap(std::vector<std::string> taxa,
             std::map<std::array<std::string, 3>, std::string> values);

  const std::vector<std::string>& taxa() const { return taxa_; }
  const std::string& value(const std::string& x, const std::string& y,
                           const std::string& z) const;
  std::vector<std::string> colors() const;

  bool operator==(const TernaryMap&) const = default;

 private:
  std::vector<std::string> taxa_;  // sorted
  std::map<std::array<std::string, 3>, std::string> values_;  // keys sorted internally
};

// Ternary file: records `x<TAB>y<TAB>z<TAB>color`; optional `taxa` line;
// '#' comments. All C(n,3) triples must be present (MissingTriple), agreeing
// duplicates collapse, disagreeing ones are ConflictingTriple.
TernaryMap parse_ternary(std::string_view text);
std::string serialize_ternary(const TernaryMap& d);

// delta(x,y,z) = color of med(x,y,z). Requires >= 3 taxa; non-discriminating
// colorings are accepted.
TernaryMap derive_ternary(const DatedTree& t);

// Color histogram over the 3-subsets of a taxa subset.
struct PartitionSignature {
  std::vector<std::pair<std::string, int>> counts;  // by color, descending count then color
  // counts ascending, dash-joined: "2-2", "4-6", "1-1-2", "10"
  std::string to_string() const;
  bool is(int a, int b) const;  // exactly two colors with counts {a, b}
};
PartitionSignature partition_signature(const TernaryMap& d, const std::vector<std::string>& s);

// Conditions (3) and (4) of a symbolic ternary metric; (1) and (2) hold by
// the type. Violations are data, not faults.
struct MetricViolation {
  int condition;                   // 3 or 4
  std::vector<std::string> taxa;   // the witness 4- or 5-set
  std::string signature;
};
struct MetricReport {
  std::vector<MetricViolation> violations;
  bool valid() const { return violations.empty(); }
};
MetricReport check_metric(const TernaryMap& d);

// The five K5 edge-colorings induced on a 5-taxon subset; class sizes
// {4,3,3}, {5,5}, {6,4}, {7,3}, {10}.
enum class K5Type { Type1 = 1, Type2, Type3, Type4, Type5 };
K5Type classify_k5(const TernaryMap& d, const std::array<std::string, 5>& s);

// Condition (*): every monochromatic 4-set has a resolving fifth taxon.
struct ResolutionReport {
  bool fully_resolved = true;
  std::vector<std::array<std::string, 4>> unresolved;
};
ResolutionReport is_fully_resolved(const TernaryMap& d);

// Quartets generated by the metric: 2-2-partitioned 4-sets pair the equal
// triples; monochromatic 4-sets use a resolver when one exists. Two distinct
// resolver quartets on one 4-set raise QuartetConflict.
QuartetSystem generate_quartets(const TernaryMap& d);

// delta-equivalence classes (pseudo-cherry candidates); non-trivial classes
// carry their color m.
struct TaxonClasses {
  std::vector<std::vector<std::string>> classes;  // members sorted; by representative
  std::map<std::string, std::string> class_color; // representative -> m (non-trivial only)
};
TaxonClasses equivalence_classes(const TernaryMap& d);

// Bottom-up reconstruction: collapse pseudo-cherries until one class covers
// everything, then re-expand into colored hubs. The result re-derives to the
// input map or the map is NotRealizable.
DatedTree reconstruct_ternary(const TernaryMap& d);

}  // namespace phylorel
