#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "phylorel/tree.hpp"

namespace phylorel {

// A 2|2 split ab|cd of four distinct taxa, stored canonically:
// a < b, c < d, a < c.
struct Quartet {
  std::array<std::string, 4> t;

  Quartet(const std::string& a, const std::string& b, const std::string& c,
          const std::string& d);

  bool operator==(const Quartet&) const = default;
  auto operator<=>(const Quartet&) const = default;

  std::string to_string() const;
};

class QuartetSystem {
 public:
  QuartetSystem() = default;
  QuartetSystem(std::vector<std::string> taxa, std::set<Quartet> quartets);

  const std::vector<std::string>& taxa() const { return taxa_; }
  const std::set<Quartet>& quartets() const { return quartets_; }
  bool contains(const Quartet& q) const { return quartets_.count(q) > 0; }
  // The split of {a,b,c,d} present in the system, if any.
  std::optional<Quartet> on(const std::array<std::string, 4>& four) const;

  bool operator==(const QuartetSystem&) const = default;

 private:
  std::vector<std::string> taxa_;  // sorted
  std::set<Quartet> quartets_;
};

// ab|cd iff med(a,b,c) = med(a,b,d) != med(a,c,d) = med(b,c,d), i.e. the
// a-b and c-d paths are vertex-disjoint.
QuartetSystem displayed_quartets(const Tree& t);

struct QuartetProperties {
  bool thin = true;
  bool transitive = true;
  bool saturated = true;
  bool complete = true;
  // minimal counterexamples (taxa involved), empty when the flag holds
  std::vector<std::string> thin_witness;
  std::vector<std::string> transitive_witness;
  std::vector<std::string> saturated_witness;
  std::vector<std::string> complete_witness;
};

QuartetProperties check_properties(const QuartetSystem& q);

// Decision procedure for q = Q(T): incremental leaf placement with a final
// displayed_quartets equality check. Throws NoPlacement / AmbiguousPlacement
// / Inconsistent when q is not the quartet system of any tree.
Tree tree_from_quartets(const QuartetSystem& q);

// Quartet file: records `a<TAB>b<TAB>|<TAB>c<TAB>d`; '#' comments;
// duplicates collapse.
QuartetSystem parse_quartets(std::string_view text);
std::string serialize_quartets(const QuartetSystem& q);

}  // namespace phylorel
