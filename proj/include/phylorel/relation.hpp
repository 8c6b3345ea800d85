#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phylorel/tree.hpp"

namespace phylorel {

enum class PairKind { Zero, SymOne, DirOne, UnkOne };

enum class RelationMode { Symmetric, Directed, Mixed };

// One typed taxa pair. DirOne is ordered a -> b; all other kinds store
// a < b. Distinct pairs without a record are separated by two or more
// events (neither zero- nor single-1-related).
struct PairRecord {
  std::string a, b;
  PairKind kind;

  bool operator==(const PairRecord&) const = default;
  bool operator<(const PairRecord& o) const {
    return std::tie(a, b, kind) < std::tie(o.a, o.b, o.kind);
  }
};

class EventRelation {
 public:
  EventRelation(std::vector<std::string> taxa, std::vector<PairRecord> records);

  const std::vector<std::string>& taxa() const { return taxa_; }
  const std::vector<PairRecord>& records() const { return records_; }
  RelationMode mode() const { return mode_; }

  // Record on the unordered pair {a, b}, if any.
  std::optional<PairRecord> record(const std::string& a, const std::string& b) const;

  bool operator==(const EventRelation& o) const {
    return taxa_ == o.taxa_ && records_ == o.records_;
  }

 private:
  std::vector<std::string> taxa_;      // sorted
  std::vector<PairRecord> records_;    // sorted
  RelationMode mode_;
};

// Relation file: optional `taxa<TAB>a,b,c` line for otherwise-unmentioned
// taxa; records `a<TAB>b<TAB>K` with K in {Z,S,D,U}; '#' comments; a
// duplicated pair is an error.
EventRelation parse_relation(std::string_view text);
std::string serialize_relation(const EventRelation& r);

// The zero / single-1 relations of an edge-labeled tree. Directed mode
// requires a root and produces Zero/DirOne records only.
EventRelation derive_relation(const EdgeLabeledTree& t, RelationMode mode);

// True iff the derived relation of t equals r. For mixed r, an UnkOne (or
// SymOne) record matches a derived DirOne in either direction.
bool explains(const EdgeLabeledTree& t, const EventRelation& r);

}  // namespace phylorel
