#include "phylorel/relation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace phylorel {

EventRelation::EventRelation(std::vector<std::string> taxa, std::vector<PairRecord> records)
    : taxa_(std::move(taxa)), records_(std::move(records)) {
  std::sort(taxa_.begin(), taxa_.end());
  taxa_.erase(std::unique(taxa_.begin(), taxa_.end()), taxa_.end());
  std::set<std::string> known(taxa_.begin(), taxa_.end());
  for (auto& r : records_) {
    if (r.a == r.b)
      throw_validation("SelfPair", "a pair relates two distinct taxa", {r.a});
    if (!known.count(r.a) || !known.count(r.b))
      throw_validation("UnknownTaxon", "pair names an undeclared taxon", {r.a, r.b});
    if (r.kind != PairKind::DirOne && r.b < r.a) std::swap(r.a, r.b);
  }
  std::sort(records_.begin(), records_.end());
  std::set<std::pair<std::string, std::string>> seen;
  bool any_dir = false, any_unk = false, any_sym = false;
  for (const auto& r : records_) {
    auto key = r.a < r.b ? std::make_pair(r.a, r.b) : std::make_pair(r.b, r.a);
    if (!seen.insert(key).second)
      throw_validation("DuplicatePair", "two records for one pair", {key.first, key.second});
    any_dir |= r.kind == PairKind::DirOne;
    any_unk |= r.kind == PairKind::UnkOne;
    any_sym |= r.kind == PairKind::SymOne;
  }
  if (!any_dir && !any_unk)
    mode_ = RelationMode::Symmetric;
  else if (any_dir && !any_unk && !any_sym)
    mode_ = RelationMode::Directed;
  else
    mode_ = RelationMode::Mixed;
}

std::optional<PairRecord> EventRelation::record(const std::string& a, const std::string& b) const {
  for (const auto& r : records_) {
    if ((r.a == a && r.b == b) || (r.a == b && r.b == a)) return r;
  }
  return std::nullopt;
}

EventRelation parse_relation(std::string_view text) {
  std::vector<std::string> taxa;
  std::vector<PairRecord> records;
  std::size_t i = 0;
  int lineno = 0;
  while (i < text.size()) {
    std::size_t eol = text.find('\n', i);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(i, eol - i));
    i = eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t ns = line.find_first_not_of(" \t");
    if (ns == std::string::npos || line[ns] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() == 2 && fields[0] == "taxa") {
      std::stringstream ss(fields[1]);
      std::string name;
      while (std::getline(ss, name, ',')) {
        if (!is_valid_taxon_token(name))
          throw_syntax("BadTaxon", "invalid taxon '" + name + "' on line " + std::to_string(lineno));
        taxa.push_back(name);
      }
    } else if (fields.size() == 3) {
      const std::string &a = fields[0], &b = fields[1], &k = fields[2];
      if (!is_valid_taxon_token(a) || !is_valid_taxon_token(b))
        throw_syntax("BadTaxon", "invalid taxon on line " + std::to_string(lineno));
      PairKind kind;
      if (k == "Z")
        kind = PairKind::Zero;
      else if (k == "S")
        kind = PairKind::SymOne;
      else if (k == "D")
        kind = PairKind::DirOne;
      else if (k == "U")
        kind = PairKind::UnkOne;
      else
        throw_syntax("BadKind", "unknown record kind '" + k + "' on line " + std::to_string(lineno));
      taxa.push_back(a);
      taxa.push_back(b);
      records.push_back({a, b, kind});
    } else {
      throw_syntax("SyntaxError", "malformed relation record on line " + std::to_string(lineno));
    }
  }
  return EventRelation(std::move(taxa), std::move(records));
}

std::string serialize_relation(const EventRelation& r) {
  // name isolated taxa explicitly so the file round-trips
  std::set<std::string> mentioned;
  for (const auto& rec : r.records()) {
    mentioned.insert(rec.a);
    mentioned.insert(rec.b);
  }
  std::string out;
  std::string isolated;
  for (const auto& t : r.taxa())
    if (!mentioned.count(t)) {
      if (!isolated.empty()) isolated += ',';
      isolated += t;
    }
  if (!isolated.empty()) out += "taxa\t" + isolated + "\n";
  for (const auto& rec : r.records()) {
    char k = 'Z';
    switch (rec.kind) {
      case PairKind::Zero: k = 'Z'; break;
      case PairKind::SymOne: k = 'S'; break;
      case PairKind::DirOne: k = 'D'; break;
      case PairKind::UnkOne: k = 'U'; break;
    }
    out += rec.a + "\t" + rec.b + "\t" + k + "\n";
  }
  if (out.empty()) out = "taxa\t\n";
  return out;
}

EventRelation derive_relation(const EdgeLabeledTree& t, RelationMode mode) {
  if (mode == RelationMode::Mixed)
    throw_validation("BadMode", "derivation produces symmetric or directed relations only");
  const auto& names = t.tree.taxa();
  std::vector<PairRecord> records;
  if (mode == RelationMode::Symmetric) {
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        long long s = t.path_sum(t.tree.vertex_of(names[i]), t.tree.vertex_of(names[j]));
        if (s == 0)
          records.push_back({names[i], names[j], PairKind::Zero});
        else if (s == 1)
          records.push_back({names[i], names[j], PairKind::SymOne});
      }
  } else {
    int root = t.tree.root();  // NotRooted if absent
    (void)root;
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        int vi = t.tree.vertex_of(names[i]);
        int vj = t.tree.vertex_of(names[j]);
        int u = t.tree.lca_vertices({vi, vj});
        long long si = t.path_sum(u, vi);
        long long sj = t.path_sum(u, vj);
        if (si == 0 && sj == 0)
          records.push_back({names[i], names[j], PairKind::Zero});
        else if (si == 0 && sj == 1)
          records.push_back({names[i], names[j], PairKind::DirOne});
        else if (si == 1 && sj == 0)
          records.push_back({names[j], names[i], PairKind::DirOne});
      }
  }
  return EventRelation(names, std::move(records));
}

bool explains(const EdgeLabeledTree& t, const EventRelation& r) {
  if (t.tree.taxa() != r.taxa())
    throw_validation("TaxaMismatch", "tree and relation have different taxa sets");
  switch (r.mode()) {
    case RelationMode::Symmetric:
      return derive_relation(t, RelationMode::Symmetric) == r;
    case RelationMode::Directed:
      return derive_relation(t, RelationMode::Directed) == r;
    case RelationMode::Mixed: {
      EventRelation d = derive_relation(t, RelationMode::Directed);
      // every record of r must be realized, and nothing extra may appear
      if (d.records().size() != r.records().size()) return false;
      for (const auto& rec : r.records()) {
        auto got = d.record(rec.a, rec.b);
        if (!got) return false;
        switch (rec.kind) {
          case PairKind::Zero:
            if (got->kind != PairKind::Zero) return false;
            break;
          case PairKind::DirOne:
            if (got->kind != PairKind::DirOne || got->a != rec.a || got->b != rec.b) return false;
            break;
          case PairKind::SymOne:
          case PairKind::UnkOne:
            if (got->kind != PairKind::DirOne) return false;
            break;
        }
      }
      return true;
    }
  }
  return false;
}

}  // namespace phylorel
