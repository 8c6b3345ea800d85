#include "phylorel/ternary.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace phylorel {

namespace {

std::array<std::string, 3> triple_key(std::string x, std::string y, std::string z) {
  std::array<std::string, 3> k{std::move(x), std::move(y), std::move(z)};
  std::sort(k.begin(), k.end());
  return k;
}

// every sorted 3-subset of a sorted vector
template <typename Fn>
void for_each_triple(const std::vector<std::string>& s, Fn&& fn) {
  const int n = static_cast<int>(s.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) fn(s[i], s[j], s[k]);
}

}  // namespace

TernaryMap::TernaryMap(std::vector<std::string> taxa,
                       std::map<std::array<std::string, 3>, std::string> values)
    : taxa_(std::move(taxa)), values_(std::move(values)) {
  std::sort(taxa_.begin(), taxa_.end());
  taxa_.erase(std::unique(taxa_.begin(), taxa_.end()), taxa_.end());
  if (taxa_.size() < 3)
    throw_validation("TooFewTaxa", "a ternary map needs at least three taxa");
  std::size_t expected = 0;
  for_each_triple(taxa_, [&](const std::string& x, const std::string& y, const std::string& z) {
    ++expected;
    if (!values_.count(triple_key(x, y, z))) {
      std::vector<std::string> missing{x, y, z};
      throw_validation("MissingTriple", "no value for {" + x + "," + y + "," + z + "}", missing);
    }
  });
  if (values_.size() != expected)
    throw_validation("UnknownTaxon", "a triple names a taxon outside the taxa set");
  for (const auto& [key, color] : values_) {
    (void)key;
    if (!is_valid_taxon_token(color))
      throw_syntax("BadColor", "invalid color token '" + color + "'");
  }
}

const std::string& TernaryMap::value(const std::string& x, const std::string& y,
                                     const std::string& z) const {
  auto it = values_.find(triple_key(x, y, z));
  if (it == values_.end())
    throw_validation("UnknownTaxon", "triple outside the taxa set", {x, y, z});
  return it->second;
}

std::vector<std::string> TernaryMap::colors() const {
  std::set<std::string> s;
  for (const auto& [key, c] : values_) {
    (void)key;
    s.insert(c);
  }
  return std::vector<std::string>(s.begin(), s.end());
}

TernaryMap parse_ternary(std::string_view text) {
  std::vector<std::string> taxa;
  std::map<std::array<std::string, 3>, std::string> values;
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
      while (std::getline(ss, name, ',')) taxa.push_back(name);
      continue;
    }
    if (fields.size() != 4)
      throw_syntax("SyntaxError", "malformed ternary record on line " + std::to_string(lineno));
    for (int f = 0; f < 4; ++f)
      if (!is_valid_taxon_token(fields[f]))
        throw_syntax("BadTaxon", "invalid token on line " + std::to_string(lineno));
    auto key = triple_key(fields[0], fields[1], fields[2]);
    if (key[0] == key[1] || key[1] == key[2])
      throw_syntax("SyntaxError", "triple with repeated taxa on line " + std::to_string(lineno));
    auto [it, fresh] = values.emplace(key, fields[3]);
    if (!fresh && it->second != fields[3])
      throw_validation("ConflictingTriple",
                       "triple {" + key[0] + "," + key[1] + "," + key[2] + "} has two values",
                       {key[0], key[1], key[2], it->second, fields[3]});
    for (int f = 0; f < 3; ++f) taxa.push_back(fields[f]);
  }
  return TernaryMap(std::move(taxa), std::move(values));
}

std::string serialize_ternary(const TernaryMap& d) {
  std::string out;
  for_each_triple(d.taxa(), [&](const std::string& x, const std::string& y, const std::string& z) {
    out += x + "\t" + y + "\t" + z + "\t" + d.value(x, y, z) + "\n";
  });
  return out;
}

TernaryMap derive_ternary(const DatedTree& t) {
  const auto& taxa = t.tree.taxa();
  if (taxa.size() < 3)
    throw_validation("TooFewTaxa", "ternary derivation needs at least three taxa");
  std::map<std::array<std::string, 3>, std::string> values;
  for_each_triple(taxa, [&](const std::string& x, const std::string& y, const std::string& z) {
    int med = t.tree.median(x, y, z);
    values[triple_key(x, y, z)] = t.color(med);
  });
  return TernaryMap(taxa, std::move(values));
}

PartitionSignature partition_signature(const TernaryMap& d, const std::vector<std::string>& s) {
  if (s.size() < 3) throw_validation("TooFewTaxa", "signatures need at least three taxa");
  std::vector<std::string> sub = s;
  std::sort(sub.begin(), sub.end());
  std::map<std::string, int> hist;
  for_each_triple(sub, [&](const std::string& x, const std::string& y, const std::string& z) {
    ++hist[d.value(x, y, z)];
  });
  PartitionSignature out;
  out.counts.assign(hist.begin(), hist.end());
  std::sort(out.counts.begin(), out.counts.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

std::string PartitionSignature::to_string() const {
  std::vector<int> cs;
  for (const auto& [c, n] : counts) {
    (void)c;
    cs.push_back(n);
  }
  std::sort(cs.begin(), cs.end());
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(cs[i]);
  }
  return out;
}

bool PartitionSignature::is(int a, int b) const {
  if (counts.size() != 2) return false;
  int hi = counts[0].second, lo = counts[1].second;
  return (hi == a && lo == b) || (hi == b && lo == a);
}

MetricReport check_metric(const TernaryMap& d) {
  MetricReport out;
  const auto& taxa = d.taxa();
  const int n = static_cast<int>(taxa.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          std::vector<std::string> four{taxa[i], taxa[j], taxa[k], taxa[l]};
          auto sig = partition_signature(d, four);
          bool ok = sig.counts.size() == 1 || sig.is(2, 2);
          if (!ok) out.violations.push_back({3, four, sig.to_string()});
        }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
          for (int m = l + 1; m < n; ++m) {
            std::vector<std::string> five{taxa[i], taxa[j], taxa[k], taxa[l], taxa[m]};
            auto sig = partition_signature(d, five);
            if (sig.is(5, 5)) out.violations.push_back({4, five, sig.to_string()});
          }
  return out;
}

K5Type classify_k5(const TernaryMap& d, const std::array<std::string, 5>& s) {
  std::vector<std::string> five(s.begin(), s.end());
  std::sort(five.begin(), five.end());
  if (std::adjacent_find(five.begin(), five.end()) != five.end())
    throw_validation("BadSubset", "classification needs five distinct taxa");
  // edge {a,b} of the K5 is colored by the remaining triple; check the
  // per-vertex Eulerian condition (the Condition-3 shape of each 4-set)
  for (const auto& v : five) {
    std::vector<std::string> rest;
    for (const auto& w : five)
      if (w != v) rest.push_back(w);
    auto sig = partition_signature(d, rest);
    if (!(sig.counts.size() == 1 || sig.is(2, 2)))
      throw_validation("Condition3Violation", "vertex '" + v + "' has an odd color split", rest);
  }
  std::map<std::string, int> class_sizes;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b < 5; ++b) {
      std::vector<std::string> rest;
      for (std::size_t c = 0; c < 5; ++c)
        if (c != a && c != b) rest.push_back(five[c]);
      ++class_sizes[d.value(rest[0], rest[1], rest[2])];
    }
  std::vector<int> sizes;
  for (const auto& [c, sz] : class_sizes) {
    (void)c;
    sizes.push_back(sz);
  }
  std::sort(sizes.begin(), sizes.end());
  if (sizes == std::vector<int>{3, 3, 4}) return K5Type::Type1;
  if (sizes == std::vector<int>{5, 5}) return K5Type::Type2;
  if (sizes == std::vector<int>{4, 6}) return K5Type::Type3;
  if (sizes == std::vector<int>{3, 7}) return K5Type::Type4;
  if (sizes == std::vector<int>{10}) return K5Type::Type5;
  throw_internal("K5", "class sizes escape the five types");
}

namespace {

// The resolver pattern: {x,y,z,u} constant with color m; adding e the
// triples {x,y,e} and {z,u,e} keep m for exactly one disjoint pairing and
// the other four e-triples share another color. Returns the kept pairing as
// a quartet, or nothing.
std::optional<Quartet> resolver_quartet(const TernaryMap& d,
                                        const std::array<std::string, 4>& four,
                                        const std::string& e) {
  const auto& [x, y, z, u] = four;
  const std::string& m = d.value(x, y, z);
  struct Pairing {
    std::array<std::string, 2> keep, other;
  };
  const Pairing pairings[3] = {{{x, y}, {z, u}}, {{x, z}, {y, u}}, {{x, u}, {y, z}}};
  for (const auto& p : pairings) {
    if (d.value(p.keep[0], p.keep[1], e) != m) continue;
    if (d.value(p.other[0], p.other[1], e) != m) continue;
    // the remaining four e-triples must agree on a single non-m color
    std::set<std::string> rest;
    for (const auto& a : p.keep)
      for (const auto& b : p.other) rest.insert(d.value(a, b, e));
    if (rest.size() == 1 && *rest.begin() != m)
      return Quartet(p.keep[0], p.keep[1], p.other[0], p.other[1]);
  }
  return std::nullopt;
}

}  // namespace

ResolutionReport is_fully_resolved(const TernaryMap& d) {
  ResolutionReport out;
  const auto& taxa = d.taxa();
  const int n = static_cast<int>(taxa.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          std::array<std::string, 4> four{taxa[i], taxa[j], taxa[k], taxa[l]};
          auto sig = partition_signature(d, {four.begin(), four.end()});
          if (sig.counts.size() != 1) continue;
          bool resolved = false;
          for (const auto& e : taxa) {
            if (e == four[0] || e == four[1] || e == four[2] || e == four[3]) continue;
            if (resolver_quartet(d, four, e)) {
              resolved = true;
              break;
            }
          }
          if (!resolved) {
            out.fully_resolved = false;
            out.unresolved.push_back(four);
          }
        }
  return out;
}

QuartetSystem generate_quartets(const TernaryMap& d) {
  const auto& taxa = d.taxa();
  const int n = static_cast<int>(taxa.size());
  std::set<Quartet> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          std::array<std::string, 4> four{taxa[i], taxa[j], taxa[k], taxa[l]};
          // values of the four triples, each keyed by the omitted taxon
          std::map<std::string, std::string> omit;
          omit[four[0]] = d.value(four[1], four[2], four[3]);
          omit[four[1]] = d.value(four[0], four[2], four[3]);
          omit[four[2]] = d.value(four[0], four[1], four[3]);
          omit[four[3]] = d.value(four[0], four[1], four[2]);
          std::set<std::string> distinct;
          for (auto& [t, c] : omit) {
            (void)t;
            distinct.insert(c);
          }
          if (distinct.size() == 2) {
            // pair the taxa whose omitted triples agree; 2-2 only
            std::vector<std::string> first, second;
            for (const auto& [t, c] : omit)
              (c == *distinct.begin() ? first : second).push_back(t);
            if (first.size() == 2)
              out.insert(Quartet(first[0], first[1], second[0], second[1]));
            // a 1-3 split violates Condition (3); no quartet is generated
          } else if (distinct.size() == 1) {
            std::optional<Quartet> found;
            for (const auto& e : taxa) {
              if (e == four[0] || e == four[1] || e == four[2] || e == four[3]) continue;
              auto q = resolver_quartet(d, four, e);
              if (!q) continue;
              if (found && !(*found == *q)) {
                std::vector<std::string> witness(four.begin(), four.end());
                witness.push_back(found->to_string());
                witness.push_back(q->to_string());
                throw_realizability("QuartetConflict",
                                    "two resolvers generate different quartets", witness);
              }
              found = q;
            }
            if (found) out.insert(*found);
          }
        }
  return QuartetSystem(taxa, std::move(out));
}

TaxonClasses equivalence_classes(const TernaryMap& d) {
  const auto& taxa = d.taxa();
  const int n = static_cast<int>(taxa.size());

  // x ~ y iff delta(x,y,.) is constant m and x,y see every (u,v) alike
  auto pair_color = [&](int i, int j) -> std::optional<std::string> {
    std::string m;
    for (int k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      const std::string& c = d.value(taxa[i], taxa[j], taxa[k]);
      if (m.empty())
        m = c;
      else if (m != c)
        return std::nullopt;
    }
    for (int u = 0; u < n; ++u) {
      if (u == i || u == j) continue;
      for (int v = u + 1; v < n; ++v) {
        if (v == i || v == j) continue;
        bool xs = d.value(taxa[i], taxa[u], taxa[v]) == m;
        bool ys = d.value(taxa[j], taxa[u], taxa[v]) == m;
        if (xs != ys) return std::nullopt;
      }
    }
    return m;
  };

  std::vector<std::vector<char>> eq(n, std::vector<char>(n, 0));
  std::map<std::pair<int, int>, std::string> colors;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (auto m = pair_color(i, j)) {
        eq[i][j] = eq[j][i] = 1;
        colors[{i, j}] = *m;
      }
  // transitivity is a theorem for metrics; its failure is evidence against d
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k && i != k && eq[i][j] && eq[j][k] && !eq[i][k])
          throw_validation("NotTransitive", "delta-equivalence fails to be transitive",
                           {taxa[i], taxa[j], taxa[k]});

  TaxonClasses out;
  std::vector<char> used(n, 0);
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::vector<std::string> cls{taxa[i]};
    used[i] = 1;
    for (int j = i + 1; j < n; ++j)
      if (eq[i][j]) {
        cls.push_back(taxa[j]);
        used[j] = 1;
        if (cls.size() == 2) out.class_color[cls.front()] = colors.at({i, j});
      }
    out.classes.push_back(std::move(cls));
  }
  return out;
}

namespace {

// collapsed super-taxon or plain taxon during bottom-up reconstruction
struct Unit {
  std::string name;         // representative (smallest member)
  std::string color;        // super-taxa only
  std::vector<Unit> kids;   // empty = plain taxon
  bool super() const { return !kids.empty(); }
};

// Attach a unit below `parent` in the builder; hubs get their own interior
// vertex colored with the unit color.
void attach_unit(const Unit& u, int parent, const std::string& parent_color, TreeBuilder& tb,
                 std::map<int, std::string>& colors) {
  if (!u.super()) {
    int leaf = tb.add_vertex(u.name);
    tb.add_edge(parent, leaf);
    return;
  }
  if (u.color == parent_color)
    throw_realizability("NonDiscriminating",
                        "adjacent interior vertices would share color '" + u.color + "'",
                        {u.name, u.color});
  int hub = tb.add_vertex();
  colors[hub] = u.color;
  tb.add_edge(parent, hub);
  for (const Unit& kid : u.kids) attach_unit(kid, hub, u.color, tb, colors);
}

}  // namespace

DatedTree reconstruct_ternary(const TernaryMap& d) {
  std::vector<Unit> units;
  for (const auto& t : d.taxa()) units.push_back({t, "", {}});

  auto unit_names = [&]() {
    std::vector<std::string> names;
    for (const auto& u : units) names.push_back(u.name);
    return names;
  };
  auto find_unit = [&](const std::string& name) -> Unit& {
    for (auto& u : units)
      if (u.name == name) return u;
    throw_internal("Reconstruct", "lost a unit");
  };

  // shrink until a single class covers the active taxa, or two units remain
  std::string star_color;
  while (true) {
    if (units.size() == 2) break;
    std::vector<std::string> active = unit_names();
    // restriction of d to the representatives; well-defined by m-equivalence
    std::map<std::array<std::string, 3>, std::string> values;
    for_each_triple(active, [&](const std::string& x, const std::string& y, const std::string& z) {
      values[triple_key(x, y, z)] = d.value(x, y, z);
    });
    TernaryMap cur(active, std::move(values));
    TaxonClasses cls = equivalence_classes(cur);  // may throw NotTransitive

    if (cls.classes.size() == 1) {
      star_color = cls.class_color.at(cls.classes[0][0]);
      break;
    }
    bool any_nontrivial = false;
    std::vector<Unit> next;
    for (const auto& c : cls.classes) {
      if (c.size() == 1) {
        next.push_back(std::move(find_unit(c[0])));
        continue;
      }
      any_nontrivial = true;
      Unit super;
      super.name = c.front();
      super.color = cls.class_color.at(c.front());
      for (const auto& member : c) super.kids.push_back(std::move(find_unit(member)));
      next.push_back(std::move(super));
    }
    if (!any_nontrivial)
      throw_realizability("NoPseudoCherry",
                          "no pseudo-cherry among " + std::to_string(units.size()) + " taxa",
                          unit_names());
    std::sort(next.begin(), next.end(),
              [](const Unit& a, const Unit& b) { return a.name < b.name; });
    units = std::move(next);
  }

  TreeBuilder tb;
  std::map<int, std::string> colors;
  if (units.size() == 2) {
    // one super-taxon plus one taxon, or two super-taxa: a single edge
    auto edge_end = [&](const Unit& u, const std::string& far_color) -> int {
      if (!u.super()) return tb.add_vertex(u.name);
      if (u.color == far_color)
        throw_realizability("NonDiscriminating",
                            "adjacent interior vertices would share color '" + u.color + "'",
                            {u.name, u.color});
      int hub = tb.add_vertex();
      colors[hub] = u.color;
      for (const Unit& kid : u.kids) attach_unit(kid, hub, u.color, tb, colors);
      return hub;
    };
    int a = edge_end(units[0], units[1].color);
    int b = edge_end(units[1], units[0].color);
    tb.add_edge(a, b);
  } else {
    int center = tb.add_vertex();
    colors[center] = star_color;
    for (const Unit& u : units) attach_unit(u, center, star_color, tb, colors);
  }
  DatedTree result = make_dated(tb.build(), std::move(colors));

  TernaryMap check = derive_ternary(result);
  if (!(check == d)) {
    for_each_triple(d.taxa(), [&](const std::string& x, const std::string& y,
                                  const std::string& z) {
      if (check.value(x, y, z) != d.value(x, y, z))
        throw_realizability("NotRealizable", "no dated tree induces this map", {x, y, z});
    });
    throw_realizability("NotRealizable", "no dated tree induces this map");
  }
  return result;
}

}  // namespace phylorel
