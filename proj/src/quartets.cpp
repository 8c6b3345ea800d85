#include "phylorel/quartets.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace phylorel {

Quartet::Quartet(const std::string& a, const std::string& b, const std::string& c,
                 const std::string& d) {
  std::array<std::string, 2> p1{a, b}, p2{c, d};
  std::sort(p1.begin(), p1.end());
  std::sort(p2.begin(), p2.end());
  if (p2[0] < p1[0]) std::swap(p1, p2);
  t = {p1[0], p1[1], p2[0], p2[1]};
  std::array<std::string, 4> all = t;
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw_validation("BadQuartet", "a quartet needs four distinct taxa",
                     {all.begin(), all.end()});
}

std::string Quartet::to_string() const { return t[0] + t[1] + "|" + t[2] + t[3]; }

QuartetSystem::QuartetSystem(std::vector<std::string> taxa, std::set<Quartet> quartets)
    : taxa_(std::move(taxa)), quartets_(std::move(quartets)) {
  std::sort(taxa_.begin(), taxa_.end());
  taxa_.erase(std::unique(taxa_.begin(), taxa_.end()), taxa_.end());
  for (const auto& q : quartets_)
    for (const auto& name : q.t)
      if (!std::binary_search(taxa_.begin(), taxa_.end(), name))
        throw_validation("UnknownTaxon", "quartet uses taxon '" + name + "' not in the taxa set",
                         {name});
}

std::optional<Quartet> QuartetSystem::on(const std::array<std::string, 4>& four) const {
  const auto& [a, b, c, d] = four;
  for (const Quartet& q : {Quartet(a, b, c, d), Quartet(a, c, b, d), Quartet(a, d, b, c)})
    if (contains(q)) return q;
  return std::nullopt;
}

QuartetSystem displayed_quartets(const Tree& t) {
  const auto& names = t.taxa();
  const int n = static_cast<int>(names.size());
  std::set<Quartet> out;
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = t.vertex_of(names[i]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          auto test = [&](int a, int b, int c, int d) {
            return t.median(v[a], v[b], v[c]) == t.median(v[a], v[b], v[d]) &&
                   t.median(v[a], v[c], v[d]) == t.median(v[b], v[c], v[d]) &&
                   t.median(v[a], v[b], v[c]) != t.median(v[a], v[c], v[d]);
          };
          if (test(i, j, k, l)) out.insert(Quartet(names[i], names[j], names[k], names[l]));
          if (test(i, k, j, l)) out.insert(Quartet(names[i], names[k], names[j], names[l]));
          if (test(i, l, j, k)) out.insert(Quartet(names[i], names[l], names[j], names[k]));
        }
  return QuartetSystem(names, std::move(out));
}

QuartetProperties check_properties(const QuartetSystem& q) {
  QuartetProperties out;
  const auto& taxa = q.taxa();
  const int n = static_cast<int>(taxa.size());

  // thin and complete: per 4-set counts
  for (int i = 0; i < n && (out.thin || out.complete); ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          int present = 0;
          for (const Quartet& c : {Quartet(taxa[i], taxa[j], taxa[k], taxa[l]),
                                   Quartet(taxa[i], taxa[k], taxa[j], taxa[l]),
                                   Quartet(taxa[i], taxa[l], taxa[j], taxa[k])})
            if (q.contains(c)) ++present;
          if (present > 1 && out.thin) {
            out.thin = false;
            out.thin_witness = {taxa[i], taxa[j], taxa[k], taxa[l]};
          }
          if (present != 1 && out.complete) {
            out.complete = false;
            out.complete_witness = {taxa[i], taxa[j], taxa[k], taxa[l]};
          }
        }
  if (n < 4) out.complete = true;  // vacuous on tiny systems

  // transitive: ab|ce and ab|de force ab|cd
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<std::string, std::string>>>
      by_side;
  for (const Quartet& c : q.quartets()) {
    by_side[{c.t[0], c.t[1]}].push_back({c.t[2], c.t[3]});
    by_side[{c.t[2], c.t[3]}].push_back({c.t[0], c.t[1]});
  }
  for (const auto& [ab, sides] : by_side) {
    if (!out.transitive) break;
    for (const auto& ce : sides) {
      for (const auto& de : sides) {
        std::string c, d, e;
        if (ce.second == de.second && ce.first != de.first) {
          e = ce.second, c = ce.first, d = de.first;
        } else if (ce.second == de.first && ce.first != de.second) {
          e = ce.second, c = ce.first, d = de.second;
        } else if (ce.first == de.second && ce.second != de.first) {
          e = ce.first, c = ce.second, d = de.first;
        } else if (ce.first == de.first && ce.second != de.second) {
          e = ce.first, c = ce.second, d = de.second;
        } else {
          continue;
        }
        if (c == ab.first || c == ab.second || d == ab.first || d == ab.second ||
            e == ab.first || e == ab.second)
          continue;
        if (!q.contains(Quartet(ab.first, ab.second, c, d))) {
          out.transitive = false;
          out.transitive_witness = {ab.first, ab.second, c, d, e};
          break;
        }
      }
      if (!out.transitive) break;
    }
  }

  // saturated, for every labeling of the quartet
  for (const Quartet& c : q.quartets()) {
    if (!out.saturated) break;
    const std::string &a = c.t[0], &b = c.t[1], &cc = c.t[2], &dd = c.t[3];
    for (const auto& e : taxa) {
      if (e == a || e == b || e == cc || e == dd) continue;
      bool ae = q.contains(Quartet(a, e, cc, dd));
      bool be = q.contains(Quartet(b, e, cc, dd));
      bool ce = q.contains(Quartet(a, b, cc, e));
      bool de = q.contains(Quartet(a, b, dd, e));
      bool ok = (ae || ce) && (be || ce) && (ae || de) && (be || de);
      if (!ok) {
        out.saturated = false;
        out.saturated_witness = {a, b, cc, dd, e};
        break;
      }
    }
  }
  return out;
}

namespace {

// All quartets of `q` over four placed taxa must match the candidate tree,
// including absence.
bool consistent_with(const Tree& cand, const QuartetSystem& q,
                     const std::vector<std::string>& placed, const std::string& z) {
  const int m = static_cast<int>(placed.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        std::array<std::string, 4> four{placed[i], placed[j], placed[k], z};
        auto want = q.on(four);
        int vz = cand.vertex_of(z);
        int vi = cand.vertex_of(placed[i]);
        int vj = cand.vertex_of(placed[j]);
        int vk = cand.vertex_of(placed[k]);
        auto displayed = [&](int a, int b, int c, int d) {
          return cand.median(a, b, c) == cand.median(a, b, d) &&
                 cand.median(a, c, d) == cand.median(b, c, d) &&
                 cand.median(a, b, c) != cand.median(a, c, d);
        };
        std::optional<Quartet> got;
        if (displayed(vi, vj, vk, vz)) got = Quartet(placed[i], placed[j], placed[k], z);
        else if (displayed(vi, vk, vj, vz)) got = Quartet(placed[i], placed[k], placed[j], z);
        else if (displayed(vi, vz, vj, vk)) got = Quartet(placed[i], z, placed[j], placed[k]);
        if (want.has_value() != got.has_value()) return false;
        if (want && !(*want == *got)) return false;
      }
  return true;
}

Tree attach_flat(const Tree& t, int at, const std::string& z) {
  TreeBuilder tb;
  std::vector<int> id(t.vertex_count());
  for (int v = 0; v < t.vertex_count(); ++v) id[v] = tb.add_vertex(t.taxon(v));
  for (const auto& e : t.edges()) tb.add_edge(id[e.first], id[e.second]);
  int leaf = tb.add_vertex(z);
  tb.add_edge(id[at], leaf);
  return tb.build();
}

Tree attach_subdivide(const Tree& t, const Edge& e, const std::string& z) {
  TreeBuilder tb;
  std::vector<int> id(t.vertex_count());
  for (int v = 0; v < t.vertex_count(); ++v) id[v] = tb.add_vertex(t.taxon(v));
  for (const auto& f : t.edges())
    if (!(f == e)) tb.add_edge(id[f.first], id[f.second]);
  int mid = tb.add_vertex();
  tb.add_edge(id[e.first], mid);
  tb.add_edge(id[e.second], mid);
  int leaf = tb.add_vertex(z);
  tb.add_edge(mid, leaf);
  return tb.build();
}

}  // namespace

Tree tree_from_quartets(const QuartetSystem& q) {
  const auto& taxa = q.taxa();
  if (taxa.empty()) throw_validation("EmptySubset", "no taxa to build a tree on");
  TreeBuilder tb;
  if (taxa.size() == 1) {
    tb.add_vertex(taxa[0]);
    return tb.build();
  }
  if (taxa.size() == 2) {
    int a = tb.add_vertex(taxa[0]);
    int b = tb.add_vertex(taxa[1]);
    tb.add_edge(a, b);
    return tb.build();
  }
  // seed: star on the three smallest taxa, then place the rest in lex order
  int center = tb.add_vertex();
  for (int i = 0; i < 3; ++i) {
    int leaf = tb.add_vertex(taxa[i]);
    tb.add_edge(center, leaf);
  }
  Tree cur = tb.build();
  std::vector<std::string> placed(taxa.begin(), taxa.begin() + 3);

  for (std::size_t zi = 3; zi < taxa.size(); ++zi) {
    const std::string& z = taxa[zi];
    std::vector<Tree> winners;
    for (int v : cur.interior_vertices()) {
      Tree cand = attach_flat(cur, v, z);
      if (consistent_with(cand, q, placed, z)) winners.push_back(std::move(cand));
    }
    for (const auto& e : cur.edges()) {
      Tree cand = attach_subdivide(cur, e, z);
      if (consistent_with(cand, q, placed, z)) winners.push_back(std::move(cand));
    }
    if (winners.empty())
      throw_realizability("NoPlacement", "taxon '" + z + "' fits no attachment point", {z});
    if (winners.size() > 1)
      throw_realizability("AmbiguousPlacement", "taxon '" + z + "' fits several attachment points",
                          {z});
    cur = std::move(winners.front());
    placed.push_back(z);
  }
  if (!(displayed_quartets(cur) == q))
    throw_realizability("Inconsistent", "system is not the quartet system of any tree");
  return cur;
}

QuartetSystem parse_quartets(std::string_view text) {
  std::vector<std::string> taxa;
  std::set<Quartet> quartets;
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
    if (fields.size() != 5 || fields[2] != "|")
      throw_syntax("SyntaxError", "malformed quartet on line " + std::to_string(lineno));
    for (int f : {0, 1, 3, 4})
      if (!is_valid_taxon_token(fields[f]))
        throw_syntax("BadTaxon", "invalid taxon on line " + std::to_string(lineno));
    quartets.insert(Quartet(fields[0], fields[1], fields[3], fields[4]));
    for (int f : {0, 1, 3, 4}) taxa.push_back(fields[f]);
  }
  return QuartetSystem(std::move(taxa), std::move(quartets));
}

std::string serialize_quartets(const QuartetSystem& q) {
  std::string out;
  std::set<std::string> mentioned;
  for (const Quartet& c : q.quartets())
    for (const auto& t : c.t) mentioned.insert(t);
  std::string isolated;
  for (const auto& t : q.taxa())
    if (!mentioned.count(t)) {
      if (!isolated.empty()) isolated += ',';
      isolated += t;
    }
  if (!isolated.empty()) out += "taxa\t" + isolated + "\n";
  for (const Quartet& c : q.quartets())
    out += c.t[0] + "\t" + c.t[1] + "\t|\t" + c.t[2] + "\t" + c.t[3] + "\n";
  return out;
}

}  // namespace phylorel
