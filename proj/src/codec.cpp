#include "phylorel/codec.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace phylorel {

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw_syntax("SyntaxError", what + " at offset " + std::to_string(pos));
  }

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' ||
                                 text[pos] == '\n'))
      ++pos;
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  char peek() {
    skip_space();
    if (pos >= text.size()) fail("unexpected end of input");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string token() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                c == '_' || c == '.' || c == '-';
      if (!ok) break;
      ++pos;
    }
    if (pos == start) fail("expected a token");
    return std::string(text.substr(start, pos - start));
  }

  int edge_label() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected an edge label");
    std::string digits(text.substr(start, pos - start));
    if (digits != "0" && digits != "1")
      throw_syntax("BadLabel", "edge label must be 0 or 1 on input, got '" + digits + "'");
    return digits == "1" ? 1 : 0;
  }
};

struct Node {
  std::vector<Node> children;
  std::string name;        // taxon (leaf) or color (interior); may be empty on interiors
  int label = -1;          // label of the edge to the parent; -1 = absent
  bool leaf() const { return children.empty(); }
};

Node parse_node(Parser& p, bool outermost) {
  Node n;
  if (p.peek() == '(') {
    p.expect('(');
    n.children.push_back(parse_node(p, false));
    while (p.peek() == ',') {
      p.expect(',');
      n.children.push_back(parse_node(p, false));
    }
    p.expect(')');
    p.skip_space();
    if (p.pos < p.text.size()) {
      char c = p.text[p.pos];
      if (c != ':' && c != ',' && c != ')' && c != ';') n.name = p.token();
    }
  } else {
    n.name = p.token();
    if (!is_valid_taxon_token(n.name)) p.fail("invalid token");
  }
  p.skip_space();
  if (p.pos < p.text.size() && p.text[p.pos] == ':') {
    ++p.pos;
    if (outermost) throw_syntax("BadLabel", "the outermost node has no parent edge");
    n.label = p.edge_label();
  }
  return n;
}

}  // namespace

ParsedTree parse_tree(std::string_view text) {
  // strip comment lines; pick up the optional header
  std::string body;
  bool rooted = false;
  {
    std::size_t i = 0;
    bool header_seen = false;
    while (i < text.size()) {
      std::size_t eol = text.find('\n', i);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(i, eol - i);
      std::size_t ns = line.find_first_not_of(" \t\r");
      if (ns != std::string_view::npos && line[ns] == '#') {
        std::string_view word = line.substr(ns);
        while (!word.empty() && (word.back() == ' ' || word.back() == '\t' || word.back() == '\r'))
          word.remove_suffix(1);
        if (!header_seen && (word == "#rooted" || word == "#unrooted")) {
          rooted = (word == "#rooted");
          header_seen = true;
        }
        // other '#' lines are comments
      } else {
        body.append(line);
        body.push_back('\n');
        if (ns != std::string_view::npos) header_seen = true;  // header allowed only before content
      }
      i = eol + 1;
    }
  }

  Parser p{body};
  if (p.at_end()) p.fail("empty input");
  Node top = parse_node(p, true);
  p.expect(';');
  if (!p.at_end()) p.fail("trailing content after ';'");

  ParsedTree out;
  TreeBuilder tb;
  std::map<Edge, int> labels;
  std::map<int, std::string> colors;
  bool all_labeled = true;

  // An unrooted outermost node with one child is the far leaf of a two-taxon
  // tree; everywhere else a parenthesized node is interior.
  std::function<int(const Node&, bool)> build = [&](const Node& n, bool outer) -> int {
    if (n.leaf()) {
      return tb.add_vertex(n.name);
    }
    bool outer_leaf = outer && !rooted && n.children.size() == 1;
    int v;
    if (outer_leaf) {
      if (n.name.empty()) throw_syntax("SyntaxError", "two-taxon tree needs a taxon on the outer node");
      v = tb.add_vertex(n.name);
    } else {
      v = tb.add_vertex();
      if (!n.name.empty()) colors.emplace(v, n.name);
    }
    for (const Node& c : n.children) {
      int w = build(c, false);
      tb.add_edge(v, w);
      if (c.label >= 0)
        labels[make_edge(v, w)] = c.label;
      else
        all_labeled = false;
    }
    return v;
  };

  if (top.leaf()) {
    // single-vertex tree; its only vertex is inner vertex and leaf at once
    int v = tb.add_vertex(top.name);
    if (rooted) tb.set_root(v);
  } else {
    int r = build(top, true);
    if (rooted) tb.set_root(r);
  }

  out.tree = tb.build();
  if (rooted && out.tree.vertex_count() > 1 && out.tree.has_taxon(out.tree.root()))
    throw_syntax("BadRoot", "the root must be an inner vertex");
  out.labels = std::move(labels);
  out.colors = std::move(colors);
  out.labels_complete = all_labeled && out.tree.vertex_count() > 1;
  if (out.tree.vertex_count() == 1) out.labels_complete = true;
  out.colors_complete = true;
  for (int v : out.tree.interior_vertices()) {
    if (out.tree.vertex_count() == 1) break;
    if (!out.colors.count(v)) out.colors_complete = false;
  }
  out.discriminating = true;
  for (auto& [v, c] : out.colors)
    for (int w : out.tree.neighbors(v)) {
      auto it = out.colors.find(w);
      if (it != out.colors.end() && it->second == c) out.discriminating = false;
    }
  return out;
}

EdgeLabeledTree to_edge_labeled(const ParsedTree& p) {
  if (!p.labels_complete)
    throw_syntax("MissingLabel", "every edge needs a 0/1 label for an event-labeled tree");
  return make_edge_labeled(p.tree, p.labels);
}

DatedTree to_dated(const ParsedTree& p) {
  if (!p.colors_complete)
    throw_syntax("MissingColor", "every interior vertex needs a color for a dated tree");
  return make_dated(p.tree, p.colors);
}

namespace {

struct Emitter {
  const Tree& t;
  const std::map<Edge, int>* labels;
  const std::map<int, std::string>* colors;
  // smallest taxon in the subtree of v away from parent
  std::map<std::pair<int, int>, std::string> min_taxon_cache;

  const std::string& min_taxon(int v, int parent) {
    auto key = std::make_pair(v, parent);
    auto it = min_taxon_cache.find(key);
    if (it != min_taxon_cache.end()) return it->second;
    std::string best;
    if (t.has_taxon(v)) best = t.taxon(v);
    for (int w : t.neighbors(v)) {
      if (w == parent) continue;
      const std::string& sub = min_taxon(w, v);
      if (best.empty() || (!sub.empty() && sub < best)) best = sub;
    }
    return min_taxon_cache.emplace(key, std::move(best)).first->second;
  }

  void emit(std::string& out, int v, int parent) {
    std::vector<int> kids;
    for (int w : t.neighbors(v))
      if (w != parent) kids.push_back(w);
    if (kids.empty()) {
      out += t.taxon(v);
    } else {
      std::sort(kids.begin(), kids.end(),
                [&](int a, int b) { return min_taxon(a, v) < min_taxon(b, v); });
      out += '(';
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ',';
        emit(out, kids[i], v);
        if (labels) {
          auto it = labels->find(make_edge(v, kids[i]));
          if (it != labels->end()) {
            out += ':';
            out += std::to_string(it->second);
          }
        }
      }
      out += ')';
      if (t.has_taxon(v)) {
        out += t.taxon(v);  // far leaf of a two-taxon tree
      } else if (colors) {
        auto it = colors->find(v);
        if (it != colors->end()) out += it->second;
      }
    }
  }
};

}  // namespace

std::string serialize_tree(const Tree& t, const std::map<Edge, int>* labels,
                           const std::map<int, std::string>* colors) {
  std::string out = t.rooted() ? "#rooted\n" : "#unrooted\n";
  Emitter em{t, labels, colors, {}};
  int start;
  if (t.vertex_count() == 1) {
    out += t.taxon(0);
    out += ";\n";
    return out;
  }
  if (t.rooted()) {
    start = t.root();
  } else {
    int small = t.vertex_of(t.taxa().front());
    start = t.neighbors(small).front();
  }
  em.emit(out, start, -1);
  out += ";\n";
  return out;
}

std::string serialize_tree(const EdgeLabeledTree& t) {
  return serialize_tree(t.tree, &t.labels, nullptr);
}

std::string serialize_tree(const DatedTree& t) { return serialize_tree(t.tree, nullptr, &t.colors); }

std::string serialize_tree(const ParsedTree& t) {
  const std::map<Edge, int>* labels = t.labels.empty() ? nullptr : &t.labels;
  const std::map<int, std::string>* colors = t.colors.empty() ? nullptr : &t.colors;
  return serialize_tree(t.tree, labels, colors);
}

std::string canonical_form(const Tree& t) { return serialize_tree(t, nullptr, nullptr); }
std::string canonical_form(const EdgeLabeledTree& t) { return serialize_tree(t); }
std::string canonical_form(const DatedTree& t) { return serialize_tree(t); }

}  // namespace phylorel
