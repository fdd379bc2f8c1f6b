#include "msoequiv/structures.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "msoequiv/errors.hpp"

namespace msoeq {

Signature Signature::strings(std::vector<std::string> letters) {
  Signature s;
  s.node_labels = {kStringNodeLabel};
  s.edge_labels = std::move(letters);
  return s;
}

Signature Signature::trees(const std::map<std::string, int>& ranks) {
  Signature s;
  s.ranks = ranks;
  int m = 0;
  for (const auto& [l, r] : ranks) {
    if (r < 0) throw SignatureError("negative rank for " + l);
    s.node_labels.push_back(l);
    m = std::max(m, r);
  }
  for (int i = 1; i <= m; ++i) s.edge_labels.push_back(std::to_string(i));
  return s;
}

bool Signature::is_string_signature() const {
  return !ranked() && node_labels.size() == 1 && node_labels[0] == kStringNodeLabel;
}

int Signature::max_rank() const {
  int m = 0;
  for (const auto& [l, r] : ranks) m = std::max(m, r);
  return m;
}

int Signature::rank(const std::string& label) const {
  auto it = ranks.find(label);
  if (it == ranks.end()) throw SignatureError("unknown ranked symbol " + label);
  return it->second;
}

bool Signature::has_node_label(const std::string& l) const {
  return std::find(node_labels.begin(), node_labels.end(), l) != node_labels.end();
}

bool Signature::has_edge_label(const std::string& l) const {
  return std::find(edge_labels.begin(), edge_labels.end(), l) != edge_labels.end();
}

std::string to_string(const Signature& sig) {
  std::ostringstream os;
  os << "sigma:";
  for (const auto& l : sig.node_labels) {
    os << ' ' << l;
    if (sig.ranked()) os << '/' << sig.ranks.at(l);
  }
  os << " gamma:";
  for (const auto& l : sig.edge_labels) os << ' ' << l;
  return os.str();
}

std::size_t Graph::add_node(std::string label) {
  labels_.push_back(std::move(label));
  return labels_.size() - 1;
}

void Graph::add_edge(std::size_t src, std::string label, std::size_t dst) {
  if (src >= size() || dst >= size()) throw Error("edge references a missing node");
  edges_.push_back({src, std::move(label), dst});
}

bool Graph::has_edge(std::size_t src, const std::string& label, std::size_t dst) const {
  for (const auto& e : edges_)
    if (e.src == src && e.dst == dst && e.label == label) return true;
  return false;
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

std::string to_string(const Term& t) {
  std::string s = t.label;
  if (!t.children.empty()) {
    s += '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      if (i) s += ',';
      s += to_string(t.children[i]);
    }
    s += ')';
  }
  return s;
}

std::string to_string(const Word& w) {
  bool single = std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i) out += ' ';
    out += w[i];
  }
  return out;
}

namespace {

struct TermParser {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  Term parse() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != '(' && s[pos] != ')' && s[pos] != ',' &&
           !std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (start == pos) throw ParseError("expected a symbol in term", 1, pos + 1);
    Term t{s.substr(start, pos - start), {}};
    skip();
    if (pos < s.size() && s[pos] == '(') {
      ++pos;
      while (true) {
        t.children.push_back(parse());
        skip();
        if (pos < s.size() && s[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < s.size() && s[pos] == ')') {
          ++pos;
          break;
        }
        throw ParseError("expected ',' or ')' in term", 1, pos + 1);
      }
    }
    return t;
  }
};

}  // namespace

Term parse_term(const std::string& text) {
  TermParser p{text};
  Term t = p.parse();
  p.skip();
  if (p.pos != text.size()) throw ParseError("trailing characters after term", 1, p.pos + 1);
  return t;
}

Word parse_word(const std::string& text, const std::vector<std::string>& alphabet) {
  bool single = std::all_of(alphabet.begin(), alphabet.end(), [](const std::string& s) { return s.size() == 1; });
  Word w;
  std::string trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
  trimmed.erase(trimmed.find_last_not_of(" \t\r\n") + 1);
  if (trimmed == "ε" || trimmed.empty()) return w;
  if (single) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) w.emplace_back(1, c);
  } else {
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) w.push_back(tok);
  }
  return w;
}

Graph string_to_graph(const Word& w, const std::vector<std::string>& alphabet) {
  Graph g;
  g.add_node(kStringNodeLabel);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::find(alphabet.begin(), alphabet.end(), w[i]) == alphabet.end())
      throw SignatureError("letter '" + w[i] + "' not in alphabet");
    g.add_node(kStringNodeLabel);
    g.add_edge(i, w[i], i + 1);
  }
  return g;
}

namespace {

// Walks a path graph from its unique source; empty result on failure.
std::optional<std::vector<std::size_t>> path_order(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) return std::nullopt;
  std::vector<int> in(n, 0), out(n, 0);
  std::vector<std::optional<std::size_t>> succ(n);
  for (const auto& e : g.edges()) {
    ++in[e.dst];
    ++out[e.src];
    succ[e.src] = e.dst;
  }
  std::optional<std::size_t> src;
  for (std::size_t v = 0; v < n; ++v) {
    if (in[v] > 1 || out[v] > 1) return std::nullopt;
    if (in[v] == 0) {
      if (src) return std::nullopt;
      src = v;
    }
  }
  if (!src) return std::nullopt;
  std::vector<std::size_t> order{*src};
  std::vector<bool> seen(n, false);
  seen[*src] = true;
  while (succ[order.back()]) {
    std::size_t nx = *succ[order.back()];
    if (seen[nx]) return std::nullopt;
    seen[nx] = true;
    order.push_back(nx);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

}  // namespace

bool is_string_graph(const Graph& g) {
  for (const auto& l : g.labels())
    if (l != kStringNodeLabel) return false;
  return path_order(g).has_value();
}

Word graph_to_string(const Graph& g) {
  if (!is_string_graph(g)) throw Error("graph is not a string graph");
  auto order = *path_order(g);
  std::vector<std::string> letter_from(g.size());
  for (const auto& e : g.edges()) letter_from[e.src] = e.label;
  Word w;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) w.push_back(letter_from[order[i]]);
  return w;
}

const std::string& letter_at(const Word& w, std::size_t i) {
  if (i < 1 || i > w.size())
    throw Error("position " + std::to_string(i) + " out of range for word of length " + std::to_string(w.size()));
  return w[i - 1];
}

void check_term(const Term& t, const Signature& sig) {
  if (!sig.ranks.count(t.label)) throw SignatureError("unknown tree symbol " + t.label);
  int r = sig.ranks.at(t.label);
  if (static_cast<int>(t.children.size()) != r)
    throw SignatureError("symbol " + t.label + " has rank " + std::to_string(r) + " but " +
                         std::to_string(t.children.size()) + " children");
  for (const auto& c : t.children) check_term(c, sig);
}

Graph tree_to_graph(const Term& t, const Signature& sig) {
  check_term(t, sig);
  Graph g;
  std::function<std::size_t(const Term&)> build = [&](const Term& n) {
    std::size_t v = g.add_node(n.label);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      std::size_t c = build(n.children[i]);
      g.add_edge(v, std::to_string(i + 1), c);
    }
    return v;
  };
  build(t);
  return g;
}

namespace {

std::optional<Term> try_graph_to_tree(const Graph& g, const Signature& sig) {
  const std::size_t n = g.size();
  if (n == 0) return std::nullopt;
  std::vector<int> in(n, 0);
  std::vector<std::vector<std::optional<std::size_t>>> kids(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto it = sig.ranks.find(g.label(v));
    if (it == sig.ranks.end()) return std::nullopt;
    kids[v].assign(it->second, std::nullopt);
  }
  for (const auto& e : g.edges()) {
    ++in[e.dst];
    int idx = 0;
    try {
      idx = std::stoi(e.label);
    } catch (...) {
      return std::nullopt;
    }
    if (std::to_string(idx) != e.label) return std::nullopt;
    if (idx < 1 || idx > static_cast<int>(kids[e.src].size())) return std::nullopt;
    if (kids[e.src][idx - 1]) return std::nullopt;
    kids[e.src][idx - 1] = e.dst;
  }
  std::optional<std::size_t> root;
  for (std::size_t v = 0; v < n; ++v) {
    if (in[v] > 1) return std::nullopt;
    if (in[v] == 0) {
      if (root) return std::nullopt;
      root = v;
    }
    for (const auto& k : kids[v])
      if (!k) return std::nullopt;
  }
  if (!root) return std::nullopt;
  std::size_t visited = 0;
  std::function<Term(std::size_t)> build = [&](std::size_t v) {
    ++visited;
    Term t{g.label(v), {}};
    for (const auto& k : kids[v]) t.children.push_back(build(*k));
    return t;
  };
  // in-degree <= 1 with a unique root rules out cycles through the root;
  // a cycle elsewhere would leave nodes unvisited.
  if (visited > n) return std::nullopt;
  Term t = build(*root);
  if (visited != n) return std::nullopt;
  return t;
}

}  // namespace

bool is_tree_graph(const Graph& g, const Signature& sig) { return try_graph_to_tree(g, sig).has_value(); }

Term graph_to_tree(const Graph& g, const Signature& sig) {
  auto t = try_graph_to_tree(g, sig);
  if (!t) throw Error("graph is not a tree over " + to_string(sig));
  return *t;
}

Word preorder(const Term& t) {
  Word w{t.label};
  for (const auto& c : t.children) {
    Word sub = preorder(c);
    w.insert(w.end(), sub.begin(), sub.end());
  }
  return w;
}

bool is_dgraph(const Graph& g) { return g.edges().empty(); }

ParikhVector parikh(const Graph& g, const std::vector<std::string>& order) {
  ParikhVector v(order.size(), 0);
  for (const auto& l : g.labels()) {
    auto it = std::find(order.begin(), order.end(), l);
    if (it == order.end()) throw SignatureError("label '" + l + "' outside the Parikh alphabet");
    ++v[it - order.begin()];
  }
  return v;
}

ParikhVector parikh(const Word& w, const std::vector<std::string>& order) {
  ParikhVector v(order.size(), 0);
  for (const auto& l : w) {
    auto it = std::find(order.begin(), order.end(), l);
    if (it == order.end()) throw SignatureError("letter '" + l + "' outside the Parikh alphabet");
    ++v[it - order.begin()];
  }
  return v;
}

Graph dgr(const ParikhVector& v, const std::vector<std::string>& order) {
  if (v.size() != order.size()) throw Error("Parikh vector dimension mismatch");
  Graph g;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) throw Error("negative Parikh component");
    for (std::int64_t k = 0; k < v[i]; ++k) g.add_node(order[i]);
  }
  return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g = a;
  const std::size_t off = a.size();
  for (const auto& l : b.labels()) g.add_node(l);
  for (const auto& e : b.edges()) g.add_edge(e.src + off, e.label, e.dst + off);
  return g;
}

std::string canonical_key(const Graph& g) {
  if (is_string_graph(g)) return "w:" + to_string(graph_to_string(g));
  if (is_dgraph(g)) {
    auto ls = g.labels();
    std::sort(ls.begin(), ls.end());
    std::string k = "d:";
    for (const auto& l : ls) k += l + ",";
    return k;
  }
  // Any graph that decodes as a tree under its own labels.
  {
    Signature sig;
    std::map<std::string, int> ranks;
    std::vector<int> out(g.size(), 0);
    for (const auto& e : g.edges()) ++out[e.src];
    bool consistent = true;
    for (std::size_t v = 0; v < g.size(); ++v) {
      auto [it, fresh] = ranks.emplace(g.label(v), out[v]);
      if (!fresh && it->second != out[v]) consistent = false;
    }
    if (consistent) {
      sig.ranks = ranks;
      if (auto t = try_graph_to_tree(g, sig)) return "t:" + to_string(*t);
    }
  }
  return "g:" + format_graph(g);
}

Graph parse_graph(const std::string& text) {
  Graph g;
  std::unordered_map<std::string, std::size_t> ids;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::tuple<std::string, std::string, std::string, std::size_t>> edges;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.rfind("//", 0) == 0) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() == 2) {
      if (ids.count(tok[0])) throw ParseError("duplicate node id " + tok[0], lineno, 1);
      ids[tok[0]] = g.add_node(tok[1]);
    } else if (tok.size() == 3) {
      edges.emplace_back(tok[0], tok[1], tok[2], lineno);
    } else {
      throw ParseError("expected 'id label' or 'src label dst'", lineno, 1);
    }
  }
  for (const auto& [s, l, d, ln] : edges) {
    if (!ids.count(s) || !ids.count(d)) throw ParseError("edge references unknown node", ln, 1);
    g.add_edge(ids[s], l, ids[d]);
  }
  return g;
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  for (std::size_t v = 0; v < g.size(); ++v) os << v << ' ' << g.label(v) << '\n';
  auto es = g.edges();
  std::sort(es.begin(), es.end());
  for (const auto& e : es) os << e.src << ' ' << e.label << ' ' << e.dst << '\n';
  return os.str();
}

}  // namespace msoeq
