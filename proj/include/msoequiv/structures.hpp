#pragma once

// Graphs and the string / tree / discrete-graph encodings built on them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace msoeq {

/// Label used on every node of a string graph.
inline const std::string kStringNodeLabel = "#";

/// A pair of node and edge alphabets, optionally ranked.
///
/// A ranked signature describes trees: every node label carries a rank and
/// the edge labels are "1".."m" with m the maximal rank.
struct Signature {
  std::vector<std::string> node_labels;
  std::vector<std::string> edge_labels;
  std::map<std::string, int> ranks;  // empty unless ranked

  static Signature strings(std::vector<std::string> letters);
  static Signature trees(const std::map<std::string, int>& ranks);

  bool ranked() const { return !ranks.empty(); }
  bool is_string_signature() const;
  int max_rank() const;
  int rank(const std::string& label) const;
  bool has_node_label(const std::string& l) const;
  bool has_edge_label(const std::string& l) const;

  bool operator==(const Signature&) const = default;
};

std::string to_string(const Signature& sig);

struct Edge {
  std::size_t src;
  std::string label;
  std::size_t dst;
  auto operator<=>(const Edge&) const = default;
};

/// Finite graph (V, E, lambda). Nodes are dense indices 0..size()-1.
class Graph {
 public:
  std::size_t add_node(std::string label);
  void add_edge(std::size_t src, std::string label, std::size_t dst);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(std::size_t src, const std::string& label, std::size_t dst) const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

using Word = std::vector<std::string>;
using ParikhVector = std::vector<std::int64_t>;

/// Ranked term, e.g. f(a,b).
struct Term {
  std::string label;
  std::vector<Term> children;

  std::size_t size() const;
  bool operator==(const Term&) const = default;
  auto operator<=>(const Term& o) const {
    if (auto c = label <=> o.label; c != 0) return c;
    return children <=> o.children;
  }
};

std::string to_string(const Term& t);
std::string to_string(const Word& w);

/// Parses "f(a,b)". Labels are runs of characters other than "(),".
Term parse_term(const std::string& text);
/// Splits into single-character symbols when every letter of the alphabet
/// has length 1, otherwise on whitespace.
Word parse_word(const std::string& text, const std::vector<std::string>& alphabet);

// Strings.
Graph string_to_graph(const Word& w, const std::vector<std::string>& alphabet);
bool is_string_graph(const Graph& g);
/// Throws Error when g is not a string graph.
Word graph_to_string(const Graph& g);
/// The i-th letter, 1-based.
const std::string& letter_at(const Word& w, std::size_t i);

// Trees.
void check_term(const Term& t, const Signature& sig);
Graph tree_to_graph(const Term& t, const Signature& sig);
bool is_tree_graph(const Graph& g, const Signature& sig);
Term graph_to_tree(const Graph& g, const Signature& sig);
/// Node labels in pre-order.
Word preorder(const Term& t);

// Discrete graphs and Parikh vectors.
bool is_dgraph(const Graph& g);
ParikhVector parikh(const Graph& g, const std::vector<std::string>& order);
ParikhVector parikh(const Word& w, const std::vector<std::string>& order);
Graph dgr(const ParikhVector& v, const std::vector<std::string>& order);
Graph disjoint_union(const Graph& a, const Graph& b);

/// Key identifying a graph up to the isomorphisms that matter here:
/// string graphs by word, trees by term, dgraphs by label multiset.
std::string canonical_key(const Graph& g);

/// `.gr` text: node lines "id label", edge lines "src label dst".
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

}  // namespace msoeq
