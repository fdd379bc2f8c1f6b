#include "msoequiv/domain.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "msoequiv/errors.hpp"

namespace msoeq {

namespace {

// Thompson automaton with epsilon moves.
struct Nfa {
  struct Node {
    std::vector<std::size_t> eps;
    std::vector<std::pair<std::size_t, std::size_t>> moves;  // letter, target
  };
  std::vector<Node> nodes;
  std::size_t add() {
    nodes.emplace_back();
    return nodes.size() - 1;
  }
};

struct Fragment {
  std::size_t in, out;
};

class RegexParser {
 public:
  RegexParser(const std::string& text, Nfa& nfa, std::map<std::string, std::size_t>& letters)
      : text_(text), nfa_(nfa), letters_(letters) {}

  Fragment parse() {
    Fragment f = alternation();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("regex: " + msg, 1, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_epsilon() const { return text_.compare(pos_, 2, "\xCE\xB5") == 0; }
  bool at_atom() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c != '|' && c != ')' && c != '*' && c != '+' && c != '?';
  }

  Fragment epsilon() {
    Fragment f{nfa_.add(), nfa_.add()};
    nfa_.nodes[f.in].eps.push_back(f.out);
    return f;
  }

  Fragment alternation() {
    Fragment f = concatenation();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      Fragment g = concatenation();
      Fragment h{nfa_.add(), nfa_.add()};
      nfa_.nodes[h.in].eps = {f.in, g.in};
      nfa_.nodes[f.out].eps.push_back(h.out);
      nfa_.nodes[g.out].eps.push_back(h.out);
      f = h;
      skip_space();
    }
    return f;
  }

  Fragment concatenation() {
    if (!at_atom()) return epsilon();
    Fragment f = repetition();
    while (at_atom()) {
      Fragment g = repetition();
      nfa_.nodes[f.out].eps.push_back(g.in);
      f.out = g.out;
    }
    return f;
  }

  Fragment repetition() {
    Fragment f = atom();
    for (skip_space(); pos_ < text_.size(); skip_space()) {
      char c = text_[pos_];
      if (c != '*' && c != '+' && c != '?') break;
      ++pos_;
      Fragment h{nfa_.add(), nfa_.add()};
      nfa_.nodes[h.in].eps.push_back(f.in);
      nfa_.nodes[f.out].eps.push_back(h.out);
      if (c != '+') nfa_.nodes[h.in].eps.push_back(h.out);
      if (c != '?') nfa_.nodes[f.out].eps.push_back(f.in);
      f = h;
    }
    return f;
  }

  Fragment atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] == '(') {
      ++pos_;
      Fragment f = alternation();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return f;
    }
    if (at_epsilon()) {
      pos_ += 2;
      return epsilon();
    }
    unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (c >= 0x80 || !std::isgraph(c)) fail("letters must be single ASCII characters");
    std::string l(1, text_[pos_++]);
    auto idx = letters_.emplace(l, letters_.size()).first->second;
    Fragment f{nfa_.add(), nfa_.add()};
    nfa_.nodes[f.in].moves.emplace_back(idx, f.out);
    return f;
  }

  const std::string& text_;
  Nfa& nfa_;
  std::map<std::string, std::size_t>& letters_;
  std::size_t pos_ = 0;
};

std::set<std::size_t> closure(const Nfa& nfa, std::set<std::size_t> s) {
  std::vector<std::size_t> todo(s.begin(), s.end());
  while (!todo.empty()) {
    auto v = todo.back();
    todo.pop_back();
    for (auto w : nfa.nodes[v].eps)
      if (s.insert(w).second) todo.push_back(w);
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == ';') continue;
    out += line + " ";
  }
  return out;
}

}  // namespace

Regex parse_regex(const std::string& text) {
  Nfa nfa;
  std::map<std::string, std::size_t> first_use;
  RegexParser parser(text, nfa, first_use);
  Fragment f = parser.parse();

  Regex r;
  r.text = text;
  std::vector<std::size_t> remap(first_use.size());
  for (const auto& [l, i] : first_use) {
    remap[i] = r.letters.size();
    r.letters.push_back(l);
  }
  const std::size_t sigma = r.letters.size();

  std::map<std::set<std::size_t>, State> index;
  std::vector<std::set<std::size_t>> subsets;
  auto intern = [&](std::set<std::size_t> s) {
    auto [it, fresh] = index.emplace(s, static_cast<State>(subsets.size()));
    if (fresh) subsets.push_back(std::move(s));
    return it->second;
  };
  Dfa d;
  d.alphabet = sigma;
  d.initial = intern(closure(nfa, {f.in}));
  for (std::size_t q = 0; q < subsets.size(); ++q) {
    std::vector<std::set<std::size_t>> step(sigma);
    for (auto v : subsets[q])
      for (auto [l, w] : nfa.nodes[v].moves) step[remap[l]].insert(w);
    for (std::size_t a = 0; a < sigma; ++a) {
      State t = intern(closure(nfa, std::move(step[a])));
      d.delta.push_back(t);
    }
  }
  d.states = subsets.size();
  for (const auto& s : subsets) d.accepting.push_back(s.count(f.out) ? 1 : 0);
  r.dfa = dfa_minimize(d);
  return r;
}

namespace {

/// Right-linear grammar for a DFA; dead states get no nonterminal.
Cfg right_linear(const Regex& r) {
  const Dfa& d = r.dfa;
  std::vector<char> live(d.states, 0);
  for (std::size_t q = 0; q < d.states; ++q) live[q] = d.accepting[q];
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < d.states; ++q)
      for (std::size_t a = 0; a < d.alphabet && !live[q]; ++a)
        if (live[d.next(static_cast<State>(q), static_cast<Symbol>(a))]) live[q] = changed = true;
  }
  Cfg g;
  g.terminals = r.letters;
  auto name = [](std::size_t q) { return "Q" + std::to_string(q); };
  g.start = name(d.initial);
  for (std::size_t q = 0; q < d.states; ++q) {
    if (!live[q]) continue;
    g.nonterminals.push_back(name(q));
    for (std::size_t a = 0; a < d.alphabet; ++a) {
      auto t = d.next(static_cast<State>(q), static_cast<Symbol>(a));
      if (live[t]) g.productions.push_back({name(q), {r.letters[a], name(t)}});
    }
    if (d.accepting[q]) g.productions.push_back({name(q), {}});
  }
  if (!live[d.initial]) g.nonterminals.push_back(g.start);
  return g;
}

}  // namespace

Domain Domain::regular(const std::string& regex) {
  Domain d;
  d.kind_ = Kind::Regular;
  auto r = std::make_shared<Regex>(parse_regex(regex));
  d.cfg_ = right_linear(*r);
  d.regex_ = std::move(r);
  return d;
}

Domain Domain::context_free(Cfg g) {
  Domain d;
  d.kind_ = Kind::ContextFree;
  d.cfg_ = std::move(g);
  return d;
}

Domain Domain::regular_tree(Rtg g) {
  Domain d;
  d.kind_ = Kind::RegularTree;
  d.rtg_ = std::move(g);
  return d;
}

Domain Domain::all_words(const std::vector<std::string>& letters) {
  Cfg g;
  g.start = "S";
  g.nonterminals = {"S"};
  g.terminals = letters;
  for (const auto& l : letters) {
    if (l == "S") throw SignatureError("letter S clashes with the start symbol");
    g.productions.push_back({"S", {l, "S"}});
  }
  g.productions.push_back({"S", {}});
  return context_free(std::move(g));
}

Domain Domain::all_trees(const Signature& ranked) {
  Rtg g;
  g.start = "T";
  g.nonterminals = {"T"};
  g.sig = ranked;
  for (const auto& [label, rank] : ranked.ranks)
    g.productions.push_back({"T", label, std::vector<std::string>(static_cast<std::size_t>(rank), "T")});
  return regular_tree(std::move(g));
}

std::vector<std::string> Domain::symbols() const {
  if (is_tree()) return rtg_.sig.node_labels;
  if (regex_) return regex_->letters;
  return cfg_.terminals;
}

bool Domain::contains(const Word& w) const {
  if (is_tree()) return false;
  if (regex_) {
    std::vector<Symbol> syms;
    for (const auto& l : w) {
      auto it = std::find(regex_->letters.begin(), regex_->letters.end(), l);
      if (it == regex_->letters.end()) return false;
      syms.push_back(static_cast<Symbol>(it - regex_->letters.begin()));
    }
    return regex_->dfa.accepts(syms);
  }
  return cfg_accepts(cfg_, w);
}

bool Domain::contains(const Term& t) const { return is_tree() && rtg_accepts(rtg_, t); }

bool Domain::contains(const Graph& g, const Signature& sig) const {
  if (is_tree()) return is_tree_graph(g, sig) && contains(graph_to_tree(g, sig));
  return is_string_graph(g) && contains(graph_to_string(g));
}

std::vector<Word> Domain::words(std::size_t max_len) const {
  if (is_tree()) return {};
  if (!regex_) return cfg_words(cfg_, max_len);
  std::vector<Word> out;
  const Dfa& d = regex_->dfa;
  std::vector<std::pair<Word, State>> layer{{Word{}, d.initial}};
  for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
    std::vector<std::pair<Word, State>> next;
    for (auto& [w, q] : layer) {
      if (d.accepting[q]) out.push_back(w);
      if (len == max_len) continue;
      for (std::size_t a = 0; a < d.alphabet; ++a) {
        Word v = w;
        v.push_back(regex_->letters[a]);
        next.emplace_back(std::move(v), d.next(q, static_cast<Symbol>(a)));
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::vector<Term> Domain::trees(std::size_t max_nodes) const {
  if (!is_tree()) return {};
  return rtg_trees(rtg_, max_nodes);
}

std::string Domain::describe() const {
  switch (kind_) {
    case Kind::Regular:
      return "regular " + regex_->text;
    case Kind::ContextFree:
      return "context-free, " + std::to_string(cfg_.productions.size()) + " productions";
    case Kind::RegularTree:
      return "regular tree, " + std::to_string(rtg_.productions.size()) + " productions";
  }
  return "";
}

Domain parse_domain(const std::string& text, Domain::Kind kind) {
  switch (kind) {
    case Domain::Kind::Regular:
      return Domain::regular(strip_comments(text));
    case Domain::Kind::ContextFree:
      return Domain::context_free(parse_cfg(text));
    case Domain::Kind::RegularTree:
      return Domain::regular_tree(parse_rtg(text));
  }
  throw Error("unknown domain kind");
}

Domain load_domain(const std::string& path) {
  auto ends_with = [&](const std::string& ext) {
    return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  };
  Domain::Kind kind;
  if (ends_with(".re"))
    kind = Domain::Kind::Regular;
  else if (ends_with(".cfg"))
    kind = Domain::Kind::ContextFree;
  else if (ends_with(".rtg"))
    kind = Domain::Kind::RegularTree;
  else
    throw ParseError("domain file must end in .re, .cfg or .rtg: " + path);
  return parse_domain(read_file(path), kind);
}

}  // namespace msoeq
