#include "msoequiv/transducer.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

#include "msoequiv/compiler.hpp"
#include "msoequiv/errors.hpp"

namespace msoeq {

namespace {

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i];
  return out;
}

bool is_false(const FormulaPtr& f) { return !f || f->kind == Kind::False; }

}  // namespace

FormulaPtr MsoTransducer::node_formula(const std::string& c, const std::string& sigma) const {
  auto it = nodes.find({c, sigma});
  return it == nodes.end() ? mso::ff() : it->second;
}

FormulaPtr MsoTransducer::edge_formula(const std::string& c, const std::string& d, const std::string& gamma) const {
  auto it = edges.find({c, d, gamma});
  return it == edges.end() ? mso::ff() : it->second;
}

std::string to_string(TransducerKind k) {
  switch (k) {
    case TransducerKind::GraphToString: return "graph-to-string";
    case TransducerKind::GraphToTree: return "graph-to-tree";
    case TransducerKind::StringToDgraph: return "string-to-dgraph";
    case TransducerKind::GraphToDgraph: return "graph-to-dgraph";
  }
  return "?";
}

TransducerKind kind_of(const MsoTransducer& m) {
  if (m.output.ranked()) return TransducerKind::GraphToTree;
  if (m.output.is_string_signature()) return TransducerKind::GraphToString;
  if (m.output.edge_labels.empty())
    return m.input.is_string_signature() ? TransducerKind::StringToDgraph : TransducerKind::GraphToDgraph;
  throw SignatureError("output signature fits no transducer kind: " + to_string(m.output));
}

bool output_fits(TransducerKind k, const Graph& h, const Signature& out) {
  switch (k) {
    case TransducerKind::GraphToString:
      if (!is_string_graph(h)) return false;
      for (const auto& e : h.edges())
        if (!out.has_edge_label(e.label)) return false;
      return true;
    case TransducerKind::GraphToTree:
      return is_tree_graph(h, out);
    case TransducerKind::StringToDgraph:
    case TransducerKind::GraphToDgraph:
      if (!is_dgraph(h)) return false;
      for (const auto& l : h.labels())
        if (!out.has_node_label(l)) return false;
      return true;
  }
  return false;
}

bool same_signature(const Signature& a, const Signature& b) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return sorted(a.node_labels) == sorted(b.node_labels) && sorted(a.edge_labels) == sorted(b.edge_labels) &&
         a.ranks == b.ranks;
}

void validate(const MsoTransducer& m) {
  std::set<std::string> copies(m.copies.begin(), m.copies.end());
  if (copies.size() != m.copies.size()) throw SignatureError("duplicate copy name");
  for (const auto& p : m.params)
    if (sort_of(p) != Sort::Set) throw SignatureError("parameter " + p + " must be a set variable");
  auto check_free = [&](const Formula& f, std::set<std::string> allowed, const std::string& where) {
    allowed.insert(m.params.begin(), m.params.end());
    for (const auto& v : free_vars(f))
      if (!allowed.count(v)) throw SignatureError("unexpected free variable " + v + " in " + where);
    validate(f, m.input);
  };
  check_free(*m.domain, {}, "dom");
  for (const auto& [k, f] : m.nodes) {
    if (!copies.count(k.first)) throw SignatureError("unknown copy " + k.first);
    if (!m.output.has_node_label(k.second)) throw SignatureError("unknown output node label " + k.second);
    check_free(*f, {"x"}, "node " + k.first + " " + k.second);
  }
  for (const auto& [k, f] : m.edges) {
    const auto& [c, d, g] = k;
    if (!copies.count(c) || !copies.count(d)) throw SignatureError("unknown copy in edge " + c + " " + d);
    if (!m.output.has_edge_label(g)) throw SignatureError("unknown output edge label " + g);
    check_free(*f, {"x", "y"}, "edge " + c + " " + d + " " + g);
  }
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string sigma_text(const Signature& s) {
  if (!s.ranked()) return join(s.node_labels);
  std::vector<std::string> out;
  for (const auto& l : s.node_labels) out.push_back(l + "/" + std::to_string(s.rank(l)));
  return join(out);
}

}  // namespace

MsoTransducer parse_transducer(const std::string& text) {
  MsoTransducer m;
  std::map<std::string, std::string> header;
  struct Block {
    std::vector<std::string> head;
    std::string body;
    std::size_t line;
  };
  std::vector<Block> blocks;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  static const std::set<std::string> keys = {"copies",       "params",       "input-sigma",
                                             "input-gamma",  "output-sigma", "output-gamma"};
  while (std::getline(is, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == ';') continue;
    auto colon = line.find(':');
    std::vector<std::string> head;
    if (colon != std::string::npos) head = split_words(line.substr(0, colon));
    std::string rest = colon == std::string::npos ? "" : line.substr(colon + 1);
    if (head.size() == 1 && keys.count(head[0])) {
      if (header.count(head[0])) throw ParseError("duplicate header " + head[0], lineno, 1);
      header[head[0]] = rest;
      continue;
    }
    if (!head.empty() && ((head[0] == "dom" && head.size() == 1) || (head[0] == "node" && head.size() == 3) ||
                          (head[0] == "edge" && head.size() == 4))) {
      blocks.push_back({head, rest, lineno});
      continue;
    }
    if (blocks.empty()) throw ParseError("expected a header or formula block", lineno, first + 1);
    blocks.back().body += "\n" + line;
  }
  if (!header.count("copies")) throw ParseError("missing copies header");
  m.copies = split_words(header["copies"]);
  if (m.copies.empty()) throw ParseError("copies header lists no copy");
  m.params = split_words(header["params"]);
  auto sig_of = [&](const std::string& prefix) {
    std::string s = header.count(prefix + "-sigma") ? header[prefix + "-sigma"] : kStringNodeLabel;
    return parse_signature(s, header[prefix + "-gamma"]);
  };
  m.input = sig_of("input");
  m.output = sig_of("output");
  VarContext base(m.params.begin(), m.params.end());
  bool saw_dom = false;
  for (const auto& b : blocks) {
    VarContext ctx = base;
    if (b.head[0] == "node") ctx.push_back("x");
    if (b.head[0] == "edge") {
      ctx.push_back("x");
      ctx.push_back("y");
    }
    FormulaPtr f;
    try {
      f = parse_formula(b.body, m.input, ctx);
    } catch (const ParseError& e) {
      throw ParseError(join(b.head) + ": " + e.what(), b.line, 1);
    } catch (const SignatureError& e) {
      throw ParseError(join(b.head) + ": " + e.what(), b.line, 1);
    }
    if (b.head[0] == "dom") {
      if (saw_dom) throw ParseError("duplicate dom block", b.line, 1);
      saw_dom = true;
      m.domain = f;
    } else if (b.head[0] == "node") {
      if (!m.nodes.emplace(std::make_pair(b.head[1], b.head[2]), f).second)
        throw ParseError("duplicate node block", b.line, 1);
    } else {
      if (!m.edges.emplace(std::make_tuple(b.head[1], b.head[2], b.head[3]), f).second)
        throw ParseError("duplicate edge block", b.line, 1);
    }
  }
  if (!saw_dom) m.domain = mso::ff();
  try {
    validate(m);
  } catch (const SignatureError& e) {
    throw ParseError(e.what());
  }
  return m;
}

std::string format_transducer(const MsoTransducer& m) {
  std::ostringstream os;
  os << "copies: " << join(m.copies) << "\n";
  if (!m.params.empty()) os << "params: " << join(m.params) << "\n";
  os << "input-sigma: " << sigma_text(m.input) << "\n";
  if (!m.input.ranked()) os << "input-gamma: " << join(m.input.edge_labels) << "\n";
  os << "output-sigma: " << sigma_text(m.output) << "\n";
  if (!m.output.ranked()) os << "output-gamma: " << join(m.output.edge_labels) << "\n";
  os << "dom: " << to_sexpr(*m.domain) << "\n";
  for (const auto& [k, f] : m.nodes)
    if (!is_false(f)) os << "node " << k.first << " " << k.second << ": " << to_sexpr(*f) << "\n";
  for (const auto& [k, f] : m.edges)
    if (!is_false(f))
      os << "edge " << std::get<0>(k) << " " << std::get<1>(k) << " " << std::get<2>(k) << ": " << to_sexpr(*f)
         << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

/// Position of every node in the canonical numbering of a string or tree
/// graph (left to right, or pre-order).
std::vector<std::size_t> canonical_positions(const Graph& g, const Signature& sig) {
  std::vector<std::size_t> pos(g.size(), 0);
  std::vector<int> indeg(g.size(), 0);
  std::vector<std::vector<std::pair<std::string, std::size_t>>> out(g.size());
  for (const auto& e : g.edges()) {
    ++indeg[e.dst];
    out[e.src].emplace_back(e.label, e.dst);
  }
  std::size_t root = 0;
  while (root < g.size() && indeg[root] != 0) ++root;
  std::size_t counter = 0;
  std::vector<std::size_t> stack = {root};
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    pos[v] = counter++;
    auto kids = out[v];
    if (sig.ranked())
      std::sort(kids.begin(), kids.end(),
                [](const auto& p, const auto& q) { return std::stoi(p.first) > std::stoi(q.first); });
    for (const auto& k : kids) stack.push_back(k.second);
  }
  return pos;
}

struct Compiled {
  FormulaAutomaton dom;
  std::map<std::pair<std::string, std::string>, FormulaAutomaton> nodes;
  std::map<std::tuple<std::string, std::string, std::string>, FormulaAutomaton> edges;
};

std::shared_ptr<const Compiled> compiled_for(const MsoTransducer& m) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Compiled>> cache;
  const std::string key = format_transducer(m);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Compiler comp(InputClass::of(m.input));
  auto c = std::make_shared<Compiled>();
  VarContext base(m.params.begin(), m.params.end());
  c->dom = comp.compile(m.domain, base);
  VarContext nx = base;
  nx.push_back("x");
  VarContext exy = nx;
  exy.push_back("y");
  for (const auto& [k, f] : m.nodes)
    if (!is_false(f)) c->nodes.emplace(k, comp.compile(f, nx));
  for (const auto& [k, f] : m.edges)
    if (!is_false(f)) c->edges.emplace(k, comp.compile(f, exy));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, c);
  return c;
}

void check_input(const MsoTransducer& m, const Graph& g) {
  if (m.input.ranked()) {
    if (!is_tree_graph(g, m.input)) throw SignatureError("input is not a tree over " + to_string(m.input));
    return;
  }
  for (const auto& l : g.labels())
    if (!m.input.has_node_label(l)) throw SignatureError("input node label " + l + " not in signature");
  for (const auto& e : g.edges())
    if (!m.input.has_edge_label(e.label)) throw SignatureError("input edge label " + e.label + " not in signature");
  if (m.input.is_string_signature() && !is_string_graph(g)) throw SignatureError("input is not a string graph");
}

/// Decides formulas of one transducer on one input graph.
class Decider {
 public:
  Decider(const MsoTransducer& m, const Graph& g, const EvalOptions& opt) : m_(m), g_(g) {
    bool structured = m.input.ranked() || m.input.is_string_signature();
    bool compiled = opt.engine == Engine::Compiled || (opt.engine == Engine::Auto && structured);
    if (compiled && !structured) throw Error("compiled evaluation needs string or tree inputs");
    if (compiled) {
      try {
        c_ = compiled_for(m);
      } catch (const ResourceExceeded&) {
        if (opt.engine == Engine::Compiled) throw;
      }
    }
    if (c_) {
      pos_ = canonical_positions(g, m.input);
      if (m.input.ranked())
        term_ = graph_to_tree(g, m.input);
      else
        word_ = graph_to_string(g);
    }
  }

  bool dom(const Assignment& a) const { return holds(m_.domain, c_ ? &c_->dom : nullptr, a); }

  bool node(const std::pair<std::string, std::string>& k, const FormulaPtr& f, const Assignment& a) const {
    return holds(f, c_ ? &c_->nodes.at(k) : nullptr, a);
  }

  bool edge(const std::tuple<std::string, std::string, std::string>& k, const FormulaPtr& f,
            const Assignment& a) const {
    return holds(f, c_ ? &c_->edges.at(k) : nullptr, a);
  }

 private:
  bool holds(const FormulaPtr& f, const FormulaAutomaton* aut, const Assignment& a) const {
    if (f->kind == Kind::True) return true;
    if (f->kind == Kind::False) return false;
    if (!aut) return check(*f, g_, a);
    Assignment b;
    for (const auto& [v, n] : a.nodes) b.nodes[v] = pos_[n];
    for (const auto& [v, s] : a.sets) {
      auto& t = b.sets[v];
      for (auto n : s) t.insert(pos_[n]);
    }
    return m_.input.ranked() ? aut->accepts(term_, b) : aut->accepts(word_, b);
  }

  const MsoTransducer& m_;
  const Graph& g_;
  std::shared_ptr<const Compiled> c_;
  std::vector<std::size_t> pos_;
  Word word_;
  Term term_;
};

}  // namespace

std::vector<Graph> evaluate(const MsoTransducer& m, const Graph& g, const EvalOptions& opt) {
  check_input(m, g);
  const std::size_t n = g.size();
  const std::size_t p = m.params.size();
  if (p > 0 && n > opt.param_node_cap)
    throw ResourceExceeded("evaluate", "parameter enumeration refused on " + std::to_string(n) + " nodes");
  Decider d(m, g, opt);
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;

  std::map<std::string, Graph> results;
  const std::uint64_t valuations = std::uint64_t{1} << (n * p);
  Assignment a;
  for (std::uint64_t val = 0; val < valuations; ++val) {
    for (std::size_t i = 0; i < p; ++i) {
      std::set<std::size_t> s;
      for (std::size_t v = 0; v < n; ++v)
        if ((val >> (i * n + v)) & 1) s.insert(v);
      a.sets[m.params[i]] = std::move(s);
    }
    a.nodes.clear();
    if (!d.dom(a)) continue;

    Graph h;
    std::map<std::pair<std::string, std::size_t>, std::size_t> id;
    for (const auto& c : m.copies) {
      for (std::size_t u : order) {
        a.nodes["x"] = u;
        std::vector<std::string> labels;
        for (const auto& sigma : m.output.node_labels) {
          auto f = m.node_formula(c, sigma);
          if (is_false(f)) continue;
          if (d.node({c, sigma}, f, a)) labels.push_back(sigma);
        }
        if (labels.size() == 1) {
          id[{c, u}] = h.add_node(labels[0]);
        } else if (labels.size() > 1 && opt.warnings) {
          opt.warnings->push_back("dropped node (" + c + "," + std::to_string(u) + "): labels " + join(labels));
        }
      }
    }
    for (const auto& [k, f] : m.edges) {
      if (is_false(f)) continue;
      const auto& [c, e, gamma] = k;
      for (const auto& [cu, hu] : id) {
        if (cu.first != c) continue;
        for (const auto& [ev, hv] : id) {
          if (ev.first != e) continue;
          a.nodes["x"] = cu.second;
          a.nodes["y"] = ev.second;
          if (d.edge(k, f, a)) h.add_edge(hu, gamma, hv);
        }
      }
    }
    a.nodes.clear();
    results.emplace(canonical_key(h), std::move(h));
  }
  std::vector<Graph> out;
  for (auto& [k, h] : results) out.push_back(std::move(h));
  return out;
}

// ---------------------------------------------------------------------------
// Transductions

struct Transduction::Node {
  Tag tag;
  Signature input, output;
  MsoTransducer m;
  std::vector<Transduction> parts;
};

Transduction Transduction::primitive(MsoTransducer m) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Primitive;
  n->input = m.input;
  n->output = m.output;
  n->m = std::move(m);
  return Transduction(n);
}

Transduction Transduction::pipeline(Transduction first, Transduction second) {
  if (!same_signature(first.output(), second.input()))
    throw SignatureError("pipeline mismatch: " + to_string(first.output()) + " vs " + to_string(second.input()));
  auto n = std::make_shared<Node>();
  n->tag = Tag::Pipeline;
  n->input = first.input();
  n->output = second.output();
  n->parts = {std::move(first), std::move(second)};
  return Transduction(n);
}

Transduction Transduction::disjoint_union(Transduction a, Transduction b) {
  if (!same_signature(a.input(), b.input())) throw SignatureError("disjoint union of different input signatures");
  auto n = std::make_shared<Node>();
  n->tag = Tag::Union;
  n->input = a.input();
  n->output = a.output();
  for (const auto& l : b.output().node_labels)
    if (!n->output.has_node_label(l)) n->output.node_labels.push_back(l);
  for (const auto& l : b.output().edge_labels)
    if (!n->output.has_edge_label(l)) n->output.edge_labels.push_back(l);
  n->parts = {std::move(a), std::move(b)};
  return Transduction(n);
}

Transduction Transduction::empty(Signature input, Signature output) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Empty;
  n->input = std::move(input);
  n->output = std::move(output);
  return Transduction(n);
}

Transduction::Tag Transduction::tag() const { return n_->tag; }
const Signature& Transduction::input() const { return n_->input; }
const Signature& Transduction::output() const { return n_->output; }

bool Transduction::deterministic() const {
  switch (n_->tag) {
    case Tag::Primitive: return n_->m.deterministic();
    case Tag::Empty: return true;
    default: return n_->parts[0].deterministic() && n_->parts[1].deterministic();
  }
}

const MsoTransducer& Transduction::transducer() const {
  if (n_->tag != Tag::Primitive) throw Error("not a primitive transduction");
  return n_->m;
}

const Transduction& Transduction::first() const {
  if (n_->parts.size() != 2) throw Error("transduction has no parts");
  return n_->parts[0];
}

const Transduction& Transduction::second() const {
  if (n_->parts.size() != 2) throw Error("transduction has no parts");
  return n_->parts[1];
}

std::vector<Graph> Transduction::evaluate(const Graph& g, const EvalOptions& opt) const {
  std::map<std::string, Graph> out;
  switch (n_->tag) {
    case Tag::Empty:
      return {};
    case Tag::Primitive:
      return msoeq::evaluate(n_->m, g, opt);
    case Tag::Pipeline:
      for (const auto& h : first().evaluate(g, opt))
        for (auto& k : second().evaluate(h, opt)) out.emplace(canonical_key(k), std::move(k));
      break;
    case Tag::Union: {
      auto left = first().evaluate(g, opt);
      if (left.empty()) return {};
      auto right = second().evaluate(g, opt);
      for (const auto& h1 : left)
        for (const auto& h2 : right) {
          Graph u = msoeq::disjoint_union(h1, h2);
          out.emplace(canonical_key(u), std::move(u));
        }
      break;
    }
  }
  std::vector<Graph> v;
  for (auto& [k, h] : out) v.push_back(std::move(h));
  return v;
}

std::vector<Graph> pipe_evaluate(const MsoTransducer& m1, const MsoTransducer& m2, const Graph& g,
                                 const EvalOptions& opt) {
  return Transduction::pipeline(Transduction::primitive(m1), Transduction::primitive(m2)).evaluate(g, opt);
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

Signature dgraph_signature(std::vector<std::string> labels) {
  Signature s;
  s.node_labels = std::move(labels);
  return s;
}

FormulaPtr any_edge(const std::vector<std::string>& delta, const std::string& x, const std::string& y) {
  std::vector<FormulaPtr> d;
  for (const auto& l : delta) d.push_back(mso::edg(l, x, y));
  return mso::disj(d);
}

/// x has no outgoing edge.
FormulaPtr last(const std::vector<std::string>& delta, const std::string& x) {
  return mso::neg(mso::exists("z", any_edge(delta, x, "z")));
}

}  // namespace

std::vector<std::string> output_letters(const Signature& out) { return out.edge_labels; }

MsoTransducer position_extractor(const std::vector<std::string>& delta, const std::string& a) {
  if (std::find(delta.begin(), delta.end(), a) == delta.end())
    throw SignatureError("letter " + a + " not in the alphabet");
  MsoTransducer m;
  m.copies = {"1"};
  m.params = {"Y1"};
  m.input = Signature::strings(delta);
  m.output = dgraph_signature({a});
  m.domain = mso::conj({mso::singleton("Y1"),
                        mso::exists("x", mso::exists("y", mso::conj({mso::edg(a, "x", "y"), mso::in("x", "Y1")})))});
  m.nodes[{"1", a}] = mso::exists("y", mso::conj({mso::reach("x", "y"), mso::in("y", "Y1")}));
  return m;
}

MsoTransducer disjoint_union(const MsoTransducer& m1, const MsoTransducer& m2) {
  if (!same_signature(m1.input, m2.input)) throw SignatureError("disjoint union of different input signatures");
  MsoTransducer m;
  m.input = m1.input;
  m.output = m1.output;
  for (const auto& l : m2.output.node_labels)
    if (!m.output.has_node_label(l)) m.output.node_labels.push_back(l);
  for (const auto& l : m2.output.edge_labels)
    if (!m.output.has_edge_label(l)) m.output.edge_labels.push_back(l);
  auto side = [&](const MsoTransducer& s, const std::string& tag) {
    std::map<std::string, std::string> ren;
    for (const auto& p : s.params) {
      std::string q = p + tag;
      ren[p] = q;
      m.params.push_back(q);
    }
    for (const auto& c : s.copies) m.copies.push_back(c + tag);
    for (const auto& [k, f] : s.nodes) m.nodes[{k.first + tag, k.second}] = rename_free(f, ren);
    for (const auto& [k, f] : s.edges)
      m.edges[{std::get<0>(k) + tag, std::get<1>(k) + tag, std::get<2>(k)}] = rename_free(f, ren);
    return rename_free(s.domain, ren);
  };
  auto d1 = side(m1, "_1");
  auto d2 = side(m2, "_2");
  m.domain = mso::conj({d1, d2});
  return m;
}

MsoTransducer marker_appender(const std::vector<std::string>& delta, const std::string& marker) {
  if (std::find(delta.begin(), delta.end(), marker) != delta.end())
    throw SignatureError("marker " + marker + " already in the output alphabet");
  MsoTransducer m;
  m.copies = {"1", "2"};
  m.input = Signature::strings(delta);
  auto out = delta;
  out.push_back(marker);
  m.output = Signature::strings(out);
  m.domain = mso::tt();
  m.nodes[{"1", kStringNodeLabel}] = mso::tt();
  m.nodes[{"2", kStringNodeLabel}] = last(delta, "x");
  for (const auto& d : delta) m.edges[{"1", "1", d}] = mso::edg(d, "x", "y");
  m.edges[{"1", "2", marker}] = mso::conj({last(delta, "x"), mso::eq("x", "y")});
  return m;
}

Transduction append_marker(const MsoTransducer& m, const std::string& marker) {
  if (kind_of(m) != TransducerKind::GraphToString) throw SignatureError("append_marker needs a graph-to-string transducer");
  return Transduction::pipeline(Transduction::primitive(m),
                                Transduction::primitive(marker_appender(output_letters(m.output), marker)));
}

Transduction pair_counter(const Transduction& m1, const Transduction& m2, const std::string& a,
                          const std::string& b) {
  if (a == b) throw Error("pair_counter needs distinct letters");
  if (!same_signature(m1.input(), m2.input())) throw SignatureError("pair_counter of different input signatures");
  auto d1 = output_letters(m1.output());
  auto d2 = output_letters(m2.output());
  bool has_a = std::find(d1.begin(), d1.end(), a) != d1.end();
  bool has_b = std::find(d2.begin(), d2.end(), b) != d2.end();
  if (!has_a || !has_b) return Transduction::empty(m1.input(), dgraph_signature({a, b}));
  return Transduction::disjoint_union(
      Transduction::pipeline(m1, Transduction::primitive(position_extractor(d1, a))),
      Transduction::pipeline(m2, Transduction::primitive(position_extractor(d2, b))));
}

MsoTransducer preorder_flattener(const Signature& delta) {
  if (!delta.ranked()) throw SignatureError("preorder_flattener needs a ranked alphabet");
  MsoTransducer m;
  m.copies = {"1", "2"};
  m.input = delta;
  m.output = Signature::strings(delta.node_labels);
  m.domain = mso::tt();
  m.nodes[{"1", kStringNodeLabel}] = mso::tt();
  m.nodes[{"2", kStringNodeLabel}] = mso::root("x");
  for (const auto& l : delta.node_labels) {
    m.edges[{"1", "1", l}] = mso::conj({mso::lab(l, "x"), mso::pre_succ("x", "y")});
    m.edges[{"1", "2", l}] =
        mso::conj({mso::lab(l, "x"), mso::root("y"), mso::neg(mso::exists("z", mso::pre_succ("x", "z")))});
  }
  return m;
}

Transduction flatten(const MsoTransducer& m) {
  if (kind_of(m) != TransducerKind::GraphToTree) throw SignatureError("flatten needs a graph-to-tree transducer");
  return Transduction::pipeline(Transduction::primitive(m), Transduction::primitive(preorder_flattener(m.output)));
}

MsoTransducer domain_symdiff(const MsoTransducer& m1, const MsoTransducer& m2) {
  if (!same_signature(m1.input, m2.input)) throw SignatureError("domain_symdiff of different input signatures");
  MsoTransducer m;
  m.copies = {"1"};
  m.input = m1.input;
  m.output = dgraph_signature(m1.input.node_labels);
  m.domain = mso::neg(mso::iff(m1.domain, m2.domain));
  for (const auto& l : m1.input.node_labels) m.nodes[{"1", l}] = mso::lab(l, "x");
  return m;
}

}  // namespace msoeq
