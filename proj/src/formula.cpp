#include "msoequiv/formula.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <sstream>

#include "msoequiv/errors.hpp"

namespace msoeq {

Sort sort_of(const std::string& var) {
  for (char c : var) {
    if (std::isalpha(static_cast<unsigned char>(c))) return std::isupper(static_cast<unsigned char>(c)) ? Sort::Set : Sort::Node;
  }
  return Sort::Node;
}

namespace mso {
namespace {
FormulaPtr make(Kind k, std::string label = {}, std::vector<std::string> vars = {}, std::vector<FormulaPtr> kids = {}) {
  return std::make_shared<const Formula>(Formula{k, std::move(label), std::move(vars), std::move(kids)});
}
}  // namespace

FormulaPtr tt() {
  static const FormulaPtr t = make(Kind::True);
  return t;
}
FormulaPtr ff() {
  static const FormulaPtr f = make(Kind::False);
  return f;
}
FormulaPtr lab(const std::string& label, const std::string& x) { return make(Kind::Lab, label, {x}); }
FormulaPtr edg(const std::string& label, const std::string& x, const std::string& y) { return make(Kind::Edg, label, {x, y}); }
FormulaPtr in(const std::string& x, const std::string& set) { return make(Kind::In, {}, {x, set}); }
FormulaPtr eq(const std::string& x, const std::string& y) { return make(Kind::Eq, {}, {x, y}); }
FormulaPtr neg(FormulaPtr f) { return make(Kind::Not, {}, {}, {std::move(f)}); }
FormulaPtr conj(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return tt();
  if (fs.size() == 1) return fs[0];
  return make(Kind::And, {}, {}, std::move(fs));
}
FormulaPtr disj(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return ff();
  if (fs.size() == 1) return fs[0];
  return make(Kind::Or, {}, {}, std::move(fs));
}
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return make(Kind::Implies, {}, {}, {std::move(a), std::move(b)}); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return make(Kind::Iff, {}, {}, {std::move(a), std::move(b)}); }
FormulaPtr exists(const std::string& v, FormulaPtr f) { return make(Kind::Exists, {}, {v}, {std::move(f)}); }
FormulaPtr forall(const std::string& v, FormulaPtr f) { return make(Kind::Forall, {}, {v}, {std::move(f)}); }
FormulaPtr singleton(const std::string& set) { return make(Kind::Singleton, {}, {set}); }
FormulaPtr reach(const std::string& x, const std::string& y) { return make(Kind::Reach, {}, {x, y}); }
FormulaPtr root(const std::string& x) { return make(Kind::Root, {}, {x}); }
FormulaPtr pre_succ(const std::string& x, const std::string& y) { return make(Kind::PreSucc, {}, {x, y}); }
}  // namespace mso

std::string fresh_var(Sort s) {
  static std::atomic<unsigned long> counter{0};
  return std::string(s == Sort::Set ? "V'" : "v'") + std::to_string(counter.fetch_add(1));
}

namespace {

bool is_quantifier(Kind k) { return k == Kind::Exists || k == Kind::Forall; }

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (is_quantifier(f.kind)) {
    bound.push_back(f.vars[0]);
    collect_free(*f.kids[0], bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& v : f.vars)
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
  for (const auto& k : f.kids) collect_free(*k, bound, out);
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::size_t quantifier_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& k : f.kids) d = std::max(d, quantifier_depth(*k));
  return d + (is_quantifier(f.kind) ? 1 : 0);
}

bool has_macros(const Formula& f) {
  switch (f.kind) {
    case Kind::Singleton:
    case Kind::Reach:
    case Kind::Root:
    case Kind::PreSucc:
      return true;
    default:
      break;
  }
  return std::any_of(f.kids.begin(), f.kids.end(), [](const FormulaPtr& k) { return has_macros(*k); });
}

namespace {

FormulaPtr rename_impl(const FormulaPtr& f, std::map<std::string, std::string> env, bool fresh_bound) {
  auto lookup = [&](const std::string& v) {
    auto it = env.find(v);
    return it == env.end() ? v : it->second;
  };
  if (is_quantifier(f->kind)) {
    const std::string& v = f->vars[0];
    std::string nv = fresh_bound ? fresh_var(sort_of(v)) : v;
    if (!fresh_bound) {
      // Rename apart only when the bound name collides with a renaming target.
      for (const auto& [from, to] : env)
        if (to == v && from != v) {
          nv = fresh_var(sort_of(v));
          break;
        }
    }
    env[v] = nv;
    auto body = rename_impl(f->kids[0], env, fresh_bound);
    return f->kind == Kind::Exists ? mso::exists(nv, body) : mso::forall(nv, body);
  }
  if (f->vars.empty() && f->kids.empty()) return f;
  Formula copy = *f;
  for (auto& v : copy.vars) v = lookup(v);
  for (auto& k : copy.kids) k = rename_impl(k, env, fresh_bound);
  return std::make_shared<const Formula>(std::move(copy));
}

}  // namespace

FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& renaming) {
  return rename_impl(f, renaming, false);
}

FormulaPtr rename_bound_apart(const FormulaPtr& f) { return rename_impl(f, {}, true); }

namespace {

std::vector<std::string> numeric_edge_labels(const Signature& sig) {
  std::vector<std::string> out;
  for (int i = 1; sig.has_edge_label(std::to_string(i)); ++i) out.push_back(std::to_string(i));
  return out;
}

FormulaPtr any_edge(const Signature& sig, const std::string& x, const std::string& y) {
  std::vector<FormulaPtr> alts;
  for (const auto& g : sig.edge_labels) alts.push_back(mso::edg(g, x, y));
  return mso::disj(std::move(alts));
}

struct Expander {
  const Signature& sig;
  bool keep_eq;

  FormulaPtr eq(const std::string& x, const std::string& y) {
    if (keep_eq) return mso::eq(x, y);
    std::string s = fresh_var(Sort::Set);
    return mso::forall(s, mso::iff(mso::in(x, s), mso::in(y, s)));
  }

  FormulaPtr reach(const std::string& x, const std::string& y) {
    std::string z = fresh_var(Sort::Set), u = fresh_var(Sort::Node), v = fresh_var(Sort::Node);
    auto closed = mso::forall(
        u, mso::forall(v, mso::implies(mso::conj({mso::in(u, z), any_edge(sig, u, v)}), mso::in(v, z))));
    return mso::forall(z, mso::implies(mso::conj({mso::in(x, z), closed}), mso::in(y, z)));
  }

  FormulaPtr next_sibling(const std::string& z, const std::string& y) {
    auto nums = numeric_edge_labels(sig);
    std::string p = fresh_var(Sort::Node);
    std::vector<FormulaPtr> alts;
    for (std::size_t i = 0; i + 1 < nums.size(); ++i)
      alts.push_back(mso::conj({mso::edg(nums[i], p, z), mso::edg(nums[i + 1], p, y)}));
    return mso::exists(p, mso::disj(std::move(alts)));
  }

  FormulaPtr pre_succ(const std::string& x, const std::string& y) {
    auto nums = numeric_edge_labels(sig);
    FormulaPtr first_child = nums.empty() ? mso::ff() : mso::edg(nums[0], x, y);
    std::string w = fresh_var(Sort::Node), z = fresh_var(Sort::Node), z2 = fresh_var(Sort::Node),
                y2 = fresh_var(Sort::Node);
    auto leaf = mso::neg(mso::exists(w, any_edge(sig, x, w)));
    auto nearest = mso::forall(
        z2, mso::implies(mso::conj({reach(z, z2), reach(z2, x), mso::neg(eq(z, z2))}),
                         mso::neg(mso::exists(y2, next_sibling(z2, y2)))));
    auto climb = mso::exists(z, mso::conj({reach(z, x), next_sibling(z, y), nearest}));
    return mso::disj({first_child, mso::conj({leaf, climb})});
  }

  FormulaPtr run(const FormulaPtr& f) {
    switch (f->kind) {
      case Kind::Eq:
        return eq(f->vars[0], f->vars[1]);
      case Kind::Singleton: {
        std::string a = fresh_var(Sort::Node), b = fresh_var(Sort::Node);
        const std::string& s = f->vars[0];
        return mso::exists(a, mso::conj({mso::in(a, s), mso::forall(b, mso::implies(mso::in(b, s), eq(b, a)))}));
      }
      case Kind::Reach:
        return reach(f->vars[0], f->vars[1]);
      case Kind::Root: {
        std::string y = fresh_var(Sort::Node);
        return mso::neg(mso::exists(y, any_edge(sig, y, f->vars[0])));
      }
      case Kind::PreSucc:
        return pre_succ(f->vars[0], f->vars[1]);
      default:
        break;
    }
    if (f->kids.empty()) return f;
    Formula copy = *f;
    for (auto& k : copy.kids) k = run(k);
    return std::make_shared<const Formula>(std::move(copy));
  }
};

}  // namespace

FormulaPtr expand_derived(const FormulaPtr& f, const Signature& sig, bool keep_equality) {
  Expander e{sig, keep_equality};
  return e.run(f);
}

void validate(const Formula& f, const Signature& sig) {
  switch (f.kind) {
    case Kind::Lab:
      if (!sig.has_node_label(f.label)) throw SignatureError("unknown node label " + f.label);
      break;
    case Kind::Edg:
      if (!sig.has_edge_label(f.label)) throw SignatureError("unknown edge label " + f.label);
      break;
    case Kind::PreSucc:
      if (numeric_edge_labels(sig).empty() && !sig.edge_labels.empty())
        throw SignatureError("pre_succ needs a tree signature with edge labels 1..m");
      break;
    default:
      break;
  }
  for (const auto& k : f.kids) validate(*k, sig);
}

std::string to_sexpr(const Formula& f) {
  auto args = [&](const std::string& head) {
    std::string s = "(" + head;
    for (const auto& v : f.vars) s += " " + v;
    for (const auto& k : f.kids) s += " " + to_sexpr(*k);
    return s + ")";
  };
  switch (f.kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Lab: return args("lab_" + f.label);
    case Kind::Edg: return args("edg_" + f.label);
    case Kind::In: return args("in");
    case Kind::Eq: return args("eq");
    case Kind::Not: return args("not");
    case Kind::And: return args("and");
    case Kind::Or: return args("or");
    case Kind::Implies: return args("implies");
    case Kind::Iff: return args("iff");
    case Kind::Exists: return args("exists");
    case Kind::Forall: return args("forall");
    case Kind::Singleton: return args("singleton");
    case Kind::Reach: return args("reach");
    case Kind::Root: return args("root");
    case Kind::PreSucc: return args("pre_succ");
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  std::string text;  // "(" or ")" or an atom
  std::size_t line, col;
};

std::vector<Token> tokenize(const std::string& s, std::size_t line0) {
  std::vector<Token> out;
  std::size_t line = line0, col = 1;
  for (std::size_t i = 0; i < s.size();) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == ';') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (c == '(' || c == ')') {
      out.push_back({std::string(1, c), line, col});
      ++i;
      ++col;
      continue;
    }
    std::size_t start = i, scol = col;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')' && s[i] != ';') {
      ++i;
      ++col;
    }
    out.push_back({s.substr(start, i - start), line, scol});
  }
  return out;
}

struct SExpr {
  bool atom;
  std::string text;
  std::vector<SExpr> items;
  std::size_t line, col;
};

struct SExprReader {
  const std::vector<Token>& toks;
  std::size_t pos = 0;

  SExpr read() {
    if (pos >= toks.size()) {
      std::size_t l = toks.empty() ? 1 : toks.back().line, c = toks.empty() ? 1 : toks.back().col;
      throw ParseError("unexpected end of formula", l, c);
    }
    const Token& t = toks[pos++];
    if (t.text == ")") throw ParseError("unexpected ')'", t.line, t.col);
    if (t.text != "(") return SExpr{true, t.text, {}, t.line, t.col};
    SExpr list{false, {}, {}, t.line, t.col};
    while (true) {
      if (pos >= toks.size()) throw ParseError("unclosed '('", t.line, t.col);
      if (toks[pos].text == ")") {
        ++pos;
        return list;
      }
      list.items.push_back(read());
    }
  }
};

struct FormulaBuilder {
  const Signature& sig;
  std::vector<std::string> scope;

  [[noreturn]] void fail(const SExpr& e, const std::string& msg) { throw ParseError(msg, e.line, e.col); }

  std::string var(const SExpr& e, Sort want) {
    if (!e.atom) fail(e, "expected a variable");
    const std::string& v = e.text;
    if (!std::isalpha(static_cast<unsigned char>(v[0]))) fail(e, "bad variable name " + v);
    if (sort_of(v) != want)
      fail(e, "sort mismatch: " + v + (want == Sort::Set ? " is a node variable, expected a set variable"
                                                          : " is a set variable, expected a node variable"));
    if (std::find(scope.begin(), scope.end(), v) == scope.end()) fail(e, "unbound variable " + v);
    return v;
  }

  void arity(const SExpr& e, std::size_t n) {
    if (e.items.size() != n + 1) fail(e, "'" + e.items[0].text + "' expects " + std::to_string(n) + " arguments");
  }

  FormulaPtr build(const SExpr& e) {
    if (e.atom) {
      if (e.text == "true") return mso::tt();
      if (e.text == "false") return mso::ff();
      fail(e, "expected a formula, got '" + e.text + "'");
    }
    if (e.items.empty() || !e.items[0].atom) fail(e, "expected an operator");
    const std::string& h = e.items[0].text;
    const auto& it = e.items;
    if (h.rfind("lab_", 0) == 0) {
      arity(e, 1);
      std::string l = h.substr(4);
      if (!sig.has_node_label(l)) fail(e.items[0], "unknown node label " + l);
      return mso::lab(l, var(it[1], Sort::Node));
    }
    if (h.rfind("edg_", 0) == 0) {
      arity(e, 2);
      std::string l = h.substr(4);
      if (!sig.has_edge_label(l)) fail(e.items[0], "unknown edge label " + l);
      return mso::edg(l, var(it[1], Sort::Node), var(it[2], Sort::Node));
    }
    if (h == "in") {
      arity(e, 2);
      return mso::in(var(it[1], Sort::Node), var(it[2], Sort::Set));
    }
    if (h == "eq") {
      arity(e, 2);
      return mso::eq(var(it[1], Sort::Node), var(it[2], Sort::Node));
    }
    if (h == "singleton") {
      arity(e, 1);
      return mso::singleton(var(it[1], Sort::Set));
    }
    if (h == "reach") {
      arity(e, 2);
      return mso::reach(var(it[1], Sort::Node), var(it[2], Sort::Node));
    }
    if (h == "root") {
      arity(e, 1);
      return mso::root(var(it[1], Sort::Node));
    }
    if (h == "pre_succ") {
      arity(e, 2);
      if (numeric_edge_labels(sig).empty() && !sig.edge_labels.empty())
        fail(e.items[0], "pre_succ needs a tree signature");
      return mso::pre_succ(var(it[1], Sort::Node), var(it[2], Sort::Node));
    }
    if (h == "not") {
      arity(e, 1);
      return mso::neg(build(it[1]));
    }
    if (h == "and" || h == "or") {
      std::vector<FormulaPtr> ks;
      for (std::size_t i = 1; i < it.size(); ++i) ks.push_back(build(it[i]));
      if (ks.empty()) return h == "and" ? mso::tt() : mso::ff();
      if (ks.size() == 1) return ks[0];
      return std::make_shared<const Formula>(Formula{h == "and" ? Kind::And : Kind::Or, {}, {}, std::move(ks)});
    }
    if (h == "implies" || h == "iff") {
      arity(e, 2);
      auto a = build(it[1]);
      auto b = build(it[2]);
      return h == "implies" ? mso::implies(a, b) : mso::iff(a, b);
    }
    if (h == "exists" || h == "forall") {
      if (it.size() < 3) fail(e, "'" + h + "' expects variables and a body");
      std::vector<std::string> vs;
      for (std::size_t i = 1; i + 1 < it.size(); ++i) {
        if (!it[i].atom || !std::isalpha(static_cast<unsigned char>(it[i].text[0])))
          fail(it[i], "expected a variable to bind");
        vs.push_back(it[i].text);
      }
      for (const auto& v : vs) scope.push_back(v);
      auto body = build(it.back());
      for (std::size_t i = 0; i < vs.size(); ++i) scope.pop_back();
      for (auto v = vs.rbegin(); v != vs.rend(); ++v) body = h == "exists" ? mso::exists(*v, body) : mso::forall(*v, body);
      return body;
    }
    fail(e.items[0], "unknown operator '" + h + "'");
  }
};

FormulaPtr parse_formula_at(const std::string& text, const Signature& sig, const VarContext& ctx, std::size_t line0) {
  auto toks = tokenize(text, line0);
  SExprReader r{toks};
  SExpr e = r.read();
  if (r.pos != toks.size()) throw ParseError("trailing input after formula", toks[r.pos].line, toks[r.pos].col);
  FormulaBuilder b{sig, ctx};
  return b.build(e);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig, const VarContext& ctx) {
  return parse_formula_at(text, sig, ctx, 1);
}

Signature parse_signature(const std::string& sigma, const std::string& gamma) {
  auto ss = split_ws(sigma);
  bool ranked = !ss.empty() && std::all_of(ss.begin(), ss.end(), [](const std::string& s) { return s.find('/') != std::string::npos; });
  if (ranked) {
    std::map<std::string, int> ranks;
    for (const auto& s : ss) {
      auto p = s.rfind('/');
      try {
        ranks[s.substr(0, p)] = std::stoi(s.substr(p + 1));
      } catch (...) {
        throw ParseError("bad rank in '" + s + "'");
      }
    }
    Signature sig = Signature::trees(ranks);
    auto gs = split_ws(gamma);
    if (!gs.empty() && gs != sig.edge_labels) throw ParseError("gamma of a ranked signature must be 1..m");
    return sig;
  }
  Signature sig;
  sig.node_labels = ss;
  sig.edge_labels = split_ws(gamma);
  return sig;
}

FormulaFile parse_formula_file(const std::string& text) {
  std::istringstream is(text);
  std::string line, sigma, gamma, body;
  std::vector<std::string> free;
  std::size_t lineno = 0, body_line = 0;
  bool in_body = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!in_body) {
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == ';') continue;
      auto colon = line.find(':');
      auto key = colon == std::string::npos ? std::string{} : line.substr(first, colon - first);
      if (key == "sigma") {
        sigma = line.substr(colon + 1);
        continue;
      }
      if (key == "gamma") {
        gamma = line.substr(colon + 1);
        continue;
      }
      if (key == "free") {
        free = split_ws(line.substr(colon + 1));
        continue;
      }
      in_body = true;
      body_line = lineno;
    }
    body += line + "\n";
  }
  if (!in_body) throw ParseError("formula file has no formula");
  FormulaFile ff;
  ff.sig = parse_signature(sigma, gamma);
  ff.free = free;
  ff.formula = parse_formula_at(body, ff.sig, free, body_line);
  return ff;
}

// ---------------------------------------------------------------------------
// Oracle model checking

namespace {

using Mask = std::uint64_t;

struct Checker {
  const Graph& g;
  std::size_t n;
  std::map<std::string, std::vector<Mask>> out;  // label -> per-node successor mask
  std::vector<Mask> any_out, any_in;
  std::vector<std::pair<std::string, Mask>> env;

  explicit Checker(const Graph& graph) : g(graph), n(graph.size()), any_out(n, 0), any_in(n, 0) {
    for (const auto& e : g.edges()) {
      auto& v = out[e.label];
      if (v.empty()) v.assign(n, 0);
      v[e.src] |= Mask{1} << e.dst;
      any_out[e.src] |= Mask{1} << e.dst;
      any_in[e.dst] |= Mask{1} << e.src;
    }
  }

  Mask value(const std::string& v) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) return it->second;
    throw Error("unbound variable " + v);
  }
  std::size_t node(const std::string& v) const {
    Mask m = value(v);
    return static_cast<std::size_t>(std::countr_zero(m));
  }
  bool edge(const std::string& l, std::size_t u, std::size_t v) const {
    auto it = out.find(l);
    return it != out.end() && ((it->second[u] >> v) & 1);
  }
  Mask reach_from(std::size_t u) const {
    Mask seen = Mask{1} << u, frontier = seen;
    while (frontier) {
      Mask next = 0;
      for (std::size_t w = 0; w < n; ++w)
        if ((frontier >> w) & 1) next |= any_out[w];
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  }
  bool next_sibling(std::size_t z, std::size_t y) const {
    for (std::size_t p = 0; p < n; ++p)
      for (int i = 1;; ++i) {
        auto a = out.find(std::to_string(i));
        auto b = out.find(std::to_string(i + 1));
        if (a == out.end() || b == out.end()) break;
        if (((a->second[p] >> z) & 1) && ((b->second[p] >> y) & 1)) return true;
      }
    return false;
  }
  bool has_next_sibling(std::size_t z) const {
    for (std::size_t y = 0; y < n; ++y)
      if (next_sibling(z, y)) return true;
    return false;
  }
  bool pre_succ(std::size_t x, std::size_t y) const {
    if (edge("1", x, y)) return true;
    if (any_out[x]) return false;
    for (std::size_t z = 0; z < n; ++z) {
      if (!((reach_from(z) >> x) & 1) || !next_sibling(z, y)) continue;
      bool nearest = true;
      Mask below = reach_from(z);
      for (std::size_t z2 = 0; z2 < n && nearest; ++z2)
        if (z2 != z && ((below >> z2) & 1) && ((reach_from(z2) >> x) & 1) && has_next_sibling(z2)) nearest = false;
      if (nearest) return true;
    }
    return false;
  }

  bool eval(const Formula& f) {
    switch (f.kind) {
      case Kind::True: return true;
      case Kind::False: return false;
      case Kind::Lab: return g.label(node(f.vars[0])) == f.label;
      case Kind::Edg: return edge(f.label, node(f.vars[0]), node(f.vars[1]));
      case Kind::In: return (value(f.vars[1]) & value(f.vars[0])) != 0;
      case Kind::Eq: return value(f.vars[0]) == value(f.vars[1]);
      case Kind::Not: return !eval(*f.kids[0]);
      case Kind::And:
        for (const auto& k : f.kids)
          if (!eval(*k)) return false;
        return true;
      case Kind::Or:
        for (const auto& k : f.kids)
          if (eval(*k)) return true;
        return false;
      case Kind::Implies: return !eval(*f.kids[0]) || eval(*f.kids[1]);
      case Kind::Iff: return eval(*f.kids[0]) == eval(*f.kids[1]);
      case Kind::Exists:
      case Kind::Forall: {
        bool ex = f.kind == Kind::Exists;
        const std::string& v = f.vars[0];
        env.emplace_back(v, 0);
        bool result = !ex;
        if (sort_of(v) == Sort::Node) {
          for (std::size_t u = 0; u < n; ++u) {
            env.back().second = Mask{1} << u;
            if (eval(*f.kids[0]) == ex) {
              result = ex;
              break;
            }
          }
        } else {
          const Mask limit = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
          for (Mask s = 0;; ++s) {
            env.back().second = s;
            if (eval(*f.kids[0]) == ex) {
              result = ex;
              break;
            }
            if (s == limit) break;
          }
        }
        env.pop_back();
        return result;
      }
      case Kind::Singleton: return std::popcount(value(f.vars[0])) == 1;
      case Kind::Reach: return (reach_from(node(f.vars[0])) >> node(f.vars[1])) & 1;
      case Kind::Root: return any_in[node(f.vars[0])] == 0;
      case Kind::PreSucc: return pre_succ(node(f.vars[0]), node(f.vars[1]));
    }
    return false;
  }
};

}  // namespace

bool check(const Formula& f, const Graph& g, const Assignment& a, const CheckOptions& opt) {
  if (g.size() > opt.node_cap || g.size() > 63)
    throw ResourceExceeded("check", "oracle refuses graphs with more than " + std::to_string(opt.node_cap) + " nodes");
  Checker c(g);
  for (const auto& [v, u] : a.nodes) {
    if (u >= g.size()) throw Error("assignment of " + v + " is not a node of the graph");
    c.env.emplace_back(v, Mask{1} << u);
  }
  for (const auto& [v, s] : a.sets) {
    Mask m = 0;
    for (auto u : s) {
      if (u >= g.size()) throw Error("assignment of " + v + " is not a subset of the nodes");
      m |= Mask{1} << u;
    }
    c.env.emplace_back(v, m);
  }
  for (const auto& v : free_vars(f))
    if (!a.nodes.count(v) && !a.sets.count(v)) throw Error("unbound variable " + v);
  return c.eval(f);
}

}  // namespace msoeq
