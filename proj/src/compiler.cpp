#include "msoequiv/compiler.hpp"

#include <algorithm>
#include <sstream>

#include "msoequiv/errors.hpp"

namespace msoeq {

InputClass InputClass::words(std::vector<std::string> letters) {
  InputClass c;
  c.kind = StructureKind::Word;
  c.letters = std::move(letters);
  return c;
}

InputClass InputClass::trees(const Signature& ranked) {
  if (!ranked.ranked()) throw SignatureError("tree input class needs a ranked signature");
  InputClass c;
  c.kind = StructureKind::Tree;
  for (const auto& l : ranked.node_labels) {
    c.letters.push_back(l);
    c.ranks.push_back(ranked.rank(l));
  }
  return c;
}

InputClass InputClass::of(const Signature& sig) {
  if (sig.ranked()) return trees(sig);
  if (sig.is_string_signature()) return words(sig.edge_labels);
  throw SignatureError("input signature is neither a string nor a tree signature: " + to_string(sig));
}

Signature InputClass::signature() const {
  if (kind == StructureKind::Word) return Signature::strings(letters);
  std::map<std::string, int> r;
  for (std::size_t i = 0; i < letters.size(); ++i) r[letters[i]] = ranks[i];
  return Signature::trees(r);
}

std::size_t InputClass::letter_index(const std::string& l) const {
  auto it = std::find(letters.begin(), letters.end(), l);
  if (it == letters.end()) throw SignatureError("letter '" + l + "' not in input alphabet");
  return static_cast<std::size_t>(it - letters.begin());
}

std::size_t FormulaAutomaton::accepting_states() const {
  const auto& acc = input.kind == StructureKind::Word ? word.accepting : tree.accepting;
  return static_cast<std::size_t>(std::count(acc.begin(), acc.end(), 1));
}

std::vector<int> FormulaAutomaton::symbol_ranks() const {
  std::vector<int> r(alphabet_size());
  for (std::size_t s = 0; s < r.size(); ++s) r[s] = input.ranks[s >> vars.size()];
  return r;
}

namespace {

std::uint32_t bits_at(const std::vector<std::string>& vars, const Assignment& a, std::size_t node) {
  std::uint32_t b = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    if (auto it = a.nodes.find(v); it != a.nodes.end()) {
      if (it->second == node) b |= 1u << i;
    } else if (auto st = a.sets.find(v); st != a.sets.end()) {
      if (st->second.count(node)) b |= 1u << i;
    } else {
      throw Error("valuation misses variable " + v);
    }
  }
  return b;
}

}  // namespace

std::vector<Symbol> FormulaAutomaton::annotate(const Word& w, const Assignment& a) const {
  if (input.kind != StructureKind::Word) throw Error("word given to a tree automaton");
  std::vector<Symbol> out;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    std::size_t base = i < w.size() ? input.letter_index(w[i]) : input.end_letter();
    out.push_back(encode(base, bits_at(vars, a, i)));
  }
  return out;
}

SymbolTree FormulaAutomaton::annotate(const Term& t, const Assignment& a) const {
  if (input.kind != StructureKind::Tree) throw Error("tree given to a word automaton");
  std::size_t counter = 0;
  std::function<SymbolTree(const Term&)> go = [&](const Term& n) {
    std::size_t id = counter++;
    std::size_t base = input.letter_index(n.label);
    if (static_cast<int>(n.children.size()) != input.ranks[base]) throw SignatureError("rank violation at " + n.label);
    SymbolTree st{encode(base, bits_at(vars, a, id)), {}};
    for (const auto& c : n.children) st.kids.push_back(go(c));
    return st;
  };
  return go(t);
}

bool FormulaAutomaton::accepts(const Word& w, const Assignment& a) const {
  auto syms = annotate(w, a);
  return word.accepts(syms);
}

bool FormulaAutomaton::accepts(const Term& t, const Assignment& a) const { return dta_accepts(tree, annotate(t, a)); }

Compiler::Compiler(InputClass input, CompileOptions opt) : input_(std::move(input)), opt_(opt) {}

namespace {

std::vector<std::size_t> node_var_bits(const std::vector<std::string>& vars) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (sort_of(vars[i]) == Sort::Node) out.push_back(i);
  return out;
}

template <class Fn>
Dfa make_dfa(std::size_t states, std::size_t alphabet, Fn step, std::vector<char> accepting) {
  Dfa d;
  d.alphabet = alphabet;
  d.states = states;
  d.delta.resize(states * alphabet);
  for (State q = 0; q < states; ++q)
    for (Symbol s = 0; s < alphabet; ++s) d.delta[q * alphabet + s] = step(q, s);
  d.accepting = std::move(accepting);
  return d;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

template <class Fn>
Dta make_dta(std::size_t states, const std::vector<int>& ranks, Fn step, std::vector<char> accepting) {
  Dta d;
  d.rank = ranks;
  d.states = states;
  d.table.resize(ranks.size());
  std::vector<State> kids;
  for (Symbol s = 0; s < ranks.size(); ++s) {
    const int r = ranks[s];
    d.table[s].resize(ipow(states, r));
    kids.assign(r, 0);
    for (std::size_t idx = 0; idx < d.table[s].size(); ++idx) {
      std::size_t rest = idx;
      for (int p = r - 1; p >= 0; --p) {
        kids[p] = static_cast<State>(rest % states);
        rest /= states;
      }
      d.table[s][idx] = step(s, kids);
    }
  }
  d.accepting = std::move(accepting);
  return d;
}

}  // namespace

FormulaAutomaton Compiler::well_formed(const std::vector<std::string>& vars) const {
  FormulaAutomaton fa;
  fa.input = input_;
  fa.vars = vars;
  const auto fo = node_var_bits(vars);
  const std::uint32_t k = static_cast<std::uint32_t>(vars.size());
  std::uint32_t fo_mask_bits = 0;
  for (auto i : fo) fo_mask_bits |= 1u << i;
  // Node-variable bits compressed to a dense mask over `fo`.
  auto compress = [&](std::uint32_t bits) {
    std::uint32_t m = 0;
    for (std::size_t j = 0; j < fo.size(); ++j)
      if ((bits >> fo[j]) & 1) m |= 1u << j;
    return m;
  };
  const std::uint32_t full = (1u << fo.size()) - 1;
  const std::size_t masks = std::size_t{1} << fo.size();
  if (input_.kind == StructureKind::Word) {
    // state = ended * masks + mask; sink = 2 * masks
    const State sink = static_cast<State>(2 * masks);
    std::vector<char> acc(2 * masks + 1, 0);
    acc[masks + full] = 1;
    fa.word = make_dfa(
        2 * masks + 1, fa.alphabet_size(),
        [&](State q, Symbol s) -> State {
          if (q == sink || q >= masks) return sink;
          std::uint32_t bits = s & ((1u << k) - 1);
          std::size_t base = s >> k;
          std::uint32_t m = compress(bits & fo_mask_bits);
          if (m & q) return sink;
          std::uint32_t nm = q | m;
          return base == input_.end_letter() ? static_cast<State>(masks + nm) : static_cast<State>(nm);
        },
        acc);
  } else {
    const State sink = static_cast<State>(masks);
    std::vector<char> acc(masks + 1, 0);
    acc[full] = 1;
    fa.tree = make_dta(
        masks + 1, fa.symbol_ranks(),
        [&](Symbol s, const std::vector<State>& kids) -> State {
          std::uint32_t m = compress((s & ((1u << k) - 1)) & fo_mask_bits);
          for (State c : kids) {
            if (c == sink || (m & c)) return sink;
            m |= c;
          }
          return m;
        },
        acc);
  }
  return fa;
}

FormulaAutomaton Compiler::constant(bool value) const {
  if (!value) {
    FormulaAutomaton fa;
    fa.input = input_;
    if (input_.kind == StructureKind::Word)
      fa.word = dfa_constant(fa.alphabet_size(), false);
    else
      fa.tree = dta_constant(fa.symbol_ranks(), false);
    return fa;
  }
  return minimize(well_formed({}));
}

FormulaAutomaton Compiler::minimize(FormulaAutomaton a) const {
  if (a.input.kind == StructureKind::Word)
    a.word = dfa_minimize(a.word);
  else
    a.tree = dta_minimize(a.tree);
  return a;
}

namespace {

// For each symbol over `to`, the symbol over `from` (from ⊆ to) it restricts to.
std::vector<Symbol> restriction(const FormulaAutomaton& from, const std::vector<std::string>& to, std::size_t bases) {
  std::vector<int> pos(from.vars.size());
  for (std::size_t i = 0; i < from.vars.size(); ++i) {
    auto it = std::find(to.begin(), to.end(), from.vars[i]);
    if (it == to.end()) throw Error("variable " + from.vars[i] + " missing from extended context");
    pos[i] = static_cast<int>(it - to.begin());
  }
  const std::size_t kt = to.size();
  std::vector<Symbol> out(bases << kt);
  for (std::size_t s = 0; s < out.size(); ++s) {
    std::uint32_t bits = static_cast<std::uint32_t>(s & ((std::size_t{1} << kt) - 1));
    std::size_t base = s >> kt;
    std::uint32_t fb = 0;
    for (std::size_t i = 0; i < pos.size(); ++i)
      if ((bits >> pos[i]) & 1) fb |= 1u << i;
    out[s] = from.encode(base, fb);
  }
  return out;
}

std::vector<std::string> merged_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> u = a;
  for (const auto& v : b)
    if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
  std::sort(u.begin(), u.end());
  return u;
}

bool acc_and(bool x, bool y) { return x && y; }
bool acc_or(bool x, bool y) { return x || y; }
bool acc_iff(bool x, bool y) { return x == y; }
bool acc_implies(bool x, bool y) { return !x || y; }

}  // namespace

FormulaAutomaton Compiler::combine(const FormulaAutomaton& a, const FormulaAutomaton& b, bool (*acc)(bool, bool),
                                   bool needs_wf) const {
  auto vars = merged_vars(a.vars, b.vars);
  FormulaAutomaton out;
  out.input = input_;
  out.vars = vars;
  auto la = restriction(a, vars, input_.base_symbols());
  auto lb = restriction(b, vars, input_.base_symbols());
  std::function<bool(bool, bool)> f = acc;
  if (input_.kind == StructureKind::Word)
    out.word = dfa_product(a.word, b.word, la, lb, f, opt_.state_cap);
  else
    out.tree = dta_product(a.tree, b.tree, out.symbol_ranks(), la, lb, f, opt_.state_cap);
  out = minimize(std::move(out));
  if (needs_wf) out = combine(out, well_formed(vars), acc_and, false);
  return out;
}

FormulaAutomaton Compiler::conj(const FormulaAutomaton& a, const FormulaAutomaton& b) const {
  return combine(a, b, acc_and, false);
}

FormulaAutomaton Compiler::disj(const FormulaAutomaton& a, const FormulaAutomaton& b) const {
  return combine(a, b, acc_or, true);
}

FormulaAutomaton Compiler::negate(const FormulaAutomaton& a) const {
  FormulaAutomaton c = a;
  if (c.input.kind == StructureKind::Word)
    c.word = dfa_complement(std::move(c.word));
  else
    c.tree = dta_complement(std::move(c.tree));
  return combine(c, well_formed(a.vars), acc_and, false);
}

FormulaAutomaton Compiler::project(const FormulaAutomaton& a, const std::string& var) const {
  auto it = std::find(a.vars.begin(), a.vars.end(), var);
  if (it == a.vars.end()) return a;
  const std::size_t bit = static_cast<std::size_t>(it - a.vars.begin());
  FormulaAutomaton out;
  out.input = input_;
  out.vars = a.vars;
  out.vars.erase(out.vars.begin() + static_cast<std::ptrdiff_t>(bit));
  const std::size_t kn = out.vars.size();
  std::vector<std::vector<Symbol>> pre(out.alphabet_size());
  for (std::size_t s = 0; s < pre.size(); ++s) {
    std::uint32_t bits = static_cast<std::uint32_t>(s & ((std::size_t{1} << kn) - 1));
    std::size_t base = s >> kn;
    std::uint32_t low = bits & ((1u << bit) - 1);
    std::uint32_t high = (bits >> bit) << (bit + 1);
    pre[s] = {a.encode(base, low | high), a.encode(base, low | high | (1u << bit))};
  }
  if (input_.kind == StructureKind::Word)
    out.word = dfa_determinize(a.word, pre, opt_.state_cap);
  else
    out.tree = dta_determinize(a.tree, out.symbol_ranks(), pre, opt_.state_cap);
  return minimize(std::move(out));
}

FormulaAutomaton Compiler::extend(const FormulaAutomaton& a, const std::vector<std::string>& vars) const {
  if (vars == a.vars) return a;
  FormulaAutomaton wf = well_formed(vars);
  auto la = restriction(a, vars, input_.base_symbols());
  auto lw = restriction(wf, vars, input_.base_symbols());
  FormulaAutomaton out;
  out.input = input_;
  out.vars = vars;
  std::function<bool(bool, bool)> f = acc_and;
  if (input_.kind == StructureKind::Word)
    out.word = dfa_product(a.word, wf.word, la, lw, f, opt_.state_cap);
  else
    out.tree = dta_product(a.tree, wf.tree, out.symbol_ranks(), la, lw, f, opt_.state_cap);
  return minimize(std::move(out));
}

FormulaAutomaton Compiler::atom(const Formula& f) const {
  std::vector<std::string> vars(f.vars.begin(), f.vars.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  FormulaAutomaton fa;
  fa.input = input_;
  fa.vars = vars;
  const std::uint32_t k = static_cast<std::uint32_t>(vars.size());
  auto bit_of = [&](const std::string& v) {
    return static_cast<std::uint32_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
  };
  auto has = [&](Symbol s, const std::string& v) { return ((s >> bit_of(v)) & 1) != 0; };
  auto base_of = [&](Symbol s) { return static_cast<std::size_t>(s >> k); };
  const bool words = input_.kind == StructureKind::Word;

  // Node-local predicate: every node satisfying `trigger` must satisfy `ok`.
  auto local = [&](auto trigger, auto ok) {
    if (words) {
      fa.word = make_dfa(
          2, fa.alphabet_size(), [&](State q, Symbol s) -> State { return q == 1 || (trigger(s) && !ok(s)) ? 1 : 0; },
          {1, 0});
    } else {
      fa.tree = make_dta(
          2, fa.symbol_ranks(),
          [&](Symbol s, const std::vector<State>& kids) -> State {
            for (State c : kids)
              if (c == 1) return 1;
            return trigger(s) && !ok(s) ? 1 : 0;
          },
          {1, 0});
    }
  };

  switch (f.kind) {
    case Kind::Lab: {
      const std::string& x = f.vars[0];
      if (words) {
        bool holds = f.label == kStringNodeLabel;
        local([&](Symbol s) { return has(s, x); }, [&](Symbol) { return holds; });
      } else {
        auto it = std::find(input_.letters.begin(), input_.letters.end(), f.label);
        if (it == input_.letters.end()) throw SignatureError("unknown node label " + f.label);
        std::size_t want = static_cast<std::size_t>(it - input_.letters.begin());
        local([&](Symbol s) { return has(s, x); }, [&](Symbol s) { return base_of(s) == want; });
      }
      break;
    }
    case Kind::In: {
      const std::string &x = f.vars[0], &X = f.vars[1];
      local([&](Symbol s) { return has(s, x); }, [&](Symbol s) { return has(s, X); });
      break;
    }
    case Kind::Eq: {
      const std::string &x = f.vars[0], &y = f.vars[1];
      local([&](Symbol s) { return has(s, x) != has(s, y); }, [&](Symbol) { return false; });
      break;
    }
    case Kind::Edg: {
      const std::string &x = f.vars[0], &y = f.vars[1];
      if (x == y) return constant(false);
      if (words) {
        auto it = std::find(input_.letters.begin(), input_.letters.end(), f.label);
        if (it == input_.letters.end()) throw SignatureError("unknown edge label " + f.label);
        std::size_t want = static_cast<std::size_t>(it - input_.letters.begin());
        // 0: before x, 1: x just read, 2: done, 3: sink
        fa.word = make_dfa(
            4, fa.alphabet_size(),
            [&](State q, Symbol s) -> State {
              bool hx = has(s, x), hy = has(s, y);
              switch (q) {
                case 0:
                  if (hy) return 3;
                  if (hx) return base_of(s) == want ? 1 : 3;
                  return 0;
                case 1:
                  return hy && !hx ? 2 : 3;
                case 2:
                  return hx || hy ? 3 : 2;
                default:
                  return 3;
              }
            },
            {0, 0, 1, 0});
      } else {
        int child = 0;
        try {
          child = std::stoi(f.label);
        } catch (...) {
          throw SignatureError("tree edge label must be numeric: " + f.label);
        }
        // 0: nothing, 1: y at this node, 2: done, 3: sink
        fa.tree = make_dta(
            4, fa.symbol_ranks(),
            [&](Symbol s, const std::vector<State>& kids) -> State {
              bool hx = has(s, x), hy = has(s, y);
              int ys = 0, ds = 0;
              for (State c : kids) {
                if (c == 3) return 3;
                ys += c == 1;
                ds += c == 2;
              }
              if (hx && hy) return 3;
              if (hx) {
                if (child < 1 || child > static_cast<int>(kids.size())) return 3;
                return kids[child - 1] == 1 && ys == 1 && ds == 0 ? 2 : 3;
              }
              if (hy) return ys == 0 && ds == 0 ? 1 : 3;
              if (ys) return 3;
              if (ds > 1) return 3;
              return ds == 1 ? 2 : 0;
            },
            {0, 0, 1, 0});
      }
      break;
    }
    default:
      throw Error("not an atom: " + to_sexpr(f));
  }
  return combine(fa, well_formed(vars), acc_and, false);
}

FormulaAutomaton Compiler::run(const FormulaPtr& f) const {
  switch (f->kind) {
    case Kind::True:
      return constant(true);
    case Kind::False:
      return constant(false);
    case Kind::Lab:
    case Kind::Edg:
    case Kind::In:
    case Kind::Eq:
      return atom(*f);
    case Kind::Not:
      return negate(run(f->kids[0]));
    case Kind::And:
    case Kind::Or: {
      FormulaAutomaton acc = run(f->kids[0]);
      for (std::size_t i = 1; i < f->kids.size(); ++i) {
        auto next = run(f->kids[i]);
        acc = f->kind == Kind::And ? conj(acc, next) : disj(acc, next);
      }
      return acc;
    }
    case Kind::Implies:
      return combine(run(f->kids[0]), run(f->kids[1]), acc_implies, true);
    case Kind::Iff:
      return combine(run(f->kids[0]), run(f->kids[1]), acc_iff, true);
    case Kind::Exists:
      return project(run(f->kids[0]), f->vars[0]);
    case Kind::Forall:
      return negate(project(negate(run(f->kids[0])), f->vars[0]));
    default:
      throw Error("macro reached the compiler unexpanded: " + to_sexpr(*f));
  }
}

FormulaAutomaton Compiler::compile(const FormulaPtr& f) const {
  validate(*f, input_.signature());
  auto g = rename_bound_apart(expand_derived(f, input_.signature(), /*keep_equality=*/true));
  return run(g);
}

FormulaAutomaton Compiler::compile(const FormulaPtr& f, const VarContext& ctx) const {
  for (const auto& v : free_vars(*f))
    if (std::find(ctx.begin(), ctx.end(), v) == ctx.end()) throw Error("free variable " + v + " not in context");
  auto a = compile(f);
  return extend(a, std::vector<std::string>(ctx.begin(), ctx.end()));
}

FormulaAutomaton compile_word(const FormulaPtr& f, const VarContext& ctx, const std::vector<std::string>& letters,
                              const CompileOptions& opt) {
  return Compiler(InputClass::words(letters), opt).compile(f, ctx);
}

FormulaAutomaton compile_tree(const FormulaPtr& f, const VarContext& ctx, const Signature& ranked,
                              const CompileOptions& opt) {
  return Compiler(InputClass::trees(ranked), opt).compile(f, ctx);
}

bool is_empty(const FormulaAutomaton& a) {
  return a.input.kind == StructureKind::Word ? dfa_is_empty(a.word) : dta_is_empty(a.tree);
}

bool is_universal(const FormulaAutomaton& a) { return is_empty(Compiler(a.input).negate(a)); }

std::string summary(const FormulaAutomaton& a) {
  std::ostringstream os;
  os << (a.input.kind == StructureKind::Word ? "word" : "tree") << " automaton: " << a.states() << " states, "
     << a.accepting_states() << " accepting, " << a.alphabet_size() << " symbols, vars [";
  for (std::size_t i = 0; i < a.vars.size(); ++i) os << (i ? " " : "") << a.vars[i];
  os << "]";
  if (is_empty(a))
    os << ", empty";
  else if (is_universal(a))
    os << ", universal";
  return os.str();
}

std::string dump(const FormulaAutomaton& a) {
  std::ostringstream os;
  auto sym = [&](Symbol s) {
    std::size_t base = s >> a.vars.size();
    std::string out = base < a.input.letters.size() ? a.input.letters[base] : std::string("$end");
    out += ":";
    for (std::size_t i = 0; i < a.vars.size(); ++i) out += ((s >> i) & 1) ? '1' : '0';
    return out;
  };
  os << "kind " << (a.input.kind == StructureKind::Word ? "word" : "tree") << "\n";
  os << "vars";
  for (const auto& v : a.vars) os << ' ' << v;
  os << "\nstates " << a.states() << "\n";
  if (a.input.kind == StructureKind::Word) {
    os << "initial " << a.word.initial << "\n";
    for (State q = 0; q < a.word.states; ++q)
      for (Symbol s = 0; s < a.word.alphabet; ++s) os << q << ' ' << sym(s) << ' ' << a.word.next(q, s) << "\n";
    os << "accepting";
    for (State q = 0; q < a.word.states; ++q)
      if (a.word.accepting[q]) os << ' ' << q;
  } else {
    for (Symbol s = 0; s < a.tree.rank.size(); ++s) {
      const int r = a.tree.rank[s];
      for (std::size_t idx = 0; idx < a.tree.table[s].size(); ++idx) {
        os << sym(s) << '(';
        std::vector<std::size_t> t(r);
        std::size_t rest = idx;
        for (int p = r - 1; p >= 0; --p) {
          t[p] = rest % a.tree.states;
          rest /= a.tree.states;
        }
        for (int p = 0; p < r; ++p) os << (p ? "," : "") << t[p];
        os << ") -> " << a.tree.table[s][idx] << "\n";
      }
    }
    os << "accepting";
    for (State q = 0; q < a.tree.states; ++q)
      if (a.tree.accepting[q]) os << ' ' << q;
  }
  os << "\n";
  return os.str();
}

}  // namespace msoeq
