#include "product.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "msoequiv/errors.hpp"

namespace msoeq::detail {

WeightedGrammar ProductGrammar::weighted() const {
  WeightedGrammar w;
  w.dim = dim;
  w.nonterminals = nonterminals;
  w.start = start;
  for (const auto& r : rules) w.rules.push_back({r.lhs, r.weight, r.rhs});
  return w;
}

namespace {

/// Square boolean relation over automaton states.
class Relation {
 public:
  explicit Relation(std::size_t n = 0) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}
  bool get(std::size_t p, std::size_t q) const { return (bits_[p * words_ + q / 64] >> (q % 64)) & 1; }
  void set(std::size_t p, std::size_t q) { bits_[p * words_ + q / 64] |= std::uint64_t{1} << (q % 64); }
  /// this |= a ; b. Returns whether anything was added.
  bool add_composition(const Relation& a, const Relation& b) {
    bool changed = false;
    for (std::size_t p = 0; p < n_; ++p)
      for (std::size_t q = 0; q < n_; ++q) {
        if (!a.get(p, q)) continue;
        for (std::size_t w = 0; w < words_; ++w) {
          auto before = bits_[p * words_ + w];
          bits_[p * words_ + w] |= b.bits_[q * words_ + w];
          changed |= before != bits_[p * words_ + w];
        }
      }
    return changed;
  }
  bool add(const Relation& a) {
    bool changed = false;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      auto before = bits_[i];
      bits_[i] |= a.bits_[i];
      changed |= before != bits_[i];
    }
    return changed;
  }
  bool add_identity() {
    bool changed = false;
    for (std::size_t p = 0; p < n_; ++p)
      if (!get(p, p)) {
        set(p, p);
        changed = true;
      }
    return changed;
  }

 private:
  std::size_t n_, words_;
  std::vector<std::uint64_t> bits_;
};

// Binarized rules: symbols >= 0 are nonterminals, < 0 are terminal bases.
struct BinRule {
  std::size_t lhs;
  std::vector<long> rhs;
};

}  // namespace

ProductGrammar string_product(const Cfg& g, const std::map<std::string, std::size_t>& base_of, std::size_t end_base,
                              const Dfa& a, const Counting& c, std::size_t cap, const std::function<void()>& tick) {
  ProductGrammar out;
  out.dim = c.dim();
  out.nonterminals = 1;
  out.start = 0;

  std::map<std::string, std::size_t> nt;
  for (const auto& n : g.nonterminals) nt.emplace(n, nt.size());
  nt.emplace(g.start, nt.size());
  for (const auto& p : g.productions) nt.emplace(p.lhs, nt.size());
  std::size_t n_nt = nt.size();
  std::vector<BinRule> rules;
  for (const auto& p : g.productions) {
    std::vector<long> syms;
    for (const auto& s : p.rhs) {
      if (auto it = nt.find(s); it != nt.end()) {
        syms.push_back(static_cast<long>(it->second));
      } else {
        auto b = base_of.find(s);
        if (b == base_of.end()) throw SignatureError("domain letter '" + s + "' not in the input alphabet");
        syms.push_back(-static_cast<long>(b->second) - 1);
      }
    }
    std::size_t lhs = nt.at(p.lhs);
    while (syms.size() > 2) {
      std::size_t fresh = n_nt++;
      rules.push_back({lhs, {syms[0], static_cast<long>(fresh)}});
      syms.erase(syms.begin());
      lhs = fresh;
    }
    rules.push_back({lhs, syms});
  }

  const std::size_t q = a.states;
  auto sym = [&](std::size_t base, std::size_t ch) { return static_cast<Symbol>(base * c.choices + ch); };
  // States from which the end marker can be read into acceptance.
  std::vector<char> final_state(q, 0), live(q, 0);
  for (std::size_t p = 0; p < q; ++p)
    for (std::size_t ch = 0; ch < c.choices; ++ch)
      if (a.accepting[a.next(static_cast<State>(p), sym(end_base, ch))]) final_state[p] = 1;
  live = final_state;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < q; ++p) {
      if (live[p]) continue;
      for (std::size_t base = 0; base < end_base && !live[p]; ++base)
        for (std::size_t ch = 0; ch < c.choices; ++ch)
          if (live[a.next(static_cast<State>(p), sym(base, ch))]) {
            live[p] = changed = true;
            break;
          }
    }
  }

  std::vector<Relation> term(end_base, Relation(q));
  for (std::size_t p = 0; p < q; ++p) {
    if (!live[p]) continue;
    for (std::size_t base = 0; base < end_base; ++base)
      for (std::size_t ch = 0; ch < c.choices; ++ch) {
        auto t = a.next(static_cast<State>(p), sym(base, ch));
        if (live[t]) term[base].set(p, t);
      }
  }
  std::vector<Relation> rel(n_nt, Relation(q));
  auto rel_of = [&](long s) -> const Relation& {
    return s >= 0 ? rel[static_cast<std::size_t>(s)] : term[static_cast<std::size_t>(-s - 1)];
  };
  for (bool changed = true; changed;) {
    changed = false;
    if (tick) tick();
    for (const auto& r : rules) {
      auto& target = rel[r.lhs];
      if (r.rhs.empty())
        changed |= target.add_identity();
      else if (r.rhs.size() == 1)
        changed |= target.add(rel_of(r.rhs[0]));
      else
        changed |= target.add_composition(rel_of(r.rhs[0]), rel_of(r.rhs[1]));
    }
  }

  std::vector<std::vector<const BinRule*>> by_lhs(n_nt);
  for (const auto& r : rules) by_lhs[r.lhs].push_back(&r);
  // Triples (symbol, p, r); terminals are shifted below zero.
  std::unordered_map<std::uint64_t, std::size_t> ids;
  std::vector<std::tuple<long, std::size_t, std::size_t>> todo;
  auto id_of = [&](long s, std::size_t p, std::size_t r) {
    std::uint64_t key = (static_cast<std::uint64_t>(s + static_cast<long>(end_base) + 1) * q + p) * q + r;
    auto [it, fresh] = ids.emplace(key, out.nonterminals);
    if (fresh) {
      if (++out.nonterminals > cap) throw ResourceExceeded("product", "grammar exceeded " + std::to_string(cap));
      todo.emplace_back(s, p, r);
    }
    return it->second;
  };
  const std::size_t s0 = nt.at(g.start);
  if (live[a.initial]) {
    for (std::size_t r = 0; r < q; ++r) {
      if (!final_state[r] || !rel[s0].get(a.initial, r)) continue;
      std::size_t body = id_of(static_cast<long>(s0), a.initial, r);
      std::size_t end = out.nonterminals++;
      out.rules.push_back({0, -1, c.offset, {body, end}});
      for (std::size_t ch = 0; ch < c.choices; ++ch)
        if (a.accepting[a.next(static_cast<State>(r), sym(end_base, ch))])
          out.rules.push_back({end, -1, c.weights[ch], {}});
    }
  }
  for (std::size_t i = 0; i < todo.size(); ++i) {
    auto [s, p, r] = todo[i];
    std::size_t lhs = id_of(s, p, r);
    if (i % 1024 == 0 && tick) tick();
    if (s < 0) {
      auto base = static_cast<std::size_t>(-s - 1);
      for (std::size_t ch = 0; ch < c.choices; ++ch)
        if (a.next(static_cast<State>(p), sym(base, ch)) == r)
          out.rules.push_back({lhs, static_cast<int>(base), c.weights[ch], {}});
      continue;
    }
    for (const auto* br : by_lhs[static_cast<std::size_t>(s)]) {
      if (br->rhs.empty()) {
        if (p == r) out.rules.push_back({lhs, -1, Vec(out.dim, 0), {}});
      } else if (br->rhs.size() == 1) {
        if (rel_of(br->rhs[0]).get(p, r))
          out.rules.push_back({lhs, -1, Vec(out.dim, 0), {id_of(br->rhs[0], p, r)}});
      } else {
        const auto& x = rel_of(br->rhs[0]);
        const auto& y = rel_of(br->rhs[1]);
        for (std::size_t m = 0; m < q; ++m)
          if (x.get(p, m) && y.get(m, r)) {
            auto left = id_of(br->rhs[0], p, m);
            auto right = id_of(br->rhs[1], m, r);
            out.rules.push_back({lhs, -1, Vec(out.dim, 0), {left, right}});
          }
      }
    }
  }
  return out;
}

ProductGrammar tree_product(const Rtg& g, const std::map<std::string, std::size_t>& base_of, const Dta& a,
                            const Counting& c, std::size_t cap, const std::function<void()>& tick) {
  ProductGrammar out;
  out.dim = c.dim();
  out.nonterminals = 1;
  out.start = 0;

  std::map<std::string, std::size_t> nt;
  for (const auto& n : g.nonterminals) nt.emplace(n, nt.size());
  nt.emplace(g.start, nt.size());
  for (const auto& p : g.productions) nt.emplace(p.lhs, nt.size());
  struct Prod {
    std::size_t lhs, base;
    std::vector<std::size_t> kids;
  };
  std::vector<Prod> prods;
  for (const auto& p : g.productions) {
    auto b = base_of.find(p.label);
    if (b == base_of.end()) throw SignatureError("domain label '" + p.label + "' not in the input alphabet");
    Prod pr{nt.at(p.lhs), b->second, {}};
    for (const auto& k : p.kids) pr.kids.push_back(nt.at(k));
    prods.push_back(std::move(pr));
  }

  const std::size_t q = a.states;
  std::vector<std::vector<char>> has(nt.size(), std::vector<char>(q, 0));
  std::vector<std::vector<State>> states(nt.size());
  // Calls f(kid states, target, choice) for every combination of known kid states.
  auto each_transition = [&](const Prod& p, auto&& f) {
    const std::size_t r = p.kids.size();
    for (std::size_t k = 0; k < r; ++k)
      if (states[p.kids[k]].empty()) return;
    std::vector<std::size_t> pos(r, 0);
    std::vector<State> kids(r);
    while (true) {
      for (std::size_t k = 0; k < r; ++k) kids[k] = states[p.kids[k]][pos[k]];
      for (std::size_t ch = 0; ch < c.choices; ++ch)
        f(kids, a.next(static_cast<Symbol>(p.base * c.choices + ch), kids), ch);
      std::size_t k = 0;
      while (k < r && ++pos[k] == states[p.kids[k]].size()) pos[k++] = 0;
      if (k == r) break;
    }
  };
  for (bool changed = true; changed;) {
    changed = false;
    if (tick) tick();
    for (const auto& p : prods)
      each_transition(p, [&](const std::vector<State>&, State t, std::size_t) {
        if (!has[p.lhs][t]) {
          has[p.lhs][t] = 1;
          states[p.lhs].push_back(t);
          changed = true;
        }
      });
  }

  struct Move {
    std::size_t prod, choice;
    std::vector<State> kids;
  };
  std::map<std::pair<std::size_t, State>, std::vector<Move>> moves;
  std::size_t move_count = 0;
  for (std::size_t i = 0; i < prods.size(); ++i)
    each_transition(prods[i], [&](const std::vector<State>& kids, State t, std::size_t ch) {
      if (++move_count > cap) throw ResourceExceeded("product", "grammar exceeded " + std::to_string(cap));
      moves[{prods[i].lhs, t}].push_back({i, ch, kids});
    });

  std::map<std::pair<std::size_t, State>, std::size_t> ids;
  std::vector<std::pair<std::size_t, State>> todo;
  auto id_of = [&](std::size_t n, State s) {
    auto [it, fresh] = ids.emplace(std::make_pair(n, s), out.nonterminals);
    if (fresh) {
      if (++out.nonterminals > cap) throw ResourceExceeded("product", "grammar exceeded " + std::to_string(cap));
      todo.emplace_back(n, s);
    }
    return it->second;
  };
  const std::size_t s0 = nt.at(g.start);
  for (State s : states[s0])
    if (a.accepting[s]) out.rules.push_back({0, -1, c.offset, {id_of(s0, s)}});
  for (std::size_t i = 0; i < todo.size(); ++i) {
    auto key = todo[i];
    std::size_t lhs = ids.at(key);
    if (i % 1024 == 0 && tick) tick();
    auto it = moves.find(key);
    if (it == moves.end()) continue;
    for (const auto& m : it->second) {
      const auto& p = prods[m.prod];
      ProductGrammar::Rule r{lhs, static_cast<int>(p.base), c.weights[m.choice], {}};
      for (std::size_t k = 0; k < p.kids.size(); ++k) r.rhs.push_back(id_of(p.kids[k], m.kids[k]));
      out.rules.push_back(std::move(r));
    }
  }
  return out;
}

std::optional<std::vector<LetterTree>> smallest_derivation(const ProductGrammar& g) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> size(g.nonterminals, kInf);
  std::vector<const ProductGrammar::Rule*> best(g.nonterminals, nullptr);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules) {
      std::size_t s = r.letter >= 0 ? 1 : 0;
      for (auto k : r.rhs) {
        if (size[k] == kInf) {
          s = kInf;
          break;
        }
        s += size[k];
      }
      if (s < size[r.lhs]) {
        size[r.lhs] = s;
        best[r.lhs] = &r;
        changed = true;
      }
    }
  }
  if (size[g.start] == kInf) return std::nullopt;
  std::function<std::vector<LetterTree>(std::size_t)> build = [&](std::size_t n) {
    const auto* r = best[n];
    std::vector<LetterTree> kids;
    for (auto k : r->rhs) {
      auto sub = build(k);
      kids.insert(kids.end(), std::make_move_iterator(sub.begin()), std::make_move_iterator(sub.end()));
    }
    if (r->letter < 0) return kids;
    return std::vector<LetterTree>{LetterTree{r->letter, std::move(kids)}};
  };
  return build(g.start);
}

}  // namespace msoeq::detail
