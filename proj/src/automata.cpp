#include "msoequiv/automata.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include "msoequiv/errors.hpp"

namespace msoeq {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = v.size() * 0x9e3779b97f4a7c15ULL;
    for (State s : v) h = (h ^ (s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
    return h;
  }
};

using KeyMap = std::unordered_map<std::vector<State>, State, VecHash>;

void check_cap(std::size_t states, std::size_t cap, const char* what) {
  if (states > cap)
    throw ResourceExceeded("automaton", std::string(what) + " exceeded " + std::to_string(cap) + " states");
}

// Generic forward exploration: keys are discovered from the initial key by
// `step`, each key becomes one state.
template <class Step, class Accept>
Dfa explore_words(std::size_t alphabet, std::vector<State> init, Step step, Accept accept, std::size_t cap,
                  const char* what) {
  Dfa d;
  d.alphabet = alphabet;
  KeyMap ids;
  std::vector<std::vector<State>> keys;
  auto id_of = [&](std::vector<State>&& k) -> State {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    State id = static_cast<State>(keys.size());
    ids.emplace(k, id);
    keys.push_back(std::move(k));
    check_cap(keys.size(), cap, what);
    return id;
  };
  d.initial = id_of(std::move(init));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    d.delta.resize((i + 1) * alphabet);
    for (Symbol a = 0; a < alphabet; ++a) {
      auto nk = step(keys[i], a);
      State t = id_of(std::move(nk));
      d.delta[i * alphabet + a] = t;
    }
  }
  d.states = keys.size();
  d.accepting.resize(d.states);
  for (std::size_t i = 0; i < keys.size(); ++i) d.accepting[i] = accept(keys[i]);
  return d;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<std::size_t>::max() / b) return std::numeric_limits<std::size_t>::max();
    r *= b;
  }
  return r;
}

constexpr std::size_t kTableCap = 60'000'000;

// Bottom-up exploration: states are discovered in order; when state i is
// processed every tuple whose largest component is i gets its target.
template <class Step, class Accept>
Dta explore_trees(const std::vector<int>& ranks, Step step, Accept accept, std::size_t cap, const char* what) {
  KeyMap ids;
  std::vector<std::vector<State>> keys;
  struct Pending {
    Symbol sym;
    std::vector<State> tuple;
    State target;
  };
  std::vector<Pending> results;
  auto id_of = [&](std::vector<State>&& k) -> State {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    State id = static_cast<State>(keys.size());
    ids.emplace(k, id);
    keys.push_back(std::move(k));
    check_cap(keys.size(), cap, what);
    return id;
  };
  std::vector<const std::vector<State>*> kid_keys;
  for (Symbol s = 0; s < ranks.size(); ++s) {
    if (ranks[s] != 0) continue;
    kid_keys.clear();
    State t = id_of(step(s, kid_keys));
    results.push_back({s, {}, t});
  }
  std::vector<State> tuple;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (Symbol s = 0; s < ranks.size(); ++s) {
      int r = ranks[s];
      if (r == 0) continue;
      // Enumerate tuples over [0, i] with at least one component equal to i.
      tuple.assign(r, 0);
      std::function<void(int, bool)> rec = [&](int pos, bool hit) {
        if (pos == r) {
          if (!hit) return;
          kid_keys.clear();
          for (State q : tuple) kid_keys.push_back(&keys[q]);
          State t = id_of(step(s, kid_keys));
          results.push_back({s, tuple, t});
          return;
        }
        for (State q = 0; q <= i; ++q) {
          tuple[pos] = q;
          rec(pos + 1, hit || q == i);
        }
      };
      rec(0, false);
    }
  }
  Dta d;
  d.rank = ranks;
  d.states = keys.size();
  d.table.resize(ranks.size());
  for (Symbol s = 0; s < ranks.size(); ++s) {
    std::size_t sz = ipow(d.states, ranks[s]);
    if (sz > kTableCap) throw ResourceExceeded("automaton", std::string(what) + " transition table too large");
    d.table[s].assign(sz, 0);
  }
  for (const auto& p : results) {
    std::size_t idx = 0;
    for (State q : p.tuple) idx = idx * d.states + q;
    d.table[p.sym][idx] = p.target;
  }
  d.accepting.resize(d.states);
  for (std::size_t i = 0; i < keys.size(); ++i) d.accepting[i] = accept(keys[i]);
  return d;
}

}  // namespace

bool Dfa::accepts(std::span<const Symbol> word) const {
  State q = initial;
  for (Symbol a : word) q = next(q, a);
  return accepting[q];
}

Dfa dfa_constant(std::size_t alphabet, bool accept_all) {
  Dfa d;
  d.alphabet = alphabet;
  d.states = 1;
  d.delta.assign(alphabet, 0);
  d.accepting = {static_cast<char>(accept_all)};
  return d;
}

Dfa dfa_product(const Dfa& a, const Dfa& b, const std::vector<Symbol>& left_of, const std::vector<Symbol>& right_of,
                const std::function<bool(bool, bool)>& accept, std::size_t state_cap) {
  const std::size_t alphabet = left_of.size();
  return explore_words(
      alphabet, {a.initial, b.initial},
      [&](const std::vector<State>& k, Symbol s) { return std::vector<State>{a.next(k[0], left_of[s]), b.next(k[1], right_of[s])}; },
      [&](const std::vector<State>& k) { return accept(a.accepting[k[0]], b.accepting[k[1]]); }, state_cap, "product");
}

Dfa dfa_product(const Dfa& a, const Dfa& b, const std::function<bool(bool, bool)>& accept, std::size_t state_cap) {
  if (a.alphabet != b.alphabet) throw Error("alphabet mismatch in product");
  std::vector<Symbol> id(a.alphabet);
  for (Symbol s = 0; s < a.alphabet; ++s) id[s] = s;
  return dfa_product(a, b, id, id, accept, state_cap);
}

Dfa dfa_complement(Dfa a) {
  for (auto& f : a.accepting) f = !f;
  return a;
}

Dfa dfa_determinize(const Dfa& a, const std::vector<std::vector<Symbol>>& preimage, std::size_t state_cap) {
  return explore_words(
      preimage.size(), {a.initial},
      [&](const std::vector<State>& set, Symbol s) {
        std::vector<State> out;
        for (State q : set)
          for (Symbol o : preimage[s]) out.push_back(a.next(q, o));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      },
      [&](const std::vector<State>& set) {
        return std::any_of(set.begin(), set.end(), [&](State q) { return a.accepting[q]; });
      },
      state_cap, "subset construction");
}

namespace {

// Assigns dense ids to signature vectors; returns the number of classes.
std::size_t renumber(const std::vector<std::vector<State>>& sigs, std::vector<State>& cls) {
  KeyMap ids;
  cls.resize(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    auto [it, fresh] = ids.emplace(sigs[i], static_cast<State>(ids.size()));
    cls[i] = it->second;
  }
  return ids.size();
}

}  // namespace

Dfa dfa_minimize(const Dfa& in) {
  // Reachable part.
  std::vector<State> order, index(in.states, std::numeric_limits<State>::max());
  std::deque<State> queue{in.initial};
  index[in.initial] = 0;
  order.push_back(in.initial);
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Symbol s = 0; s < in.alphabet; ++s) {
      State t = in.next(q, s);
      if (index[t] == std::numeric_limits<State>::max()) {
        index[t] = static_cast<State>(order.size());
        order.push_back(t);
        queue.push_back(t);
      }
    }
  }
  const std::size_t n = order.size();
  std::vector<State> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = in.accepting[order[i]] ? 1 : 0;
  std::size_t classes = 0;
  {
    std::vector<std::vector<State>> sigs(n);
    for (std::size_t i = 0; i < n; ++i) sigs[i] = {cls[i]};
    classes = renumber(sigs, cls);
  }
  std::vector<std::vector<State>> sigs(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      auto& sg = sigs[i];
      sg.resize(in.alphabet + 1);
      sg[0] = cls[i];
      for (Symbol s = 0; s < in.alphabet; ++s) sg[s + 1] = cls[index[in.next(order[i], s)]];
    }
    std::vector<State> next_cls;
    std::size_t c = renumber(sigs, next_cls);
    cls.swap(next_cls);
    if (c == classes) break;
    classes = c;
  }
  Dfa out;
  out.alphabet = in.alphabet;
  out.states = classes;
  out.delta.assign(classes * in.alphabet, 0);
  out.accepting.assign(classes, 0);
  out.initial = cls[0];
  for (std::size_t i = 0; i < n; ++i) {
    State c = cls[i];
    out.accepting[c] = in.accepting[order[i]];
    for (Symbol s = 0; s < in.alphabet; ++s) out.delta[c * in.alphabet + s] = cls[index[in.next(order[i], s)]];
  }
  return out;
}

bool dfa_is_empty(const Dfa& a) { return !dfa_shortest_word(a).has_value(); }

std::optional<std::vector<Symbol>> dfa_shortest_word(const Dfa& a) {
  std::vector<std::pair<State, Symbol>> parent(a.states, {std::numeric_limits<State>::max(), 0});
  std::vector<char> seen(a.states, 0);
  std::deque<State> queue{a.initial};
  seen[a.initial] = 1;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (a.accepting[q]) {
      std::vector<Symbol> w;
      for (State c = q; parent[c].first != std::numeric_limits<State>::max(); c = parent[c].first)
        w.push_back(parent[c].second);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol s = 0; s < a.alphabet; ++s) {
      State t = a.next(q, s);
      if (!seen[t]) {
        seen[t] = 1;
        parent[t] = {q, s};
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tree automata

State Dta::next(Symbol s, std::span<const State> kids) const {
  std::size_t idx = 0;
  for (State q : kids) idx = idx * states + q;
  return table[s][idx];
}

State dta_run(const Dta& a, const SymbolTree& t) {
  std::vector<State> kids;
  kids.reserve(t.kids.size());
  for (const auto& k : t.kids) kids.push_back(dta_run(a, k));
  if (static_cast<int>(kids.size()) != a.rank[t.symbol]) throw Error("tree symbol used with wrong arity");
  return a.next(t.symbol, kids);
}

bool dta_accepts(const Dta& a, const SymbolTree& t) { return a.accepting[dta_run(a, t)]; }

Dta dta_constant(const std::vector<int>& ranks, bool accept_all) {
  Dta d;
  d.rank = ranks;
  d.states = 1;
  d.table.resize(ranks.size());
  for (auto& t : d.table) t.assign(1, 0);
  d.accepting = {static_cast<char>(accept_all)};
  return d;
}

Dta dta_product(const Dta& a, const Dta& b, const std::vector<int>& ranks, const std::vector<Symbol>& left_of,
                const std::vector<Symbol>& right_of, const std::function<bool(bool, bool)>& accept,
                std::size_t state_cap) {
  std::vector<State> ka, kb;
  return explore_trees(
      ranks,
      [&](Symbol s, const std::vector<const std::vector<State>*>& kids) {
        ka.clear();
        kb.clear();
        for (const auto* k : kids) {
          ka.push_back((*k)[0]);
          kb.push_back((*k)[1]);
        }
        return std::vector<State>{a.next(left_of[s], ka), b.next(right_of[s], kb)};
      },
      [&](const std::vector<State>& k) { return accept(a.accepting[k[0]], b.accepting[k[1]]); }, state_cap,
      "tree product");
}

Dta dta_complement(Dta a) {
  for (auto& f : a.accepting) f = !f;
  return a;
}

Dta dta_determinize(const Dta& a, const std::vector<int>& ranks, const std::vector<std::vector<Symbol>>& preimage,
                    std::size_t state_cap) {
  std::vector<State> tuple;
  std::vector<State> out;
  return explore_trees(
      ranks,
      [&](Symbol s, const std::vector<const std::vector<State>*>& kids) {
        out.clear();
        const std::size_t r = kids.size();
        tuple.assign(r, 0);
        std::vector<std::size_t> pos(r, 0);
        for (bool any = true; any;) {
          for (std::size_t j = 0; j < r; ++j) {
            if ((*kids[j]).empty()) return std::vector<State>{};
            tuple[j] = (*kids[j])[pos[j]];
          }
          for (Symbol o : preimage[s]) out.push_back(a.next(o, tuple));
          // odometer
          any = false;
          for (std::size_t j = r; j-- > 0;) {
            if (++pos[j] < kids[j]->size()) {
              any = true;
              break;
            }
            pos[j] = 0;
          }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      },
      [&](const std::vector<State>& set) {
        return std::any_of(set.begin(), set.end(), [&](State q) { return a.accepting[q]; });
      },
      state_cap, "tree subset construction");
}

namespace {

/// Restriction to the states some tree reaches.
Dta dta_trim(const Dta& a) {
  std::vector<char> seen(a.states, 0);
  std::vector<State> reached;
  for (bool changed = true; changed;) {
    changed = false;
    const std::vector<State> known = reached;
    for (Symbol s = 0; s < a.rank.size(); ++s) {
      const int r = a.rank[s];
      if (r > 0 && known.empty()) continue;
      std::vector<std::size_t> pos(static_cast<std::size_t>(r), 0);
      std::vector<State> kids(static_cast<std::size_t>(r));
      while (true) {
        for (int k = 0; k < r; ++k) kids[k] = known[pos[k]];
        State t = a.next(s, kids);
        if (!seen[t]) {
          seen[t] = 1;
          reached.push_back(t);
          changed = true;
        }
        int k = 0;
        while (k < r && ++pos[k] == known.size()) pos[k++] = 0;
        if (k == r) break;
      }
    }
  }
  if (reached.size() == a.states || reached.empty()) return a;
  std::sort(reached.begin(), reached.end());
  std::vector<State> id(a.states, 0);
  for (std::size_t i = 0; i < reached.size(); ++i) id[reached[i]] = static_cast<State>(i);
  Dta out;
  out.rank = a.rank;
  out.states = reached.size();
  out.table.resize(a.rank.size());
  for (auto q : reached) out.accepting.push_back(a.accepting[q]);
  for (Symbol s = 0; s < a.rank.size(); ++s) {
    const int r = a.rank[s];
    out.table[s].resize(ipow(out.states, r));
    std::vector<State> kids(static_cast<std::size_t>(r));
    for (std::size_t idx = 0; idx < out.table[s].size(); ++idx) {
      std::size_t rest = idx;
      for (int p = r - 1; p >= 0; --p) {
        kids[p] = reached[rest % out.states];
        rest /= out.states;
      }
      out.table[s][idx] = id[a.next(s, kids)];
    }
  }
  return out;
}

}  // namespace

Dta dta_minimize(const Dta& trimmed_from) {
  const Dta in = dta_trim(trimmed_from);
  const std::size_t n = in.states;
  std::vector<State> cls(n);
  std::size_t classes;
  {
    std::vector<std::vector<State>> sigs(n);
    for (std::size_t i = 0; i < n; ++i) sigs[i] = {static_cast<State>(in.accepting[i] ? 1 : 0)};
    classes = renumber(sigs, cls);
  }
  std::vector<std::vector<State>> sigs(n);
  std::vector<State> tuple;
  while (true) {
    for (std::size_t q = 0; q < n; ++q) {
      auto& sg = sigs[q];
      sg.clear();
      sg.push_back(cls[q]);
      for (Symbol s = 0; s < in.rank.size(); ++s) {
        int r = in.rank[s];
        if (r == 0) continue;
        const std::size_t others = ipow(n, r - 1);
        tuple.assign(r, 0);
        for (int j = 0; j < r; ++j) {
          for (std::size_t o = 0; o < others; ++o) {
            std::size_t rest = o;
            for (int p = r - 1; p >= 0; --p) {
              if (p == j) continue;
              tuple[p] = static_cast<State>(rest % n);
              rest /= n;
            }
            tuple[j] = static_cast<State>(q);
            sg.push_back(cls[in.next(s, tuple)]);
          }
        }
      }
    }
    std::vector<State> next_cls;
    std::size_t c = renumber(sigs, next_cls);
    cls.swap(next_cls);
    if (c == classes) break;
    classes = c;
  }
  Dta out;
  out.rank = in.rank;
  out.states = classes;
  out.table.resize(in.rank.size());
  out.accepting.assign(classes, 0);
  for (std::size_t q = 0; q < n; ++q) out.accepting[cls[q]] = in.accepting[q];
  for (Symbol s = 0; s < in.rank.size(); ++s) {
    int r = in.rank[s];
    out.table[s].assign(ipow(classes, r), 0);
    // Pick a representative per class and evaluate on representatives.
    std::vector<State> rep(classes);
    for (std::size_t q = n; q-- > 0;) rep[cls[q]] = static_cast<State>(q);
    std::vector<State> t(r);
    for (std::size_t idx = 0; idx < out.table[s].size(); ++idx) {
      std::size_t rest = idx;
      for (int p = r - 1; p >= 0; --p) {
        t[p] = rep[rest % classes];
        rest /= classes;
      }
      out.table[s][idx] = cls[in.next(s, t)];
    }
  }
  return out;
}

bool dta_is_empty(const Dta& a) { return !dta_smallest_tree(a).has_value(); }

std::optional<SymbolTree> dta_smallest_tree(const Dta& a) {
  // Bellman-Ford style relaxation on tree sizes.
  const std::size_t n = a.states;
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(n, kInf);
  struct How {
    Symbol sym;
    std::vector<State> kids;
  };
  std::vector<How> how(n);
  bool changed = true;
  std::vector<State> tuple;
  while (changed) {
    changed = false;
    for (Symbol s = 0; s < a.rank.size(); ++s) {
      int r = a.rank[s];
      const std::size_t total = ipow(n, r);
      tuple.assign(r, 0);
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx, size = 1;
        bool ok = true;
        for (int p = r - 1; p >= 0; --p) {
          tuple[p] = static_cast<State>(rest % n);
          rest /= n;
          if (best[tuple[p]] == kInf) {
            ok = false;
            break;
          }
          size += best[tuple[p]];
        }
        if (!ok) continue;
        State t = a.table[s][idx];
        if (size < best[t]) {
          best[t] = size;
          how[t] = {s, tuple};
          changed = true;
        }
      }
    }
  }
  std::optional<State> target;
  for (State q = 0; q < n; ++q)
    if (a.accepting[q] && best[q] != kInf && (!target || best[q] < best[*target])) target = q;
  if (!target) return std::nullopt;
  std::function<SymbolTree(State)> build = [&](State q) {
    SymbolTree t{how[q].sym, {}};
    for (State k : how[q].kids) t.kids.push_back(build(k));
    return t;
  };
  return build(*target);
}

}  // namespace msoeq
