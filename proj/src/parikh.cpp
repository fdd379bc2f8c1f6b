#include "msoequiv/parikh.hpp"

#include <algorithm>
#include <functional>

#include "msoequiv/errors.hpp"

namespace msoeq {

WeightedGrammar weigh(const Cfg& g, const std::map<std::string, Vec>& weights, std::size_t dim) {
  WeightedGrammar w;
  w.dim = dim;
  std::map<std::string, std::size_t> id;
  for (const auto& n : g.nonterminals) id.emplace(n, id.size());
  if (!id.count(g.start)) id.emplace(g.start, id.size());
  w.nonterminals = id.size();
  w.start = id.at(g.start);
  for (const auto& p : g.productions) {
    WeightedGrammar::Rule r{id.at(p.lhs), Vec(dim, 0), {}};
    for (const auto& s : p.rhs) {
      if (auto it = id.find(s); it != id.end()) {
        r.rhs.push_back(it->second);
      } else if (auto wt = weights.find(s); wt != weights.end()) {
        if (wt->second.size() != dim) throw Error("weight of " + s + " has the wrong dimension");
        for (std::size_t d = 0; d < dim; ++d) r.weight[d] += wt->second[d];
      }
    }
    w.rules.push_back(std::move(r));
  }
  return w;
}

namespace {

using Row = std::vector<SemilinearSet>;

bool subset_of(const SemilinearSet& a, const SemilinearSet& b) {
  for (const auto& l : a.sets()) {
    bool covered = false;
    for (const auto& m : b.sets()) {
      if (!member(l.base, m)) continue;
      LinearSet cone{Vec(m.base.size(), 0), m.periods};
      if (std::all_of(l.periods.begin(), l.periods.end(), [&](const Vec& p) { return member(p, cone); })) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

/// Least solution of X = c + J X by Gauss-Jordan elimination.
std::vector<SemilinearSet> solve_linear(std::vector<SemilinearSet> c, std::vector<Row> j) {
  const std::size_t k = c.size();
  const std::size_t dim = k ? c[0].dim() : 0;
  for (std::size_t i = 0; i < k; ++i) {
    SemilinearSet s = star(j[i][i]);
    c[i] = sum(s, c[i]);
    for (std::size_t m = 0; m < k; ++m) j[i][m] = m == i ? SemilinearSet(dim) : sum(s, j[i][m]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == i || j[r][i].empty()) continue;
      SemilinearSet f = j[r][i];
      c[r] = unite(c[r], sum(f, c[i]));
      for (std::size_t m = 0; m < k; ++m)
        if (m != i && !j[i][m].empty()) j[r][m] = unite(j[r][m], sum(f, j[i][m]));
      j[r][i] = SemilinearSet(dim);
    }
  }
  return c;
}

}  // namespace

SemilinearSet parikh_image(const WeightedGrammar& g) {
  const std::size_t n = g.nonterminals;
  const std::size_t dim = g.dim;

  // Unproductive nonterminals are dropped; the traversal below only visits reachable ones.
  std::vector<char> productive(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules)
      if (!productive[r.lhs] &&
          std::all_of(r.rhs.begin(), r.rhs.end(), [&](std::size_t s) { return productive[s] != 0; })) {
        productive[r.lhs] = 1;
        changed = true;
      }
  }
  if (!productive[g.start]) return SemilinearSet(dim);
  std::vector<const WeightedGrammar::Rule*> rules;
  for (const auto& r : g.rules)
    if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](std::size_t s) { return productive[s] != 0; }))
      rules.push_back(&r);
  std::vector<std::vector<const WeightedGrammar::Rule*>> by_lhs(n);
  for (auto* r : rules) by_lhs[r->lhs].push_back(r);
  // Tarjan; components come out dependencies first.
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> sccs;
  int counter = 0;
  std::function<void(std::size_t)> connect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (auto* r : by_lhs[v])
      for (auto w : r->rhs) {
        if (index[w] < 0) {
          connect(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.push_back(w);
      } while (w != v);
      sccs.push_back(std::move(comp));
    }
  };
  connect(g.start);

  std::vector<SemilinearSet> value(n, SemilinearSet(dim));
  std::vector<int> slot(n, -1);
  for (const auto& comp : sccs) {
    const std::size_t k = comp.size();
    for (std::size_t i = 0; i < k; ++i) slot[comp[i]] = static_cast<int>(i);
    bool linear = true;
    for (auto v : comp)
      for (auto* r : by_lhs[v]) {
        std::size_t inside = 0;
        for (auto s : r->rhs) inside += slot[s] >= 0;
        if (inside > 1) linear = false;
      }

    // Sum of the rule's weight and its symbols' values, skipping position `skip`.
    auto rule_value = [&](const WeightedGrammar::Rule& r, const std::vector<SemilinearSet>& nu, std::size_t skip) {
      SemilinearSet acc = SemilinearSet::singleton(r.weight);
      for (std::size_t t = 0; t < r.rhs.size() && !acc.empty(); ++t) {
        if (t == skip) continue;
        auto s = r.rhs[t];
        acc = sum(acc, slot[s] >= 0 ? nu[static_cast<std::size_t>(slot[s])] : value[s]);
      }
      return acc;
    };
    auto apply_f = [&](const std::vector<SemilinearSet>& nu) {
      std::vector<SemilinearSet> out(k, SemilinearSet(dim));
      for (std::size_t i = 0; i < k; ++i)
        for (auto* r : by_lhs[comp[i]]) out[i] = unite(out[i], rule_value(*r, nu, SIZE_MAX));
      return out;
    };

    std::vector<SemilinearSet> nu = apply_f(std::vector<SemilinearSet>(k, SemilinearSet(dim)));
    const std::size_t steps = linear ? 1 : k;
    for (std::size_t step = 0; step < steps; ++step) {
      auto f = apply_f(nu);
      if (step > 0) {
        bool stable = true;
        for (std::size_t i = 0; i < k && stable; ++i) stable = subset_of(f[i], nu[i]);
        if (stable) break;
      }
      std::vector<Row> jac(k, Row(k, SemilinearSet(dim)));
      for (std::size_t i = 0; i < k; ++i)
        for (auto* r : by_lhs[comp[i]])
          for (std::size_t t = 0; t < r->rhs.size(); ++t) {
            int j = slot[r->rhs[t]];
            if (j < 0) continue;
            auto& cell = jac[i][static_cast<std::size_t>(j)];
            cell = unite(cell, rule_value(*r, nu, t));
          }
      nu = solve_linear(f, std::move(jac));
    }
    for (std::size_t i = 0; i < k; ++i) {
      value[comp[i]] = nu[i];
      slot[comp[i]] = -1;
    }
  }
  return value[g.start];
}

SemilinearSet cfg_parikh(const Cfg& g) {
  std::map<std::string, Vec> w;
  const std::size_t dim = g.terminals.size();
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e(dim, 0);
    e[i] = 1;
    w[g.terminals[i]] = e;
  }
  return parikh_image(weigh(g, w, dim));
}

}  // namespace msoeq
