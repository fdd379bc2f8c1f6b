#pragma once

// Brute-force enumerators shared by the tests.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "msoequiv/formula.hpp"
#include "msoequiv/grammar.hpp"
#include "msoequiv/structures.hpp"

namespace msoeq::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) { return std::string(MSOEQUIV_CORPUS_DIR) + "/" + name; }
inline std::string corpus(const std::string& name) { return read_file(corpus_path(name)); }

/// Uniform-ish random tree with at most `max_nodes` nodes.
inline Term random_tree(const Signature& sig, std::size_t max_nodes, std::mt19937_64& rng) {
  std::vector<std::string> leaves, inner;
  for (const auto& l : sig.node_labels) (sig.rank(l) == 0 ? leaves : inner).push_back(l);
  std::size_t budget = max_nodes;
  std::function<Term()> go = [&]() -> Term {
    --budget;
    std::vector<std::string> fits;
    for (const auto& l : inner)
      if (static_cast<std::size_t>(sig.rank(l)) <= budget) fits.push_back(l);
    if (fits.empty() || rng() % 3 == 0) return Term{leaves[rng() % leaves.size()], {}};
    const auto& l = fits[rng() % fits.size()];
    Term t{l, {}};
    int r = sig.rank(l);
    budget -= r;  // reserve one node per child
    for (int i = 0; i < r; ++i) {
      ++budget;
      t.children.push_back(go());
    }
    return t;
  };
  return go();
}

inline std::vector<Word> all_words(const std::vector<std::string>& letters, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (const auto& l : letters) {
        Word w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    from = to;
  }
  return out;
}

/// All trees over `sig` with exactly n nodes.
inline std::vector<Term> trees_of_size(const Signature& sig, std::size_t n) {
  static std::map<std::pair<std::string, std::size_t>, std::vector<Term>> memo;
  auto key = std::make_pair(to_string(sig), n);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<Term> out;
  if (n == 0) return out;
  for (const auto& l : sig.node_labels) {
    int r = sig.rank(l);
    // distribute n-1 nodes over r children, each >= 1
    std::function<void(int, std::size_t, std::vector<Term>&)> go = [&](int i, std::size_t left, std::vector<Term>& kids) {
      if (i == r) {
        if (left == 0) out.push_back(Term{l, kids});
        return;
      }
      for (std::size_t s = 1; s + (r - i - 1) <= left; ++s)
        for (const auto& c : trees_of_size(sig, s)) {
          kids.push_back(c);
          go(i + 1, left - s, kids);
          kids.pop_back();
        }
    };
    std::vector<Term> kids;
    go(0, n - 1, kids);
  }
  memo[key] = out;
  return out;
}

inline std::vector<Term> all_trees(const Signature& sig, std::size_t max_nodes) {
  std::vector<Term> out;
  for (std::size_t n = 1; n <= max_nodes; ++n)
    for (auto& t : trees_of_size(sig, n)) out.push_back(t);
  return out;
}

/// Every assignment of `vars` over nodes 0..n-1.
inline void for_each_assignment(const std::vector<std::string>& vars, std::size_t n,
                                const std::function<void(const Assignment&)>& fn) {
  Assignment a;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == vars.size()) {
      fn(a);
      return;
    }
    const auto& v = vars[i];
    if (sort_of(v) == Sort::Node) {
      for (std::size_t x = 0; x < n; ++x) {
        a.nodes[v] = x;
        go(i + 1);
      }
      a.nodes.erase(v);
    } else {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        std::set<std::size_t> s;
        for (std::size_t x = 0; x < n; ++x)
          if ((m >> x) & 1) s.insert(x);
        a.sets[v] = s;
        go(i + 1);
      }
      a.sets.erase(v);
    }
  };
  go(0);
}

/// Parikh vectors of derivable words with every component <= bound, by
/// fixpoint over vector sets.
inline std::set<ParikhVector> bounded_parikh(const Cfg& g, std::int64_t bound) {
  const std::size_t dim = g.terminals.size();
  std::map<std::string, std::set<ParikhVector>> reach;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      std::set<ParikhVector> acc = {ParikhVector(dim, 0)};
      for (const auto& s : p.rhs) {
        std::set<ParikhVector> next;
        if (g.is_nonterminal(s)) {
          for (const auto& a : acc)
            for (const auto& b : reach[s]) {
              ParikhVector c = a;
              bool ok = true;
              for (std::size_t i = 0; i < dim; ++i) ok = ok && (c[i] += b[i]) <= bound;
              if (ok) next.insert(c);
            }
        } else {
          std::size_t i = static_cast<std::size_t>(
              std::find(g.terminals.begin(), g.terminals.end(), s) - g.terminals.begin());
          for (auto c : acc)
            if (++c[i] <= bound) next.insert(c);
        }
        acc = std::move(next);
      }
      auto& target = reach[p.lhs];
      for (const auto& c : acc) changed = target.insert(c).second || changed;
    }
  }
  return reach[g.start];
}

/// Every vector in [0, bound]^dim.
inline std::vector<ParikhVector> box(std::size_t dim, std::int64_t bound) {
  std::vector<ParikhVector> out = {ParikhVector{}};
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<ParikhVector> next;
    for (const auto& v : out)
      for (std::int64_t x = 0; x <= bound; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace msoeq::testing
