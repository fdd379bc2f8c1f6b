#pragma once

// Context-free string grammars and regular tree grammars.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msoequiv/structures.hpp"

namespace msoeq {

struct Cfg {
  struct Production {
    std::string lhs;
    std::vector<std::string> rhs;
    bool operator==(const Production&) const = default;
  };
  std::string start;
  std::vector<std::string> nonterminals;
  std::vector<std::string> terminals;
  std::vector<Production> productions;

  bool is_nonterminal(const std::string& s) const;
};

/// Productions N -> sigma(N1,...,Nk).
struct Rtg {
  struct Production {
    std::string lhs;
    std::string label;
    std::vector<std::string> kids;
  };
  std::string start;
  std::vector<std::string> nonterminals;
  Signature sig;
  std::vector<Production> productions;
};

/// `start: S` then lines `S -> a S b | ε`. Symbols are whitespace separated;
/// every symbol with a production is a nonterminal. A `terminals:` header
/// may declare letters that occur in no production.
Cfg parse_cfg(const std::string& text);
std::string format_cfg(const Cfg& g);

/// `start: S` then lines `S -> f(A,A) | a`; an optional `sigma: f/2 a/0`
/// header fixes the ranked alphabet, otherwise ranks are inferred.
Rtg parse_rtg(const std::string& text);
std::string format_rtg(const Rtg& g);

/// Without unproductive and unreachable nonterminals. An empty language
/// gives a grammar with no productions.
Cfg reduce(const Cfg& g);
Rtg reduce(const Rtg& g);

/// N -> sigma(N1..Nk) becomes N -> sigma N1 .. Nk.
Cfg rtg_to_cfg(const Rtg& t);

bool cfg_accepts(const Cfg& g, const Word& w);
bool rtg_accepts(const Rtg& g, const Term& t);

/// All words of length <= max_len, shortest first then lexicographic.
std::vector<Word> cfg_words(const Cfg& g, std::size_t max_len);
/// All trees with at most max_nodes nodes, smallest first.
std::vector<Term> rtg_trees(const Rtg& g, std::size_t max_nodes);

}  // namespace msoeq
