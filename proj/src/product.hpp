#pragma once

// Intersections of domain grammars with counting automata, as grammars whose
// rules carry a weight and, optionally, the input letter they read.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msoequiv/automata.hpp"
#include "msoequiv/grammar.hpp"
#include "msoequiv/parikh.hpp"

namespace msoeq::detail {

struct ProductGrammar {
  struct Rule {
    std::size_t lhs;
    int letter;  // input letter, -1 for none
    Vec weight;
    std::vector<std::size_t> rhs;
  };
  std::size_t dim = 0;
  std::size_t nonterminals = 0;
  std::size_t start = 0;
  std::vector<Rule> rules;

  WeightedGrammar weighted() const;
};

/// How a counting automaton's symbols split: symbol = base * choices + choice,
/// and every choice carries a weight.
struct Counting {
  std::size_t choices = 1;
  std::vector<Vec> weights;  // per choice
  Vec offset;                // added once per accepted input
  std::size_t dim() const { return offset.size(); }
};

/// Words of `g` followed by the end marker `end_base`, read by `a`.
/// Terminals map to bases through `base_of`.
ProductGrammar string_product(const Cfg& g, const std::map<std::string, std::size_t>& base_of, std::size_t end_base,
                              const Dfa& a, const Counting& c, std::size_t cap,
                              const std::function<void()>& tick = {});

/// Trees of `g` read bottom-up by `a`.
ProductGrammar tree_product(const Rtg& g, const std::map<std::string, std::size_t>& base_of, const Dta& a,
                            const Counting& c, std::size_t cap, const std::function<void()>& tick = {});

/// A smallest derivation, as the trees of letters it reads; a string
/// product yields leaves in word order.
struct LetterTree {
  int letter;
  std::vector<LetterTree> kids;
};
std::optional<std::vector<LetterTree>> smallest_derivation(const ProductGrammar& g);

}  // namespace msoeq::detail
