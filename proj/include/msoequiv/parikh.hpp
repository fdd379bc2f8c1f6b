#pragma once

// Parikh images of context-free languages.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "msoequiv/grammar.hpp"
#include "msoequiv/semilinear.hpp"

namespace msoeq {

/// A grammar whose terminals have been replaced by their summed weight.
struct WeightedGrammar {
  struct Rule {
    std::size_t lhs;
    Vec weight;
    std::vector<std::size_t> rhs;  // nonterminals only
  };
  std::size_t dim = 0;
  std::size_t nonterminals = 0;
  std::size_t start = 0;
  std::vector<Rule> rules;
};

/// Terminals missing from `weights` weigh zero.
WeightedGrammar weigh(const Cfg& g, const std::map<std::string, Vec>& weights, std::size_t dim);

/// The set of summed weights over all derivations from the start symbol.
SemilinearSet parikh_image(const WeightedGrammar& g);

/// Par(L(G)) with coordinates in the order of G.terminals.
SemilinearSet cfg_parikh(const Cfg& g);

}  // namespace msoeq
