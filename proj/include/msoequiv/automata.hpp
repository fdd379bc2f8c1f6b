#pragma once

// Deterministic word automata and deterministic bottom-up tree automata over
// dense integer alphabets, with the boolean algebra, projection (via subset
// construction), minimization and emptiness used by the compiler and decider.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace msoeq {

using State = std::uint32_t;
using Symbol = std::uint32_t;

/// Complete DFA. delta[q * alphabet + a].
struct Dfa {
  std::size_t alphabet = 0;
  std::size_t states = 0;
  std::vector<State> delta;
  State initial = 0;
  std::vector<char> accepting;

  State next(State q, Symbol a) const { return delta[static_cast<std::size_t>(q) * alphabet + a]; }
  bool accepts(std::span<const Symbol> word) const;
};

/// Single-state automaton accepting everything or nothing.
Dfa dfa_constant(std::size_t alphabet, bool accept_all);

/// Product over a new alphabet; symbol s reads left_of[s] in a and
/// right_of[s] in b. Only reachable pairs are built.
Dfa dfa_product(const Dfa& a, const Dfa& b, const std::vector<Symbol>& left_of, const std::vector<Symbol>& right_of,
                const std::function<bool(bool, bool)>& accept, std::size_t state_cap);
/// Product over a shared alphabet.
Dfa dfa_product(const Dfa& a, const Dfa& b, const std::function<bool(bool, bool)>& accept, std::size_t state_cap);

Dfa dfa_complement(Dfa a);

/// Subset construction for the nondeterministic automaton whose symbol s
/// stands for any of preimage[s] in `a`.
Dfa dfa_determinize(const Dfa& a, const std::vector<std::vector<Symbol>>& preimage, std::size_t state_cap);

/// Moore partition refinement after removing unreachable states.
Dfa dfa_minimize(const Dfa& a);

bool dfa_is_empty(const Dfa& a);
std::optional<std::vector<Symbol>> dfa_shortest_word(const Dfa& a);

/// Complete deterministic bottom-up tree automaton.
///
/// table[s] holds the target for every tuple of child states, indexed
/// q_1 * n^(r-1) + ... + q_r for a symbol of rank r.
struct Dta {
  std::vector<int> rank;  // per symbol
  std::size_t states = 0;
  std::vector<std::vector<State>> table;
  std::vector<char> accepting;

  State next(Symbol s, std::span<const State> kids) const;
};

struct SymbolTree {
  Symbol symbol;
  std::vector<SymbolTree> kids;
};

State dta_run(const Dta& a, const SymbolTree& t);
bool dta_accepts(const Dta& a, const SymbolTree& t);

Dta dta_constant(const std::vector<int>& ranks, bool accept_all);
Dta dta_product(const Dta& a, const Dta& b, const std::vector<int>& ranks, const std::vector<Symbol>& left_of,
                const std::vector<Symbol>& right_of, const std::function<bool(bool, bool)>& accept,
                std::size_t state_cap);
Dta dta_complement(Dta a);
/// Bottom-up subset construction; every preimage symbol must share the rank
/// given in `ranks`.
Dta dta_determinize(const Dta& a, const std::vector<int>& ranks, const std::vector<std::vector<Symbol>>& preimage,
                    std::size_t state_cap);
Dta dta_minimize(const Dta& a);
bool dta_is_empty(const Dta& a);
/// A smallest accepted tree, by node count.
std::optional<SymbolTree> dta_smallest_tree(const Dta& a);

}  // namespace msoeq
