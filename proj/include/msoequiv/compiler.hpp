#pragma once

// MSO to automata over annotated alphabets.
//
// A string w = a_1..a_n is read as n+1 symbols, one per node of its string
// graph: node i carries the label of its outgoing edge (or the end marker
// for the last node) together with one bit per free variable. A tree is read
// bottom-up with one (label, bits) symbol per node. Every automaton produced
// here accepts only well-formed annotations: the end marker exactly at the
// last position, and each node variable's bit set at exactly one node.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "msoequiv/automata.hpp"
#include "msoequiv/formula.hpp"
#include "msoequiv/structures.hpp"

namespace msoeq {

enum class StructureKind { Word, Tree };

/// The class of input structures: strings over `letters`, or trees over the
/// ranked `letters`.
struct InputClass {
  StructureKind kind = StructureKind::Word;
  std::vector<std::string> letters;
  std::vector<int> ranks;  // trees only, parallel to letters

  static InputClass words(std::vector<std::string> letters);
  static InputClass trees(const Signature& ranked);
  static InputClass of(const Signature& sig);

  Signature signature() const;
  /// Letters plus the end marker for words.
  std::size_t base_symbols() const { return kind == StructureKind::Word ? letters.size() + 1 : letters.size(); }
  std::size_t end_letter() const { return letters.size(); }
  std::size_t letter_index(const std::string& l) const;
  bool operator==(const InputClass&) const = default;
};

/// Deterministic automaton over (base symbol, variable bits).
struct FormulaAutomaton {
  InputClass input;
  std::vector<std::string> vars;  // bit i belongs to vars[i]
  Dfa word;                       // used when input.kind == Word
  Dta tree;                       // used when input.kind == Tree

  std::size_t bits() const { return vars.size(); }
  std::size_t alphabet_size() const { return input.base_symbols() << vars.size(); }
  Symbol encode(std::size_t base, std::uint32_t bits) const {
    return static_cast<Symbol>((base << vars.size()) | bits);
  }
  std::size_t states() const { return input.kind == StructureKind::Word ? word.states : tree.states; }
  std::size_t accepting_states() const;
  /// Ranks per symbol (trees).
  std::vector<int> symbol_ranks() const;

  std::vector<Symbol> annotate(const Word& w, const Assignment& a) const;
  SymbolTree annotate(const Term& t, const Assignment& a) const;
  bool accepts(const Word& w, const Assignment& a) const;
  /// Tree nodes are numbered in pre-order, as tree_to_graph does.
  bool accepts(const Term& t, const Assignment& a) const;
};

struct CompileOptions {
  std::size_t state_cap = 200'000;
};

class Compiler {
 public:
  explicit Compiler(InputClass input, CompileOptions opt = {});

  const InputClass& input() const { return input_; }

  /// Automaton over the free variables of f in sorted order.
  FormulaAutomaton compile(const FormulaPtr& f) const;
  /// Automaton whose bits follow `ctx`, which must cover the free variables.
  FormulaAutomaton compile(const FormulaPtr& f, const VarContext& ctx) const;

  FormulaAutomaton constant(bool value) const;
  FormulaAutomaton well_formed(const std::vector<std::string>& vars) const;
  FormulaAutomaton conj(const FormulaAutomaton& a, const FormulaAutomaton& b) const;
  FormulaAutomaton disj(const FormulaAutomaton& a, const FormulaAutomaton& b) const;
  FormulaAutomaton negate(const FormulaAutomaton& a) const;
  /// Existential projection of one variable's bit.
  FormulaAutomaton project(const FormulaAutomaton& a, const std::string& var) const;
  /// Re-indexes bits to `vars` (a superset of a.vars).
  FormulaAutomaton extend(const FormulaAutomaton& a, const std::vector<std::string>& vars) const;
  FormulaAutomaton minimize(FormulaAutomaton a) const;

  std::size_t state_cap() const { return opt_.state_cap; }

 private:
  FormulaAutomaton run(const FormulaPtr& f) const;
  FormulaAutomaton atom(const Formula& f) const;
  FormulaAutomaton combine(const FormulaAutomaton& a, const FormulaAutomaton& b, bool (*acc)(bool, bool),
                           bool needs_wf) const;

  InputClass input_;
  CompileOptions opt_;
};

FormulaAutomaton compile_word(const FormulaPtr& f, const VarContext& ctx, const std::vector<std::string>& letters,
                              const CompileOptions& opt = {});
FormulaAutomaton compile_tree(const FormulaPtr& f, const VarContext& ctx, const Signature& ranked,
                              const CompileOptions& opt = {});

bool is_empty(const FormulaAutomaton& a);
/// Accepts every well-formed annotation.
bool is_universal(const FormulaAutomaton& a);
std::string summary(const FormulaAutomaton& a);
/// Debug dump: states, transitions, accepting set. Not a stable format.
std::string dump(const FormulaAutomaton& a);

}  // namespace msoeq
