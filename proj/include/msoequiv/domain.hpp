#pragma once

// Input domains: regular expressions and context-free grammars over
// strings, regular tree grammars over trees.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "msoequiv/automata.hpp"
#include "msoequiv/grammar.hpp"
#include "msoequiv/structures.hpp"

namespace msoeq {

/// Regular expression syntax: letters, `ε`, `|`, `*`, `+`, `?` and
/// parentheses; juxtaposition concatenates. Letters are single characters
/// and whitespace is ignored.
struct Regex {
  std::vector<std::string> letters;  // sorted
  Dfa dfa;                           // minimal, over letter indices
  std::string text;
};
Regex parse_regex(const std::string& text);

class Domain {
 public:
  enum class Kind { Regular, ContextFree, RegularTree };

  static Domain regular(const std::string& regex);
  static Domain context_free(Cfg g);
  static Domain regular_tree(Rtg g);
  static Domain all_words(const std::vector<std::string>& letters);
  static Domain all_trees(const Signature& ranked);

  Kind kind() const { return kind_; }
  bool is_tree() const { return kind_ == Kind::RegularTree; }
  /// Strings: the grammar (right-linear for regular domains).
  const Cfg& cfg() const { return cfg_; }
  const Rtg& rtg() const { return rtg_; }
  /// Letters or node labels the domain mentions.
  std::vector<std::string> symbols() const;

  bool contains(const Word& w) const;
  bool contains(const Term& t) const;
  bool contains(const Graph& g, const Signature& sig) const;
  /// Members by increasing size, then lexicographically.
  std::vector<Word> words(std::size_t max_len) const;
  std::vector<Term> trees(std::size_t max_nodes) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::ContextFree;
  std::shared_ptr<const Regex> regex_;
  Cfg cfg_;
  Rtg rtg_;
};

/// By extension: `.re`, `.cfg` or `.rtg`.
Domain load_domain(const std::string& path);
Domain parse_domain(const std::string& text, Domain::Kind kind);

}  // namespace msoeq
