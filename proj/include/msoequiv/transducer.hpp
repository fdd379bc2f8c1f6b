#pragma once

// MSO graph transducers, their evaluation, and the fixed constructions the
// decision procedure is built from.

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "msoequiv/formula.hpp"
#include "msoequiv/structures.hpp"

namespace msoeq {

/// (C, phi_dom, Psi, X) with parameters Y1..Yp.
///
/// Node formulas have free variable x, edge formulas x and y; every formula
/// may also use the parameters. Absent formulas are false.
struct MsoTransducer {
  std::vector<std::string> copies;
  std::vector<std::string> params;
  Signature input;
  Signature output;
  FormulaPtr domain = mso::tt();
  std::map<std::pair<std::string, std::string>, FormulaPtr> nodes;              // (c, sigma)
  std::map<std::tuple<std::string, std::string, std::string>, FormulaPtr> edges;  // (c, c', gamma)

  bool deterministic() const { return params.empty(); }
  FormulaPtr node_formula(const std::string& c, const std::string& sigma) const;
  FormulaPtr edge_formula(const std::string& c, const std::string& d, const std::string& gamma) const;
};

enum class TransducerKind { GraphToString, GraphToTree, StringToDgraph, GraphToDgraph };

std::string to_string(TransducerKind k);
TransducerKind kind_of(const MsoTransducer& m);
/// Structural check of an output graph against the kind's class.
bool output_fits(TransducerKind k, const Graph& h, const Signature& out);

/// Throws on labels outside the signatures, unknown copies, or free
/// variables other than x, y and the parameters.
void validate(const MsoTransducer& m);

/// Labels and ranks agree, ignoring order.
bool same_signature(const Signature& a, const Signature& b);

/// `.mso-t` text.
MsoTransducer parse_transducer(const std::string& text);
std::string format_transducer(const MsoTransducer& m);

enum class Engine { Auto, Compiled, Oracle };

struct EvalOptions {
  Engine engine = Engine::Auto;
  /// Nondeterministic transducers are refused on larger inputs.
  std::size_t param_node_cap = 12;
  /// Receives one line per (copy, node) dropped for having zero or several labels.
  std::vector<std::string>* warnings = nullptr;
};

/// All outputs, one per satisfying parameter valuation, deduplicated up to
/// canonical_key.
std::vector<Graph> evaluate(const MsoTransducer& m, const Graph& g, const EvalOptions& opt = {});

/// Semantic combination of transducers: a primitive MSO transducer, a
/// pipeline (first then second), a disjoint union, or the empty transduction.
class Transduction {
 public:
  enum class Tag { Primitive, Pipeline, Union, Empty };

  static Transduction primitive(MsoTransducer m);
  static Transduction pipeline(Transduction first, Transduction second);
  static Transduction disjoint_union(Transduction a, Transduction b);
  static Transduction empty(Signature input, Signature output);

  Tag tag() const;
  const Signature& input() const;
  const Signature& output() const;
  bool deterministic() const;
  const MsoTransducer& transducer() const;
  const Transduction& first() const;
  const Transduction& second() const;

  std::vector<Graph> evaluate(const Graph& g, const EvalOptions& opt = {}) const;

 private:
  struct Node;
  explicit Transduction(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// Union of M2 applied to every output of M1.
std::vector<Graph> pipe_evaluate(const MsoTransducer& m1, const MsoTransducer& m2, const Graph& g,
                                 const EvalOptions& opt = {});

/// N^a: strings over `delta` to dgr(a^n), one output per position n carrying a.
MsoTransducer position_extractor(const std::vector<std::string>& delta, const std::string& a);

/// Copies and parameters are renamed apart; cross edges are false.
MsoTransducer disjoint_union(const MsoTransducer& m1, const MsoTransducer& m2);

/// N: appends `marker` to every string over `delta`.
MsoTransducer marker_appender(const std::vector<std::string>& delta, const std::string& marker = "$");
/// M;N for a graph-to-string M.
Transduction append_marker(const MsoTransducer& m, const std::string& marker = "$");

/// M^{a,b}: dgr(a^m b^n) whenever output 1 has a at position m and output 2
/// has b at position n.
Transduction pair_counter(const Transduction& m1, const Transduction& m2, const std::string& a,
                          const std::string& b);

/// M_Delta: trees over the ranked `delta` to their pre-order label strings.
MsoTransducer preorder_flattener(const Signature& delta);
/// M;M_Delta for a graph-to-tree M.
Transduction flatten(const MsoTransducer& m);

/// E: the edge-stripped input, defined exactly off the common domain.
MsoTransducer domain_symdiff(const MsoTransducer& m1, const MsoTransducer& m2);

/// Output edge letters of a graph-to-string transduction.
std::vector<std::string> output_letters(const Signature& out);

}  // namespace msoeq
