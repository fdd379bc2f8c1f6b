#pragma once

// MSO formulas over graphs: syntax tree, s-expression parser, macro
// expansion and the direct (exponential) model checker used as an oracle.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "msoequiv/structures.hpp"

namespace msoeq {

/// Variables whose name starts with an upper-case letter range over node
/// sets; all others range over nodes.
enum class Sort { Node, Set };
Sort sort_of(const std::string& var);

enum class Kind {
  True,
  False,
  Lab,  // lab_sigma(x)
  Edg,  // edg_gamma(x, y)
  In,   // x in X
  Eq,   // x = y (derived)
  Not,
  And,
  Or,
  Implies,
  Iff,
  Exists,
  Forall,
  // Macros, kept unexpanded until expand_derived.
  Singleton,  // singleton(X)
  Reach,      // x <= y: y reachable from x along edges (reflexive)
  Root,       // root(x): no incoming edge
  PreSucc,    // pre_succ(x, y): y follows x in tree pre-order
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Kind kind;
  std::string label;              // Lab and Edg
  std::vector<std::string> vars;  // atom arguments, or the bound variable
  std::vector<FormulaPtr> kids;
};

using VarContext = std::vector<std::string>;

namespace mso {
FormulaPtr tt();
FormulaPtr ff();
FormulaPtr lab(const std::string& label, const std::string& x);
FormulaPtr edg(const std::string& label, const std::string& x, const std::string& y);
FormulaPtr in(const std::string& x, const std::string& set);
FormulaPtr eq(const std::string& x, const std::string& y);
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(std::vector<FormulaPtr> fs);
FormulaPtr disj(std::vector<FormulaPtr> fs);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(const std::string& v, FormulaPtr f);
FormulaPtr forall(const std::string& v, FormulaPtr f);
FormulaPtr singleton(const std::string& set);
FormulaPtr reach(const std::string& x, const std::string& y);
FormulaPtr root(const std::string& x);
FormulaPtr pre_succ(const std::string& x, const std::string& y);
}  // namespace mso

/// A variable name that cannot clash with parsed names.
std::string fresh_var(Sort s);

std::set<std::string> free_vars(const Formula& f);
std::size_t quantifier_depth(const Formula& f);
bool has_macros(const Formula& f);

/// Renames free variables; bound variables are renamed apart as needed.
FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& renaming);

/// Gives every quantifier its own fresh variable.
FormulaPtr rename_bound_apart(const FormulaPtr& f);

/// Replaces every macro by its definition over `sig`. With keep_equality the
/// Eq atom is left in place (the automaton compiler handles it natively).
FormulaPtr expand_derived(const FormulaPtr& f, const Signature& sig, bool keep_equality = false);

/// Throws SignatureError when a label or macro does not fit `sig`.
void validate(const Formula& f, const Signature& sig);

std::string to_sexpr(const Formula& f);

/// Parses one s-expression formula. Free variables must be listed in ctx.
FormulaPtr parse_formula(const std::string& text, const Signature& sig, const VarContext& ctx);

/// `.mso-f` file: header lines `sigma:`, `gamma:`, `free:` then the formula.
struct FormulaFile {
  Signature sig;
  VarContext free;
  FormulaPtr formula;
};
FormulaFile parse_formula_file(const std::string& text);
/// Parses "a b" or "f/2 a/0" style symbol lists into a signature.
Signature parse_signature(const std::string& sigma, const std::string& gamma);

struct Assignment {
  std::map<std::string, std::size_t> nodes;
  std::map<std::string, std::set<std::size_t>> sets;
};

struct CheckOptions {
  /// Set quantifiers enumerate all subsets; larger graphs are refused.
  std::size_t node_cap = 12;
};

/// Direct model checking by structural recursion.
bool check(const Formula& f, const Graph& g, const Assignment& a, const CheckOptions& opt = {});

}  // namespace msoeq
