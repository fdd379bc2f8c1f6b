#pragma once

// Equivalence of deterministic MSO graph-to-string and graph-to-tree
// transducers on a string or tree domain.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msoequiv/compiler.hpp"
#include "msoequiv/domain.hpp"
#include "msoequiv/semilinear.hpp"
#include "msoequiv/transducer.hpp"

namespace msoeq {

/// Resource caps. MSOEQUIV_BUDGET holds either a bare state cap or
/// comma-separated `key=value` pairs with keys states, oracle, witness,
/// grammar and seconds.
struct Budget {
  std::size_t state_cap = 200'000;
  std::size_t oracle_cap = 12;
  std::size_t witness_bound = 12;
  std::size_t grammar_cap = 2'000'000;
  double seconds = 0;  // 0: no limit

  static Budget parse(const std::string& spec, Budget base);
  static Budget parse(const std::string& spec);
  static Budget from_env(Budget base);
  static Budget from_env();
};

struct Witness {
  Graph graph;
  std::string text;  // word (`ε` when empty) or term
};

struct Verdict {
  enum class Kind { Equivalent, OutputMismatch, DomainMismatch, ResourceExceeded };
  Kind kind = Kind::Equivalent;
  std::string a, b;  // output mismatch letters
  std::int64_t n = 0;
  std::optional<std::string> witness;
  std::string stage;  // resource exceeded

  /// 0 equivalent, 1 inequivalent, 2 resource exceeded.
  int exit_code() const;
  bool operator==(const Verdict&) const = default;
};

std::string format_verdict(const Verdict& v);
std::string verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const std::string& text);

struct DecideOptions {
  Budget budget;
  /// Search domain members up to budget.witness_bound for an output mismatch.
  bool witness = false;
};

class Decider {
 public:
  /// Throws SignatureError unless both transducers are deterministic,
  /// produce strings or trees, and read the domain's structures.
  Decider(MsoTransducer m1, MsoTransducer m2, Domain d, Budget b = {});

  const InputClass& input() const { return input_; }

  /// A domain member in exactly one of the two transducer domains.
  std::optional<Witness> domains_agree();
  /// Letter pairs (a, b), a != b, in the order they are tried: plain
  /// letters lexicographically, then pairs involving `$`.
  std::vector<std::pair<std::string, std::string>> pairs() const;
  /// The set of (m, n) such that, for some domain member, output 1 followed
  /// by `$` has a at position m and output 2 followed by `$` has b at n.
  SemilinearSet pair_parikh(const std::string& a, const std::string& b);

  Verdict decide(bool want_witness = false);

  struct Stats {
    std::size_t pairs = 0;
    std::size_t largest_automaton = 0;
    std::size_t largest_grammar = 0;
  };
  const Stats& stats() const { return stats_; }

 private:
  struct Side {
    bool empty = false;
    std::size_t k = 0;  // counts per input node range over 0..k
    std::int64_t offset = 0;
    Dfa word;
    Dta tree;
  };
  const Side& side(std::size_t which, const std::string& letter);
  void check_time(const char* stage) const;

  MsoTransducer m_[2];
  Domain domain_;
  Budget budget_;
  InputClass input_;
  std::vector<std::size_t> domain_letter_;  // domain symbol -> input letter
  std::map<std::pair<std::size_t, std::string>, Side> sides_;
  std::chrono::steady_clock::time_point start_;
  Stats stats_;
};

Verdict decide(const MsoTransducer& m1, const MsoTransducer& m2, const Domain& d, const DecideOptions& opt = {});

/// Domain members up to `bound` nodes (strings: letters) on which the two
/// transducers differ, smallest first.
std::optional<Witness> find_counterexample(const MsoTransducer& m1, const MsoTransducer& m2, const Domain& d,
                                           std::size_t bound, const EvalOptions& opt = {});

/// Defined on g by exactly one transducer, or by both with distinct outputs.
bool is_witness(const MsoTransducer& m1, const MsoTransducer& m2, const Graph& g, const EvalOptions& opt = {});

/// Output as a string: the word, or the pre-order labels of a tree.
std::optional<Word> flat_output(const MsoTransducer& m, const Graph& g, const EvalOptions& opt = {});

}  // namespace msoeq
