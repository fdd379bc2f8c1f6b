#include "msoequiv/decider.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <set>
#include <sstream>

#include <json.hpp>

#include "msoequiv/errors.hpp"
#include "msoequiv/parikh.hpp"
#include "product.hpp"

namespace msoeq {

namespace {

const std::string kMarker = "$";

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::size_t to_count(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long long n = std::stoll(v, &used);
    if (used != v.size() || n < 0) throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw ParseError("budget: bad value for " + key + ": '" + v + "'");
  }
}

}  // namespace

Budget Budget::parse(const std::string& spec, Budget base) {
  std::string s = trim(spec);
  if (s.empty()) return base;
  if (s.find('=') == std::string::npos) {
    base.state_cap = to_count("states", s);
    return base;
  }
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("budget: expected key=value, got '" + item + "'");
    std::string key = trim(item.substr(0, eq));
    std::string value = trim(item.substr(eq + 1));
    if (key == "states")
      base.state_cap = to_count(key, value);
    else if (key == "oracle")
      base.oracle_cap = to_count(key, value);
    else if (key == "witness")
      base.witness_bound = to_count(key, value);
    else if (key == "grammar")
      base.grammar_cap = to_count(key, value);
    else if (key == "seconds")
      base.seconds = static_cast<double>(to_count(key, value));
    else
      throw ParseError("budget: unknown key '" + key + "'");
  }
  return base;
}

Budget Budget::parse(const std::string& spec) { return parse(spec, Budget{}); }

Budget Budget::from_env() { return from_env(Budget{}); }

Budget Budget::from_env(Budget base) {
  const char* v = std::getenv("MSOEQUIV_BUDGET");
  return v ? parse(v, base) : base;
}

int Verdict::exit_code() const {
  switch (kind) {
    case Kind::Equivalent:
      return 0;
    case Kind::OutputMismatch:
    case Kind::DomainMismatch:
      return 1;
    case Kind::ResourceExceeded:
      return 2;
  }
  return 2;
}

std::string format_verdict(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Equivalent:
      return "EQUIVALENT";
    case Verdict::Kind::OutputMismatch:
      return "INEQUIVALENT reason=output-mismatch a=" + v.a + " b=" + v.b + " n=" + std::to_string(v.n) +
             " witness=" + v.witness.value_or("none");
    case Verdict::Kind::DomainMismatch:
      return "INEQUIVALENT reason=domain-mismatch witness=" + v.witness.value_or("none");
    case Verdict::Kind::ResourceExceeded:
      return "RESOURCE-EXCEEDED stage=" + v.stage;
  }
  return "";
}

std::string verdict_to_json(const Verdict& v) {
  nlohmann::json j;
  switch (v.kind) {
    case Verdict::Kind::Equivalent:
      j["verdict"] = "equivalent";
      break;
    case Verdict::Kind::OutputMismatch:
      j["verdict"] = "inequivalent";
      j["reason"] = "output-mismatch";
      j["a"] = v.a;
      j["b"] = v.b;
      j["n"] = v.n;
      break;
    case Verdict::Kind::DomainMismatch:
      j["verdict"] = "inequivalent";
      j["reason"] = "domain-mismatch";
      break;
    case Verdict::Kind::ResourceExceeded:
      j["verdict"] = "resource-exceeded";
      j["stage"] = v.stage;
      break;
  }
  if (v.kind == Verdict::Kind::OutputMismatch || v.kind == Verdict::Kind::DomainMismatch)
    j["witness"] = v.witness ? nlohmann::json(*v.witness) : nlohmann::json(nullptr);
  return j.dump();
}

Verdict verdict_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("verdict json: ") + e.what());
  }
  Verdict v;
  try {
    auto verdict = j.at("verdict").get<std::string>();
    if (verdict == "equivalent") {
      v.kind = Verdict::Kind::Equivalent;
    } else if (verdict == "resource-exceeded") {
      v.kind = Verdict::Kind::ResourceExceeded;
      v.stage = j.at("stage").get<std::string>();
    } else if (verdict == "inequivalent") {
      auto reason = j.at("reason").get<std::string>();
      if (reason == "output-mismatch") {
        v.kind = Verdict::Kind::OutputMismatch;
        v.a = j.at("a").get<std::string>();
        v.b = j.at("b").get<std::string>();
        v.n = j.at("n").get<std::int64_t>();
      } else if (reason == "domain-mismatch") {
        v.kind = Verdict::Kind::DomainMismatch;
      } else {
        throw ParseError("verdict json: unknown reason " + reason);
      }
      if (j.contains("witness") && !j["witness"].is_null()) v.witness = j["witness"].get<std::string>();
    } else {
      throw ParseError("verdict json: unknown verdict " + verdict);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("verdict json: ") + e.what());
  }
  return v;
}

// ---------------------------------------------------------------------------
// Counting formulas.

namespace {

bool is_false(const FormulaPtr& f) { return f->kind == Kind::False; }

FormulaPtr and_all(std::vector<FormulaPtr> fs) {
  for (const auto& f : fs)
    if (is_false(f)) return mso::ff();
  std::erase_if(fs, [](const FormulaPtr& f) { return f->kind == Kind::True; });
  return mso::conj(std::move(fs));
}

FormulaPtr or_all(std::vector<FormulaPtr> fs) {
  std::erase_if(fs, is_false);
  return mso::disj(std::move(fs));
}

/// Formulas about the output structure of one transducer, with output nodes
/// (c, v) addressed by copy index and input node variable.
class OutputFormulas {
 public:
  explicit OutputFormulas(const MsoTransducer& m) : m_(m) {
    for (std::size_t c = 0; c < m.copies.size(); ++c) {
      zs_.push_back("Z" + std::to_string(c));
      as_.push_back("A" + std::to_string(c));
    }
  }

  std::size_t copies() const { return m_.copies.size(); }
  const std::vector<std::string>& zs() const { return zs_; }

  /// (c, v) is an output node: exactly one label holds.
  FormulaPtr node(std::size_t c, const std::string& v) const {
    const auto& labels = m_.output.node_labels;
    std::vector<FormulaPtr> alts;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::vector<FormulaPtr> parts{label(c, labels[i], v)};
      for (std::size_t j = 0; j < labels.size(); ++j)
        if (j != i) parts.push_back(mso::neg(label(c, labels[j], v)));
      alts.push_back(and_all(std::move(parts)));
    }
    return or_all(std::move(alts));
  }

  FormulaPtr label(std::size_t c, const std::string& sigma, const std::string& v) const {
    auto f = m_.node_formula(m_.copies[c], sigma);
    return is_false(f) ? f : rename_free(f, {{"x", v}});
  }

  /// An output edge (c, v) -gamma-> (d, w) between output nodes.
  FormulaPtr edge(std::size_t c, const std::string& v, std::size_t d, const std::string& w,
                  const std::string& gamma) const {
    auto chi = m_.edge_formula(m_.copies[c], m_.copies[d], gamma);
    if (is_false(chi)) return chi;
    return and_all({node(c, v), node(d, w), rename_free(chi, {{"x", v}, {"y", w}})});
  }

  FormulaPtr z(std::size_t c, const std::string& v) const { return mso::in(v, zs_[c]); }
  FormulaPtr a(std::size_t c, const std::string& v) const { return mso::in(v, as_[c]); }

  /// Z_c is exactly the set of output nodes of copy c.
  FormulaPtr all_nodes() const {
    std::vector<FormulaPtr> parts{m_.domain};
    for (std::size_t c = 0; c < copies(); ++c) parts.push_back(mso::forall("v", mso::iff(z(c, "v"), node(c, "v"))));
    return and_all(std::move(parts));
  }

  /// Z_c holds the output nodes up to and including the source of some
  /// `letter` edge of a string output.
  FormulaPtr string_prefix(const std::string& letter) const {
    const std::size_t k = copies();
    std::vector<FormulaPtr> parts{m_.domain};
    for (std::size_t c = 0; c < k; ++c) parts.push_back(mso::forall("v", mso::implies(z(c, "v"), node(c, "v"))));
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t d = 0; d < k; ++d)
        for (const auto& gamma : m_.output.edge_labels) {
          auto e = edge(c, "v", d, "w", gamma);
          if (is_false(e)) continue;
          parts.push_back(mso::forall(
              "v", mso::forall("w", mso::implies(and_all({e, z(d, "w")}), z(c, "v")))));
        }
    std::vector<FormulaPtr> targets;
    for (std::size_t c0 = 0; c0 < k; ++c0) {
      std::vector<FormulaPtr> out, stop;
      for (std::size_t d = 0; d < k; ++d) {
        auto e = edge(c0, "t", d, "w", letter);
        if (is_false(e)) continue;
        out.push_back(e);
        stop.push_back(mso::implies(e, mso::neg(z(d, "w"))));
      }
      if (out.empty()) continue;
      targets.push_back(and_all({z(c0, "t"), mso::exists("w", or_all(out)), mso::forall("w", and_all(stop))}));
    }
    if (targets.empty()) return mso::ff();
    parts.push_back(mso::exists("t", or_all(std::move(targets))));
    return and_all(std::move(parts));
  }

  /// Z_c holds the output tree nodes up to some `label` node in pre-order.
  /// A_c is the path from the root to that node.
  FormulaPtr tree_prefix(const std::string& sigma) const {
    const std::size_t k = copies();
    const int m = m_.output.max_rank();
    auto idx = [](int i) { return std::to_string(i); };
    std::vector<FormulaPtr> parts;
    for (std::size_t c = 0; c < k; ++c)
      parts.push_back(mso::forall(
          "v", and_all({mso::implies(a(c, "v"), z(c, "v")), mso::implies(z(c, "v"), node(c, "v"))})));
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t d = 0; d < k; ++d)
        for (int i = 1; i <= m; ++i) {
          auto e = edge(c, "v", d, "w", idx(i));
          if (is_false(e)) continue;
          auto vw = [](FormulaPtr f) { return mso::forall("v", mso::forall("w", std::move(f))); };
          parts.push_back(vw(mso::implies(and_all({e, a(d, "w")}), a(c, "v"))));
          parts.push_back(vw(mso::implies(and_all({e, z(c, "v"), mso::neg(a(c, "v"))}), z(d, "w"))));
          parts.push_back(vw(mso::implies(and_all({e, mso::neg(z(c, "v"))}), mso::neg(z(d, "w")))));
          for (std::size_t f = 0; f < k; ++f)
            for (int j = 1; j <= m; ++j) {
              if (j == i) continue;
              auto sib = edge(c, "v", f, "u", idx(j));
              if (is_false(sib)) continue;
              auto in_z = j < i ? z(f, "u") : mso::neg(z(f, "u"));
              parts.push_back(mso::forall(
                  "v", mso::forall("w", mso::forall("u", mso::implies(and_all({e, a(d, "w"), sib}), in_z)))));
            }
        }
    std::vector<FormulaPtr> targets;
    for (std::size_t c0 = 0; c0 < k; ++c0) {
      auto here = and_all({node(c0, "t"), label(c0, sigma, "t")});
      if (is_false(here)) continue;
      std::vector<FormulaPtr> t_parts{a(c0, "t"), here};
      for (std::size_t d = 0; d < k; ++d)
        for (int i = 1; i <= m; ++i) {
          auto e = edge(c0, "t", d, "w", idx(i));
          if (!is_false(e)) t_parts.push_back(mso::forall("w", mso::implies(e, mso::neg(z(d, "w")))));
        }
      for (std::size_t c = 0; c < k; ++c) {
        std::vector<FormulaPtr> down;
        for (std::size_t d = 0; d < k; ++d)
          for (int i = 1; i <= m; ++i) {
            auto e = edge(c, "v", d, "w", idx(i));
            if (!is_false(e)) down.push_back(and_all({e, a(d, "w")}));
          }
        auto inner = c == c0 ? and_all({a(c, "v"), mso::neg(mso::eq("v", "t"))}) : a(c, "v");
        t_parts.push_back(mso::forall("v", mso::implies(inner, mso::exists("w", or_all(std::move(down))))));
      }
      targets.push_back(and_all(std::move(t_parts)));
    }
    if (targets.empty()) return mso::ff();
    parts.push_back(mso::exists("t", or_all(std::move(targets))));
    FormulaPtr body = and_all(std::move(parts));
    for (std::size_t c = k; c-- > 0;) body = mso::exists(as_[c], body);
    return and_all({m_.domain, body});
  }

 private:
  const MsoTransducer& m_;
  std::vector<std::string> zs_, as_;
};

std::vector<std::string> output_alphabet(const MsoTransducer& m) {
  std::vector<std::string> l = m.output.ranked() ? m.output.node_labels : m.output.edge_labels;
  std::sort(l.begin(), l.end());
  return l;
}

}  // namespace

// ---------------------------------------------------------------------------
// Decider.

Decider::Decider(MsoTransducer m1, MsoTransducer m2, Domain d, Budget b)
    : m_{std::move(m1), std::move(m2)}, domain_(std::move(d)), budget_(b), start_(std::chrono::steady_clock::now()) {
  for (const auto& m : m_) {
    validate(m);
    if (!m.deterministic()) throw SignatureError("transducer has parameters; only deterministic ones are decided");
    auto kind = kind_of(m);
    if (kind != TransducerKind::GraphToString && kind != TransducerKind::GraphToTree)
      throw SignatureError("transducer must produce strings or trees, not " + to_string(kind));
    for (const auto& l : output_alphabet(m))
      if (l == kMarker) throw SignatureError("output letter " + kMarker + " is reserved for the end marker");
  }
  if (!same_signature(m_[0].input, m_[1].input))
    throw SignatureError("input signatures differ: " + to_string(m_[0].input) + " vs " + to_string(m_[1].input));
  input_ = InputClass::of(m_[0].input);
  const bool trees = input_.kind == StructureKind::Tree;
  if (trees != domain_.is_tree())
    throw SignatureError(std::string("domain describes ") + (domain_.is_tree() ? "trees" : "strings") +
                         " but the transducers read " + (trees ? "trees" : "strings"));
  for (const auto& l : domain_.symbols()) {
    domain_letter_.push_back(input_.letter_index(l));
    if (trees && domain_.rtg().sig.rank(l) != input_.ranks[domain_letter_.back()])
      throw SignatureError("rank of " + l + " differs between domain and input signature");
  }
}

void Decider::check_time(const char* stage) const {
  if (budget_.seconds <= 0) return;
  std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
  if (spent.count() > budget_.seconds) throw ResourceExceeded(stage, "time limit reached");
}

namespace {

std::map<std::string, std::size_t> base_map(const InputClass& in) {
  std::map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < in.letters.size(); ++i) m[in.letters[i]] = i;
  return m;
}

std::string witness_text(const InputClass& in, const std::vector<detail::LetterTree>& forest) {
  if (in.kind == StructureKind::Word) {
    Word w;
    for (const auto& t : forest) w.push_back(in.letters[static_cast<std::size_t>(t.letter)]);
    return w.empty() ? "ε" : to_string(w);
  }
  std::function<Term(const detail::LetterTree&)> term = [&](const detail::LetterTree& t) {
    Term r{in.letters[static_cast<std::size_t>(t.letter)], {}};
    for (const auto& k : t.kids) r.children.push_back(term(k));
    return r;
  };
  return to_string(term(forest.at(0)));
}

Graph witness_graph(const InputClass& in, const std::string& text) {
  if (in.kind == StructureKind::Word) return string_to_graph(parse_word(text, in.letters), in.letters);
  return tree_to_graph(parse_term(text), in.signature());
}

}  // namespace

std::optional<Witness> Decider::domains_agree() {
  Compiler comp(input_, {budget_.state_cap});
  auto fa = comp.compile(mso::neg(mso::iff(m_[0].domain, m_[1].domain)));
  stats_.largest_automaton = std::max(stats_.largest_automaton, fa.states());
  check_time("domain");
  if (is_empty(fa)) return std::nullopt;
  detail::Counting c{1, {Vec{}}, Vec{}};
  auto tick = [this] { check_time("domain"); };
  auto g = input_.kind == StructureKind::Word
               ? detail::string_product(domain_.cfg(), base_map(input_), input_.end_letter(), fa.word, c,
                                        budget_.grammar_cap, tick)
               : detail::tree_product(domain_.rtg(), base_map(input_), fa.tree, c, budget_.grammar_cap, tick);
  stats_.largest_grammar = std::max(stats_.largest_grammar, g.nonterminals);
  auto forest = detail::smallest_derivation(g);
  if (!forest) return std::nullopt;
  Witness w;
  w.text = witness_text(input_, *forest);
  w.graph = witness_graph(input_, w.text);
  return w;
}

std::vector<std::pair<std::string, std::string>> Decider::pairs() const {
  auto l1 = output_alphabet(m_[0]);
  auto l2 = output_alphabet(m_[1]);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& a : l1)
    for (const auto& b : l2)
      if (a != b) out.emplace_back(a, b);
  for (const auto& a : l1) out.emplace_back(a, kMarker);
  for (const auto& b : l2) out.emplace_back(kMarker, b);
  return out;
}

const Decider::Side& Decider::side(std::size_t which, const std::string& letter) {
  auto key = std::make_pair(which, letter);
  if (auto it = sides_.find(key); it != sides_.end()) return it->second;
  const auto& m = m_[which];
  OutputFormulas of(m);
  Side s;
  s.k = of.copies();
  FormulaPtr f;
  if (letter == kMarker) {
    f = of.all_nodes();
    s.offset = m.output.ranked() ? 1 : 0;
  } else {
    f = m.output.ranked() ? of.tree_prefix(letter) : of.string_prefix(letter);
  }
  Compiler comp(input_, {budget_.state_cap});
  auto fa = comp.compile(f, of.zs());
  stats_.largest_automaton = std::max(stats_.largest_automaton, fa.states());
  check_time("count");
  s.empty = is_empty(fa);
  // Forget which copies are counted; keep how many.
  const std::size_t bases = input_.base_symbols();
  std::vector<std::vector<Symbol>> pre(bases * (s.k + 1));
  for (std::size_t b = 0; b < bases; ++b)
    for (std::uint32_t bits = 0; bits < (1u << s.k); ++bits)
      pre[b * (s.k + 1) + static_cast<std::size_t>(std::popcount(bits))].push_back(fa.encode(b, bits));
  if (input_.kind == StructureKind::Word) {
    s.word = dfa_minimize(dfa_determinize(fa.word, pre, budget_.state_cap));
    stats_.largest_automaton = std::max(stats_.largest_automaton, s.word.states);
  } else {
    std::vector<int> ranks(pre.size());
    for (std::size_t i = 0; i < pre.size(); ++i) ranks[i] = input_.ranks[i / (s.k + 1)];
    s.tree = dta_minimize(dta_determinize(fa.tree, ranks, pre, budget_.state_cap));
    stats_.largest_automaton = std::max(stats_.largest_automaton, s.tree.states);
  }
  check_time("count");
  return sides_.emplace(key, std::move(s)).first->second;
}

SemilinearSet Decider::pair_parikh(const std::string& a, const std::string& b) {
  const Side& s1 = side(0, a);
  const Side& s2 = side(1, b);
  if (s1.empty || s2.empty) return SemilinearSet(2);
  const std::size_t k1 = s1.k + 1, k2 = s2.k + 1;
  const std::size_t choices = k1 * k2;
  const std::size_t bases = input_.base_symbols();
  std::vector<Symbol> left(bases * choices), right(bases * choices);
  detail::Counting c;
  c.choices = choices;
  c.offset = Vec{s1.offset, s2.offset};
  for (std::size_t ch = 0; ch < choices; ++ch)
    c.weights.push_back(Vec{static_cast<std::int64_t>(ch / k2), static_cast<std::int64_t>(ch % k2)});
  for (std::size_t base = 0; base < bases; ++base)
    for (std::size_t ch = 0; ch < choices; ++ch) {
      left[base * choices + ch] = static_cast<Symbol>(base * k1 + ch / k2);
      right[base * choices + ch] = static_cast<Symbol>(base * k2 + ch % k2);
    }
  auto both = [](bool x, bool y) { return x && y; };
  auto tick = [this] { check_time("product"); };
  detail::ProductGrammar g;
  if (input_.kind == StructureKind::Word) {
    Dfa d = dfa_minimize(dfa_product(s1.word, s2.word, left, right, both, budget_.state_cap));
    stats_.largest_automaton = std::max(stats_.largest_automaton, d.states);
    g = detail::string_product(domain_.cfg(), base_map(input_), input_.end_letter(), d, c, budget_.grammar_cap, tick);
  } else {
    std::vector<int> ranks(bases * choices);
    for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] = input_.ranks[i / choices];
    Dta d = dta_minimize(dta_product(s1.tree, s2.tree, ranks, left, right, both, budget_.state_cap));
    stats_.largest_automaton = std::max(stats_.largest_automaton, d.states);
    g = detail::tree_product(domain_.rtg(), base_map(input_), d, c, budget_.grammar_cap, tick);
  }
  stats_.largest_grammar = std::max(stats_.largest_grammar, g.nonterminals);
  check_time("parikh");
  return parikh_image(g.weighted());
}

Verdict Decider::decide(bool want_witness) {
  Verdict v;
  try {
    if (auto w = domains_agree()) {
      v.kind = Verdict::Kind::DomainMismatch;
      v.witness = w->text;
      return v;
    }
    for (const auto& [a, b] : pairs()) {
      ++stats_.pairs;
      auto n = diagonal_nonempty(pair_parikh(a, b));
      if (!n) continue;
      v.kind = Verdict::Kind::OutputMismatch;
      v.a = a;
      v.b = b;
      v.n = *n;
      if (want_witness) {
        EvalOptions eo;
        eo.param_node_cap = budget_.oracle_cap;
        try {
          if (auto w = find_counterexample(m_[0], m_[1], domain_, budget_.witness_bound, eo)) v.witness = w->text;
        } catch (const ResourceExceeded&) {
        }
      }
      return v;
    }
    return v;
  } catch (const ResourceExceeded& e) {
    Verdict r;
    r.kind = Verdict::Kind::ResourceExceeded;
    r.stage = e.stage();
    return r;
  }
}

Verdict decide(const MsoTransducer& m1, const MsoTransducer& m2, const Domain& d, const DecideOptions& opt) {
  Decider dec(m1, m2, d, opt.budget);
  return dec.decide(opt.witness);
}

// ---------------------------------------------------------------------------
// Differential evaluation.

std::optional<Word> flat_output(const MsoTransducer& m, const Graph& g, const EvalOptions& opt) {
  auto outs = evaluate(m, g, opt);
  if (outs.empty()) return std::nullopt;
  if (m.output.ranked()) return preorder(graph_to_tree(outs.front(), m.output));
  return graph_to_string(outs.front());
}

bool is_witness(const MsoTransducer& m1, const MsoTransducer& m2, const Graph& g, const EvalOptions& opt) {
  auto o1 = flat_output(m1, g, opt);
  auto o2 = flat_output(m2, g, opt);
  return o1.has_value() != o2.has_value() || (o1 && *o1 != *o2);
}

std::optional<Witness> find_counterexample(const MsoTransducer& m1, const MsoTransducer& m2, const Domain& d,
                                           std::size_t bound, const EvalOptions& opt) {
  if (d.is_tree()) {
    for (const auto& t : d.trees(bound)) {
      Graph g = tree_to_graph(t, m1.input);
      if (is_witness(m1, m2, g, opt)) return Witness{g, to_string(t)};
    }
    return std::nullopt;
  }
  const auto& letters = m1.input.edge_labels;
  for (const auto& w : d.words(bound)) {
    Graph g = string_to_graph(w, letters);
    if (is_witness(m1, m2, g, opt)) return Witness{g, w.empty() ? "ε" : to_string(w)};
  }
  return std::nullopt;
}

}  // namespace msoeq
