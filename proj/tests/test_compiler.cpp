#include <catch_amalgamated.hpp>

#include "formula_suite.hpp"
#include "msoequiv/compiler.hpp"
#include "msoequiv/errors.hpp"
#include "support.hpp"

using namespace msoeq;
using namespace msoeq::testing;

namespace {

const std::vector<std::string> kAB = {"a", "b"};

Signature tree_sig() { return parse_signature("f/2 a/0 b/0", ""); }

std::size_t disagreements_words(const SuiteFormula& sf, std::size_t max_len) {
  Signature sig = Signature::strings(kAB);
  auto f = parse_formula(sf.text, sig, sf.free);
  auto aut = compile_word(f, sf.free, kAB);
  std::size_t bad = 0;
  for (const auto& w : all_words(kAB, max_len)) {
    Graph g = string_to_graph(w, kAB);
    for_each_assignment(sf.free, g.size(), [&](const Assignment& a) {
      if (aut.accepts(w, a) != check(*f, g, a)) ++bad;
    });
  }
  return bad;
}

std::size_t disagreements_trees(const SuiteFormula& sf, std::size_t max_nodes) {
  Signature sig = tree_sig();
  auto f = parse_formula(sf.text, sig, sf.free);
  auto aut = compile_tree(f, sf.free, sig);
  std::size_t bad = 0;
  for (const auto& t : all_trees(sig, max_nodes)) {
    Graph g = tree_to_graph(t, sig);
    for_each_assignment(sf.free, g.size(), [&](const Assignment& a) {
      if (aut.accepts(t, a) != check(*f, g, a)) ++bad;
    });
  }
  return bad;
}

}  // namespace

TEST_CASE("string formulas agree with the model checker") {
  for (const auto& sf : string_suite()) {
    INFO(sf.text);
    CHECK(disagreements_words(sf, 4) == 0);
  }
}

TEST_CASE("tree formulas agree with the model checker") {
  for (const auto& sf : tree_suite()) {
    INFO(sf.text);
    CHECK(disagreements_trees(sf, 5) == 0);
  }
}

TEST_CASE("well-formedness is enforced") {
  Compiler c(InputClass::words(kAB));
  auto t = c.compile(mso::tt(), {"x"});
  Word w = {"a", "b"};
  Assignment a;
  a.nodes["x"] = 1;
  CHECK(t.accepts(w, a));
  // x annotated twice is rejected
  std::vector<Symbol> syms = {t.encode(0, 1), t.encode(1, 1), t.encode(2, 0)};
  CHECK_FALSE(t.word.accepts(syms));
  // missing end marker
  std::vector<Symbol> no_end = {t.encode(0, 1), t.encode(1, 0)};
  CHECK_FALSE(t.word.accepts(no_end));
}

TEST_CASE("sentences give small automata") {
  Signature sig = Signature::strings(kAB);
  auto f = parse_formula("(exists x y (and (edg_a x y) (exists z (edg_b y z))))", sig, {});
  auto aut = compile_word(f, {}, kAB);
  CHECK(aut.states() == 5);
  CHECK_FALSE(is_empty(aut));
  auto g = parse_formula("(exists x (and (lab_# x) (not (lab_# x))))", sig, {});
  CHECK(is_empty(compile_word(g, {}, kAB)));
}

TEST_CASE("state cap raises resource exceeded") {
  Signature sig = Signature::strings(kAB);
  auto f = parse_formula("(exists x y (and (edg_a x y) (exists z (edg_b y z))))", sig, {});
  CompileOptions opt;
  opt.state_cap = 2;
  CHECK_THROWS_AS(compile_word(f, {}, kAB, opt), ResourceExceeded);
}

TEST_CASE("context must cover free variables") {
  Signature sig = Signature::strings(kAB);
  auto f = parse_formula("(edg_a x y)", sig, {"x", "y"});
  CHECK_THROWS_AS(compile_word(f, {"x"}, kAB), Error);
  auto g = compile_word(f, {"y", "x", "Z"}, kAB);
  CHECK(g.vars == std::vector<std::string>{"y", "x", "Z"});
  Assignment a;
  a.nodes = {{"x", 0}, {"y", 1}};
  a.sets["Z"] = {0, 1};
  CHECK(g.accepts(Word{"a"}, a));
  CHECK_FALSE(g.accepts(Word{"b"}, a));
}

TEST_CASE("summary and dump mention the variables") {
  auto aut = compile_word(mso::lab("#", "x"), {"x"}, kAB);
  CHECK(summary(aut).find("vars [x]") != std::string::npos);
  CHECK(dump(aut).find("accepting") != std::string::npos);
}

TEST_CASE("summary reads true as universal") {
  CHECK(summary(compile_word(mso::tt(), {}, kAB)).find("universal") != std::string::npos);
  CHECK(summary(compile_word(mso::ff(), {}, kAB)).find("empty") != std::string::npos);
  auto tree_sig = Signature::trees({{"f", 2}, {"a", 0}, {"b", 0}});
  CHECK(summary(compile_tree(mso::tt(), {}, tree_sig)).find("universal") != std::string::npos);
  auto some_a = compile_word(mso::exists("x", mso::exists("y", mso::edg("a", "x", "y"))), {}, kAB);
  CHECK(summary(some_a).find("universal") == std::string::npos);
  CHECK(is_universal(compile_word(mso::lab("#", "x"), {"x"}, kAB)));
}
