#include <catch_amalgamated.hpp>

#include "msoequiv/errors.hpp"
#include "msoequiv/grammar.hpp"
#include "support.hpp"

using namespace msoeq;
using namespace msoeq::testing;

TEST_CASE("cfg parsing and printing") {
  auto g = parse_cfg(corpus("anbn.cfg"));
  CHECK(g.start == "S");
  CHECK(g.terminals == std::vector<std::string>{"a", "b"});
  CHECK(g.productions.size() == 2);
  CHECK(g.productions[1].rhs.empty());
  auto again = parse_cfg(format_cfg(g));
  CHECK(format_cfg(again) == format_cfg(g));
  CHECK_THROWS_AS(parse_cfg("S => a"), ParseError);
  CHECK_THROWS_AS(parse_cfg("start: S\nfoo: bar\n"), ParseError);
}

TEST_CASE("cfg membership and enumeration agree") {
  for (const char* name : {"anbn.cfg", "dyck.cfg", "palindromes.cfg", "ab-even.cfg", "a-then-bs.cfg"}) {
    auto g = parse_cfg(corpus(name));
    auto words = cfg_words(g, 6);
    std::set<Word> in(words.begin(), words.end());
    for (const auto& w : all_words({"a", "b"}, 6)) {
      INFO(name << " " << to_string(w));
      CHECK(cfg_accepts(g, w) == (in.count(w) > 0));
    }
  }
  auto pal = cfg_words(parse_cfg(corpus("palindromes.cfg")), 3);
  CHECK(pal.size() == 1 + 2 + 2 + 4);
  CHECK(pal.front().empty());
}

TEST_CASE("reduction drops useless symbols") {
  auto g = parse_cfg("start: S\nS -> a | B\nB -> B b\nC -> c\n");
  auto r = reduce(g);
  CHECK(r.productions.size() == 1);
  CHECK(r.nonterminals == std::vector<std::string>{"S"});
  auto empty = reduce(parse_cfg("S -> S"));
  CHECK(empty.productions.empty());
}

TEST_CASE("rtg parsing, membership and enumeration") {
  auto t = parse_rtg(corpus("child-symmetric.rtg"));
  CHECK(t.sig.rank("f") == 2);
  CHECK(rtg_accepts(t, parse_term("f(a,a)")));
  CHECK_FALSE(rtg_accepts(t, parse_term("f(a,b)")));
  auto trees = rtg_trees(t, 7);
  CHECK(trees.size() == 4);
  CHECK_THROWS_AS(parse_rtg("S -> f(S) | f(S,S)"), ParseError);
  CHECK_THROWS_AS(parse_rtg("S -> f(x)"), ParseError);
  auto all = parse_rtg(corpus("all-trees.rtg"));
  CHECK(rtg_trees(all, 7).size() == 2 + 4 + 16 + 80);
  auto again = parse_rtg(format_rtg(t));
  CHECK(format_rtg(again) == format_rtg(t));
}

TEST_CASE("rtg to cfg keeps label counts") {
  auto t = parse_rtg("S -> f(A,A)\nA -> a\n");
  auto g = rtg_to_cfg(t);
  CHECK(cfg_words(g, 5) == std::vector<Word>{{"f", "a", "a"}});
  for (const char* name : {"child-symmetric.rtg", "all-trees.rtg", "combs.rtg", "fig.rtg"}) {
    auto r = parse_rtg(corpus(name));
    auto cfg = rtg_to_cfg(r);
    std::set<ParikhVector> from_trees;
    for (const auto& tr : rtg_trees(r, 9)) from_trees.insert(parikh(preorder(tr), r.sig.node_labels));
    std::set<ParikhVector> from_words;
    for (const auto& w : cfg_words(cfg, 9)) from_words.insert(parikh(w, r.sig.node_labels));
    CHECK(from_trees == from_words);
  }
}
