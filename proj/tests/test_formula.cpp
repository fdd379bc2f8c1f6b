#include <catch_amalgamated.hpp>

#include "msoequiv/errors.hpp"
#include "msoequiv/formula.hpp"
#include "support.hpp"

using namespace msoeq;

namespace {
const std::vector<std::string> kAB = {"a", "b"};
}

TEST_CASE("sorts follow the first letter") {
  CHECK(sort_of("x") == Sort::Node);
  CHECK(sort_of("Y1") == Sort::Set);
}

TEST_CASE("parse and print") {
  Signature sig = Signature::strings(kAB);
  auto f = parse_formula("(exists y (and (edg_a x y) (in y Y)))", sig, {"x", "Y"});
  CHECK(to_sexpr(*f) == "(exists y (and (edg_a x y) (in y Y)))");
  CHECK(free_vars(*f) == std::set<std::string>{"x", "Y"});
  CHECK(quantifier_depth(*f) == 1);
  CHECK_THROWS_AS(parse_formula("(edg_a x z)", sig, {"x"}), Error);
  CHECK_THROWS_AS(parse_formula("(edg_c x y)", sig, {"x", "y"}), ParseError);
  CHECK_THROWS_AS(parse_formula("(and (lab_# x)", sig, {"x"}), ParseError);
}

TEST_CASE("formula files carry their signature") {
  auto ff = parse_formula_file("sigma: #\ngamma: a b\nfree: x\n(exists y (edg_a x y))\n");
  CHECK(ff.free == VarContext{"x"});
  Graph g = string_to_graph({"a"}, kAB);
  Assignment a;
  a.nodes["x"] = 0;
  CHECK(check(*ff.formula, g, a));
  a.nodes["x"] = 1;
  CHECK_FALSE(check(*ff.formula, g, a));
}

TEST_CASE("macro expansion preserves meaning") {
  Signature sig = Signature::trees({{"f", 2}, {"a", 0}, {"b", 0}});
  for (const char* text : {"(pre_succ x y)", "(reach x y)", "(root x)", "(eq x y)"}) {
    auto f = parse_formula(text, sig, {"x", "y"});
    auto g = expand_derived(f, sig);
    CHECK_FALSE(has_macros(*g));
    for (const auto& t : testing::all_trees(sig, 5)) {
      Graph gr = tree_to_graph(t, sig);
      testing::for_each_assignment({"x", "y"}, gr.size(), [&](const Assignment& a) {
        CHECK(check(*f, gr, a) == check(*g, gr, a));
      });
    }
  }
}

TEST_CASE("renaming avoids capture") {
  Signature sig = Signature::strings(kAB);
  auto f = parse_formula("(exists y (edg_a x y))", sig, {"x"});
  auto g = rename_free(f, {{"x", "y"}});
  CHECK(free_vars(*g) == std::set<std::string>{"y"});
  Graph gr = string_to_graph({"a"}, kAB);
  Assignment a;
  a.nodes["y"] = 0;
  CHECK(check(*g, gr, a));
}

TEST_CASE("oracle refuses large graphs") {
  Signature sig = Signature::strings(kAB);
  auto f = parse_formula("(exists X (singleton X))", sig, {});
  Graph g = string_to_graph(Word(20, "a"), kAB);
  CHECK_THROWS_AS(check(*f, g, {}), ResourceExceeded);
}
