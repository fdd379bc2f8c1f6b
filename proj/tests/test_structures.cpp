#include <catch_amalgamated.hpp>

#include "msoequiv/errors.hpp"
#include "msoequiv/structures.hpp"

using namespace msoeq;

TEST_CASE("string graphs round-trip") {
  std::vector<std::string> ab = {"a", "b"};
  Word w = parse_word("abba", ab);
  REQUIRE(w.size() == 4);
  Graph g = string_to_graph(w, ab);
  CHECK(g.size() == 5);
  CHECK(g.edges().size() == 4);
  CHECK(is_string_graph(g));
  CHECK(graph_to_string(g) == w);
  CHECK(letter_at(w, 1) == "a");
  CHECK(to_string(w) == "abba");
  CHECK(parse_word("ε", ab).empty());
  CHECK(graph_to_string(string_to_graph({}, ab)).empty());
}

TEST_CASE("trees round-trip in pre-order") {
  Signature sig = Signature::trees({{"f", 2}, {"a", 0}, {"b", 0}});
  Term t = parse_term("f(f(a,b),a)");
  CHECK(t.size() == 5);
  CHECK(to_string(t) == "f(f(a,b),a)");
  Graph g = tree_to_graph(t, sig);
  CHECK(g.label(0) == "f");
  CHECK(g.label(1) == "f");
  CHECK(g.label(2) == "a");
  CHECK(g.has_edge(0, "2", 4));
  CHECK(is_tree_graph(g, sig));
  CHECK(graph_to_tree(g, sig) == t);
  CHECK(preorder(t) == Word{"f", "f", "a", "b", "a"});
  CHECK_THROWS_AS(check_term(parse_term("f(a)"), sig), SignatureError);
}

TEST_CASE("dgraphs and parikh vectors") {
  std::vector<std::string> order = {"a", "b"};
  Graph d = dgr({2, 1}, order);
  CHECK(is_dgraph(d));
  CHECK(d.size() == 3);
  CHECK(parikh(d, order) == ParikhVector{2, 1});
  CHECK(parikh(Word{"b", "a", "b"}, order) == ParikhVector{1, 2});
  Graph u = disjoint_union(d, dgr({0, 3}, order));
  CHECK(parikh(u, order) == ParikhVector{2, 4});
  CHECK(canonical_key(dgr({1, 1}, order)) == canonical_key(disjoint_union(dgr({0, 1}, order), dgr({1, 0}, order))));
}

TEST_CASE("graph text format") {
  Graph g = parse_graph("0 #\n1 #\n0 a 1\n");
  CHECK(g.size() == 2);
  CHECK(g.has_edge(0, "a", 1));
  CHECK(parse_graph(format_graph(g)) == g);
  CHECK_THROWS_AS(parse_graph("0 #\n0 a 7\n"), ParseError);
}
