#include <catch_amalgamated.hpp>

#include "msoequiv/errors.hpp"
#include "msoequiv/transducer.hpp"
#include "support.hpp"

using namespace msoeq;
using namespace msoeq::testing;

namespace {

const std::vector<std::string> kAB = {"a", "b"};

MsoTransducer load(const std::string& name) { return parse_transducer(corpus(name)); }

std::vector<std::string> string_outputs(const std::vector<Graph>& hs) {
  std::vector<std::string> out;
  for (const auto& h : hs) out.push_back(to_string(graph_to_string(h)));
  std::sort(out.begin(), out.end());
  return out;
}

Word rev(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

// Reference pre-order, written independently of structures.hpp.
void walk(const Term& t, std::string& out) {
  out += t.label;
  for (const auto& c : t.children) walk(c, out);
}

std::size_t letter_count(const Word& w, const std::string& a) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), a));
}

}  // namespace

TEST_CASE("corpus string transducers") {
  auto id = load("identity.mso-t");
  auto re = load("reverse.mso-t");
  auto cp = load("copy-twice.mso-t");
  auto sw = load("label-swap.mso-t");
  auto ca = load("copy-then-a.mso-t");
  CHECK(kind_of(id) == TransducerKind::GraphToString);
  for (const auto& w : all_words(kAB, 5)) {
    Graph g = string_to_graph(w, kAB);
    INFO(to_string(w));
    CHECK(string_outputs(evaluate(id, g)) == std::vector<std::string>{to_string(w)});
    CHECK(string_outputs(evaluate(re, g)) == std::vector<std::string>{to_string(rev(w))});
    Word ww = w;
    ww.insert(ww.end(), w.begin(), w.end());
    CHECK(string_outputs(evaluate(cp, g)) == std::vector<std::string>{to_string(ww)});
    Word sw_w;
    for (const auto& l : w) sw_w.push_back(l == "a" ? "b" : "a");
    CHECK(string_outputs(evaluate(sw, g)) == std::vector<std::string>{to_string(sw_w)});
    Word wa = w;
    wa.push_back("a");
    CHECK(string_outputs(evaluate(ca, g)) == std::vector<std::string>{to_string(wa)});
  }
}

TEST_CASE("compiled and oracle evaluation agree") {
  EvalOptions oracle;
  oracle.engine = Engine::Oracle;
  EvalOptions compiled;
  compiled.engine = Engine::Compiled;
  for (const char* name : {"identity.mso-t", "reverse.mso-t", "copy-twice.mso-t", "identity-nonempty.mso-t"}) {
    auto m = load(name);
    for (const auto& w : all_words(kAB, 4)) {
      Graph g = string_to_graph(w, kAB);
      CHECK(string_outputs(evaluate(m, g, oracle)) == string_outputs(evaluate(m, g, compiled)));
    }
  }
  Signature sig = parse_signature("f/2 a/0 b/0", "");
  for (const char* name : {"tree-identity.mso-t", "root-child-swap.mso-t"}) {
    auto m = load(name);
    for (const auto& t : all_trees(sig, 5)) {
      Graph g = tree_to_graph(t, sig);
      auto x = evaluate(m, g, oracle);
      auto y = evaluate(m, g, compiled);
      REQUIRE(x.size() == 1);
      REQUIRE(y.size() == 1);
      CHECK(canonical_key(x[0]) == canonical_key(y[0]));
    }
  }
}

TEST_CASE("tree transducers") {
  Signature sig = parse_signature("f/2 a/0 b/0", "");
  auto id = load("tree-identity.mso-t");
  auto sw = load("root-child-swap.mso-t");
  CHECK(kind_of(sw) == TransducerKind::GraphToTree);
  Graph g = tree_to_graph(parse_term("f(f(a,b),a)"), sig);
  auto h = evaluate(sw, g);
  REQUIRE(h.size() == 1);
  CHECK(to_string(graph_to_tree(h[0], sig)) == "f(a,f(a,b))");
  CHECK(to_string(graph_to_tree(evaluate(id, g)[0], sig)) == "f(f(a,b),a)");
  CHECK(output_fits(TransducerKind::GraphToTree, h[0], sig));
}

TEST_CASE("position extractor yields one dgraph per occurrence") {
  for (const auto& w : all_words(kAB, 6)) {
    Graph g = string_to_graph(w, kAB);
    for (const std::string a : {"a", "b"}) {
      auto n = position_extractor(kAB, a);
      std::set<std::string> expect;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == a) expect.insert(canonical_key(dgr({static_cast<std::int64_t>(i + 1)}, {a})));
      std::set<std::string> got;
      for (const auto& h : evaluate(n, g)) {
        CHECK(output_fits(TransducerKind::StringToDgraph, h, n.output));
        got.insert(canonical_key(h));
      }
      CHECK(got == expect);
    }
  }
  CHECK_THROWS_AS(position_extractor(kAB, "c"), SignatureError);
}

TEST_CASE("disjoint union") {
  auto as_dgraph = domain_symdiff(load("identity.mso-t"), load("identity-nonempty.mso-t"));
  Graph g = string_to_graph({}, kAB);
  auto single = evaluate(as_dgraph, g);
  REQUIRE(single.size() == 1);
  auto u = disjoint_union(as_dgraph, as_dgraph);
  auto both = evaluate(u, g);
  REQUIRE(both.size() == 1);
  CHECK(both[0].size() == 2 * single[0].size());
  CHECK(evaluate(u, string_to_graph({"a"}, kAB)).empty());
  CHECK(u.copies.size() == 2);
}

TEST_CASE("marker appending") {
  auto m = append_marker(load("copy-twice.mso-t"));
  for (const auto& w : all_words(kAB, 4)) {
    auto hs = m.evaluate(string_to_graph(w, kAB));
    REQUIRE(hs.size() == 1);
    Word out = graph_to_string(hs[0]);
    REQUIRE_FALSE(out.empty());
    CHECK(out.back() == "$");
    CHECK(letter_count(out, "$") == 1);
    CHECK(out.size() == 2 * w.size() + 1);
  }
  CHECK_THROWS_AS(marker_appender({"a", "$"}), SignatureError);
}

TEST_CASE("pair counter matches the brute-force pair set") {
  auto id = Transduction::primitive(load("identity.mso-t"));
  auto re = Transduction::primitive(load("reverse.mso-t"));
  auto pc = pair_counter(id, re, "a", "b");
  for (const auto& w : all_words(kAB, 4)) {
    Graph g = string_to_graph(w, kAB);
    Word o1 = w, o2 = rev(w);
    std::set<std::string> expect;
    for (std::size_t m = 0; m < o1.size(); ++m)
      for (std::size_t n = 0; n < o2.size(); ++n)
        if (o1[m] == "a" && o2[n] == "b") {
          Graph d = disjoint_union(dgr({static_cast<std::int64_t>(m + 1)}, {"a"}),
                                   dgr({static_cast<std::int64_t>(n + 1)}, {"b"}));
          expect.insert(canonical_key(d));
        }
    std::set<std::string> got;
    for (const auto& h : pc.evaluate(g)) got.insert(canonical_key(h));
    CHECK(got == expect);
  }
  auto none = pair_counter(id, re, "a", "$");
  CHECK(none.tag() == Transduction::Tag::Empty);
  CHECK_THROWS(pair_counter(id, re, "a", "a"));
}

TEST_CASE("pre-order flattening") {
  Signature sig = parse_signature("f/2 g/1 a/0 b/0", "");
  auto flat = preorder_flattener(sig);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    Term t = random_tree(sig, 15, rng);
    auto hs = evaluate(flat, tree_to_graph(t, sig));
    REQUIRE(hs.size() == 1);
    std::string expect;
    walk(t, expect);
    CHECK(to_string(graph_to_string(hs[0])) == expect);
    CHECK(graph_to_string(hs[0]).size() == t.size());
  }
  Signature fab = parse_signature("f/2 a/0 b/0", "");
  auto h = evaluate(preorder_flattener(fab), tree_to_graph(parse_term("f(a,b)"), fab));
  CHECK(to_string(graph_to_string(h[0])) == "fab");
  auto fl = flatten(load("root-child-swap.mso-t"));
  auto hs = fl.evaluate(tree_to_graph(parse_term("f(a,b)"), fab));
  CHECK(to_string(graph_to_string(hs[0])) == "fba");
}

TEST_CASE("domain symmetric difference") {
  auto id = load("identity.mso-t");
  auto ne = load("identity-nonempty.mso-t");
  auto e = domain_symdiff(id, ne);
  CHECK(evaluate(e, string_to_graph({"a"}, kAB)).empty());
  auto h = evaluate(e, string_to_graph({}, kAB));
  REQUIRE(h.size() == 1);
  CHECK(is_dgraph(h[0]));
  auto same = domain_symdiff(id, id);
  for (const auto& w : all_words(kAB, 3)) CHECK(evaluate(same, string_to_graph(w, kAB)).empty());

  // phi1 = "has an a-edge", phi2 = true
  auto has_a = id;
  has_a.domain = parse_formula("(exists x y (edg_a x y))", id.input, {});
  auto e2 = domain_symdiff(has_a, id);
  CHECK(evaluate(e2, string_to_graph({"a", "b"}, kAB)).empty());
  auto bb = evaluate(e2, string_to_graph({"b", "b"}, kAB));
  REQUIRE(bb.size() == 1);
  CHECK(bb[0].size() == 3);
}

TEST_CASE("pipelines") {
  auto id = load("identity.mso-t");
  auto re = load("reverse.mso-t");
  Graph ab = string_to_graph({"a", "b"}, kAB);
  CHECK(string_outputs(pipe_evaluate(id, re, ab)) == std::vector<std::string>{"ba"});
  CHECK(string_outputs(pipe_evaluate(re, re, ab)) == std::vector<std::string>{"ab"});
  auto ne = load("identity-nonempty.mso-t");
  CHECK(pipe_evaluate(ne, re, string_to_graph({}, kAB)).empty());
  CHECK_THROWS_AS(pipe_evaluate(load("tree-identity.mso-t"), re, ab), SignatureError);
}

TEST_CASE("empty domain yields nothing") {
  auto m = load("identity.mso-t");
  m.domain = mso::ff();
  CHECK(evaluate(m, string_to_graph({"a"}, kAB)).empty());
}

TEST_CASE("transducer text format") {
  auto m = load("copy-twice.mso-t");
  auto again = parse_transducer(format_transducer(m));
  CHECK(format_transducer(again) == format_transducer(m));
  CHECK_THROWS_AS(parse_transducer("copies: 1\nnode 1 #: (edg_c x y)\n"), ParseError);
  CHECK_THROWS_AS(parse_transducer("dom: true\n"), ParseError);
  CHECK_THROWS_AS(parse_transducer("copies: 1\ninput-gamma: a\noutput-gamma: a\nnode 1 #: (lab_# z)\n"), ParseError);
  auto omitted = parse_transducer("copies: 1\ninput-gamma: a\noutput-gamma: a\nnode 1 #: true\n");
  CHECK(omitted.domain->kind == Kind::False);
}

TEST_CASE("nondeterministic evaluation is capped") {
  auto n = position_extractor(kAB, "a");
  EvalOptions opt;
  opt.param_node_cap = 3;
  CHECK_THROWS_AS(evaluate(n, string_to_graph(Word(5, "a"), kAB), opt), ResourceExceeded);
}

TEST_CASE("strict mode reports dropped nodes") {
  auto m = load("identity.mso-t");
  m.output.node_labels.push_back("c");
  m.nodes[{"1", "c"}] = mso::tt();
  std::vector<std::string> warnings;
  EvalOptions opt;
  opt.warnings = &warnings;
  auto hs = evaluate(m, string_to_graph({"a"}, kAB), opt);
  CHECK(warnings.size() == 2);
  REQUIRE(hs.size() == 1);
  CHECK(hs[0].size() == 0);
}
