#include <catch_amalgamated.hpp>

#include "msoequiv/decider.hpp"
#include "msoequiv/errors.hpp"
#include "support.hpp"

using namespace msoeq;
using namespace msoeq::testing;

namespace {

MsoTransducer load(const std::string& name) { return parse_transducer(corpus(name)); }
Domain dom(const std::string& name) { return load_domain(corpus_path(name)); }

Verdict run(const std::string& m1, const std::string& m2, const std::string& d, bool witness = true) {
  DecideOptions opt;
  opt.witness = witness;
  return decide(load(m1), load(m2), dom(d), opt);
}

/// Brute force over domain members: does (m, n) arise for the pair (a, b)?
std::set<std::pair<std::int64_t, std::int64_t>> brute_pairs(const MsoTransducer& m1, const MsoTransducer& m2,
                                                            const Domain& d, const std::string& a,
                                                            const std::string& b, std::size_t bound) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  auto positions = [](const Word& w, const std::string& l) {
    std::vector<std::int64_t> p;
    Word v = w;
    v.push_back("$");
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == l) p.push_back(static_cast<std::int64_t>(i + 1));
    return p;
  };
  for (const auto& w : d.words(bound)) {
    Graph g = string_to_graph(w, m1.input.edge_labels);
    auto o1 = flat_output(m1, g);
    auto o2 = flat_output(m2, g);
    if (!o1 || !o2) continue;
    for (auto m : positions(*o1, a))
      for (auto n : positions(*o2, b)) out.emplace(m, n);
  }
  return out;
}

}  // namespace

TEST_CASE("budget parsing") {
  auto b = Budget::parse("5000");
  CHECK(b.state_cap == 5000);
  b = Budget::parse("states=10, witness=4,seconds=3");
  CHECK(b.state_cap == 10);
  CHECK(b.witness_bound == 4);
  CHECK(b.seconds == 3);
  CHECK(b.oracle_cap == 12);
  CHECK_THROWS_AS(Budget::parse("bogus=1"), ParseError);
  CHECK_THROWS_AS(Budget::parse("states=-3"), ParseError);
  CHECK(Budget{}.state_cap == 200000);
  CHECK(Budget{}.witness_bound == 12);
}

TEST_CASE("verdict text and json") {
  Verdict v;
  CHECK(format_verdict(v) == "EQUIVALENT");
  CHECK(v.exit_code() == 0);
  v.kind = Verdict::Kind::OutputMismatch;
  v.a = "a";
  v.b = "b";
  v.n = 1;
  v.witness = "ab";
  CHECK(format_verdict(v) == "INEQUIVALENT reason=output-mismatch a=a b=b n=1 witness=ab");
  CHECK(v.exit_code() == 1);
  Verdict d;
  d.kind = Verdict::Kind::DomainMismatch;
  d.witness = "ε";
  CHECK(format_verdict(d) == "INEQUIVALENT reason=domain-mismatch witness=ε");
  Verdict r;
  r.kind = Verdict::Kind::ResourceExceeded;
  r.stage = "automaton";
  CHECK(format_verdict(r) == "RESOURCE-EXCEEDED stage=automaton");
  CHECK(r.exit_code() == 2);
  for (const auto& x : {Verdict{}, v, d, r}) CHECK(verdict_from_json(verdict_to_json(x)) == x);
  v.witness.reset();
  CHECK(verdict_from_json(verdict_to_json(v)) == v);
  CHECK_THROWS_AS(verdict_from_json("{\"verdict\":1}"), ParseError);
}

TEST_CASE("regex domains") {
  auto d = Domain::regular("(a|b)*b");
  CHECK(d.contains(Word{"a", "b"}));
  CHECK_FALSE(d.contains(Word{"b", "a"}));
  CHECK_FALSE(d.contains(Word{}));
  auto ws = d.words(3);
  REQUIRE(ws.size() == 7);
  CHECK(ws[0] == Word{"b"});
  CHECK(ws[1] == Word{"a", "b"});
  auto e = Domain::regular("ε | a+ b?");
  CHECK(e.contains(Word{}));
  CHECK(e.contains(Word{"a", "a", "b"}));
  CHECK_FALSE(e.contains(Word{"b"}));
  // The right-linear grammar agrees with the automaton.
  for (const auto& w : all_words({"a", "b"}, 6)) CHECK(cfg_accepts(e.cfg(), w) == e.contains(w));
  CHECK_THROWS_AS(Domain::regular("(a|b"), ParseError);
  CHECK_THROWS_AS(Domain::regular("a)"), ParseError);
  CHECK_THROWS_AS(load_domain("x.txt"), ParseError);
  CHECK(dom("sigma-star.re").words(2).size() == 7);
}

TEST_CASE("signature checks") {
  CHECK_THROWS_AS(Decider(load("identity.mso-t"), load("tree-identity.mso-t"), dom("sigma-star.cfg")),
                  SignatureError);
  CHECK_THROWS_AS(Decider(load("identity.mso-t"), load("reverse.mso-t"), dom("all-trees.rtg")), SignatureError);
  CHECK_THROWS_AS(Decider(load("identity.mso-t"), load("reverse.mso-t"), Domain::regular("a c")), SignatureError);
}

TEST_CASE("pair order puts $ last") {
  Decider d(load("identity.mso-t"), load("reverse.mso-t"), dom("sigma-star.cfg"));
  auto p = d.pairs();
  REQUIRE(p.size() == 6);
  CHECK(p[0] == std::make_pair(std::string("a"), std::string("b")));
  CHECK(p[1] == std::make_pair(std::string("b"), std::string("a")));
  CHECK(p[2].second == "$");
  CHECK(p[5].first == "$");
}

TEST_CASE("pair sets match brute force on short inputs") {
  struct Case {
    std::string m1, m2, d;
  };
  for (const auto& c : {Case{"identity.mso-t", "reverse.mso-t", "sigma-star.cfg"},
                        Case{"identity.mso-t", "copy-twice.mso-t", "sigma-star.re"},
                        Case{"copy-then-a.mso-t", "copy-twice.mso-t", "anbn.cfg"},
                        Case{"label-swap.mso-t", "reverse.mso-t", "palindromes.cfg"}}) {
    auto m1 = load(c.m1), m2 = load(c.m2);
    auto d = dom(c.d);
    Decider dec(m1, m2, d);
    for (const auto& [a, b] : dec.pairs()) {
      INFO(c.m1 << " " << c.m2 << " " << c.d << " " << a << " " << b);
      auto s = dec.pair_parikh(a, b);
      auto brute = brute_pairs(m1, m2, d, a, b, 6);
      for (const auto& [m, n] : brute) CHECK(member(Vec{m, n}, s));
      // Every pair with small coordinates must come from a short input.
      for (std::int64_t m = 0; m <= 4; ++m)
        for (std::int64_t n = 0; n <= 4; ++n)
          if (member(Vec{m, n}, s)) CHECK(brute.count({m, n}) == 1);
    }
  }
}

TEST_CASE("strings end to end") {
  CHECK(run("identity.mso-t", "identity.mso-t", "sigma-star.cfg").kind == Verdict::Kind::Equivalent);
  auto v = run("identity.mso-t", "reverse.mso-t", "sigma-star.cfg");
  REQUIRE(v.kind == Verdict::Kind::OutputMismatch);
  REQUIRE(v.witness);
  CHECK(v.witness->size() <= 2);
  CHECK(run("identity.mso-t", "reverse.mso-t", "palindromes.cfg").kind == Verdict::Kind::Equivalent);
  CHECK(run("identity.mso-t", "reverse.mso-t", "sigma-star.re").kind == Verdict::Kind::OutputMismatch);
  auto m = run("identity.mso-t", "identity-nonempty.mso-t", "sigma-star.cfg");
  REQUIRE(m.kind == Verdict::Kind::DomainMismatch);
  CHECK(m.witness == "ε");
  auto c = run("identity.mso-t", "copy-then-a.mso-t", "sigma-star.cfg");
  REQUIRE(c.kind == Verdict::Kind::OutputMismatch);
  CHECK((c.a == "$" || c.b == "$"));
}

TEST_CASE("trees end to end") {
  auto v = run("tree-identity.mso-t", "root-child-swap.mso-t", "all-trees.rtg");
  REQUIRE(v.kind == Verdict::Kind::OutputMismatch);
  CHECK(v.witness == "f(a,b)");
  CHECK(run("tree-identity.mso-t", "root-child-swap.mso-t", "child-symmetric.rtg").kind ==
        Verdict::Kind::Equivalent);
}

TEST_CASE("resource caps surface as a verdict") {
  DecideOptions opt;
  opt.budget.state_cap = 2;
  auto v = decide(load("identity.mso-t"), load("reverse.mso-t"), dom("sigma-star.cfg"), opt);
  CHECK(v.kind == Verdict::Kind::ResourceExceeded);
  CHECK(v.exit_code() == 2);
}

TEST_CASE("tree pair sets match brute force") {
  auto m1 = load("tree-identity.mso-t"), m2 = load("root-child-swap.mso-t");
  for (const auto* name : {"all-trees.rtg", "combs.rtg"}) {
    auto d = dom(name);
    Decider dec(m1, m2, d);
    for (const auto& [a, b] : dec.pairs()) {
      INFO(name << " " << a << " " << b);
      auto s = dec.pair_parikh(a, b);
      std::set<std::pair<std::int64_t, std::int64_t>> brute;
      for (const auto& t : d.trees(9)) {
        Graph g = tree_to_graph(t, m1.input);
        auto o1 = *flat_output(m1, g), o2 = *flat_output(m2, g);
        o1.push_back("$");
        o2.push_back("$");
        for (std::size_t i = 0; i < o1.size(); ++i)
          for (std::size_t j = 0; j < o2.size(); ++j)
            if (o1[i] == a && o2[j] == b) brute.emplace(i + 1, j + 1);
      }
      for (const auto& [m, n] : brute) CHECK(member(Vec{m, n}, s));
      // Trees with at most 9 nodes give every pair with coordinates up to 3.
      for (std::int64_t m = 0; m <= 3; ++m)
        for (std::int64_t n = 0; n <= 3; ++n)
          if (member(Vec{m, n}, s)) {
            INFO("m=" << m << " n=" << n);
            CHECK(brute.count({m, n}) == 1);
          }
    }
  }
}
