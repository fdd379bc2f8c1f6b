#include "msoequiv/selftest.hpp"

#include <functional>
#include <random>
#include <set>

#include "msoequiv/compiler.hpp"
#include "msoequiv/decider.hpp"
#include "msoequiv/errors.hpp"
#include "msoequiv/parikh.hpp"

namespace msoeq {

namespace {

const std::vector<std::string> kLetters = {"a", "b"};

FormulaPtr random_formula(std::mt19937_64& rng, int depth, std::vector<std::string> nodes,
                          std::vector<std::string> sets) {
  auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  if (depth == 0 || rng() % 4 == 0) {
    switch (rng() % 4) {
      case 0:
        return mso::edg(pick(kLetters), pick(nodes), pick(nodes));
      case 1:
        if (!sets.empty()) return mso::in(pick(nodes), pick(sets));
        return mso::eq(pick(nodes), pick(nodes));
      case 2:
        return mso::eq(pick(nodes), pick(nodes));
      default:
        return mso::lab(kStringNodeLabel, pick(nodes));
    }
  }
  switch (rng() % 6) {
    case 0:
      return mso::neg(random_formula(rng, depth - 1, nodes, sets));
    case 1:
      return mso::conj({random_formula(rng, depth - 1, nodes, sets), random_formula(rng, depth - 1, nodes, sets)});
    case 2:
      return mso::disj({random_formula(rng, depth - 1, nodes, sets), random_formula(rng, depth - 1, nodes, sets)});
    case 3: {
      std::string v = "n" + std::to_string(nodes.size());
      nodes.push_back(v);
      auto body = random_formula(rng, depth - 1, nodes, sets);
      return rng() % 2 ? mso::exists(v, body) : mso::forall(v, body);
    }
    case 4: {
      std::string v = "S" + std::to_string(sets.size());
      sets.push_back(v);
      auto body = random_formula(rng, depth - 1, nodes, sets);
      return rng() % 2 ? mso::exists(v, body) : mso::forall(v, body);
    }
    default:
      return mso::implies(random_formula(rng, depth - 1, nodes, sets), random_formula(rng, depth - 1, nodes, sets));
  }
}

std::vector<Word> words_up_to(std::size_t n) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < n)
      for (const auto& l : kLetters) {
        Word w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
  return out;
}

const char* kTransducers[] = {
    // identity
    "copies: 1\ninput-gamma: a b\noutput-gamma: a b\ndom: true\nnode 1 #: true\n"
    "edge 1 1 a: (edg_a x y)\nedge 1 1 b: (edg_b x y)\n",
    // reverse
    "copies: 1\ninput-gamma: a b\noutput-gamma: a b\ndom: true\nnode 1 #: true\n"
    "edge 1 1 a: (edg_a y x)\nedge 1 1 b: (edg_b y x)\n",
    // letter swap
    "copies: 1\ninput-gamma: a b\noutput-gamma: a b\ndom: true\nnode 1 #: true\n"
    "edge 1 1 a: (edg_b x y)\nedge 1 1 b: (edg_a x y)\n",
    // identity on words without bb
    "copies: 1\ninput-gamma: a b\noutput-gamma: a b\n"
    "dom: (not (exists x y z (and (edg_b x y) (edg_b y z))))\nnode 1 #: true\n"
    "edge 1 1 a: (edg_a x y)\nedge 1 1 b: (edg_b x y)\n",
};

const char* kDomains[] = {"(a|b)*", "(ab)*", "a*b*", "(a|b)(a|b)", "(aa|b)*"};

}  // namespace

SelftestReport selftest(std::uint64_t seed, std::ostream& log) {
  SelftestReport r;
  std::mt19937_64 rng(seed);
  auto fail = [&](const std::string& what) {
    ++r.failures;
    log << "FAIL " << what << "\n";
  };

  // Compiler against the model checker.
  const auto words = words_up_to(4);
  for (int i = 0; i < 12; ++i) {
    auto f = random_formula(rng, 3, {"x"}, {});
    auto aut = compile_word(f, {"x"}, kLetters);
    for (const auto& w : words) {
      Graph g = string_to_graph(w, kLetters);
      for (std::size_t v = 0; v < g.size(); ++v) {
        Assignment a;
        a.nodes["x"] = v;
        ++r.checks;
        if (aut.accepts(w, a) != check(*f, g, a)) fail("compile " + to_sexpr(*f) + " on " + to_string(w));
      }
    }
  }

  // Parikh images against enumeration.
  for (int i = 0; i < 6; ++i) {
    Cfg g;
    g.start = "S";
    g.nonterminals = {"S", "T"};
    g.terminals = kLetters;
    const std::vector<std::string> syms = {"a", "b", "S", "T"};
    for (const char* lhs : {"S", "S", "T", "T"}) {
      std::vector<std::string> rhs;
      for (std::size_t k = rng() % 4; k > 0; --k) rhs.push_back(syms[rng() % syms.size()]);
      g.productions.push_back({lhs, rhs});
    }
    g.productions.push_back({"T", {"a"}});
    auto image = cfg_parikh(g);
    std::set<Vec> seen;
    for (const auto& w : cfg_words(g, 6)) seen.insert(parikh(w, kLetters));
    for (std::int64_t x = 0; x <= 6; ++x)
      for (std::int64_t y = 0; x + y <= 6; ++y) {
        ++r.checks;
        if (member(Vec{x, y}, image) != (seen.count(Vec{x, y}) > 0))
          fail("parikh (" + std::to_string(x) + "," + std::to_string(y) + ") of\n" + format_cfg(g));
      }
  }

  // Decider against differential evaluation.
  for (int i = 0; i < 6; ++i) {
    auto m1 = parse_transducer(kTransducers[rng() % std::size(kTransducers)]);
    auto m2 = parse_transducer(kTransducers[rng() % std::size(kTransducers)]);
    std::string re = kDomains[rng() % std::size(kDomains)];
    auto d = Domain::regular(re);
    DecideOptions opt;
    opt.witness = true;
    opt.budget.witness_bound = 8;
    auto v = decide(m1, m2, d, opt);
    auto cex = find_counterexample(m1, m2, d, 8);
    ++r.checks;
    std::string what = "decide on " + re + ": " + format_verdict(v);
    if (v.kind == Verdict::Kind::Equivalent && cex) fail(what + " but " + cex->text + " differs");
    if (v.kind != Verdict::Kind::Equivalent && !cex) fail(what + " without a short counterexample");
    if (v.witness) {
      ++r.checks;
      if (!is_witness(m1, m2, string_to_graph(parse_word(*v.witness, kLetters), kLetters)))
        fail(what + " with an invalid witness");
    }
  }
  return r;
}

}  // namespace msoeq
