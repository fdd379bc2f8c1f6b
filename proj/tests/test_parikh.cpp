#include <catch_amalgamated.hpp>

#include "msoequiv/parikh.hpp"
#include "support.hpp"

using namespace msoeq;
using namespace msoeq::testing;

namespace {

void check_exact(const Cfg& g, std::int64_t bound) {
  auto s = cfg_parikh(g);
  auto oracle = bounded_parikh(g, bound);
  for (const auto& v : box(g.terminals.size(), bound)) {
    INFO(format_cfg(g) << to_string(s) << " at " << to_string(v));
    CHECK(member(v, s) == (oracle.count(v) > 0));
  }
}

}  // namespace

TEST_CASE("a^n b^n") {
  auto s = cfg_parikh(parse_cfg(corpus("anbn.cfg")));
  CHECK(to_string(s) == "base (0,0); periods {(1,1)}");
}

TEST_CASE("trivial grammars") {
  CHECK(to_string(cfg_parikh(parse_cfg("S -> a"))) == "base (1); periods {}");
  CHECK(is_empty(cfg_parikh(parse_cfg("terminals: a\nS -> S"))));
}

TEST_CASE("corpus grammars are exact") {
  for (const char* name :
       {"anbn.cfg", "dyck.cfg", "palindromes.cfg", "ab-even.cfg", "a-then-bs.cfg", "sigma-star.cfg"})
    check_exact(parse_cfg(corpus(name)), 8);
  for (const char* name : {"child-symmetric.rtg", "all-trees.rtg", "combs.rtg", "fig.rtg"})
    check_exact(rtg_to_cfg(parse_rtg(corpus(name))), 6);
}

TEST_CASE("nonlinear systems") {
  check_exact(parse_cfg("S -> A B | c\nA -> a A S | a\nB -> b B | S b\n"), 7);
  check_exact(parse_cfg("S -> S S a | b\n"), 8);
  check_exact(parse_cfg("S -> A A | a\nA -> S b S | c\n"), 5);
}

TEST_CASE("weighted image") {
  auto g = parse_cfg(corpus("anbn.cfg"));
  auto w = weigh(g, {{"a", {2, 0}}, {"b", {0, 3}}}, 2);
  auto s = parikh_image(w);
  for (const auto& v : box(2, 9)) CHECK(member(v, s) == (v[0] % 2 == 0 && v[1] == 3 * (v[0] / 2)));
}
