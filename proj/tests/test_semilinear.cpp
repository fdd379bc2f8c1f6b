#include <catch_amalgamated.hpp>

#include <random>

#include "msoequiv/errors.hpp"
#include "msoequiv/semilinear.hpp"
#include "support.hpp"

using namespace msoeq;
using namespace msoeq::testing;

namespace {

SemilinearSet diag() { return SemilinearSet::linear({0, 0}, {{1, 1}}); }

SemilinearSet random_set(std::mt19937_64& rng, std::size_t dim) {
  SemilinearSet s(dim);
  std::size_t count = 1 + rng() % 2;
  for (std::size_t i = 0; i < count; ++i) {
    LinearSet l;
    for (std::size_t d = 0; d < dim; ++d) l.base.push_back(static_cast<std::int64_t>(rng() % 4));
    std::size_t ps = rng() % 3;
    for (std::size_t j = 0; j < ps; ++j) {
      Vec p;
      for (std::size_t d = 0; d < dim; ++d) p.push_back(static_cast<std::int64_t>(rng() % 3));
      l.periods.push_back(p);
    }
    s.add(l);
  }
  return s;
}

}  // namespace

TEST_CASE("membership") {
  CHECK(member({3, 3}, diag()));
  CHECK_FALSE(member({2, 3}, diag()));
  CHECK(member({0, 0}, diag()));
  auto s = SemilinearSet::linear({1, 0}, {{2, 0}, {0, 3}});
  CHECK(member({5, 6}, s));
  CHECK_FALSE(member({4, 6}, s));
  CHECK_THROWS_AS(member({1}, s), Error);
}

TEST_CASE("intersection of n,n with n,1") {
  auto s = intersect(diag(), SemilinearSet::linear({0, 1}, {{1, 0}}));
  for (const auto& v : box(2, 6)) CHECK(member(v, s) == (v == Vec{1, 1}));
  CHECK(is_empty(intersect(diag(), SemilinearSet(2))));
}

TEST_CASE("intersection is pointwise") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 60; ++round) {
    auto a = random_set(rng, 2);
    auto b = random_set(rng, 2);
    auto c = intersect(a, b);
    for (const auto& v : box(2, 10)) {
      INFO(to_string(a) << " ∩ " << to_string(b) << " at " << to_string(v));
      CHECK(member(v, c) == (member(v, a) && member(v, b)));
    }
  }
}

TEST_CASE("sum, union and star") {
  auto a = SemilinearSet::linear({1, 0}, {});
  auto b = SemilinearSet::linear({0, 2}, {{0, 1}});
  auto s = sum(a, b);
  CHECK(member({1, 5}, s));
  CHECK_FALSE(member({1, 1}, s));
  auto u = unite(a, b);
  CHECK(member({1, 0}, u));
  CHECK(member({0, 4}, u));
  CHECK_FALSE(member({1, 2}, u));
  auto st = star(SemilinearSet::linear({2, 1}, {}));
  for (const auto& v : box(2, 8)) CHECK(member(v, st) == (v[0] == 2 * v[1]));
}

TEST_CASE("star against closure") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    auto a = random_set(rng, 2);
    auto st = star(a);
    std::set<Vec> closure = {{0, 0}};
    auto elems = [&]() {
      std::vector<Vec> out;
      for (const auto& v : box(2, 8))
        if (member(v, a)) out.push_back(v);
      return out;
    }();
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<Vec> cur(closure.begin(), closure.end());
      for (const auto& x : cur)
        for (const auto& y : elems) {
          Vec z = {x[0] + y[0], x[1] + y[1]};
          if (z[0] <= 8 && z[1] <= 8) grew = closure.insert(z).second || grew;
        }
    }
    for (const auto& v : box(2, 8)) CHECK(member(v, st) == (closure.count(v) > 0));
  }
}

TEST_CASE("linear map") {
  std::mt19937_64 rng(3);
  std::vector<Vec> m = {{1, 1, 0}, {0, 2, 1}};
  for (int round = 0; round < 20; ++round) {
    auto s = random_set(rng, 3);
    auto t = linear_map(s, m);
    for (const auto& v : box(3, 4))
      if (member(v, s)) CHECK(member({v[0] + v[1], 2 * v[1] + v[2]}, t));
  }
}

TEST_CASE("simplify keeps the set") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 40; ++round) {
    auto s = random_set(rng, 2);
    auto t = simplify(s);
    for (const auto& v : box(2, 9)) CHECK(member(v, s) == member(v, t));
  }
}

TEST_CASE("diagonal test") {
  CHECK(diagonal_nonempty(SemilinearSet::linear({0, 1}, {{1, 0}})) == 1);
  CHECK(diagonal_nonempty(SemilinearSet::singleton({0, 0})) == 0);
  CHECK_FALSE(diagonal_nonempty(SemilinearSet::linear({0, 1}, {{1, 1}})).has_value());
  CHECK_FALSE(diagonal_nonempty(SemilinearSet(2)).has_value());
  CHECK_THROWS_AS(diagonal_nonempty(SemilinearSet(3)), Error);
  std::mt19937_64 rng(1);
  for (int round = 0; round < 60; ++round) {
    auto s = random_set(rng, 2);
    auto n = diagonal_nonempty(s);
    std::optional<std::int64_t> scan;
    for (std::int64_t k = 0; k <= 50 && !scan; ++k)
      if (member({k, k}, s)) scan = k;
    CHECK(n == scan);
  }
}

TEST_CASE("hilbert basis of x = y") {
  auto h = hilbert_basis({{1, -1}}, 2);
  REQUIRE(h.size() == 1);
  CHECK(h[0] == Vec{1, 1});
  auto h2 = hilbert_basis({{2, -3}}, 2);
  REQUIRE(h2.size() == 1);
  CHECK(h2[0] == Vec{3, 2});
}

TEST_CASE("printing") {
  CHECK(to_string(diag()) == "base (0,0); periods {(1,1)}");
  CHECK(to_string(SemilinearSet(2)) == "empty");
}
