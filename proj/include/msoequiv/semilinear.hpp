#pragma once

// Linear and semilinear subsets of N^k.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msoequiv/structures.hpp"

namespace msoeq {

using Vec = ParikhVector;

/// base + N*periods.
struct LinearSet {
  Vec base;
  std::vector<Vec> periods;
  bool operator==(const LinearSet&) const = default;
};

class SemilinearSet {
 public:
  explicit SemilinearSet(std::size_t dim = 0) : dim_(dim) {}

  static SemilinearSet empty_set(std::size_t dim) { return SemilinearSet(dim); }
  static SemilinearSet zero(std::size_t dim);
  static SemilinearSet singleton(Vec v);
  static SemilinearSet linear(Vec base, std::vector<Vec> periods);

  std::size_t dim() const { return dim_; }
  const std::vector<LinearSet>& sets() const { return sets_; }
  bool empty() const { return sets_.empty(); }
  void add(LinearSet l);

 private:
  std::size_t dim_;
  std::vector<LinearSet> sets_;
};

bool member(const Vec& v, const LinearSet& l);
bool member(const Vec& v, const SemilinearSet& s);
bool is_empty(const SemilinearSet& s);

SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b);
/// Minkowski sum.
SemilinearSet sum(const SemilinearSet& a, const SemilinearSet& b);
/// Smallest set containing 0 and closed under sums with elements of a.
SemilinearSet star(const SemilinearSet& a);
SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b);
/// Image under the matrix m (rows = output dimension).
SemilinearSet linear_map(const SemilinearSet& s, const std::vector<Vec>& m);
/// Drops zero, duplicate and generated periods, and linear sets contained in
/// another one. Same set.
SemilinearSet simplify(const SemilinearSet& s);

/// Some n with (n,n) in s, the smallest one found, or none.
std::optional<std::int64_t> diagonal_nonempty(const SemilinearSet& s);

/// Minimal nonzero solutions y in N^n of A y = 0. `bounded` caps single
/// coordinates: y[i] <= cap[i] when cap[i] >= 0.
std::vector<Vec> hilbert_basis(const std::vector<Vec>& a, std::size_t n, const std::vector<std::int64_t>& cap = {});

std::string to_string(const Vec& v);
/// "base (0,0); periods {(1,1)}", linear sets joined by " | ", "empty" for none.
std::string to_string(const SemilinearSet& s);

}  // namespace msoeq
