#include "msoequiv/semilinear.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "msoequiv/errors.hpp"

namespace msoeq {

namespace {

void require_dim(std::size_t a, std::size_t b) {
  if (a != b) throw Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool geq(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

}  // namespace

SemilinearSet SemilinearSet::zero(std::size_t dim) { return singleton(Vec(dim, 0)); }

SemilinearSet SemilinearSet::singleton(Vec v) { return linear(std::move(v), {}); }

SemilinearSet SemilinearSet::linear(Vec base, std::vector<Vec> periods) {
  SemilinearSet s(base.size());
  s.add({std::move(base), std::move(periods)});
  return s;
}

void SemilinearSet::add(LinearSet l) {
  require_dim(l.base.size(), dim_);
  for (const auto& p : l.periods) require_dim(p.size(), dim_);
  for (auto x : l.base)
    if (x < 0) throw Error("semilinear base with a negative component");
  for (const auto& p : l.periods)
    for (auto x : p)
      if (x < 0) throw Error("semilinear period with a negative component");
  sets_.push_back(std::move(l));
}

bool member(const Vec& v, const LinearSet& l) {
  require_dim(v.size(), l.base.size());
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    r[i] = v[i] - l.base[i];
    if (r[i] < 0) return false;
  }
  std::vector<Vec> ps;
  for (const auto& p : l.periods)
    if (!is_zero(p)) ps.push_back(p);
  // support[i]: coordinates some period at index >= i can increase
  std::vector<std::vector<char>> support(ps.size() + 1, std::vector<char>(v.size(), 0));
  for (std::size_t i = ps.size(); i-- > 0;)
    for (std::size_t d = 0; d < v.size(); ++d) support[i][d] = support[i + 1][d] || ps[i][d] > 0;
  std::set<std::pair<std::size_t, Vec>> failed;
  std::function<bool(std::size_t, Vec&)> go = [&](std::size_t i, Vec& rest) -> bool {
    if (is_zero(rest)) return true;
    if (i == ps.size()) return false;
    for (std::size_t d = 0; d < rest.size(); ++d)
      if (rest[d] > 0 && !support[i][d]) return false;
    if (failed.count({i, rest})) return false;
    const Vec& p = ps[i];
    std::int64_t kmax = INT64_MAX;
    for (std::size_t d = 0; d < p.size(); ++d)
      if (p[d] > 0) kmax = std::min(kmax, rest[d] / p[d]);
    for (std::int64_t k = kmax; k >= 0; --k) {
      Vec next = rest;
      for (std::size_t d = 0; d < p.size(); ++d) next[d] -= k * p[d];
      if (go(i + 1, next)) return true;
    }
    failed.insert({i, rest});
    return false;
  };
  return go(0, r);
}

bool member(const Vec& v, const SemilinearSet& s) {
  require_dim(v.size(), s.dim());
  return std::any_of(s.sets().begin(), s.sets().end(), [&](const LinearSet& l) { return member(v, l); });
}

bool is_empty(const SemilinearSet& s) { return s.empty(); }

SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b) {
  require_dim(a.dim(), b.dim());
  SemilinearSet r = a;
  for (const auto& l : b.sets()) r.add(l);
  return simplify(r);
}

SemilinearSet sum(const SemilinearSet& a, const SemilinearSet& b) {
  require_dim(a.dim(), b.dim());
  SemilinearSet r(a.dim());
  for (const auto& x : a.sets())
    for (const auto& y : b.sets()) {
      LinearSet l{add(x.base, y.base), x.periods};
      l.periods.insert(l.periods.end(), y.periods.begin(), y.periods.end());
      r.add(std::move(l));
    }
  return simplify(r);
}

SemilinearSet star(const SemilinearSet& a) {
  SemilinearSet r = SemilinearSet::zero(a.dim());
  for (const auto& l : a.sets()) {
    SemilinearSet s(a.dim());
    if (is_zero(l.base)) {
      s.add({l.base, l.periods});
    } else {
      s.add({Vec(a.dim(), 0), {}});
      LinearSet grown{l.base, l.periods};
      grown.periods.push_back(l.base);
      s.add(std::move(grown));
    }
    r = sum(r, s);
  }
  return r;
}

std::vector<Vec> hilbert_basis(const std::vector<Vec>& a, std::size_t n, const std::vector<std::int64_t>& cap) {
  const std::size_t rows = a.size();
  auto image = [&](const Vec& y) {
    Vec r(rows, 0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i] += a[i][j] * y[j];
    return r;
  };
  std::vector<Vec> col(n, Vec(rows));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < rows; ++i) col[j][i] = a[i][j];
  auto dot = [](const Vec& x, const Vec& y) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  auto within_cap = [&](const Vec& y) {
    for (std::size_t j = 0; j < cap.size() && j < n; ++j)
      if (cap[j] >= 0 && y[j] > cap[j]) return false;
    return true;
  };

  std::vector<Vec> basis;
  std::set<Vec> frontier;
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    if (within_cap(e)) frontier.insert(e);
  }
  while (!frontier.empty()) {
    std::vector<std::pair<Vec, Vec>> open;
    for (const auto& y : frontier) {
      Vec ay = image(y);
      if (is_zero(ay))
        basis.push_back(y);
      else
        open.emplace_back(y, std::move(ay));
    }
    std::set<Vec> next;
    for (const auto& [y, ay] : open) {
      for (std::size_t j = 0; j < n; ++j) {
        if (dot(ay, col[j]) >= 0) continue;
        Vec z = y;
        ++z[j];
        if (!within_cap(z)) continue;
        bool dominated = std::any_of(basis.begin(), basis.end(), [&](const Vec& m) { return geq(z, m); });
        if (!dominated) next.insert(std::move(z));
      }
    }
    frontier = std::move(next);
  }
  return basis;
}

namespace {

SemilinearSet intersect_linear(const LinearSet& x, const LinearSet& y, std::size_t dim) {
  const std::size_t n1 = x.periods.size(), n2 = y.periods.size();
  const std::size_t n = n1 + n2 + 1;
  std::vector<Vec> a(dim, Vec(n, 0));
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t i = 0; i < n1; ++i) a[d][i] = x.periods[i][d];
    for (std::size_t j = 0; j < n2; ++j) a[d][n1 + j] = -y.periods[j][d];
    a[d][n - 1] = x.base[d] - y.base[d];
  }
  std::vector<std::int64_t> cap(n, -1);
  cap[n - 1] = 1;
  auto h = hilbert_basis(a, n, cap);
  auto point = [&](const Vec& sol, bool with_base) {
    Vec v = with_base ? x.base : Vec(dim, 0);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t d = 0; d < dim; ++d) v[d] += sol[i] * x.periods[i][d];
    return v;
  };
  std::vector<Vec> periods;
  for (const auto& s : h)
    if (s[n - 1] == 0) periods.push_back(point(s, false));
  SemilinearSet r(dim);
  for (const auto& s : h)
    if (s[n - 1] == 1) r.add({point(s, true), periods});
  return r;
}

}  // namespace

SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b) {
  require_dim(a.dim(), b.dim());
  SemilinearSet r(a.dim());
  for (const auto& x : a.sets())
    for (const auto& y : b.sets()) {
      SemilinearSet part = intersect_linear(x, y, a.dim());
      for (const auto& l : part.sets()) r.add(l);
    }
  return simplify(r);
}

SemilinearSet linear_map(const SemilinearSet& s, const std::vector<Vec>& m) {
  for (const auto& row : m) require_dim(row.size(), s.dim());
  auto apply = [&](const Vec& v) {
    Vec r(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
  };
  SemilinearSet r(m.size());
  for (const auto& l : s.sets()) {
    LinearSet t{apply(l.base), {}};
    for (const auto& p : l.periods) t.periods.push_back(apply(p));
    r.add(std::move(t));
  }
  return simplify(r);
}

namespace {

LinearSet tidy(const LinearSet& l) {
  std::vector<Vec> ps;
  for (const auto& p : l.periods)
    if (!is_zero(p)) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  // Drop periods generated by the others, largest first.
  for (std::size_t i = ps.size(); i-- > 0;) {
    LinearSet others{Vec(l.base.size(), 0), {}};
    for (std::size_t j = 0; j < ps.size(); ++j)
      if (j != i) others.periods.push_back(ps[j]);
    if (!others.periods.empty() && member(ps[i], others)) ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return {l.base, ps};
}

bool contained(const LinearSet& x, const LinearSet& y) {
  if (!member(x.base, y)) return false;
  LinearSet cone{Vec(y.base.size(), 0), y.periods};
  return std::all_of(x.periods.begin(), x.periods.end(), [&](const Vec& p) { return member(p, cone); });
}

}  // namespace

SemilinearSet simplify(const SemilinearSet& s) {
  std::vector<LinearSet> ls;
  for (const auto& l : s.sets()) ls.push_back(tidy(l));
  std::sort(ls.begin(), ls.end(), [](const LinearSet& a, const LinearSet& b) {
    if (a.periods.size() != b.periods.size()) return a.periods.size() > b.periods.size();
    if (a.base != b.base) return a.base < b.base;
    return a.periods < b.periods;
  });
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  std::vector<char> gone(ls.size(), 0);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = 0; j < ls.size() && !gone[i]; ++j) {
      if (i == j || gone[j]) continue;
      if (contained(ls[i], ls[j])) gone[i] = 1;
    }
  }
  std::vector<LinearSet> kept;
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (!gone[i]) kept.push_back(ls[i]);
  // (b, P) and (b+q, P') merge into (b, P') when q is in P' and P' \ {q} is within P.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < kept.size() && !merged; ++i)
      for (std::size_t j = 0; j < kept.size() && !merged; ++j) {
        if (i == j) continue;
        const auto& lo = kept[i];
        const auto& hi = kept[j];
        for (const auto& q : hi.periods) {
          if (add(lo.base, q) != hi.base) continue;
          bool inner = std::all_of(lo.periods.begin(), lo.periods.end(), [&](const Vec& p) {
            return std::find(hi.periods.begin(), hi.periods.end(), p) != hi.periods.end();
          });
          bool outer = std::all_of(hi.periods.begin(), hi.periods.end(), [&](const Vec& p) {
            return p == q || std::find(lo.periods.begin(), lo.periods.end(), p) != lo.periods.end();
          });
          if (inner && outer) {
            kept[i] = LinearSet{lo.base, hi.periods};
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(j));
            merged = true;
            break;
          }
        }
      }
  }
  SemilinearSet r(s.dim());
  std::sort(kept.begin(), kept.end(), [](const LinearSet& a, const LinearSet& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.periods < b.periods;
  });
  for (auto& l : kept) r.add(std::move(l));
  return r;
}

std::optional<std::int64_t> diagonal_nonempty(const SemilinearSet& s) {
  if (s.dim() != 2) throw Error("diagonal_nonempty needs dimension 2, got " + std::to_string(s.dim()));
  auto d = intersect(s, SemilinearSet::linear({0, 0}, {{1, 1}}));
  std::optional<std::int64_t> best;
  for (const auto& l : d.sets())
    if (!best || l.base[0] < *best) best = l.base[0];
  return best;
}

std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

std::string to_string(const SemilinearSet& s) {
  if (s.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < s.sets().size(); ++i) {
    const auto& l = s.sets()[i];
    if (i) out += " | ";
    out += "base " + to_string(l.base) + "; periods {";
    for (std::size_t j = 0; j < l.periods.size(); ++j) out += (j ? "," : "") + to_string(l.periods[j]);
    out += "}";
  }
  return out;
}

}  // namespace msoeq
