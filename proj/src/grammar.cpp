#include "msoequiv/grammar.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "msoequiv/errors.hpp"

namespace msoeq {

namespace {

const std::string kEpsilon = "ε";

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_on(const std::string& s, char c) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == c) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

struct RawGrammar {
  std::map<std::string, std::string> headers;
  // (lhs, alternative text, line)
  std::vector<std::tuple<std::string, std::string, std::size_t>> alts;
  std::vector<std::string> lhs_order;
};

RawGrammar read_raw(const std::string& text, const std::set<std::string>& header_keys) {
  RawGrammar r;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto c = line.find(';'); c != std::string::npos) line = line.substr(0, c);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto arrow = t.find("->");
    if (arrow == std::string::npos) {
      auto colon = t.find(':');
      if (colon == std::string::npos) throw ParseError("expected 'N -> ...' or a header", lineno, 1);
      std::string key = trim(t.substr(0, colon));
      if (!header_keys.count(key)) throw ParseError("unknown header " + key, lineno, 1);
      r.headers[key] = trim(t.substr(colon + 1));
      continue;
    }
    std::string lhs = trim(t.substr(0, arrow));
    if (lhs.empty() || split_ws(lhs).size() != 1) throw ParseError("bad left-hand side", lineno, 1);
    if (std::find(r.lhs_order.begin(), r.lhs_order.end(), lhs) == r.lhs_order.end()) r.lhs_order.push_back(lhs);
    for (const auto& alt : split_on(t.substr(arrow + 2), '|')) r.alts.emplace_back(lhs, trim(alt), lineno);
  }
  return r;
}

}  // namespace

bool Cfg::is_nonterminal(const std::string& s) const {
  return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
}

Cfg parse_cfg(const std::string& text) {
  RawGrammar r = read_raw(text, {"start", "terminals"});
  Cfg g;
  g.nonterminals = r.lhs_order;
  if (r.headers.count("start")) {
    g.start = r.headers["start"];
  } else if (!g.nonterminals.empty()) {
    g.start = g.nonterminals.front();
  } else {
    throw ParseError("grammar has no start symbol");
  }
  if (!g.is_nonterminal(g.start)) g.nonterminals.insert(g.nonterminals.begin(), g.start);
  g.terminals = split_ws(r.headers["terminals"]);
  for (const auto& [lhs, alt, line] : r.alts) {
    Cfg::Production p{lhs, {}};
    for (const auto& s : split_ws(alt)) {
      if (s == kEpsilon) continue;
      if (s.find_first_of("()|,") != std::string::npos)
        throw ParseError("symbol '" + s + "' contains a reserved character", line, 1);
      p.rhs.push_back(s);
      if (!g.is_nonterminal(s) && std::find(g.terminals.begin(), g.terminals.end(), s) == g.terminals.end())
        g.terminals.push_back(s);
    }
    g.productions.push_back(std::move(p));
  }
  return g;
}

std::string format_cfg(const Cfg& g) {
  std::ostringstream os;
  os << "start: " << g.start << "\n";
  if (!g.terminals.empty()) {
    os << "terminals:";
    for (const auto& t : g.terminals) os << ' ' << t;
    os << "\n";
  }
  for (const auto& n : g.nonterminals) {
    std::vector<std::string> alts;
    for (const auto& p : g.productions) {
      if (p.lhs != n) continue;
      std::string a;
      for (const auto& s : p.rhs) a += (a.empty() ? "" : " ") + s;
      alts.push_back(a.empty() ? kEpsilon : a);
    }
    if (alts.empty()) continue;
    os << n << " ->";
    for (std::size_t i = 0; i < alts.size(); ++i) os << (i ? " | " : " ") << alts[i];
    os << "\n";
  }
  return os.str();
}

Rtg parse_rtg(const std::string& text) {
  RawGrammar r = read_raw(text, {"start", "sigma"});
  Rtg g;
  g.nonterminals = r.lhs_order;
  if (r.headers.count("start")) {
    g.start = r.headers["start"];
  } else if (!g.nonterminals.empty()) {
    g.start = g.nonterminals.front();
  } else {
    throw ParseError("grammar has no start symbol");
  }
  if (std::find(g.nonterminals.begin(), g.nonterminals.end(), g.start) == g.nonterminals.end())
    g.nonterminals.insert(g.nonterminals.begin(), g.start);
  std::set<std::string> nts(g.nonterminals.begin(), g.nonterminals.end());
  std::map<std::string, int> ranks;
  bool declared = r.headers.count("sigma") > 0;
  if (declared) {
    for (const auto& s : split_ws(r.headers["sigma"])) {
      auto slash = s.rfind('/');
      if (slash == std::string::npos) throw ParseError("sigma entries look like f/2: " + s);
      try {
        ranks[s.substr(0, slash)] = std::stoi(s.substr(slash + 1));
      } catch (...) {
        throw ParseError("bad rank in " + s);
      }
    }
  }
  for (const auto& [lhs, alt, line] : r.alts) {
    Term t;
    try {
      t = parse_term(alt);
    } catch (const Error& e) {
      throw ParseError(std::string("bad tree production: ") + e.what(), line, 1);
    }
    if (nts.count(t.label)) throw ParseError("label " + t.label + " is also a nonterminal", line, 1);
    Rtg::Production p{lhs, t.label, {}};
    for (const auto& k : t.children) {
      if (!k.children.empty() || !nts.count(k.label))
        throw ParseError("arguments of " + t.label + " must be nonterminals", line, 1);
      p.kids.push_back(k.label);
    }
    int r_here = static_cast<int>(p.kids.size());
    auto it = ranks.find(p.label);
    if (it == ranks.end()) {
      if (declared) throw ParseError("label " + p.label + " not declared in sigma", line, 1);
      ranks[p.label] = r_here;
    } else if (it->second != r_here) {
      throw ParseError("rank mismatch for " + p.label, line, 1);
    }
    g.productions.push_back(std::move(p));
  }
  if (ranks.empty()) throw ParseError("tree grammar has no labels");
  g.sig = Signature::trees(ranks);
  return g;
}

std::string format_rtg(const Rtg& g) {
  std::ostringstream os;
  os << "start: " << g.start << "\nsigma:";
  for (const auto& l : g.sig.node_labels) os << ' ' << l << '/' << g.sig.rank(l);
  os << "\n";
  for (const auto& n : g.nonterminals) {
    std::vector<std::string> alts;
    for (const auto& p : g.productions) {
      if (p.lhs != n) continue;
      std::string a = p.label;
      if (!p.kids.empty()) {
        a += "(";
        for (std::size_t i = 0; i < p.kids.size(); ++i) a += (i ? "," : "") + p.kids[i];
        a += ")";
      }
      alts.push_back(a);
    }
    if (alts.empty()) continue;
    os << n << " ->";
    for (std::size_t i = 0; i < alts.size(); ++i) os << (i ? " | " : " ") << alts[i];
    os << "\n";
  }
  return os.str();
}

namespace {

template <class P, class Kids>
std::pair<std::set<std::string>, std::set<std::string>> useful(const std::string& start, const std::vector<P>& ps,
                                                               Kids kids_of) {
  std::set<std::string> productive;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : ps) {
      if (productive.count(p.lhs)) continue;
      bool ok = true;
      for (const auto& s : kids_of(p))
        if (!productive.count(s)) ok = false;
      if (ok) changed = productive.insert(p.lhs).second || changed;
    }
  }
  std::set<std::string> reachable;
  if (productive.count(start)) {
    std::vector<std::string> todo = {start};
    reachable.insert(start);
    while (!todo.empty()) {
      std::string n = todo.back();
      todo.pop_back();
      for (const auto& p : ps) {
        if (p.lhs != n) continue;
        auto ks = kids_of(p);
        if (!std::all_of(ks.begin(), ks.end(), [&](const std::string& s) { return productive.count(s) > 0; }))
          continue;
        for (const auto& s : ks)
          if (reachable.insert(s).second) todo.push_back(s);
      }
    }
  }
  return {productive, reachable};
}

}  // namespace

Cfg reduce(const Cfg& g) {
  auto kids = [&](const Cfg::Production& p) {
    std::vector<std::string> out;
    for (const auto& s : p.rhs)
      if (g.is_nonterminal(s)) out.push_back(s);
    return out;
  };
  auto [productive, reachable] = useful(g.start, g.productions, kids);
  Cfg r;
  r.start = g.start;
  r.terminals = g.terminals;
  r.nonterminals.push_back(g.start);
  for (const auto& n : g.nonterminals)
    if (n != g.start && reachable.count(n)) r.nonterminals.push_back(n);
  for (const auto& p : g.productions) {
    if (!reachable.count(p.lhs)) continue;
    auto ks = kids(p);
    if (std::all_of(ks.begin(), ks.end(), [&](const std::string& s) { return reachable.count(s) > 0; }))
      r.productions.push_back(p);
  }
  return r;
}

Rtg reduce(const Rtg& g) {
  auto kids = [](const Rtg::Production& p) { return p.kids; };
  auto [productive, reachable] = useful(g.start, g.productions, kids);
  Rtg r;
  r.start = g.start;
  r.sig = g.sig;
  r.nonterminals.push_back(g.start);
  for (const auto& n : g.nonterminals)
    if (n != g.start && reachable.count(n)) r.nonterminals.push_back(n);
  for (const auto& p : g.productions) {
    if (!reachable.count(p.lhs)) continue;
    if (std::all_of(p.kids.begin(), p.kids.end(), [&](const std::string& s) { return reachable.count(s) > 0; }))
      r.productions.push_back(p);
  }
  return r;
}

Cfg rtg_to_cfg(const Rtg& t) {
  Cfg g;
  g.start = t.start;
  g.nonterminals = t.nonterminals;
  g.terminals = t.sig.node_labels;
  for (const auto& p : t.productions) {
    Cfg::Production q{p.lhs, {p.label}};
    q.rhs.insert(q.rhs.end(), p.kids.begin(), p.kids.end());
    g.productions.push_back(std::move(q));
  }
  return g;
}

bool cfg_accepts(const Cfg& g, const Word& w) {
  const std::size_t n = w.size();
  std::map<std::string, std::vector<std::vector<char>>> span;
  for (const auto& a : g.nonterminals) span[a].assign(n + 1, std::vector<char>(n + 1, 0));
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      auto& target = span[p.lhs];
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<char> cur(n + 1, 0);
        cur[i] = 1;
        for (const auto& s : p.rhs) {
          std::vector<char> next(n + 1, 0);
          bool nt = g.is_nonterminal(s);
          for (std::size_t q = 0; q <= n; ++q) {
            if (!cur[q]) continue;
            if (nt) {
              const auto& row = span[s][q];
              for (std::size_t j = q; j <= n; ++j)
                if (row[j]) next[j] = 1;
            } else if (q < n && w[q] == s) {
              next[q + 1] = 1;
            }
          }
          cur = std::move(next);
        }
        for (std::size_t j = i; j <= n; ++j)
          if (cur[j] && !target[i][j]) {
            target[i][j] = 1;
            changed = true;
          }
      }
    }
  }
  return span.count(g.start) && span[g.start][0][n];
}

bool rtg_accepts(const Rtg& g, const Term& t) {
  std::function<std::set<std::string>(const Term&)> go = [&](const Term& n) {
    std::vector<std::set<std::string>> kids;
    for (const auto& c : n.children) kids.push_back(go(c));
    std::set<std::string> out;
    for (const auto& p : g.productions) {
      if (p.label != n.label || p.kids.size() != kids.size()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < kids.size() && ok; ++i) ok = kids[i].count(p.kids[i]) > 0;
      if (ok) out.insert(p.lhs);
    }
    return out;
  };
  return go(t).count(g.start) > 0;
}

std::vector<Word> cfg_words(const Cfg& g, std::size_t max_len) {
  std::map<std::string, std::set<Word>> lang;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      std::vector<Word> made;
      Word prefix;
      std::function<void(std::size_t)> build = [&](std::size_t i) {
        if (prefix.size() > max_len) return;
        if (i == p.rhs.size()) {
          made.push_back(prefix);
          return;
        }
        const auto& s = p.rhs[i];
        if (!g.is_nonterminal(s)) {
          prefix.push_back(s);
          build(i + 1);
          prefix.pop_back();
          return;
        }
        const auto& known = lang[s];
        for (const auto& w : known) {
          if (prefix.size() + w.size() > max_len) continue;
          prefix.insert(prefix.end(), w.begin(), w.end());
          build(i + 1);
          prefix.resize(prefix.size() - w.size());
        }
      };
      build(0);
      auto& target = lang[p.lhs];
      for (auto& w : made) changed = target.insert(std::move(w)).second || changed;
    }
  }
  std::vector<Word> out(lang[g.start].begin(), lang[g.start].end());
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<Term> rtg_trees(const Rtg& g, std::size_t max_nodes) {
  // lang[N][s]: trees of size s derivable from N
  std::map<std::string, std::vector<std::vector<Term>>> lang;
  for (const auto& n : g.nonterminals) lang[n].assign(max_nodes + 1, {});
  for (std::size_t size = 1; size <= max_nodes; ++size) {
    for (const auto& p : g.productions) {
      std::vector<Term> kids;
      std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t left) {
        if (i == p.kids.size()) {
          if (left == 0) lang[p.lhs][size].push_back(Term{p.label, kids});
          return;
        }
        std::size_t rest = p.kids.size() - i - 1;
        for (std::size_t s = 1; s + rest <= left; ++s)
          for (const auto& k : lang[p.kids[i]][s]) {
            kids.push_back(k);
            go(i + 1, left - s);
            kids.pop_back();
          }
      };
      go(0, size - 1);
    }
    for (auto& [n, bysize] : lang) {
      auto& v = bysize[size];
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }
  std::vector<Term> out;
  for (std::size_t s = 1; s <= max_nodes; ++s)
    for (const auto& t : lang[g.start][s]) out.push_back(t);
  return out;
}

}  // namespace msoeq
