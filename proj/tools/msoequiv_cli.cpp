// msoequiv command-line interface.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "msoequiv/compiler.hpp"
#include "msoequiv/decider.hpp"
#include "msoequiv/errors.hpp"
#include "msoequiv/parikh.hpp"
#include "msoequiv/selftest.hpp"

using namespace msoeq;

namespace {

constexpr int kParseFailure = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string show(const Graph& h, const Signature& out) {
  if (out.ranked() && is_tree_graph(h, out)) return to_string(graph_to_tree(h, out));
  if (is_string_graph(h)) {
    auto w = graph_to_string(h);
    return w.empty() ? "ε" : to_string(w);
  }
  return format_graph(h);
}

int check_equiv(const std::string& t1, const std::string& t2, const std::string& domain, bool witness,
                const std::string& budget, bool json) {
  auto m1 = parse_transducer(read_file(t1));
  auto m2 = parse_transducer(read_file(t2));
  Domain d = domain.empty() ? (m1.input.ranked() ? Domain::all_trees(m1.input) : Domain::all_words(m1.input.edge_labels))
                            : load_domain(domain);
  DecideOptions opt;
  opt.budget = Budget::parse(budget, Budget::from_env());
  opt.witness = witness;
  Verdict v = decide(m1, m2, d, opt);
  std::cout << (json ? verdict_to_json(v) : format_verdict(v)) << "\n";
  return v.exit_code();
}

int run(const std::string& path, const std::string& input, bool flat) {
  auto m = parse_transducer(read_file(path));
  Graph g;
  if (m.input.ranked())
    g = tree_to_graph(parse_term(input), m.input);
  else if (m.input.is_string_signature())
    g = string_to_graph(parse_word(input, m.input.edge_labels), m.input.edge_labels);
  else
    g = parse_graph(read_file(input));
  EvalOptions opt;
  opt.param_node_cap = Budget::from_env().oracle_cap;
  auto t = flat && m.output.ranked() ? flatten(m) : Transduction::primitive(m);
  auto outs = t.evaluate(g, opt);
  for (const auto& h : outs) std::cout << show(h, t.output()) << "\n";
  if (outs.empty()) std::cout << "UNDEFINED\n";
  return 0;
}

int compile(const std::string& formula, const std::string& sigma, const std::string& gamma, bool dump_states) {
  FormulaFile f;
  if (std::filesystem::exists(formula)) {
    f = parse_formula_file(read_file(formula));
  } else {
    f.sig = parse_signature(sigma, gamma);
    f.formula = parse_formula(formula, f.sig, {});
  }
  CompileOptions opt;
  opt.state_cap = Budget::from_env().state_cap;
  Compiler c(InputClass::of(f.sig), opt);
  auto aut = f.free.empty() ? c.compile(f.formula) : c.compile(f.formula, f.free);
  std::cout << summary(aut) << "\n";
  if (dump_states) std::cout << dump(aut);
  return 0;
}

int parikh(const std::string& path) {
  auto ends_with = [&](const std::string& ext) {
    return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  };
  Cfg g;
  if (ends_with(".rtg"))
    g = rtg_to_cfg(parse_rtg(read_file(path)));
  else if (ends_with(".re"))
    g = load_domain(path).cfg();
  else
    g = parse_cfg(read_file(path));
  std::cout << to_string(cfg_parikh(g)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivalence of deterministic MSO string and tree transducers"};
  app.require_subcommand(1);

  auto* eq = app.add_subcommand("check-equiv", "Decide whether two transducers agree on a domain");
  std::string t1, t2, domain, budget;
  bool witness = false, json = false;
  eq->add_option("t1", t1, "First transducer (.mso-t)")->required();
  eq->add_option("t2", t2, "Second transducer (.mso-t)")->required();
  eq->add_option("domain", domain, "Domain (.re, .cfg or .rtg); all inputs when omitted");
  eq->add_flag("--witness", witness, "Search for a concrete counterexample on output mismatch");
  eq->add_option("--budget", budget, "Resource caps, e.g. states=100000,seconds=60");
  eq->add_flag("--json", json, "Print the verdict as JSON");

  auto* rn = app.add_subcommand("run", "Evaluate a transducer on one input");
  std::string rt, input;
  bool flat = false;
  rn->add_option("t", rt, "Transducer (.mso-t)")->required();
  rn->add_option("input", input, "Word, term, or .gr file")->required();
  rn->add_flag("--flatten", flat, "Print tree outputs as pre-order strings");

  auto* cp = app.add_subcommand("compile", "Compile a formula and summarize the automaton");
  std::string formula, sigma = "#", gamma = "a b";
  bool dump_states = false;
  cp->add_option("formula", formula, "Formula file (.mso-f) or a closed formula")->required();
  cp->add_option("--sigma", sigma, "Node labels for an inline formula, e.g. \"f/2 a/0\"");
  cp->add_option("--gamma", gamma, "Edge labels for an inline formula");
  cp->add_flag("--dump", dump_states, "Also print every transition");

  auto* pk = app.add_subcommand("parikh", "Print the Parikh image of a grammar");
  std::string grammar;
  pk->add_option("grammar", grammar, "Grammar (.cfg, .rtg or .re)")->required();

  auto* st = app.add_subcommand("selftest", "Run the randomized oracle checks");
  std::uint64_t seed = 1;
  st->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kParseFailure;
  }

  try {
    if (*eq) return check_equiv(t1, t2, domain, witness, budget, json);
    if (*rn) return run(rt, input, flat);
    if (*cp) return compile(formula, sigma, gamma, dump_states);
    if (*pk) return parikh(grammar);
    if (*st) {
      auto r = selftest(seed, std::cerr);
      std::cout << "selftest seed=" << seed << " checks=" << r.checks << " failures=" << r.failures << "\n";
      return r.failures ? 1 : 0;
    }
  } catch (const ResourceExceeded& e) {
    std::cerr << e.what() << "\n";
    std::cout << "RESOURCE-EXCEEDED stage=" << e.stage() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseFailure;
  }
  return 0;
}
