// Python bindings for msoequiv.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "msoequiv/compiler.hpp"
#include "msoequiv/decider.hpp"
#include "msoequiv/errors.hpp"
#include "msoequiv/parikh.hpp"
#include "msoequiv/selftest.hpp"

namespace py = pybind11;
using namespace msoeq;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string word_text(const Word& w) { return w.empty() ? "ε" : to_string(w); }

std::string show(const Graph& h, const Signature& out) {
  if (out.ranked() && is_tree_graph(h, out)) return to_string(graph_to_tree(h, out));
  if (is_string_graph(h)) return word_text(graph_to_string(h));
  return format_graph(h);
}

Graph input_graph(const MsoTransducer& m, const std::string& input) {
  if (m.input.ranked()) return tree_to_graph(parse_term(input), m.input);
  return string_to_graph(parse_word(input, m.input.edge_labels), m.input.edge_labels);
}

std::vector<std::string> run(const MsoTransducer& m, const std::string& input, bool flat, std::size_t oracle_cap) {
  EvalOptions opt;
  opt.param_node_cap = oracle_cap;
  auto t = flat && m.output.ranked() ? flatten(m) : Transduction::primitive(m);
  std::vector<std::string> out;
  for (const auto& h : t.evaluate(input_graph(m, input), opt)) out.push_back(show(h, t.output()));
  return out;
}

Budget to_budget(const py::object& b) {
  if (b.is_none()) return Budget::from_env();
  if (py::isinstance<Budget>(b)) return b.cast<Budget>();
  if (py::isinstance<py::int_>(b)) return Budget::parse(std::to_string(b.cast<std::size_t>()), Budget::from_env());
  return Budget::parse(b.cast<std::string>(), Budget::from_env());
}

const char* kind_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Equivalent:
      return "equivalent";
    case Verdict::Kind::OutputMismatch:
      return "output-mismatch";
    case Verdict::Kind::DomainMismatch:
      return "domain-mismatch";
    default:
      return "resource-exceeded";
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equivalence of deterministic MSO string and tree transducers";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<SignatureError>(m, "SignatureError", error);
  py::register_exception<ResourceExceeded>(m, "ResourceExceeded", error);

  py::class_<MsoTransducer>(m, "Transducer")
      .def_static("parse", &parse_transducer, py::arg("text"))
      .def_static(
          "load", [](const std::string& path) { return parse_transducer(read_file(path)); }, py::arg("path"))
      .def_property_readonly("kind", [](const MsoTransducer& t) { return to_string(kind_of(t)); })
      .def_property_readonly("copies", [](const MsoTransducer& t) { return t.copies; })
      .def(
          "run",
          [](const MsoTransducer& t, const std::string& input, bool flat, std::size_t cap) {
            return run(t, input, flat, cap);
          },
          py::arg("input"), py::arg("flatten") = false, py::arg("oracle_cap") = Budget{}.oracle_cap,
          "Outputs on a word or term; empty when undefined.")
      .def("__str__", &format_transducer);

  py::class_<Domain>(m, "Domain")
      .def_static("regular", &Domain::regular, py::arg("regex"))
      .def_static(
          "context_free", [](const std::string& text) { return parse_domain(text, Domain::Kind::ContextFree); },
          py::arg("text"))
      .def_static(
          "regular_tree", [](const std::string& text) { return parse_domain(text, Domain::Kind::RegularTree); },
          py::arg("text"))
      .def_static("load", &load_domain, py::arg("path"))
      .def_property_readonly("is_tree", &Domain::is_tree)
      .def_property_readonly("symbols", &Domain::symbols)
      .def(
          "contains",
          [](const Domain& d, const std::string& s) {
            return d.is_tree() ? d.contains(parse_term(s)) : d.contains(parse_word(s, d.symbols()));
          },
          py::arg("member"))
      .def(
          "members",
          [](const Domain& d, std::size_t max_size) {
            std::vector<std::string> out;
            if (d.is_tree())
              for (const auto& t : d.trees(max_size)) out.push_back(to_string(t));
            else
              for (const auto& w : d.words(max_size)) out.push_back(word_text(w));
            return out;
          },
          py::arg("max_size"), "Members up to the given size, smallest first.")
      .def("__str__", &Domain::describe);

  py::class_<Budget>(m, "Budget")
      .def(py::init<>())
      .def_static("parse", py::overload_cast<const std::string&>(&Budget::parse), py::arg("spec"))
      .def_static("from_env", py::overload_cast<>(&Budget::from_env))
      .def_readwrite("state_cap", &Budget::state_cap)
      .def_readwrite("oracle_cap", &Budget::oracle_cap)
      .def_readwrite("witness_bound", &Budget::witness_bound)
      .def_readwrite("grammar_cap", &Budget::grammar_cap)
      .def_readwrite("seconds", &Budget::seconds);

  py::class_<Verdict>(m, "Verdict")
      .def_property_readonly("kind", [](const Verdict& v) { return kind_name(v.kind); })
      .def_property_readonly("equivalent", [](const Verdict& v) { return v.kind == Verdict::Kind::Equivalent; })
      .def_readonly("a", &Verdict::a)
      .def_readonly("b", &Verdict::b)
      .def_readonly("n", &Verdict::n)
      .def_readonly("witness", &Verdict::witness)
      .def_readonly("stage", &Verdict::stage)
      .def_property_readonly("exit_code", &Verdict::exit_code)
      .def("to_json", &verdict_to_json)
      .def_static("from_json", &verdict_from_json, py::arg("text"))
      .def("__eq__", [](const Verdict& x, const Verdict& y) { return x == y; })
      .def("__str__", &format_verdict)
      .def("__repr__", [](const Verdict& v) { return "<Verdict " + format_verdict(v) + ">"; });

  m.def(
      "decide",
      [](const MsoTransducer& t1, const MsoTransducer& t2, const std::optional<Domain>& d, bool witness,
         const py::object& budget) {
        DecideOptions opt;
        opt.budget = to_budget(budget);
        opt.witness = witness;
        Domain dom = d ? *d
                       : (t1.input.ranked() ? Domain::all_trees(t1.input) : Domain::all_words(t1.input.edge_labels));
        py::gil_scoped_release release;
        return decide(t1, t2, dom, opt);
      },
      py::arg("t1"), py::arg("t2"), py::arg("domain") = py::none(), py::arg("witness") = false,
      py::arg("budget") = py::none(),
      "Decide equivalence on the domain (all inputs when omitted). The budget is a Budget, a state cap, "
      "or a spec string such as 'states=1000,seconds=5'.");

  m.def(
      "find_counterexample",
      [](const MsoTransducer& t1, const MsoTransducer& t2, const Domain& d,
         std::size_t bound) -> std::optional<std::string> {
        auto w = find_counterexample(t1, t2, d, bound);
        if (!w) return std::nullopt;
        return w->text;
      },
      py::arg("t1"), py::arg("t2"), py::arg("domain"), py::arg("bound") = Budget{}.witness_bound,
      "Smallest domain member up to `bound` on which the transducers differ.");

  m.def(
      "compile_summary",
      [](const std::string& formula, const std::string& sigma, const std::string& gamma) {
        Signature sig = parse_signature(sigma, gamma);
        Compiler c(InputClass::of(sig), CompileOptions{});
        return summary(c.compile(parse_formula(formula, sig, {})));
      },
      py::arg("formula"), py::arg("sigma") = "#", py::arg("gamma") = "a b");

  m.def(
      "parikh",
      [](const std::string& text, const std::string& kind) {
        Cfg g;
        if (kind == "rtg")
          g = rtg_to_cfg(parse_rtg(text));
        else if (kind == "re")
          g = Domain::regular(text).cfg();
        else if (kind == "cfg")
          g = parse_cfg(text);
        else
          throw ParseError("unknown grammar kind " + kind);
        return to_string(cfg_parikh(g));
      },
      py::arg("text"), py::arg("kind") = "cfg", "Parikh image of a grammar as text.");

  m.def(
      "selftest",
      [](std::uint64_t seed) {
        std::ostringstream log;
        auto r = selftest(seed, log);
        return py::make_tuple(r.checks, r.failures, log.str());
      },
      py::arg("seed") = 1, "Returns (checks, failures, log).");
}
