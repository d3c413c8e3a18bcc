#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "omegatrans/composition.hpp"
#include "omegatrans/eval.hpp"
#include "omegatrans/generate.hpp"
#include "omegatrans/io.hpp"
#include "omegatrans/oneway2rev.hpp"
#include "omegatrans/pipeline.hpp"
#include "omegatrans/sst2rev.hpp"
#include "omegatrans/twoway2sst.hpp"

namespace py = pybind11;
using namespace omegatrans;

namespace {

struct Outcome {
  std::string verdict;
  std::optional<std::string> output;
  std::string output_prefix;
  bool in_domain = false;
  bool automaton_accepts = false;
  bool prefix_only = false;
  std::size_t steps = 0;
  std::string text;
};

Outcome wrap(const RunOutcome& r, const Alphabet& out) {
  Outcome o;
  o.verdict = verdict_name(r.verdict);
  if (r.output) o.output = format_lasso(*r.output, out);
  o.output_prefix = format_word(r.output_prefix, out);
  o.in_domain = r.in_domain();
  o.automaton_accepts = r.automaton_accepts();
  o.prefix_only = r.prefix_only;
  o.steps = r.steps;
  o.text = describe(r, out);
  return o;
}

EvalBudget budget(std::optional<std::size_t> steps, std::optional<std::size_t> output) {
  auto b = EvalBudget::from_env();
  if (steps) b.max_steps = *steps;
  if (output) b.max_output = *output;
  return b;
}

py::object to_python(Machine m) {
  if (auto* t = std::get_if<Transducer>(&m)) return py::cast(std::move(*t));
  return py::cast(std::get<CopylessSst>(std::move(m)));
}

MachineRef ref(const py::object& m) {
  if (py::isinstance<Transducer>(m)) return &m.cast<const Transducer&>();
  return &m.cast<const CopylessSst&>();
}

const Alphabet& input_of(const py::object& m) {
  if (py::isinstance<Transducer>(m)) return m.cast<const Transducer&>().input_alphabet();
  return m.cast<const CopylessSst&>().input_alphabet();
}

const Alphabet& output_of(const py::object& m) {
  if (py::isinstance<Transducer>(m)) return m.cast<const Transducer&>().output_alphabet();
  return m.cast<const CopylessSst&>().output_alphabet();
}

BuchiMarking marking(const Transducer& m, const py::object& text) {
  if (py::isinstance<py::str>(text)) {
    const auto s = text.cast<std::string>();
    if (s == "all") return marking_all(m);
    if (s == "none") return marking_none(m);
    if (s.rfind("color", 0) == 0) return marking_by_color(m, static_cast<Color>(std::stoul(s.substr(5))));
    return marking_from_list(m, s);
  }
  return text.cast<BuchiMarking>();
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Reversible two-way transducers over infinite words";

  static py::exception<Error> error(mod, "Error", PyExc_RuntimeError);
  static py::exception<ParseError> parse_error(mod, "ParseError", error.ptr());
  static py::exception<NotReversible> not_reversible(mod, "NotReversible", error.ptr());
  static py::exception<NotDeterministic> not_deterministic(mod, "NotDeterministic", error.ptr());
  static py::exception<AlphabetMismatch> mismatch(mod, "AlphabetMismatch", error.ptr());
  static py::exception<InvalidMachine> invalid(mod, "InvalidMachine", error.ptr());
  static py::exception<InvalidSst> invalid_sst(mod, "InvalidSst", error.ptr());
  static py::exception<StateExplosion> explosion(mod, "StateExplosion", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const NotReversible& e) {
      py::set_error(not_reversible, e.what());
    } catch (const NotDeterministic& e) {
      py::set_error(not_deterministic, e.what());
    } catch (const AlphabetMismatch& e) {
      py::set_error(mismatch, e.what());
    } catch (const InvalidMachine& e) {
      py::set_error(invalid, e.what());
    } catch (const InvalidSst& e) {
      py::set_error(invalid_sst, e.what());
    } catch (const StateExplosion& e) {
      py::set_error(explosion, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Outcome>(mod, "Outcome")
      .def_readonly("verdict", &Outcome::verdict)
      .def_readonly("output", &Outcome::output)
      .def_readonly("output_prefix", &Outcome::output_prefix)
      .def_readonly("in_domain", &Outcome::in_domain)
      .def_readonly("automaton_accepts", &Outcome::automaton_accepts)
      .def_readonly("prefix_only", &Outcome::prefix_only)
      .def_readonly("steps", &Outcome::steps)
      .def("__str__", [](const Outcome& o) { return o.text; })
      .def("__repr__", [](const Outcome& o) { return "<Outcome " + o.text + ">"; });

  py::class_<Transducer>(mod, "Transducer")
      .def_property_readonly("num_states", &Transducer::num_states)
      .def_property_readonly("num_transitions", [](const Transducer& m) { return m.transitions().size(); })
      .def_property_readonly("colorings", &Transducer::colorings)
      .def_property_readonly("input_alphabet", [](const Transducer& m) { return m.input_alphabet().letters(); })
      .def_property_readonly("output_alphabet", [](const Transducer& m) { return m.output_alphabet().letters(); })
      .def_property_readonly("is_one_way", &Transducer::is_one_way)
      .def("is_deterministic", &validate_deterministic)
      .def("is_reversible", &validate_reversible)
      .def("to_json", [](const Transducer& m) { return to_json(m); })
      .def("to_dot", [](const Transducer& m) { return to_dot(m); })
      .def("__repr__", [](const Transducer& m) {
        return "<Transducer " + std::to_string(m.num_states()) + " states>";
      });

  py::class_<CopylessSst>(mod, "Sst")
      .def_property_readonly("num_states", &CopylessSst::num_states)
      .def_property_readonly("registers", &CopylessSst::registers)
      .def_property_readonly("colorings", &CopylessSst::colorings)
      .def_property_readonly("input_alphabet", [](const CopylessSst& m) { return m.input_alphabet().letters(); })
      .def_property_readonly("output_alphabet", [](const CopylessSst& m) { return m.output_alphabet().letters(); })
      .def("is_copyless", [](const CopylessSst& m) { return validate_sst(m).empty(); })
      .def("to_json", [](const CopylessSst& m) { return to_json(m); })
      .def("to_dot", [](const CopylessSst& m) { return to_dot(m); })
      .def("__repr__", [](const CopylessSst& m) {
        return "<Sst " + std::to_string(m.num_states()) + " states, " +
               std::to_string(m.num_registers()) + " registers>";
      });

  mod.def("load", [](const std::string& path) { return to_python(load_machine(path)); },
          py::arg("path"));
  mod.def("parse", [](const std::string& text) { return to_python(parse_machine(text)); },
          py::arg("text"));

  mod.def(
      "evaluate",
      [](const py::object& m, const std::string& lasso, std::optional<std::size_t> max_steps,
         std::optional<std::size_t> max_output) {
        const auto w = parse_lasso(lasso, input_of(m));
        return wrap(evaluate(ref(m), w, budget(max_steps, max_output)), output_of(m));
      },
      py::arg("machine"), py::arg("lasso"), py::arg("max_steps") = py::none(),
      py::arg("max_output") = py::none());

  mod.def(
      "equiv",
      [](const py::object& a, const py::object& b, std::optional<std::pair<std::size_t, std::size_t>> exhaustive,
         std::optional<std::pair<std::size_t, std::uint64_t>> random, std::size_t max_prefix,
         std::size_t max_period) {
        if (input_of(a) != input_of(b) || output_of(a) != output_of(b))
          throw AlphabetMismatch("machines use different alphabets");
        const auto k = input_of(a).size();
        std::vector<Lasso> ls;
        if (exhaustive)
          ls = canonical_lassos(k, exhaustive->first, exhaustive->second);
        else if (random)
          ls = random_lassos(random->first, random->second, k, max_prefix, max_period);
        else
          throw py::value_error("pass exhaustive=(U, V) or random=(COUNT, SEED)");
        const auto rep = equiv_on_lassos(ref(a), ref(b), ls);
        py::list bad;
        for (const auto& d : rep.disagreements)
          bad.append(py::make_tuple(format_lasso(d.input, input_of(a)), d.reason));
        py::dict r;
        r["total"] = rep.total;
        r["agreed"] = rep.agreed;
        r["inconclusive"] = rep.inconclusive;
        r["disagreements"] = bad;
        return r;
      },
      py::arg("a"), py::arg("b"), py::arg("exhaustive") = py::none(), py::arg("random") = py::none(),
      py::arg("max_prefix") = 4, py::arg("max_period") = 4);

  mod.def("compose", &compose, py::arg("first"), py::arg("second"));
  mod.def("prune", &prune_unreachable, py::arg("machine"));
  mod.def("one_way_to_reversible", &one_way_to_reversible, py::arg("machine"));
  mod.def(
      "two_way_to_sst",
      [](const Transducer& m, std::size_t max_states) {
        TwoWayToSstOptions o;
        o.max_states = max_states;
        return two_way_to_sst(m, o);
      },
      py::arg("machine"), py::arg("max_states") = TwoWayToSstOptions{}.max_states);
  mod.def("sst_to_reversible", &sst_to_reversible, py::arg("sst"));
  mod.def(
      "dbt_to_rbt",
      [](const Transducer& m, std::size_t max_states) {
        TwoWayToSstOptions o;
        o.max_states = max_states;
        return dbt_to_rbt(m, o);
      },
      py::arg("machine"), py::arg("max_states") = TwoWayToSstOptions{}.max_states);
  mod.def("drop_acceptance", &drop_acceptance, py::arg("machine"));
  mod.def(
      "buchi_as_parity",
      [](const Transducer& m, const py::object& text) { return buchi_as_parity(m, marking(m, text)); },
      py::arg("machine"), py::arg("marking") = "color0");
  mod.def(
      "buchi_to_noacc",
      [](const Transducer& m, const py::object& text) { return buchi_to_noacc(m, marking(m, text)); },
      py::arg("machine"), py::arg("marking") = "color0");

  mod.def(
      "generate",
      [](const std::string& kind, std::uint64_t seed, std::size_t n, std::size_t k, Color l,
         std::size_t letters, std::size_t registers) -> py::object {
        GenOptions o;
        o.states = n;
        o.colorings = k;
        o.colors = l;
        o.input_letters = letters;
        o.registers = registers;
        if (kind == "1dpt") return py::cast(random_one_way(seed, o));
        if (kind == "2dpt") return py::cast(random_two_way(seed, o));
        if (kind == "cpsst") return py::cast(random_sst(seed, o));
        throw py::value_error("kind must be 1dpt, 2dpt or cpsst");
      },
      py::arg("kind") = "2dpt", py::arg("seed") = 0, py::arg("n") = 3, py::arg("k") = 1,
      py::arg("l") = 2, py::arg("letters") = 2, py::arg("registers") = 2);

  mod.def(
      "canonical_lassos",
      [](const std::vector<std::string>& letters, std::size_t max_prefix, std::size_t max_period) {
        const Alphabet a(letters);
        std::vector<std::string> out;
        for (const auto& w : canonical_lassos(a.size(), max_prefix, max_period))
          out.push_back(format_lasso(w, a));
        return out;
      },
      py::arg("letters"), py::arg("max_prefix"), py::arg("max_period"));
}
