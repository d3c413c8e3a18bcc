#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "omegatrans/composition.hpp"
#include "omegatrans/eval.hpp"
#include "omegatrans/generate.hpp"
#include "omegatrans/io.hpp"
#include "omegatrans/oneway2rev.hpp"
#include "omegatrans/pipeline.hpp"
#include "omegatrans/sst2rev.hpp"
#include "omegatrans/twoway2sst.hpp"

namespace omegatrans::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// key=value lines after a marker, easy to grep or split.
class Summary {
 public:
  explicit Summary(std::string command) { add("command", std::move(command)); }
  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream s;
    s << value;
    rows_.emplace_back(key, s.str());
  }
  void print(std::ostream& os, int code) const {
    os << "[summary]\n";
    for (const auto& [k, v] : rows_) os << k << '=' << v << '\n';
    os << "exit=" << code << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

const char* yes(bool b) { return b ? "yes" : "no"; }

Machine read(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  return parse_machine(text);
}

Transducer transducer(const std::string& path, std::istream& in) {
  auto m = read(path, in);
  if (!std::holds_alternative<Transducer>(m))
    throw UsageError(path + ": expected a 1dpt or 2dpt document, got cpsst");
  return std::get<Transducer>(std::move(m));
}

CopylessSst sst(const std::string& path, std::istream& in) {
  auto m = read(path, in);
  if (!std::holds_alternative<CopylessSst>(m))
    throw UsageError(path + ": expected a cpsst document");
  return std::get<CopylessSst>(std::move(m));
}

const Alphabet& input_of(const Machine& m) {
  return std::visit([](const auto& x) -> const Alphabet& { return x.input_alphabet(); }, m);
}
const Alphabet& output_of(const Machine& m) {
  return std::visit([](const auto& x) -> const Alphabet& { return x.output_alphabet(); }, m);
}
MachineRef ref(const Machine& m) {
  if (const auto* t = std::get_if<Transducer>(&m)) return t;
  return &std::get<CopylessSst>(m);
}

struct Budget {
  std::size_t steps = 0;
  std::size_t output = 0;
  void attach(CLI::App* app) {
    app->add_option("--max-steps", steps, "step budget per run (default 100000 or OMEGA_TRANS_BUDGET)");
    app->add_option("--max-output", output, "output-letter budget per run");
  }
  EvalBudget get() const {
    auto b = EvalBudget::from_env();
    if (steps > 0) b.max_steps = steps;
    if (output > 0) b.max_output = output;
    return b;
  }
};

// Machines go to the named file, or to stdout; the summary then moves to
// stderr so pipes stay clean.
struct Sink {
  std::string path;
  std::ostream& out;
  std::ostream& err;
  std::ostream& summary() const { return path.empty() || path == "-" ? err : out; }
  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      out << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
  }
};

int finish_machine(const Sink& sink, Summary& s, const Transducer& m) {
  sink.write(to_json(m));
  s.add("states", m.num_states());
  s.add("transitions", m.transitions().size());
  s.add("colorings", m.colorings());
  s.add("reversible", yes(validate_reversible(m)));
  s.print(sink.summary(), kOk);
  return kOk;
}

int cmd_validate(const std::string& path, bool need_reversible, std::istream& in, std::ostream& out) {
  const auto m = read(path, in);
  int code = kOk;
  if (const auto* t = std::get_if<Transducer>(&m)) {
    Summary s("validate");
    const auto problems = structural_violations(*t);
    for (const auto& p : problems) out << "violation: " << p << '\n';
    const bool det = validate_deterministic(*t), codet = validate_codeterministic(*t);
    if (!det) out << "violation: not deterministic\n";
    if (!problems.empty() || !det) code = kViolation;
    if (need_reversible && !codet) {
      out << "violation: not co-deterministic\n";
      code = kViolation;
    }
    s.add("kind", t->is_one_way() ? "1dpt" : "2dpt");
    s.add("states", t->num_states());
    s.add("backward_states", t->num_backward_states());
    s.add("transitions", t->transitions().size());
    s.add("colorings", t->colorings());
    s.add("colors", t->color_bound());
    s.add("deterministic", yes(det));
    s.add("codeterministic", yes(codet));
    s.add("reversible", yes(det && codet && problems.empty()));
    out << (code == kOk ? "valid\n" : "invalid\n");
    s.print(out, code);
    return code;
  }
  const auto& x = std::get<CopylessSst>(m);
  Summary s("validate");
  const auto problems = validate_sst(x);
  for (const auto& p : problems) out << "violation: transition " << p.transition << ": " << p.message << '\n';
  if (!problems.empty()) code = kViolation;
  try {
    require_valid_sst(x);
  } catch (const InvalidSst& e) {
    if (problems.empty()) out << "violation: " << e.what() << '\n';
    code = kViolation;
  }
  s.add("kind", "cpsst");
  s.add("states", x.num_states());
  s.add("registers", x.num_registers());
  s.add("transitions", x.transitions().size());
  s.add("colorings", x.colorings());
  s.add("copyless", yes(problems.empty()));
  out << (code == kOk ? "valid\n" : "invalid\n");
  s.print(out, code);
  return code;
}

int cmd_eval(const std::string& path, const std::string& text, const Budget& budget,
             std::istream& in, std::ostream& out) {
  const auto m = read(path, in);
  const auto w = parse_lasso(text, input_of(m));
  const auto r = evaluate(ref(m), w, budget.get());
  out << describe(r, output_of(m)) << '\n';
  const int code = r.conclusive() ? kOk : kInconclusive;
  Summary s("eval");
  s.add("input", format_lasso(canonicalize(w), input_of(m)));
  s.add("verdict", verdict_name(r.verdict));
  s.add("in_domain", yes(r.in_domain()));
  s.add("automaton_accepts", yes(r.automaton_accepts()));
  s.add("steps", r.steps);
  if (r.prefix_only) s.add("prefix_only", "yes");
  s.print(out, code);
  return code;
}

struct EquivArgs {
  std::string left, right;
  std::vector<std::size_t> exhaustive;
  std::vector<std::uint64_t> random;
  std::size_t max_prefix = 4, max_period = 4, show = 10, min_prefix = 1000;
  bool automaton = false;
  Budget budget;
};

int cmd_equiv(const EquivArgs& a, std::istream& in, std::ostream& out) {
  if (a.left == "-" && a.right == "-") throw UsageError("only one machine can come from stdin");
  const auto L = read(a.left, in);
  const auto R = read(a.right, in);
  if (input_of(L) != input_of(R)) throw AlphabetMismatch("input alphabets differ");
  if (output_of(L) != output_of(R)) throw AlphabetMismatch("output alphabets differ");
  const auto k = input_of(L).size();
  std::vector<Lasso> lassos;
  std::string corpus;
  if (!a.exhaustive.empty()) {
    lassos = canonical_lassos(k, a.exhaustive[0], a.exhaustive[1]);
    corpus = "exhaustive " + std::to_string(a.exhaustive[0]) + " " + std::to_string(a.exhaustive[1]);
  } else {
    lassos = random_lassos(a.random[0], a.random[1], k, a.max_prefix, a.max_period);
    corpus = "random " + std::to_string(a.random[0]) + " " + std::to_string(a.random[1]);
  }
  EquivOptions opt;
  opt.budget = a.budget.get();
  opt.compare_automaton = a.automaton;
  opt.min_prefix = a.min_prefix;
  const auto rep = equiv_on_lassos(ref(L), ref(R), lassos, opt);
  for (std::size_t i = 0; i < rep.disagreements.size() && i < a.show; ++i) {
    const auto& d = rep.disagreements[i];
    out << "disagreement " << format_lasso(d.input, input_of(L)) << ": " << d.reason << '\n'
        << "  left:  " << describe(d.left, output_of(L)) << '\n'
        << "  right: " << describe(d.right, output_of(R)) << '\n';
  }
  int code = kOk;
  if (!rep.ok())
    code = kViolation;
  else if (rep.inconclusive > 0)
    code = kInconclusive;
  out << (code == kOk ? "equivalent on all lassos\n"
          : code == kViolation ? "not equivalent\n"
                               : "no disagreement, some runs inconclusive\n");
  Summary s("equiv");
  s.add("corpus", corpus);
  s.add("total", rep.total);
  s.add("agreed", rep.agreed);
  s.add("inconclusive", rep.inconclusive);
  s.add("disagreements", rep.disagreements.size());
  s.print(out, code);
  return code;
}

struct GenArgs {
  std::uint64_t seed = 0;
  std::size_t n = 3, k = 1, letters = 2, out_letters = 2, registers = 2, max_output = 2;
  Color l = 2;
  unsigned density = 900;
  std::string kind = "2dpt";
};

int cmd_gen(const GenArgs& g, std::ostream& out) {
  GenOptions o;
  o.states = g.n;
  o.colorings = g.k;
  o.colors = g.l;
  o.input_letters = g.letters;
  o.output_letters = g.out_letters;
  o.density = g.density;
  o.registers = g.registers;
  o.max_output = g.max_output;
  if (g.kind == "1dpt")
    out << to_json(random_one_way(g.seed, o));
  else if (g.kind == "2dpt")
    out << to_json(random_two_way(g.seed, o));
  else
    out << to_json(random_sst(g.seed, o));
  return kOk;
}

BuchiMarking marking(const Transducer& m, const std::string& text) {
  if (text == "all") return marking_all(m);
  if (text == "none") return marking_none(m);
  if (text.rfind("color", 0) == 0) {
    try {
      return marking_by_color(m, static_cast<Color>(std::stoul(text.substr(5))));
    } catch (const std::logic_error&) {
      throw UsageError("bad marking '" + text + "'");
    }
  }
  return marking_from_list(m, text);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Reversible two-way transducers over infinite words", "omega-trans"};
  app.require_subcommand(1);

  std::string path, path2, output, lasso_text, mark = "color0";
  std::size_t cap = TwoWayToSstOptions{}.max_states;
  bool need_reversible = false, prune = false;
  Budget budget;
  EquivArgs eq;
  GenArgs gen;

  auto* validate = app.add_subcommand("validate", "check a machine document");
  validate->add_option("machine", path, "JSON file, - for stdin")->required();
  validate->add_flag("--reversible", need_reversible, "also require co-determinism");

  auto* eval = app.add_subcommand("eval", "run a machine on a lasso u(v)");
  eval->add_option("machine", path)->required();
  eval->add_option("lasso", lasso_text, "e.g. ab(ba)")->required();
  budget.attach(eval);

  auto add_io = [&](CLI::App* c) {
    c->add_option("machine", path, "JSON file, - for stdin")->required();
    c->add_option("-o,--output", output, "write the machine here instead of stdout");
  };
  auto* compose_cmd = app.add_subcommand("compose", "T after S (both reversible)");
  compose_cmd->add_option("first", path, "S")->required();
  compose_cmd->add_option("second", path2, "T")->required();
  compose_cmd->add_option("-o,--output", output);
  compose_cmd->add_flag("--prune", prune, "drop unreachable product states");
  auto* w2rev = app.add_subcommand("1w2rev", "one-way deterministic to reversible");
  add_io(w2rev);
  auto* w2sst = app.add_subcommand("2w2sst", "two-way deterministic to copyless SST");
  add_io(w2sst);
  w2sst->add_option("--cap", cap, "maximum number of SST states");
  auto* s2rev = app.add_subcommand("sst2rev", "copyless SST to reversible");
  add_io(s2rev);
  auto* d2rev = app.add_subcommand("det2rev", "two-way deterministic to reversible");
  add_io(d2rev);
  d2rev->add_option("--cap", cap, "maximum number of intermediate SST states");
  auto* b2rt = app.add_subcommand("buchi2rt", "reversible Büchi machine to one without acceptance");
  add_io(b2rt);
  b2rt->add_option("--marking", mark, "color<c>, all, none, or transition indices 0,3,5")
      ->capture_default_str();
  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  add_io(dot);

  auto* gen_cmd = app.add_subcommand("gen", "seeded random machine");
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "states")->capture_default_str()->check(CLI::Range(1, 64));
  gen_cmd->add_option("--k", gen.k, "colorings")->capture_default_str()->check(CLI::Range(0, 8));
  gen_cmd->add_option("--l", gen.l, "colors")->capture_default_str()->check(CLI::Range(1, 16));
  gen_cmd->add_option("--kind", gen.kind)
      ->capture_default_str()
      ->check(CLI::IsMember({"1dpt", "2dpt", "cpsst"}));
  gen_cmd->add_option("--letters", gen.letters, "input letters")->capture_default_str()->check(CLI::Range(1, 26));
  gen_cmd->add_option("--out-letters", gen.out_letters)->capture_default_str()->check(CLI::Range(1, 26));
  gen_cmd->add_option("--density", gen.density, "per-mille")->capture_default_str()->check(CLI::Range(0, 1000));
  gen_cmd->add_option("--registers", gen.registers, "cpsst only, out included")
      ->capture_default_str()
      ->check(CLI::Range(1, 16));
  gen_cmd->add_option("--max-output", gen.max_output, "longest output per transition")->capture_default_str();

  auto* equiv = app.add_subcommand("equiv", "compare two machines on lassos");
  equiv->add_option("left", eq.left)->required();
  equiv->add_option("right", eq.right)->required();
  auto* ex = equiv->add_option("--exhaustive", eq.exhaustive, "all canonical u(v) with |u|<=U, |v|<=V")
                 ->expected(2)
                 ->type_name("U V");
  auto* rnd = equiv->add_option("--random", eq.random, "COUNT random lassos from SEED")
                  ->expected(2)
                  ->type_name("COUNT SEED");
  ex->excludes(rnd);
  equiv->add_option("--max-prefix", eq.max_prefix, "random lassos")->capture_default_str();
  equiv->add_option("--max-period", eq.max_period, "random lassos")->capture_default_str()->check(CLI::PositiveNumber);
  equiv->add_option("--min-prefix", eq.min_prefix, "letters needed for prefix-only comparison")
      ->capture_default_str();
  equiv->add_option("--show", eq.show, "disagreements to print")->capture_default_str();
  equiv->add_flag("--automaton", eq.automaton, "also compare acceptance ignoring output");
  eq.budget.attach(equiv);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (equiv->parsed() && eq.exhaustive.empty() && eq.random.empty())
      throw CLI::ValidationError("equiv", "one of --exhaustive or --random is required");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Sink sink{output, out, err};
    if (validate->parsed()) return cmd_validate(path, need_reversible, in, out);
    if (eval->parsed()) return cmd_eval(path, lasso_text, budget, in, out);
    if (equiv->parsed()) return cmd_equiv(eq, in, out);
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (compose_cmd->parsed()) {
      if (path == "-" && path2 == "-") throw UsageError("only one machine can come from stdin");
      const auto S = transducer(path, in);
      const auto T = transducer(path2, in);
      auto C = compose(S, T);
      Summary s("compose");
      s.add("product_states", C.num_states());
      if (prune) C = prune_unreachable(C);
      return finish_machine(sink, s, C);
    }
    if (w2rev->parsed()) {
      Summary s("1w2rev");
      return finish_machine(sink, s, one_way_to_reversible(transducer(path, in)));
    }
    if (w2sst->parsed()) {
      TwoWayToSstOptions o;
      o.max_states = cap;
      const auto c = two_way_to_sst_detailed(transducer(path, in), o);
      sink.write(to_json(c.sst));
      Summary s("2w2sst");
      s.add("states", c.sst.num_states());
      s.add("registers", c.sst.num_registers());
      s.add("max_forest_nodes", c.max_nodes);
      s.add("max_forest_edges", c.max_edges);
      s.print(sink.summary(), kOk);
      return kOk;
    }
    if (s2rev->parsed()) {
      Summary s("sst2rev");
      return finish_machine(sink, s, sst_to_reversible(sst(path, in)));
    }
    if (d2rev->parsed()) {
      TwoWayToSstOptions o;
      o.max_states = cap;
      Summary s("det2rev");
      return finish_machine(sink, s, dbt_to_rbt(transducer(path, in), o));
    }
    if (b2rt->parsed()) {
      const auto m = transducer(path, in);
      Summary s("buchi2rt");
      const auto marks = marking(m, mark);
      s.add("marked", std::count(marks.begin(), marks.end(), true));
      return finish_machine(sink, s, buchi_to_noacc(m, marks));
    }
    if (dot->parsed()) {
      const auto m = read(path, in);
      sink.write(std::visit([](const auto& x) { return to_dot(x); }, m));
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const AlphabetMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    // NotReversible, NotDeterministic, InvalidMachine, InvalidSst, StateExplosion
    err << "error: " << e.what() << '\n';
    return kViolation;
  }
  return kUsage;
}

}  // namespace omegatrans::cli
