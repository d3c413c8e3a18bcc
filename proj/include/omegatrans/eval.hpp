// Running machines on lasso words.
//
// Acceptance of a two-way run is decided exactly by finding a guarded
// shift-loop: two configurations with the same state and the same position
// modulo |v|, the later one strictly to the right, with the head never
// reading the prefix in between. From there on the run repeats shifted copies
// of that segment forever.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "omegatrans/core.hpp"
#include "omegatrans/lasso.hpp"

namespace omegatrans {

struct Configuration {
  StateId state = kNoState;
  std::int64_t position = 0;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.state == b.state && a.position == b.position;
  }
};

struct EvalBudget {
  std::size_t max_steps = 100000;
  std::size_t max_output = 100000;

  /// Defaults, overridden by OMEGA_TRANS_BUDGET="steps[,output]" when set.
  static EvalBudget from_env();
};

enum class Verdict : std::uint8_t {
  Accepted,
  AcceptedEmptyOutput,  // the automaton accepts but the output stays finite
  RejectedParity,
  RejectedStuck,
  RejectedLoop,  // the run cycles without reading the whole word
  BudgetExceeded,
};

const char* verdict_name(Verdict v);

struct RunOutcome {
  Verdict verdict = Verdict::BudgetExceeded;
  /// Exact output, present for Accepted unless prefix_only.
  std::optional<Lasso> output;
  /// Output produced before the loop (AcceptedEmptyOutput), or a certified
  /// prefix of the output when prefix_only is set.
  Word output_prefix;
  bool prefix_only = false;
  /// Per-coloring minimum over the transitions that occur infinitely often.
  ColorVector loop_min_colors;
  std::size_t steps = 0;

  bool in_domain() const { return verdict == Verdict::Accepted; }
  bool automaton_accepts() const {
    return verdict == Verdict::Accepted || verdict == Verdict::AcceptedEmptyOutput;
  }
  bool conclusive() const { return verdict != Verdict::BudgetExceeded; }
};

struct StepResult {
  Configuration next;
  const Transition* transition = nullptr;
};

/// One move of the two-way machine, or nullopt when stuck.
std::optional<StepResult> step_two_way(const Transducer& machine, const Lasso& w,
                                       Configuration config);

/// The letter a configuration reads: position for forward states, position-1
/// for backward ones (the left endmarker below 0).
Symbol read_letter(const Transducer& machine, const Lasso& w, Configuration config);

/// Full step record of an evaluation. Steps [loop_start, loop_end) form the
/// detected shift-loop when the run was classified by one.
struct EvalTrace {
  std::vector<Configuration> configs;  // configuration at each time, the last one included
  std::vector<std::int32_t> transitions;
  std::optional<std::size_t> loop_start;
  std::optional<std::size_t> loop_end;
};

RunOutcome eval_two_way(const Transducer& machine, const Lasso& w, EvalBudget budget = {},
                        EvalTrace* trace = nullptr);

/// One-way specialisation; needs no step budget.
RunOutcome eval_one_way(const Transducer& machine, const Lasso& w, EvalBudget budget = {});

RunOutcome eval_sst(const CopylessSst& sst, const Lasso& w, EvalBudget budget = {});

/// Register contents after reading a finite word, or nullopt if the run dies.
std::optional<std::vector<Word>> sst_registers_after(const CopylessSst& sst, const Word& input);

/// Applies a substitution to a valuation.
std::vector<Word> apply_substitution(const Substitution& s, const std::vector<Word>& valuation);

using MachineRef = std::variant<const Transducer*, const CopylessSst*>;

RunOutcome evaluate(MachineRef machine, const Lasso& w, EvalBudget budget = {});

struct Disagreement {
  Lasso input;
  RunOutcome left;
  RunOutcome right;
  std::string reason;
};

struct EquivReport {
  std::size_t total = 0;
  std::size_t agreed = 0;
  std::size_t inconclusive = 0;
  std::vector<Disagreement> disagreements;

  bool ok() const { return disagreements.empty(); }
};

struct EquivOptions {
  EvalBudget budget;
  /// Also require agreement on automaton acceptance (domain ignoring output).
  bool compare_automaton = false;
  /// Prefix-only comparisons below this many letters count as inconclusive.
  std::size_t min_prefix = 1000;
};

EquivReport equiv_on_lassos(MachineRef left, MachineRef right, const std::vector<Lasso>& lassos,
                            const EquivOptions& options = {});

/// Output letters that can be compared between two accepted outcomes.
Word output_prefix(const RunOutcome& outcome, std::size_t length);

/// Text such as "Accepted output=(ab#ba#)" (letters joined through `alphabet`).
std::string describe(const RunOutcome& outcome, const Alphabet& alphabet);

}  // namespace omegatrans
