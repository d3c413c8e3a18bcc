#include "omegatrans/eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "omegatrans/io.hpp"

namespace omegatrans {

namespace {

std::uint64_t config_key(StateId state, std::int64_t position) {
  return (static_cast<std::uint64_t>(position) << 24) ^ static_cast<std::uint64_t>(state);
}

struct KeyHash {
  std::size_t operator()(const std::pair<StateId, std::int64_t>& k) const {
    return std::hash<std::uint64_t>{}(config_key(k.first, k.second));
  }
};

bool all_even(const ColorVector& c) {
  return std::all_of(c.begin(), c.end(), [](Color x) { return x % 2 == 0; });
}

ColorVector sentinel_colors(std::size_t k) {
  return ColorVector(k, std::numeric_limits<Color>::max());
}

void fold_min(ColorVector& acc, const ColorVector& c) {
  for (std::size_t i = 0; i < acc.size() && i < c.size(); ++i) acc[i] = std::min(acc[i], c[i]);
}

}  // namespace

EvalBudget EvalBudget::from_env() {
  EvalBudget b;
  const char* env = std::getenv("OMEGA_TRANS_BUDGET");
  if (env == nullptr || *env == '\0') return b;
  std::string s(env);
  const auto comma = s.find(',');
  try {
    const auto steps = std::stoull(s.substr(0, comma));
    if (steps > 0) b.max_steps = steps;
    if (comma != std::string::npos) {
      const auto out = std::stoull(s.substr(comma + 1));
      if (out > 0) b.max_output = out;
    }
  } catch (const std::exception&) {
    // malformed values keep the defaults
  }
  return b;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "Accepted";
    case Verdict::AcceptedEmptyOutput: return "AcceptedEmptyOutput";
    case Verdict::RejectedParity: return "RejectedParity";
    case Verdict::RejectedStuck: return "RejectedStuck";
    case Verdict::RejectedLoop: return "RejectedLoop";
    case Verdict::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

Symbol read_letter(const Transducer& machine, const Lasso& w, Configuration config) {
  if (machine.is_forward(config.state)) return w.at(config.position);
  return config.position == 0 ? kLeftEnd : w.at(config.position - 1);
}

std::optional<StepResult> step_two_way(const Transducer& machine, const Lasso& w,
                                       Configuration config) {
  const Symbol a = read_letter(machine, w, config);
  const Transition* t = machine.find(config.state, a);
  if (t == nullptr) return std::nullopt;
  const bool from_fwd = machine.is_forward(config.state);
  const bool to_fwd = machine.is_forward(t->target);
  std::int64_t pos = config.position;
  if (from_fwd && to_fwd) {
    ++pos;
  } else if (!from_fwd && !to_fwd) {
    if (a == kLeftEnd) return std::nullopt;  // malformed: cannot move left of the endmarker
    --pos;
  }
  return StepResult{{t->target, pos}, t};
}

RunOutcome eval_two_way(const Transducer& machine, const Lasso& input, EvalBudget budget,
                        EvalTrace* trace) {
  const Lasso w = canonicalize(input);
  const auto u = static_cast<std::int64_t>(w.prefix.size());
  const auto plen = static_cast<std::int64_t>(w.period.size());

  RunOutcome result;
  if (machine.initial() == kNoState) {
    result.verdict = Verdict::RejectedStuck;
    return result;
  }

  std::unordered_set<std::pair<StateId, std::int64_t>, KeyHash> seen;
  // (state, residue) -> latest (time, position)
  std::unordered_map<std::pair<StateId, std::int64_t>, std::pair<std::size_t, std::int64_t>,
                     KeyHash>
      residues;
  std::vector<std::size_t> out_len;  // production length before each step
  std::vector<std::int32_t> taken;
  Word produced;
  std::int64_t low_time = -1;  // last step whose read index lies in the prefix

  Configuration c{machine.initial(), 0};
  for (std::size_t t = 0;; ++t) {
    const std::int64_t read_index = machine.is_forward(c.state) ? c.position : c.position - 1;
    if (read_index < u) low_time = static_cast<std::int64_t>(t);
    if (trace != nullptr) trace->configs.push_back(c);

    if (!seen.insert({c.state, c.position}).second) {
      result.verdict = Verdict::RejectedLoop;
      result.steps = t;
      return result;
    }
    if (static_cast<std::int64_t>(t) > low_time) {
      const std::pair<StateId, std::int64_t> key{c.state, (c.position - u) % plen};
      auto it = residues.find(key);
      if (it != residues.end() && static_cast<std::int64_t>(it->second.first) > low_time &&
          it->second.second < c.position) {
        const std::size_t t1 = it->second.first;
        const std::size_t t2 = t;
        ColorVector mins = sentinel_colors(machine.colorings());
        for (std::size_t i = t1; i < t2; ++i)
          fold_min(mins, machine.transitions()[static_cast<std::size_t>(taken[i])].colors);
        result.loop_min_colors = mins;
        result.steps = t2;
        if (trace != nullptr) {
          trace->loop_start = t1;
          trace->loop_end = t2;
        }
        if (!all_even(mins)) {
          result.verdict = Verdict::RejectedParity;
          return result;
        }
        Word head(produced.begin(), produced.begin() + static_cast<std::ptrdiff_t>(out_len[t1]));
        Word loop(produced.begin() + static_cast<std::ptrdiff_t>(out_len[t1]), produced.end());
        if (loop.empty()) {
          result.verdict = Verdict::AcceptedEmptyOutput;
          result.output_prefix = std::move(head);
          return result;
        }
        result.verdict = Verdict::Accepted;
        result.output = canonicalize(Lasso{std::move(head), std::move(loop)});
        return result;
      }
      residues[key] = {t, c.position};
    }

    if (t >= budget.max_steps || produced.size() > budget.max_output) {
      result.verdict = Verdict::BudgetExceeded;
      result.steps = t;
      result.output_prefix = produced;
      return result;
    }

    const auto next = step_two_way(machine, w, c);
    if (!next) {
      result.verdict = Verdict::RejectedStuck;
      result.steps = t;
      return result;
    }
    if (trace != nullptr)
      trace->transitions.push_back(
          static_cast<std::int32_t>(next->transition - machine.transitions().data()));
    out_len.push_back(produced.size());
    taken.push_back(static_cast<std::int32_t>(next->transition - machine.transitions().data()));
    produced.insert(produced.end(), next->transition->output.begin(),
                    next->transition->output.end());
    c = next->next;
  }
}

RunOutcome eval_one_way(const Transducer& machine, const Lasso& w, EvalBudget budget) {
  const Lasso cw = canonicalize(w);
  // After the prefix, some (state, residue) pair repeats within |Q|·|v| steps.
  budget.max_steps = cw.prefix.size() + machine.num_states() * cw.period.size() + 2;
  return eval_two_way(machine, cw, budget);
}

std::vector<Word> apply_substitution(const Substitution& s, const std::vector<Word>& valuation) {
  std::vector<Word> next(valuation.size());
  for (std::size_t r = 0; r < valuation.size(); ++r) {
    for (const Token& tok : s.image(static_cast<RegisterId>(r))) {
      if (tok.is_register()) {
        const auto& src = valuation[static_cast<std::size_t>(tok.value)];
        next[r].insert(next[r].end(), src.begin(), src.end());
      } else {
        next[r].push_back(tok.value);
      }
    }
  }
  return next;
}

std::optional<std::vector<Word>> sst_registers_after(const CopylessSst& sst, const Word& input) {
  std::vector<Word> val(sst.num_registers());
  StateId q = sst.initial();
  for (Symbol a : input) {
    if (q == kNoState) return std::nullopt;
    const auto* t = sst.find(q, a);
    if (t == nullptr) return std::nullopt;
    val = apply_substitution(t->update, val);
    q = t->target;
  }
  return val;
}

RunOutcome eval_sst(const CopylessSst& sst, const Lasso& input, EvalBudget budget) {
  const Lasso w = canonicalize(input);
  const auto u = static_cast<std::int64_t>(w.prefix.size());
  const auto plen = static_cast<std::int64_t>(w.period.size());
  const std::size_t m = sst.num_registers();
  const auto out = static_cast<std::size_t>(sst.out());

  RunOutcome result;
  std::vector<const SstTransition*> taken;
  std::unordered_map<std::pair<StateId, std::int64_t>, std::size_t, KeyHash> residues;
  StateId q = sst.initial();
  std::size_t t1 = 0;
  for (std::int64_t pos = 0;; ++pos) {
    if (q == kNoState) {
      result.verdict = Verdict::RejectedStuck;
      return result;
    }
    if (pos >= u) {
      auto [it, fresh] = residues.try_emplace({q, (pos - u) % plen}, static_cast<std::size_t>(pos));
      if (!fresh) {
        t1 = it->second;
        break;
      }
    }
    const auto* t = sst.find(q, w.at(pos));
    if (t == nullptr) {
      result.verdict = Verdict::RejectedStuck;
      result.steps = static_cast<std::size_t>(pos);
      return result;
    }
    taken.push_back(t);
    q = t->target;
  }
  const std::size_t t2 = taken.size();
  result.steps = t2;

  ColorVector mins = sentinel_colors(sst.colorings());
  for (std::size_t i = t1; i < t2; ++i) fold_min(mins, taken[i]->colors);
  result.loop_min_colors = mins;
  if (!all_even(mins)) {
    result.verdict = Verdict::RejectedParity;
    return result;
  }

  // Valuation entering the loop, and the loop's combined substitution.
  std::vector<Word> val(m);
  for (std::size_t i = 0; i < t1; ++i) val = apply_substitution(taken[i]->update, val);
  Substitution loop = resized(Substitution{}, m);
  for (std::size_t r = 0; r < m; ++r) loop.images[r] = {Token::reg(static_cast<RegisterId>(r))};
  for (std::size_t i = t1; i < t2; ++i) loop = then(loop, resized(taken[i]->update, m));

  // Domain: does out grow forever? Iterate register emptiness until it cycles.
  const Image& out_image = loop.image(static_cast<RegisterId>(out));
  const Image gamma(out_image.begin() + 1, out_image.end());
  auto nonempty = [](const Image& img, const std::vector<bool>& full) {
    return std::any_of(img.begin(), img.end(), [&](const Token& tok) {
      return !tok.is_register() || full[static_cast<std::size_t>(tok.value)];
    });
  };
  std::vector<bool> e(m);
  for (std::size_t r = 0; r < m; ++r) e[r] = !val[r].empty();
  std::vector<std::vector<bool>> history;
  while (std::find(history.begin(), history.end(), e) == history.end()) {
    history.push_back(e);
    std::vector<bool> next(m);
    for (std::size_t r = 0; r < m; ++r) next[r] = nonempty(loop.image(static_cast<RegisterId>(r)), e);
    e = std::move(next);
  }
  const auto cycle_start = std::find(history.begin(), history.end(), e);
  const bool unbounded = std::any_of(cycle_start, history.end(),
                                     [&](const std::vector<bool>& x) { return nonempty(gamma, x); });

  // Concrete iteration. Copylessness means a register reaches out's appended
  // part through a chain of distinct registers, so from iteration m on the
  // appended word no longer depends on the registers and repeats verbatim.
  std::vector<Word> appended;
  Word previous_out = val[out];
  std::size_t size = 0;
  bool over = false;
  for (std::size_t j = 0; j < m + 2; ++j) {
    val = apply_substitution(loop, val);
    appended.emplace_back(val[out].begin() + static_cast<std::ptrdiff_t>(previous_out.size()),
                          val[out].end());
    previous_out = val[out];
    size = 0;
    for (const auto& r : val) size += r.size();
    if (size > budget.max_output) {
      over = true;
      break;
    }
  }

  if (!unbounded) {
    result.verdict = Verdict::AcceptedEmptyOutput;
    result.output_prefix = previous_out;
    return result;
  }
  result.verdict = Verdict::Accepted;
  if (!over && appended[m + 1] == appended[m] && !appended[m].empty()) {
    Word head(previous_out.begin(),
              previous_out.end() - static_cast<std::ptrdiff_t>(appended[m + 1].size() +
                                                               appended[m].size()));
    result.output = canonicalize(Lasso{std::move(head), appended[m]});
    return result;
  }
  // Not expected for copyless updates; report a certified prefix instead.
  result.prefix_only = true;
  while (!over && previous_out.size() < budget.max_output) {
    const auto before = previous_out.size();
    val = apply_substitution(loop, val);
    previous_out = val[out];
    size = 0;
    for (const auto& r : val) size += r.size();
    if (size > budget.max_output || previous_out.size() == before) break;
  }
  result.output_prefix = previous_out;
  return result;
}

RunOutcome evaluate(MachineRef machine, const Lasso& w, EvalBudget budget) {
  if (const auto* sst = std::get_if<const CopylessSst*>(&machine)) return eval_sst(**sst, w, budget);
  const auto* t = std::get<const Transducer*>(machine);
  return eval_two_way(*t, w, budget);
}

Word output_prefix(const RunOutcome& outcome, std::size_t length) {
  if (outcome.output) return unroll(*outcome.output, length);
  Word w = outcome.output_prefix;
  if (w.size() > length) w.resize(length);
  return w;
}

EquivReport equiv_on_lassos(MachineRef left, MachineRef right, const std::vector<Lasso>& lassos,
                            const EquivOptions& options) {
  EquivReport report;
  for (const auto& w : lassos) {
    ++report.total;
    auto a = evaluate(left, w, options.budget);
    auto b = evaluate(right, w, options.budget);
    if (!a.conclusive() || !b.conclusive()) {
      ++report.inconclusive;
      continue;
    }
    std::string reason;
    if (a.in_domain() != b.in_domain()) {
      reason = "domain differs";
    } else if (options.compare_automaton && a.automaton_accepts() != b.automaton_accepts()) {
      reason = "automaton acceptance differs";
    } else if (a.in_domain()) {
      if (a.output && b.output) {
        if (!lasso_equal(*a.output, *b.output)) reason = "outputs differ";
      } else {
        const std::size_t avail_a = a.output ? options.min_prefix : a.output_prefix.size();
        const std::size_t avail_b = b.output ? options.min_prefix : b.output_prefix.size();
        const std::size_t n = std::min(avail_a, avail_b);
        if (output_prefix(a, n) != output_prefix(b, n)) {
          reason = "output prefixes differ";
        } else if (n < options.min_prefix) {
          ++report.inconclusive;
          continue;
        }
      }
    }
    if (reason.empty()) {
      ++report.agreed;
    } else {
      report.disagreements.push_back({w, std::move(a), std::move(b), std::move(reason)});
    }
  }
  return report;
}

std::string describe(const RunOutcome& outcome, const Alphabet& alphabet) {
  std::ostringstream os;
  os << verdict_name(outcome.verdict);
  if (outcome.output) {
    os << " output=" << format_lasso(*outcome.output, alphabet);
  } else if (outcome.verdict == Verdict::Accepted && outcome.prefix_only) {
    os << " output-prefix=" << format_word(output_prefix(outcome, 60), alphabet) << "...";
  } else if (outcome.verdict == Verdict::AcceptedEmptyOutput) {
    os << " output=" << format_word(outcome.output_prefix, alphabet);
  } else if (outcome.verdict == Verdict::RejectedParity) {
    os << " loop-min=";
    for (std::size_t i = 0; i < outcome.loop_min_colors.size(); ++i)
      os << (i ? "," : "") << outcome.loop_min_colors[i];
  }
  return os.str();
}

}  // namespace omegatrans
