#include "omegatrans/pipeline.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "omegatrans/sst2rev.hpp"

namespace omegatrans {

Transducer dbt_to_rbt(const Transducer& machine, const TwoWayToSstOptions& options) {
  return sst_to_reversible(two_way_to_sst(machine, options));
}

namespace {

Transducer recolored(const Transducer& m, std::size_t k, Color bound,
                     const std::function<ColorVector(std::size_t)>& colors) {
  Transducer out(m.input_alphabet(), m.output_alphabet(), k, bound);
  for (std::size_t s = 0; s < m.num_states(); ++s)
    out.add_state(m.state_name(static_cast<StateId>(s)), m.polarity(static_cast<StateId>(s)));
  out.set_initial(m.initial());
  const auto& ts = m.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i)
    out.add_transition(ts[i].source, ts[i].letter, ts[i].target, ts[i].output, colors(i));
  return out;
}

void check_marking(const Transducer& m, const BuchiMarking& accepting) {
  if (accepting.size() != m.transitions().size())
    throw InvalidMachine("marking size differs from the number of transitions");
}

}  // namespace

Transducer drop_acceptance(const Transducer& m) {
  return recolored(m, 0, 1, [](std::size_t) { return ColorVector{}; });
}

Transducer buchi_as_parity(const Transducer& m, const BuchiMarking& accepting) {
  check_marking(m, accepting);
  return recolored(m, 1, 2, [&](std::size_t i) { return ColorVector{accepting[i] ? 0u : 1u}; });
}

BuchiMarking marking_by_color(const Transducer& m, Color color) {
  BuchiMarking b;
  for (const auto& t : m.transitions()) b.push_back(!t.colors.empty() && t.colors[0] == color);
  return b;
}

BuchiMarking marking_all(const Transducer& m) { return BuchiMarking(m.transitions().size(), true); }

BuchiMarking marking_none(const Transducer& m) {
  return BuchiMarking(m.transitions().size(), false);
}

BuchiMarking marking_from_list(const Transducer& m, std::string_view list) {
  BuchiMarking b(m.transitions().size(), false);
  std::stringstream in{std::string(list)};
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t idx = 0;
    try {
      idx = std::stoul(item);
    } catch (const std::exception&) {
      throw InvalidMachine("bad transition index '" + item + "'");
    }
    if (idx >= b.size()) throw InvalidMachine("transition index " + item + " out of range");
    b[idx] = true;
  }
  return b;
}

Transducer buchi_to_noacc(const Transducer& m, const BuchiMarking& accepting) {
  check_marking(m, accepting);
  if (!validate_reversible(m)) throw NotReversible("Büchi machine is not reversible");
  const StateId q0 = m.initial();
  const auto n = static_cast<StateId>(m.num_states());

  // Endmarker moves into q0 only occur in runs that revisit the initial
  // configuration; without them the start of the run has no predecessor.
  auto usable = [&](const Transition& t) { return !(t.letter == kLeftEnd && t.target == q0); };

  Transducer out(m.input_alphabet(), m.output_alphabet(), 0, 1);
  auto sim = [](StateId q) { return 3 * q; };
  auto rew = [](StateId q) { return 3 * q + 1; };
  auto prod = [](StateId q) { return 3 * q + 2; };
  for (StateId q = 0; q < n; ++q) {
    const auto pol = m.polarity(q);
    out.add_state(m.state_name(q) + "/sim", pol);
    out.add_state(m.state_name(q) + "/rew", flip(pol));
    out.add_state(m.state_name(q) + "/prod", pol);
  }
  out.set_initial(sim(q0));

  std::map<std::pair<Symbol, StateId>, std::size_t> pred;
  const auto& ts = m.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (usable(ts[i])) pred.emplace(std::pair{ts[i].letter, ts[i].target}, i);

  const auto letters = static_cast<Symbol>(m.input_alphabet().size());
  for (StateId q = 0; q < n; ++q) {
    for (Symbol a = kLeftEnd; a < letters; ++a) {
      const std::int32_t idx = m.find_index(q, a);
      if (idx >= 0 && usable(ts[static_cast<std::size_t>(idx)])) {
        const auto& t = ts[static_cast<std::size_t>(idx)];
        const bool acc = accepting[static_cast<std::size_t>(idx)];
        out.add_transition(sim(q), a, acc ? rew(q) : sim(t.target), {}, {});
        out.add_transition(prod(q), a, acc ? sim(t.target) : prod(t.target), t.output, {});
      }
      // Rewind reads the letter of the transition that led into q.
      if (a == kLeftEnd && out.is_forward(rew(q))) continue;
      auto it = pred.find({a, q});
      if (it != pred.end()) {
        const auto& t = ts[it->second];
        out.add_transition(rew(q), a, accepting[it->second] ? prod(q) : rew(t.source), {}, {});
      } else if (a == kLeftEnd && q == q0) {
        out.add_transition(rew(q), a, prod(q), {}, {});
      }
    }
  }
  return out;
}

}  // namespace omegatrans
