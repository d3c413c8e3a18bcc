#include "omegatrans/oneway2rev.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace omegatrans {

std::optional<StateId> abv(const Transducer& m, Symbol a, StateId q) {
  const Transition* t = m.find(q, a);
  if (t == nullptr) return std::nullopt;
  for (auto r = q + 1; r < static_cast<StateId>(m.num_states()); ++r) {
    const Transition* u = m.find(r, a);
    if (u != nullptr && u->target == t->target) return r;
  }
  return std::nullopt;
}

namespace {

// A head either sits above its state (under-marked) or below it (over-marked).
enum class Tag : std::uint8_t { Under, Over };

struct Head {
  Tag tag;
  StateId q;
  friend bool operator<(const Head& a, const Head& b) {
    return a.tag != b.tag ? a.tag < b.tag : a.q < b.q;
  }
  friend bool operator==(const Head& a, const Head& b) { return a.tag == b.tag && a.q == b.q; }
};

using Outline = std::pair<Head, Head>;

Head under(StateId q) { return {Tag::Under, q}; }
Head over(StateId q) { return {Tag::Over, q}; }

bool forward(const Outline& s) { return s.first.tag != s.second.tag; }
bool excluded(const Outline& s) { return s.first == s.second; }

class Builder {
 public:
  explicit Builder(const Transducer& m) : m_(m) {
    const auto n = static_cast<StateId>(m.num_states());
    const auto letters = static_cast<Symbol>(m.input_alphabet().size());
    preimage_.assign(static_cast<std::size_t>(letters) * m.num_states(), {});
    for (StateId q = 0; q < n; ++q)
      for (Symbol a = 0; a < letters; ++a)
        if (const auto* t = m.find(q, a)) preimage_[slot(a, t->target)].push_back(q);
    // States were visited in increasing order, so each preimage list is sorted.
  }

  // Inverse image under δ(·, a). On the endmarker every state but q0 has none;
  // q0 has the virtual start of the run, which is never selected.
  bool no_preimage(Symbol a, StateId q) const {
    if (a == kLeftEnd) return q != m_.initial();
    return preimage_[slot(a, q)].empty();
  }
  const std::vector<StateId>& preimage(Symbol a, StateId q) const { return preimage_[slot(a, q)]; }

  std::optional<StateId> below(Symbol a, StateId q) const {
    // the q' with abv(a, q', q)
    const Transition* t = m_.find(q, a);
    if (t == nullptr) return std::nullopt;
    const auto& pre = preimage(a, t->target);
    const auto it = std::find(pre.begin(), pre.end(), q);
    if (it == pre.begin()) return std::nullopt;
    return *(it - 1);
  }

  std::optional<Outline> next(const Outline& s, Symbol a) const {
    const StateId p = s.first.q;
    const StateId q = s.second.q;
    if (forward(s)) {
      if (a == kLeftEnd) return std::nullopt;
      if (s.first.tag == Tag::Under) {
        if (auto p2 = abv(m_, a, p)) return Outline{over(*p2), over(q)};
        if (auto q2 = below(a, q)) return Outline{under(p), under(*q2)};
        const auto* tp = m_.find(p, a);
        const auto* tq = m_.find(q, a);
        if (tp == nullptr || tq == nullptr) return std::nullopt;
        return Outline{under(tp->target), over(tq->target)};
      }
      if (auto p2 = below(a, p)) return Outline{under(*p2), under(q)};
      if (auto q2 = abv(m_, a, q)) return Outline{over(p), over(*q2)};
      const auto* tp = m_.find(p, a);
      const auto* tq = m_.find(q, a);
      if (tp == nullptr || tq == nullptr) return std::nullopt;
      return Outline{over(tp->target), under(tq->target)};
    }
    const bool both_over = s.first.tag == Tag::Over;
    if (no_preimage(a, p)) return both_over ? Outline{under(p), over(q)} : Outline{over(p), under(q)};
    if (no_preimage(a, q)) return both_over ? Outline{over(p), under(q)} : Outline{under(p), over(q)};
    if (a == kLeftEnd) return std::nullopt;
    const auto& pp = preimage(a, p);
    const auto& pq = preimage(a, q);
    if (both_over) return Outline{over(pp.front()), over(pq.front())};
    return Outline{under(pp.back()), under(pq.back())};
  }

 private:
  std::size_t slot(Symbol a, StateId q) const {
    return static_cast<std::size_t>(a) * m_.num_states() + static_cast<std::size_t>(q);
  }

  const Transducer& m_;
  std::vector<std::vector<StateId>> preimage_;
};

std::string head_name(const Transducer& m, const Head& h) {
  return (h.tag == Tag::Under ? "_" : "^") + m.state_name(h.q);
}

}  // namespace

Transducer one_way_to_reversible(const Transducer& m) {
  if (!validate_deterministic(m)) throw NotDeterministic("input machine is not deterministic");
  if (!m.is_one_way()) throw InvalidMachine("input machine must be one-way");
  if (m.initial() == kNoState) throw InvalidMachine("input machine has no initial state");

  ColorVector top(m.colorings(), 0);
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = m.max_color(i).value_or(0);

  const Builder builder(m);
  Transducer out(m.input_alphabet(), m.output_alphabet(), m.colorings(), m.color_bound());
  std::map<Outline, StateId> ids;
  std::queue<Outline> work;
  auto intern = [&](const Outline& s) {
    auto [it, fresh] = ids.try_emplace(s, static_cast<StateId>(ids.size()));
    if (fresh) {
      out.add_state("(" + head_name(m, s.first) + "," + head_name(m, s.second) + ")",
                    forward(s) ? Polarity::Forward : Polarity::Backward);
      work.push(s);
    }
    return it->second;
  };
  out.set_initial(intern({under(m.initial()), over(m.initial())}));

  const auto letters = static_cast<Symbol>(m.input_alphabet().size());
  while (!work.empty()) {
    const Outline s = work.front();
    work.pop();
    const StateId from = ids.at(s);
    const bool diagonal = s.first == under(s.second.q) && s.second.tag == Tag::Over;
    for (Symbol a = forward(s) ? 0 : kLeftEnd; a < letters; ++a) {
      const auto target = builder.next(s, a);
      if (!target || excluded(*target)) continue;
      const StateId to = intern(*target);
      Word output;
      ColorVector colors = top;
      if (diagonal) {
        const auto* t = m.find(s.first.q, a);
        output = t->output;
        colors = t->colors;
      }
      out.add_transition(from, a, to, std::move(output), std::move(colors));
    }
  }
  return out;
}

}  // namespace omegatrans
