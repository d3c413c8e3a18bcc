#include "omegatrans/composition.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace omegatrans {

FiniteRunSummary run_on_finite(const Transducer& m, const Word& v, StateId entry,
                               const ColorVector& sentinel) {
  FiniteRunSummary r;
  r.min_colors = sentinel;
  const auto n = static_cast<std::int64_t>(v.size());
  StateId q = entry;
  std::int64_t pos = m.is_forward(entry) ? 0 : n;
  std::unordered_set<std::int64_t> seen;
  bool empty = true;
  for (;;) {
    if (m.is_forward(q) && pos == n) {
      r.exit = FiniteRunSummary::Exit::Right;
      break;
    }
    if (!m.is_forward(q) && pos == 0) {
      r.exit = FiniteRunSummary::Exit::Left;
      break;
    }
    if (!seen.insert(pos * static_cast<std::int64_t>(m.num_states()) + q).second) {
      r.exit = FiniteRunSummary::Exit::Looping;
      return r;
    }
    const Symbol a = v[static_cast<std::size_t>(m.is_forward(q) ? pos : pos - 1)];
    const Transition* t = m.find(q, a);
    if (t == nullptr) {
      r.exit = FiniteRunSummary::Exit::Stuck;
      return r;
    }
    if (empty) {
      r.min_colors = t->colors;
      empty = false;
    } else {
      for (std::size_t i = 0; i < r.min_colors.size(); ++i)
        r.min_colors[i] = std::min(r.min_colors[i], t->colors[i]);
    }
    r.production.insert(r.production.end(), t->output.begin(), t->output.end());
    const bool from_fwd = m.is_forward(q);
    const bool to_fwd = m.is_forward(t->target);
    if (from_fwd && to_fwd) ++pos;
    if (!from_fwd && !to_fwd) --pos;
    q = t->target;
  }
  r.state = q;
  return r;
}

ColorVector sentinel_colors(const Transducer& m) {
  ColorVector c(m.colorings());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = odd_ceiling(m, i);
  return c;
}

Transducer compose(const Transducer& S, const Transducer& T) {
  if (S.output_alphabet() != T.input_alphabet())
    throw AlphabetMismatch("output alphabet of the first machine differs from the input alphabet "
                           "of the second");
  if (!validate_reversible(S)) throw NotReversible("first machine is not reversible");
  if (!validate_reversible(T)) throw NotReversible("second machine is not reversible");

  const std::size_t kS = S.colorings();
  const std::size_t kT = T.colorings();
  const ColorVector sentinel_S = sentinel_colors(S);
  const ColorVector sentinel_T = sentinel_colors(T);
  const StateId q0 = S.initial();

  Transducer U(S.input_alphabet(), T.output_alphabet(), kS + kT, 1);
  const auto nP = static_cast<StateId>(T.num_states());
  auto id = [nP](StateId q, StateId p) { return q * nP + p; };
  for (std::size_t q = 0; q < S.num_states(); ++q)
    for (std::size_t p = 0; p < T.num_states(); ++p) {
      const auto qs = static_cast<StateId>(q);
      const auto ps = static_cast<StateId>(p);
      const bool fwd = S.is_forward(qs) == T.is_forward(ps);
      U.add_state("(" + S.state_name(qs) + "," + T.state_name(ps) + ")",
                  fwd ? Polarity::Forward : Polarity::Backward);
    }
  U.set_initial(id(q0, T.initial()));

  // Unique S-predecessor on each letter. Endmarker moves into q0 are left
  // out: they revisit the initial configuration, so no run that reads the
  // whole word uses them, and without them (q0, p) on the endmarker is free to
  // stand for T reaching its own left end.
  std::map<std::pair<Symbol, StateId>, const Transition*> pred;
  for (const auto& t : S.transitions()) {
    if (t.letter == kLeftEnd && t.target == q0) continue;
    pred.emplace(std::pair{t.letter, t.target}, &t);
  }

  std::map<std::pair<const Transition*, StateId>, FiniteRunSummary> cache;
  auto summary = [&](const Transition* t, StateId p) -> const FiniteRunSummary& {
    auto it = cache.find({t, p});
    if (it == cache.end())
      it = cache.emplace(std::pair{t, p}, run_on_finite(T, t->output, p, sentinel_T)).first;
    return it->second;
  };

  Color max_color = 0;
  auto emit = [&](StateId from, Symbol a, StateId to, Word out, const ColorVector& cs,
                  const ColorVector& ct) {
    ColorVector c(cs);
    c.insert(c.end(), ct.begin(), ct.end());
    for (Color x : c) max_color = std::max(max_color, x);
    U.add_transition(from, a, to, std::move(out), std::move(c));
  };

  const auto nA = static_cast<Symbol>(S.input_alphabet().size());
  for (std::size_t qi = 0; qi < S.num_states(); ++qi) {
    const auto q = static_cast<StateId>(qi);
    for (std::size_t pi = 0; pi < T.num_states(); ++pi) {
      const auto p = static_cast<StateId>(pi);
      const StateId from = id(q, p);
      for (Symbol a = kLeftEnd; a < nA; ++a) {
        if (a == kLeftEnd && U.is_forward(from)) continue;
        if (T.is_forward(p)) {
          // T moves on: S takes its next transition and T reads its output.
          const Transition* s = S.find(q, a);
          if (s == nullptr || (a == kLeftEnd && s->target == q0)) continue;
          const auto& r = summary(s, p);
          if (!r.usable()) continue;
          const StateId to = r.exit == FiniteRunSummary::Exit::Right ? id(s->target, r.state)
                                                                      : id(q, r.state);
          emit(from, a, to, r.production, s->colors, r.min_colors);
        } else {
          auto it = pred.find({a, q});
          if (it == pred.end()) {
            // S is at its initial configuration: T reads its own endmarker.
            if (a != kLeftEnd || q != q0) continue;
            const Transition* tt = T.find(p, kLeftEnd);
            if (tt == nullptr) continue;
            emit(from, a, id(q0, tt->target), tt->output, sentinel_S, tt->colors);
            continue;
          }
          // T moves back: S steps back in time over the transition that led to q.
          const Transition* s = it->second;
          const auto& r = summary(s, p);
          if (!r.usable()) continue;
          const StateId to = r.exit == FiniteRunSummary::Exit::Right ? id(q, r.state)
                                                                      : id(s->source, r.state);
          emit(from, a, to, r.production, s->colors, r.min_colors);
        }
      }
    }
  }
  U.set_color_bound(max_color + 1);
  return U;
}

}  // namespace omegatrans
