#include "forest_check.hpp"

#include <set>
#include <sstream>

#include "oracles.hpp"

namespace oracle {

namespace {

std::string word_text(const Word& w) {
  std::string s;
  for (Symbol a : w) s += static_cast<char>('a' + a);
  return s.empty() ? "ε" : s;
}

void check_word(const Transducer& m, const SstConstruction& c, const Word& w,
                std::vector<std::string>& bad) {
  auto fail = [&](const std::string& what) { bad.push_back(word_text(w) + ": " + what); };
  StateId s = kNoState;
  const auto regs = w.empty() ? std::optional(c.initial_registers)
                              : sst_registers(c.sst, w, c.initial_registers, &s);
  if (w.empty()) s = c.sst.initial();
  const auto main = main_run(m, w);
  if (!regs) {
    if (main.exits) fail("SST dies but the main run leaves the prefix");
    return;
  }
  if (!main.exits) {
    fail("SST survives but the main run does not leave the prefix");
    return;
  }
  const auto& abs = c.states[static_cast<std::size_t>(s)];
  if (abs.q != main.exit) fail("main state differs");
  if ((*regs)[static_cast<std::size_t>(c.sst.out())] != main.production) fail("out differs");

  std::set<std::pair<StateId, StateId>> want;
  for (StateId x = 0; x < static_cast<StateId>(m.num_states()); ++x) {
    if (m.is_forward(x)) continue;
    const auto r = right_right_run(m, w, x);
    if (!r.exits || r.exit == main.exit) continue;
    want.insert({x, r.exit});
    if (!abs.forest.leaf(x)) {
      fail("missing leaf " + m.state_name(x));
      continue;
    }
    Word got;
    for (RegisterId reg : abs.forest.path_registers(x)) {
      const auto& part = (*regs)[static_cast<std::size_t>(reg)];
      got.insert(got.end(), part.begin(), part.end());
    }
    if (got != r.production) fail("production of the run from " + m.state_name(x));
    const auto& leaf = abs.forest.nodes[*abs.forest.leaf(x)];
    if (leaf.colors != r.min_colors) fail("colors of the run from " + m.state_name(x));
  }
  const auto runs = abs.forest.runs();
  const std::set<std::pair<StateId, StateId>> have(runs.begin(), runs.end());
  if (have != want || runs.size() != want.size()) fail("forest runs differ");
}

}  // namespace

std::vector<std::string> forest_mismatches(const Transducer& m, const SstConstruction& c,
                                           std::size_t max_len) {
  std::vector<std::string> bad;
  const auto k = m.input_alphabet().size();
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      check_word(m, c, w, bad);
      if (len < max_len)
        for (std::size_t a = 0; a < k; ++a) {
          auto v = w;
          v.push_back(static_cast<Symbol>(a));
          next.push_back(std::move(v));
        }
    }
    layer = std::move(next);
  }
  return bad;
}

}  // namespace oracle
