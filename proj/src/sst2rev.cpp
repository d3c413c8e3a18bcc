#include "omegatrans/sst2rev.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "omegatrans/composition.hpp"
#include "omegatrans/oneway2rev.hpp"

namespace omegatrans {

SubstitutionStream sst_to_substitution_stream(const CopylessSst& sst) {
  require_valid_sst(sst);
  const std::size_t m = sst.num_registers();
  SubstitutionStream stream;
  std::map<Substitution, Symbol> index;
  std::vector<std::string> names;
  std::set<std::string> taken;
  for (const auto& t : sst.transitions()) {
    auto sigma = resized(t.update, m);
    if (index.count(sigma)) continue;
    std::string name = to_string(sigma, sst);
    // keep letter names unique even if two renderings coincide
    for (int k = 2; taken.count(name); ++k) name = to_string(sigma, sst) + "#" + std::to_string(k);
    taken.insert(name);
    index.emplace(sigma, static_cast<Symbol>(stream.letters.size()));
    stream.letters.push_back(std::move(sigma));
    names.push_back(std::move(name));
  }

  Transducer d(sst.input_alphabet(), Alphabet(names), sst.colorings(), sst.color_bound());
  for (std::size_t s = 0; s < sst.num_states(); ++s)
    d.add_state(sst.state_name(static_cast<StateId>(s)), Polarity::Forward);
  d.set_initial(sst.initial());
  for (const auto& t : sst.transitions())
    d.add_transition(t.source, t.letter, t.target, {index.at(resized(t.update, m))}, t.colors);
  stream.machine = std::move(d);
  return stream;
}

Transducer build_register_walker(const CopylessSst& sst, const SubstitutionStream& stream) {
  const std::size_t m = sst.num_registers();
  Transducer f(stream.machine.output_alphabet(), sst.output_alphabet(), 0, 1);
  // state 2r is r_o, 2r+1 is r_i
  for (std::size_t r = 0; r < m; ++r) {
    f.add_state(sst.registers()[r] + "_o", Polarity::Forward);
    f.add_state(sst.registers()[r] + "_i", Polarity::Backward);
  }
  auto o = [](std::size_t r) { return static_cast<StateId>(2 * r); };
  auto in = [](std::size_t r) { return static_cast<StateId>(2 * r + 1); };
  f.set_initial(o(static_cast<std::size_t>(sst.out())));

  for (std::size_t a = 0; a < stream.letters.size(); ++a) {
    const auto& sigma = stream.letters[a];
    const auto letter = static_cast<Symbol>(a);
    // where each register is used: (image owner, position in that image)
    std::vector<std::pair<std::size_t, std::size_t>> use(m, {m, 0});
    for (std::size_t t = 0; t < m; ++t) {
      const auto& img = sigma.image(static_cast<RegisterId>(t));
      for (std::size_t k = 0; k < img.size(); ++k)
        if (img[k].is_register()) use[static_cast<std::size_t>(img[k].value)] = {t, k};
    }
    for (std::size_t r = 0; r < m; ++r) {
      // r_i: produce σ(r) up to its first register, then descend into it.
      {
        const auto& img = sigma.image(static_cast<RegisterId>(r));
        Word v;
        std::size_t k = 0;
        while (k < img.size() && !img[k].is_register()) v.push_back(img[k++].value);
        const StateId to = k < img.size() ? in(static_cast<std::size_t>(img[k].value)) : o(r);
        f.add_transition(in(r), letter, to, std::move(v), {});
      }
      // r_o: continue after r inside the image that uses it.
      const auto [t, pos] = use[r];
      if (t == m) continue;  // r is dropped: no way to continue
      const auto& img = sigma.image(static_cast<RegisterId>(t));
      Word v;
      std::size_t k = pos + 1;
      while (k < img.size() && !img[k].is_register()) v.push_back(img[k++].value);
      const StateId to = k < img.size() ? in(static_cast<std::size_t>(img[k].value)) : o(t);
      f.add_transition(o(r), letter, to, std::move(v), {});
    }
  }
  // Before the first substitution every register is empty.
  for (std::size_t r = 0; r < m; ++r) f.add_transition(in(r), kLeftEnd, o(r), {}, {});
  return f;
}

Transducer sst_to_reversible(const CopylessSst& sst) {
  const auto stream = sst_to_substitution_stream(sst);
  const auto walker = build_register_walker(sst, stream);
  const auto d = one_way_to_reversible(stream.machine);
  return prune_unreachable(compose(d, walker));
}

}  // namespace omegatrans
