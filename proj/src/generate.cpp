#include "omegatrans/generate.hpp"

#include <string>

namespace omegatrans {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool chance(unsigned per_mille) { return below(1000) < per_mille; }

 private:
  std::mt19937_64 rng_;
};

Word random_word(Draw& d, std::size_t max_len, std::size_t letters) {
  Word w(d.below(max_len + 1));
  for (auto& s : w) s = static_cast<Symbol>(d.below(letters));
  return w;
}

ColorVector random_colors(Draw& d, const GenOptions& o) {
  ColorVector c(o.colorings);
  for (auto& x : c) x = static_cast<Color>(d.below(o.colors));
  return c;
}

}  // namespace

Alphabet letter_alphabet(std::size_t size, char first) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) {
    if (size <= 26 && first + static_cast<int>(i) <= 'z')
      names.emplace_back(1, static_cast<char>(first + static_cast<int>(i)));
    else
      names.push_back(std::string(1, first) + std::to_string(i));
  }
  return Alphabet(names);
}

Transducer random_one_way(std::uint64_t seed, const GenOptions& o) {
  Draw d(seed);
  Transducer m(letter_alphabet(o.input_letters, 'a'), letter_alphabet(o.output_letters, 'x'),
               o.colorings, o.colors);
  for (std::size_t s = 0; s < o.states; ++s)
    m.add_state(std::to_string(s), Polarity::Forward);
  m.set_initial(0);
  for (std::size_t s = 0; s < o.states; ++s)
    for (std::size_t a = 0; a < o.input_letters; ++a) {
      if (!d.chance(o.density)) continue;
      const auto target = static_cast<StateId>(d.below(o.states));
      auto out = random_word(d, o.max_output, o.output_letters);
      m.add_transition(static_cast<StateId>(s), static_cast<Symbol>(a), target, std::move(out),
                       random_colors(d, o));
    }
  return m;
}

Transducer random_two_way(std::uint64_t seed, const GenOptions& o) {
  Draw d(seed);
  Transducer m(letter_alphabet(o.input_letters, 'a'), letter_alphabet(o.output_letters, 'x'),
               o.colorings, o.colors);
  std::vector<StateId> forward;
  for (std::size_t s = 0; s < o.states; ++s) {
    const bool fwd = s == 0 || d.below(2) == 0;
    m.add_state(std::to_string(s), fwd ? Polarity::Forward : Polarity::Backward);
    if (fwd) forward.push_back(static_cast<StateId>(s));
  }
  m.set_initial(0);
  for (std::size_t s = 0; s < o.states; ++s) {
    const auto src = static_cast<StateId>(s);
    if (!m.is_forward(src) && d.chance(o.density)) {
      const auto target = forward[d.below(forward.size())];
      auto out = random_word(d, o.max_output, o.output_letters);
      m.add_transition(src, kLeftEnd, target, std::move(out), random_colors(d, o));
    }
    for (std::size_t a = 0; a < o.input_letters; ++a) {
      if (!d.chance(o.density)) continue;
      const auto target = static_cast<StateId>(d.below(o.states));
      auto out = random_word(d, o.max_output, o.output_letters);
      m.add_transition(src, static_cast<Symbol>(a), target, std::move(out), random_colors(d, o));
    }
  }
  return m;
}

CopylessSst random_sst(std::uint64_t seed, const GenOptions& o) {
  Draw d(seed);
  const std::size_t m = std::max<std::size_t>(o.registers, 1);
  std::vector<std::string> regs{"out"};
  for (std::size_t r = 1; r < m; ++r) regs.push_back(std::string(1, static_cast<char>('A' + r - 1)));
  CopylessSst sst(letter_alphabet(o.input_letters, 'a'), letter_alphabet(o.output_letters, 'x'),
                  o.colorings, o.colors, regs, 0);
  for (std::size_t s = 0; s < o.states; ++s) sst.add_state(std::to_string(s));
  sst.set_initial(0);

  auto letters = [&](Image& img) {
    for (Symbol s : random_word(d, 1, o.output_letters)) img.push_back(Token::letter(s));
  };
  for (std::size_t s = 0; s < o.states; ++s)
    for (std::size_t a = 0; a < o.input_letters; ++a) {
      if (!d.chance(o.density)) continue;
      const auto target = static_cast<StateId>(d.below(o.states));
      // Each register other than out goes to one image (or is dropped).
      std::vector<std::vector<RegisterId>> owned(m);
      for (std::size_t r = 1; r < m; ++r) {
        const auto owner = d.below(m + 1);
        if (owner < m) owned[owner].push_back(static_cast<RegisterId>(r));
      }
      Substitution sigma = resized({}, m);
      for (std::size_t t = 0; t < m; ++t) {
        auto& pool = owned[t];
        for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[d.below(i)]);
        Image& img = sigma.images[t];
        if (t == 0) img.push_back(Token::reg(0));
        letters(img);
        for (RegisterId r : pool) {
          img.push_back(Token::reg(r));
          letters(img);
        }
      }
      sst.add_transition(static_cast<StateId>(s), static_cast<Symbol>(a), target, std::move(sigma),
                         random_colors(d, o));
    }
  return sst;
}

}  // namespace omegatrans
