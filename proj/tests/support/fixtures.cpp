#include "fixtures.hpp"

#include <stdexcept>

#include "omegatrans/io.hpp"

namespace fixtures {

namespace {

Machine load(const std::string& file) {
  return load_machine(std::string(OMEGATRANS_MACHINES_DIR) + "/" + file);
}

}  // namespace

Transducer bundled_transducer(const std::string& file) {
  return std::get<Transducer>(load(file));
}

CopylessSst bundled_sst(const std::string& file) { return std::get<CopylessSst>(load(file)); }

Lasso lasso(const std::string& text, const Alphabet& alphabet) {
  return parse_lasso(text, alphabet);
}

Transducer single_loop(Color color, const std::string& out) {
  Transducer m(Alphabet({"a", "b"}), Alphabet({"x"}), 1, color + 1);
  m.set_initial(m.add_state("q", Polarity::Forward));
  Word w;
  for (char c : out) w.push_back(m.output_alphabet().at(std::string(1, c)));
  m.add_transition(0, 0, 0, w, {color});
  m.add_transition(0, 1, 0, w, {color});
  return m;
}

GenOptions one_way_options(std::uint64_t seed) {
  GenOptions o;
  o.states = 1 + seed % 4;
  o.colorings = (seed / 4) % 3;
  o.colors = static_cast<Color>(1 + (seed / 12) % 3);
  return o;
}

GenOptions two_way_options(std::uint64_t seed) {
  GenOptions o;
  o.states = 1 + seed % 3;
  o.colorings = 1;
  o.colors = static_cast<Color>(1 + (seed / 3) % 2);
  return o;
}

GenOptions pipeline_options(std::uint64_t seed) {
  GenOptions o;
  o.states = 1 + seed % 3;
  o.colorings = (seed / 3) % 3;
  o.colors = static_cast<Color>(1 + (seed / 9) % 3);
  return o;
}

}  // namespace fixtures
