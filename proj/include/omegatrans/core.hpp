// Machine data model shared by every construction: two-way parity transducers
// (which also house one-way machines and automata) and copyless parity
// streaming string transducers.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace omegatrans {

/// Letter index into an Alphabet. The left endmarker lives outside every
/// alphabet and is encoded as kLeftEnd.
using Symbol = std::int32_t;
inline constexpr Symbol kLeftEnd = -1;
inline constexpr std::string_view kLeftEndToken = "$lend";

using Word = std::vector<Symbol>;
using Color = std::uint32_t;
using ColorVector = std::vector<Color>;
using StateId = std::int32_t;
inline constexpr StateId kNoState = -1;

enum class Polarity : std::uint8_t { Forward, Backward };

inline Polarity flip(Polarity p) {
  return p == Polarity::Forward ? Polarity::Backward : Polarity::Forward;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};
class NotReversible : public Error {
 public:
  using Error::Error;
};
class NotDeterministic : public Error {
 public:
  using Error::Error;
};
class InvalidMachine : public Error {
 public:
  using Error::Error;
};
class InvalidSst : public Error {
 public:
  using Error::Error;
};
class StateExplosion : public Error {
 public:
  using Error::Error;
};

/// Finite, ordered set of printable tokens.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<std::string>& letters() const { return letters_; }

  /// Name of a symbol; kLeftEnd renders as "$lend".
  const std::string& name(Symbol s) const;
  std::optional<Symbol> find(std::string_view token) const;
  Symbol at(std::string_view token) const;

  /// True when every token is a single character, so words can be written
  /// without separators.
  bool single_char() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, Symbol> index_;
};

struct Transition {
  StateId source = kNoState;
  Symbol letter = 0;
  StateId target = kNoState;
  Word output;
  ColorVector colors;
};

/// Two-way parity transducer. Transitions are kept in declaration order; the
/// lookup table maps (state, letter) to the first declaration, so the machine
/// is deterministic by representation while validate_deterministic can still
/// report duplicate declarations coming from a source document.
class Transducer {
 public:
  Transducer() = default;
  Transducer(Alphabet input, Alphabet output, std::size_t colorings, Color color_bound);

  const Alphabet& input_alphabet() const { return input_; }
  const Alphabet& output_alphabet() const { return output_; }
  std::size_t colorings() const { return colorings_; }
  Color color_bound() const { return color_bound_; }
  void set_color_bound(Color bound) { color_bound_ = bound; }

  StateId add_state(std::string name, Polarity polarity);
  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(StateId s) const { return names_.at(static_cast<std::size_t>(s)); }
  Polarity polarity(StateId s) const { return polarities_[static_cast<std::size_t>(s)]; }
  bool is_forward(StateId s) const { return polarity(s) == Polarity::Forward; }
  std::optional<StateId> find_state(std::string_view name) const;

  StateId initial() const { return initial_; }
  void set_initial(StateId s) { initial_ = s; }

  std::size_t add_transition(StateId source, Symbol letter, StateId target, Word output,
                             ColorVector colors);
  const std::vector<Transition>& transitions() const { return transitions_; }

  /// The transition taken from `state` on `letter`, or nullptr.
  const Transition* find(StateId state, Symbol letter) const {
    const auto idx = table_[slot(state, letter)];
    return idx < 0 ? nullptr : &transitions_[static_cast<std::size_t>(idx)];
  }
  std::int32_t find_index(StateId state, Symbol letter) const { return table_[slot(state, letter)]; }

  bool is_one_way() const;
  std::size_t num_backward_states() const;

  /// Largest color used by coloring `index` on any transition, if any.
  std::optional<Color> max_color(std::size_t index) const;

 private:
  std::size_t slot(StateId state, Symbol letter) const {
    return static_cast<std::size_t>(state) * stride_ + static_cast<std::size_t>(letter + 1);
  }

  Alphabet input_;
  Alphabet output_;
  std::size_t colorings_ = 0;
  Color color_bound_ = 1;
  std::size_t stride_ = 1;
  std::vector<std::string> names_;
  std::vector<Polarity> polarities_;
  std::unordered_map<std::string, StateId> name_index_;
  StateId initial_ = kNoState;
  std::vector<Transition> transitions_;
  std::vector<std::int32_t> table_;
};

bool validate_deterministic(const Transducer& machine);
bool validate_codeterministic(const Transducer& machine);
bool validate_reversible(const Transducer& machine);

/// Every structural rule a loaded machine must satisfy: initial state set and
/// forward, endmarker convention, color vector shape and bounds.
/// Determinism is checked separately.
std::vector<std::string> structural_violations(const Transducer& machine);

/// Throws InvalidMachine listing structural_violations, or NotDeterministic.
void require_well_formed(const Transducer& machine);

/// A copy of `machine` restricted to the states reachable from its initial state.
Transducer prune_unreachable(const Transducer& machine);

/// Smallest odd value that is >= every value coloring `index` takes on the
/// machine's transitions (1 when the coloring is unused).
Color odd_ceiling(const Transducer& machine, std::size_t index);

// ---------------------------------------------------------------------------
// Streaming string transducers

using RegisterId = std::int32_t;

struct Token {
  enum class Kind : std::uint8_t { Register, Letter };
  Kind kind = Kind::Letter;
  std::int32_t value = 0;

  static Token reg(RegisterId r) { return {Kind::Register, r}; }
  static Token letter(Symbol s) { return {Kind::Letter, s}; }
  bool is_register() const { return kind == Kind::Register; }

  friend bool operator==(const Token& a, const Token& b) {
    return a.kind == b.kind && a.value == b.value;
  }
  friend bool operator<(const Token& a, const Token& b) {
    return a.kind != b.kind ? a.kind < b.kind : a.value < b.value;
  }
};

using Image = std::vector<Token>;

/// Per-register images; registers missing from `images` map to the empty word.
struct Substitution {
  std::vector<Image> images;

  const Image& image(RegisterId r) const;
  friend bool operator==(const Substitution& a, const Substitution& b);
  friend bool operator<(const Substitution& a, const Substitution& b);
};

/// Normalizes `s` to exactly `registers` images (pads with empty images).
Substitution resized(Substitution s, std::size_t registers);

/// Result of applying `first` to each image of `second`: the substitution
/// equivalent to performing `first` and then `second` on a valuation.
Substitution then(const Substitution& first, const Substitution& second);

struct SstTransition {
  StateId source = kNoState;
  Symbol letter = 0;
  StateId target = kNoState;
  Substitution update;
  ColorVector colors;
};

/// Copyless parity SST: a one-way deterministic parity automaton whose
/// transitions update registers; the distinguished register `out` only grows.
class CopylessSst {
 public:
  CopylessSst() = default;
  CopylessSst(Alphabet input, Alphabet output, std::size_t colorings, Color color_bound,
              std::vector<std::string> registers, RegisterId out);

  const Alphabet& input_alphabet() const { return input_; }
  const Alphabet& output_alphabet() const { return output_; }
  std::size_t colorings() const { return colorings_; }
  Color color_bound() const { return color_bound_; }

  const std::vector<std::string>& registers() const { return registers_; }
  std::size_t num_registers() const { return registers_.size(); }
  RegisterId out() const { return out_; }
  std::optional<RegisterId> find_register(std::string_view name) const;

  StateId add_state(std::string name);
  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(StateId s) const { return names_.at(static_cast<std::size_t>(s)); }
  std::optional<StateId> find_state(std::string_view name) const;
  StateId initial() const { return initial_; }
  void set_initial(StateId s) { initial_ = s; }

  std::size_t add_transition(StateId source, Symbol letter, StateId target, Substitution update,
                             ColorVector colors);
  const std::vector<SstTransition>& transitions() const { return transitions_; }
  const SstTransition* find(StateId state, Symbol letter) const {
    const auto idx = table_[static_cast<std::size_t>(state) * input_.size() +
                            static_cast<std::size_t>(letter)];
    return idx < 0 ? nullptr : &transitions_[static_cast<std::size_t>(idx)];
  }

 private:
  Alphabet input_;
  Alphabet output_;
  std::size_t colorings_ = 0;
  Color color_bound_ = 1;
  std::vector<std::string> registers_;
  RegisterId out_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> name_index_;
  StateId initial_ = kNoState;
  std::vector<SstTransition> transitions_;
  std::vector<std::int32_t> table_;
};

struct SstViolation {
  enum class Rule : std::uint8_t { Copyless, OutDiscipline, Structure };
  std::size_t transition = 0;
  Rule rule = Rule::Structure;
  std::string message;
};

/// Empty iff every update is copyless and keeps `out` as the head of its own image.
std::vector<SstViolation> validate_sst(const CopylessSst& sst);

/// Throws InvalidSst when validate_sst reports anything or the machine is
/// structurally broken (missing initial state, bad colors, duplicate keys).
void require_valid_sst(const CopylessSst& sst);

/// Human-readable rendering such as "out:=out 'a'; X:='a' X".
std::string to_string(const Substitution& s, const CopylessSst& sst);

}  // namespace omegatrans
