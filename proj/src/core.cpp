#include "omegatrans/core.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace omegatrans {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const auto& token = letters_[i];
    if (token.empty()) throw InvalidMachine("alphabet contains an empty token");
    if (token == kLeftEndToken) {
      throw InvalidMachine("the left endmarker '$lend' cannot be declared as an alphabet letter");
    }
    if (!index_.emplace(token, static_cast<Symbol>(i)).second) {
      throw InvalidMachine("duplicate alphabet letter '" + token + "'");
    }
  }
}

const std::string& Alphabet::name(Symbol s) const {
  static const std::string left_end{kLeftEndToken};
  if (s == kLeftEnd) return left_end;
  return letters_.at(static_cast<std::size_t>(s));
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  if (token == kLeftEndToken) return kLeftEnd;
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view token) const {
  auto s = find(token);
  if (!s) throw InvalidMachine("unknown letter '" + std::string(token) + "'");
  return *s;
}

bool Alphabet::single_char() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](const std::string& t) { return t.size() == 1; });
}

// ---------------------------------------------------------------------------
// Transducer

Transducer::Transducer(Alphabet input, Alphabet output, std::size_t colorings, Color color_bound)
    : input_(std::move(input)),
      output_(std::move(output)),
      colorings_(colorings),
      color_bound_(color_bound),
      stride_(input_.size() + 1) {}

StateId Transducer::add_state(std::string name, Polarity polarity) {
  const auto id = static_cast<StateId>(names_.size());
  if (!name_index_.emplace(name, id).second) {
    throw InvalidMachine("duplicate state name '" + name + "'");
  }
  names_.push_back(std::move(name));
  polarities_.push_back(polarity);
  table_.resize(table_.size() + stride_, -1);
  return id;
}

std::optional<StateId> Transducer::find_state(std::string_view name) const {
  auto it = name_index_.find(std::string(name));
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Transducer::add_transition(StateId source, Symbol letter, StateId target, Word output,
                                       ColorVector colors) {
  if (source < 0 || static_cast<std::size_t>(source) >= num_states() || target < 0 ||
      static_cast<std::size_t>(target) >= num_states()) {
    throw InvalidMachine("transition refers to an unknown state");
  }
  if (letter < kLeftEnd || letter >= static_cast<Symbol>(input_.size())) {
    throw InvalidMachine("transition letter outside the input alphabet");
  }
  const auto idx = transitions_.size();
  transitions_.push_back({source, letter, target, std::move(output), std::move(colors)});
  auto& cell = table_[slot(source, letter)];
  if (cell < 0) cell = static_cast<std::int32_t>(idx);
  return idx;
}

bool Transducer::is_one_way() const {
  return std::all_of(polarities_.begin(), polarities_.end(),
                     [](Polarity p) { return p == Polarity::Forward; });
}

std::size_t Transducer::num_backward_states() const {
  return static_cast<std::size_t>(
      std::count(polarities_.begin(), polarities_.end(), Polarity::Backward));
}

std::optional<Color> Transducer::max_color(std::size_t index) const {
  std::optional<Color> best;
  for (const auto& t : transitions_) {
    if (index < t.colors.size() && (!best || t.colors[index] > *best)) best = t.colors[index];
  }
  return best;
}

bool validate_deterministic(const Transducer& machine) {
  std::set<std::pair<StateId, Symbol>> seen;
  for (const auto& t : machine.transitions()) {
    if (!seen.emplace(t.source, t.letter).second) return false;
  }
  return true;
}

bool validate_codeterministic(const Transducer& machine) {
  std::map<std::pair<Symbol, StateId>, StateId> source_of;
  for (const auto& t : machine.transitions()) {
    auto [it, inserted] = source_of.emplace(std::make_pair(t.letter, t.target), t.source);
    if (!inserted && it->second != t.source) return false;
  }
  return true;
}

bool validate_reversible(const Transducer& machine) {
  return validate_deterministic(machine) && validate_codeterministic(machine);
}

std::vector<std::string> structural_violations(const Transducer& machine) {
  std::vector<std::string> out;
  if (machine.initial() == kNoState) {
    out.emplace_back("no initial state");
  } else if (!machine.is_forward(machine.initial())) {
    out.emplace_back("initial state '" + machine.state_name(machine.initial()) +
                     "' must be forward");
  }
  const auto& ts = machine.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    const auto where = "transition #" + std::to_string(i) + " (" + machine.state_name(t.source) +
                       ", " + machine.input_alphabet().name(t.letter) + ")";
    if (t.letter == kLeftEnd &&
        (machine.is_forward(t.source) || !machine.is_forward(t.target))) {
      out.push_back(where + ": endmarker transitions must go from a backward to a forward state");
    }
    if (t.colors.size() != machine.colorings()) {
      out.push_back(where + ": expected " + std::to_string(machine.colorings()) + " colors, got " +
                    std::to_string(t.colors.size()));
    }
    for (auto c : t.colors) {
      if (c >= machine.color_bound()) {
        out.push_back(where + ": color " + std::to_string(c) + " is not below the bound " +
                      std::to_string(machine.color_bound()));
      }
    }
    for (auto b : t.output) {
      if (b < 0 || static_cast<std::size_t>(b) >= machine.output_alphabet().size()) {
        out.push_back(where + ": output letter outside the output alphabet");
        break;
      }
    }
  }
  return out;
}

void require_well_formed(const Transducer& machine) {
  auto violations = structural_violations(machine);
  if (!violations.empty()) {
    std::string msg = "malformed machine:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw InvalidMachine(msg);
  }
  if (!validate_deterministic(machine)) {
    throw NotDeterministic("machine declares two transitions for the same (state, letter)");
  }
}

Transducer prune_unreachable(const Transducer& machine) {
  const auto n = machine.num_states();
  std::vector<StateId> remap(n, kNoState);
  std::vector<StateId> order;
  std::queue<StateId> work;
  if (machine.initial() != kNoState) {
    remap[static_cast<std::size_t>(machine.initial())] = 0;
    order.push_back(machine.initial());
    work.push(machine.initial());
  }
  const auto letters = static_cast<Symbol>(machine.input_alphabet().size());
  while (!work.empty()) {
    const auto s = work.front();
    work.pop();
    for (Symbol a = kLeftEnd; a < letters; ++a) {
      const auto* t = machine.find(s, a);
      if (t == nullptr) continue;
      auto& slot = remap[static_cast<std::size_t>(t->target)];
      if (slot == kNoState) {
        slot = static_cast<StateId>(order.size());
        order.push_back(t->target);
        work.push(t->target);
      }
    }
  }
  Transducer result(machine.input_alphabet(), machine.output_alphabet(), machine.colorings(),
                    machine.color_bound());
  for (auto s : order) result.add_state(machine.state_name(s), machine.polarity(s));
  if (!order.empty()) result.set_initial(0);
  for (auto s : order) {
    for (Symbol a = kLeftEnd; a < letters; ++a) {
      const auto* t = machine.find(s, a);
      if (t == nullptr) continue;
      result.add_transition(remap[static_cast<std::size_t>(s)], a,
                            remap[static_cast<std::size_t>(t->target)], t->output, t->colors);
    }
  }
  return result;
}

Color odd_ceiling(const Transducer& machine, std::size_t index) {
  const auto top = machine.max_color(index).value_or(0);
  return top % 2 == 1 ? top : top + 1;
}

// ---------------------------------------------------------------------------
// Substitutions

const Image& Substitution::image(RegisterId r) const {
  static const Image empty;
  const auto idx = static_cast<std::size_t>(r);
  return idx < images.size() ? images[idx] : empty;
}

bool operator==(const Substitution& a, const Substitution& b) {
  const auto n = std::max(a.images.size(), b.images.size());
  for (std::size_t r = 0; r < n; ++r) {
    if (a.image(static_cast<RegisterId>(r)) != b.image(static_cast<RegisterId>(r))) return false;
  }
  return true;
}

bool operator<(const Substitution& a, const Substitution& b) {
  const auto n = std::max(a.images.size(), b.images.size());
  for (std::size_t r = 0; r < n; ++r) {
    const auto& x = a.image(static_cast<RegisterId>(r));
    const auto& y = b.image(static_cast<RegisterId>(r));
    if (x != y) return x < y;
  }
  return false;
}

Substitution resized(Substitution s, std::size_t registers) {
  s.images.resize(registers);
  return s;
}

Substitution then(const Substitution& first, const Substitution& second) {
  Substitution result;
  result.images.resize(std::max(first.images.size(), second.images.size()));
  for (std::size_t r = 0; r < result.images.size(); ++r) {
    auto& img = result.images[r];
    for (const auto& tok : second.image(static_cast<RegisterId>(r))) {
      if (tok.is_register()) {
        const auto& inner = first.image(tok.value);
        img.insert(img.end(), inner.begin(), inner.end());
      } else {
        img.push_back(tok);
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// CopylessSst

CopylessSst::CopylessSst(Alphabet input, Alphabet output, std::size_t colorings,
                         Color color_bound, std::vector<std::string> registers, RegisterId out)
    : input_(std::move(input)),
      output_(std::move(output)),
      colorings_(colorings),
      color_bound_(color_bound),
      registers_(std::move(registers)),
      out_(out) {
  std::set<std::string> seen;
  for (const auto& r : registers_) {
    if (!seen.insert(r).second) throw InvalidSst("duplicate register '" + r + "'");
  }
  if (out_ < 0 || static_cast<std::size_t>(out_) >= registers_.size()) {
    throw InvalidSst("output register is not a declared register");
  }
}

std::optional<RegisterId> CopylessSst::find_register(std::string_view name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i] == name) return static_cast<RegisterId>(i);
  }
  return std::nullopt;
}

StateId CopylessSst::add_state(std::string name) {
  const auto id = static_cast<StateId>(names_.size());
  if (!name_index_.emplace(name, id).second) {
    throw InvalidSst("duplicate state name '" + name + "'");
  }
  names_.push_back(std::move(name));
  table_.resize(table_.size() + input_.size(), -1);
  return id;
}

std::optional<StateId> CopylessSst::find_state(std::string_view name) const {
  auto it = name_index_.find(std::string(name));
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CopylessSst::add_transition(StateId source, Symbol letter, StateId target,
                                        Substitution update, ColorVector colors) {
  if (source < 0 || static_cast<std::size_t>(source) >= num_states() || target < 0 ||
      static_cast<std::size_t>(target) >= num_states()) {
    throw InvalidSst("transition refers to an unknown state");
  }
  if (letter < 0 || letter >= static_cast<Symbol>(input_.size())) {
    throw InvalidSst("SST transitions must read a letter of the input alphabet");
  }
  const auto idx = transitions_.size();
  transitions_.push_back(
      {source, letter, target, resized(std::move(update), registers_.size()), std::move(colors)});
  auto& cell = table_[static_cast<std::size_t>(source) * input_.size() +
                      static_cast<std::size_t>(letter)];
  if (cell < 0) cell = static_cast<std::int32_t>(idx);
  return idx;
}

std::vector<SstViolation> validate_sst(const CopylessSst& sst) {
  std::vector<SstViolation> out;
  const auto& ts = sst.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    const auto where = "transition #" + std::to_string(i) + " (" + sst.state_name(t.source) + ", " +
                       sst.input_alphabet().name(t.letter) + ")";
    std::vector<int> uses(sst.num_registers(), 0);
    bool bad_token = false;
    for (const auto& img : t.update.images) {
      for (const auto& tok : img) {
        if (tok.is_register()) {
          if (tok.value < 0 || static_cast<std::size_t>(tok.value) >= sst.num_registers()) {
            bad_token = true;
          } else {
            ++uses[static_cast<std::size_t>(tok.value)];
          }
        } else if (tok.value < 0 ||
                   static_cast<std::size_t>(tok.value) >= sst.output_alphabet().size()) {
          bad_token = true;
        }
      }
    }
    if (bad_token) {
      out.push_back({i, SstViolation::Rule::Structure, where + ": token outside registers/alphabet"});
    }
    for (std::size_t r = 0; r < uses.size(); ++r) {
      if (uses[r] > 1) {
        out.push_back({i, SstViolation::Rule::Copyless,
                       where + ": register '" + sst.registers()[r] + "' used " +
                           std::to_string(uses[r]) + " times"});
      }
    }
    const auto& out_img = t.update.image(sst.out());
    if (out_img.empty() || out_img.front() != Token::reg(sst.out())) {
      out.push_back({i, SstViolation::Rule::OutDiscipline,
                     where + ": image of '" + sst.registers()[static_cast<std::size_t>(sst.out())] +
                         "' must start with itself"});
    }
  }
  return out;
}

void require_valid_sst(const CopylessSst& sst) {
  std::string msg;
  if (sst.initial() == kNoState) msg += "\n  no initial state";
  std::set<std::pair<StateId, Symbol>> keys;
  for (std::size_t i = 0; i < sst.transitions().size(); ++i) {
    const auto& t = sst.transitions()[i];
    if (!keys.emplace(t.source, t.letter).second) {
      msg += "\n  transition #" + std::to_string(i) + " duplicates an earlier (state, letter)";
    }
    if (t.colors.size() != sst.colorings()) {
      msg += "\n  transition #" + std::to_string(i) + " has the wrong number of colors";
    }
    for (auto c : t.colors) {
      if (c >= sst.color_bound()) {
        msg += "\n  transition #" + std::to_string(i) + " uses a color above the bound";
      }
    }
  }
  for (const auto& v : validate_sst(sst)) msg += "\n  " + v.message;
  if (!msg.empty()) throw InvalidSst("invalid SST:" + msg);
}

std::string to_string(const Substitution& s, const CopylessSst& sst) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t r = 0; r < sst.num_registers(); ++r) {
    const auto& img = s.image(static_cast<RegisterId>(r));
    // Identity images are implicit in the rendering.
    if (img.size() == 1 && img.front() == Token::reg(static_cast<RegisterId>(r))) continue;
    if (!first) os << "; ";
    first = false;
    os << sst.registers()[r] << ":=";
    if (img.empty()) os << "()";
    for (std::size_t i = 0; i < img.size(); ++i) {
      if (i > 0) os << ' ';
      if (img[i].is_register()) {
        os << sst.registers()[static_cast<std::size_t>(img[i].value)];
      } else {
        os << '\'' << sst.output_alphabet().name(img[i].value) << '\'';
      }
    }
  }
  if (first) os << "id";
  return os.str();
}

}  // namespace omegatrans
