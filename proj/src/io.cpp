#include "omegatrans/io.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace omegatrans {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Words and lassos

std::string format_word(const Word& w, const Alphabet& alphabet) {
  std::string s;
  const bool compact = alphabet.single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) s += ' ';
    s += alphabet.name(w[i]);
  }
  return s;
}

std::string format_lasso(const Lasso& w, const Alphabet& alphabet) {
  std::string s = format_word(w.prefix, alphabet);
  if (!alphabet.single_char() && !s.empty()) s += ' ';
  return s + "(" + format_word(w.period, alphabet) + ")";
}

namespace {

Word parse_tokens(std::string_view text, const Alphabet& alphabet) {
  Word w;
  if (alphabet.single_char()) {
    for (char ch : text) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      const auto s = alphabet.find(std::string_view(&ch, 1));
      if (!s) throw ParseError(std::string("letter '") + ch + "' is not in the alphabet");
      w.push_back(*s);
    }
    return w;
  }
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const auto s = alphabet.find(tok);
    if (!s) throw ParseError("letter '" + tok + "' is not in the alphabet");
    w.push_back(*s);
  }
  return w;
}

}  // namespace

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  return parse_tokens(text, alphabet);
}

Lasso parse_lasso(std::string_view text, const Alphabet& alphabet) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw ParseError("lasso must be written u(v), e.g. ab(ba)");
  for (char ch : text.substr(close + 1))
    if (!std::isspace(static_cast<unsigned char>(ch)))
      throw ParseError("unexpected text after the period of the lasso");
  Lasso w;
  w.prefix = parse_tokens(text.substr(0, open), alphabet);
  w.period = parse_tokens(text.substr(open + 1, close - open - 1), alphabet);
  if (w.period.empty()) throw ParseError("lasso period must be nonempty");
  return w;
}

// ---------------------------------------------------------------------------
// JSON documents

namespace {

std::string where(std::size_t i) { return "transition " + std::to_string(i) + ": "; }

Alphabet read_alphabet(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw ParseError(std::string("missing array '") + key + "'");
  try {
    return Alphabet(doc[key].get<std::vector<std::string>>());
  } catch (const InvalidMachine& e) {
    throw ParseError(std::string(key) + ": " + e.what());
  }
}

Symbol read_letter(const json& t, const Alphabet& input, std::size_t i) {
  const auto name = t.at("letter").get<std::string>();
  if (name == kLeftEndToken) return kLeftEnd;
  const auto s = input.find(name);
  if (!s) throw ParseError(where(i) + "letter '" + name + "' is not in the input alphabet");
  return *s;
}

ColorVector read_colors(const json& t, std::size_t k, Color bound, std::size_t i) {
  ColorVector c;
  if (t.contains("colors")) c = t["colors"].get<ColorVector>();
  if (c.size() != k)
    throw ParseError(where(i) + "expected " + std::to_string(k) + " colors, got " +
                     std::to_string(c.size()));
  for (Color x : c)
    if (x >= bound) throw ParseError(where(i) + "color " + std::to_string(x) + " is not below " +
                                     std::to_string(bound));
  return c;
}

std::size_t read_colorings(const json& doc) {
  return doc.value("colorings", static_cast<std::size_t>(0));
}

Transducer read_transducer(const json& doc, bool one_way) {
  Transducer m(read_alphabet(doc, "input_alphabet"), read_alphabet(doc, "output_alphabet"),
               read_colorings(doc), doc.value("colors", static_cast<Color>(1)));
  for (const auto& s : doc.at("states")) {
    const auto name = s.at("name").get<std::string>();
    const auto pol = s.value("polarity", std::string("+"));
    if (pol != "+" && pol != "-") throw ParseError("state '" + name + "': polarity must be + or -");
    if (one_way && pol == "-") throw ParseError("state '" + name + "': a 1dpt has no backward states");
    if (m.find_state(name)) throw ParseError("duplicate state '" + name + "'");
    m.add_state(name, pol == "+" ? Polarity::Forward : Polarity::Backward);
  }
  const auto init = doc.at("initial").get<std::string>();
  const auto q0 = m.find_state(init);
  if (!q0) throw ParseError("initial state '" + init + "' is not declared");
  if (!m.is_forward(*q0)) throw ParseError("initial state '" + init + "' must be forward");
  m.set_initial(*q0);

  const auto& transitions = doc.value("transitions", json::array());
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const auto& t = transitions[i];
    const auto from = m.find_state(t.at("from").get<std::string>());
    const auto to = m.find_state(t.at("to").get<std::string>());
    if (!from || !to) throw ParseError(where(i) + "unknown state");
    const Symbol a = read_letter(t, m.input_alphabet(), i);
    if (a == kLeftEnd && (m.is_forward(*from) || !m.is_forward(*to)))
      throw ParseError(where(i) + "endmarker transitions must go from a backward to a forward state");
    Word out;
    for (const auto& o : t.value("output", json::array())) {
      const auto name = o.get<std::string>();
      const auto s = m.output_alphabet().find(name);
      if (!s) throw ParseError(where(i) + "output letter '" + name + "' is not in the output alphabet");
      out.push_back(*s);
    }
    m.add_transition(*from, a, *to, std::move(out),
                     read_colors(t, m.colorings(), m.color_bound(), i));
  }
  return m;
}

CopylessSst read_sst(const json& doc) {
  const auto registers = doc.at("registers").get<std::vector<std::string>>();
  const auto out_name = doc.at("out").get<std::string>();
  RegisterId out = -1;
  for (std::size_t r = 0; r < registers.size(); ++r)
    if (registers[r] == out_name) out = static_cast<RegisterId>(r);
  if (out < 0) throw ParseError("output register '" + out_name + "' is not declared");
  CopylessSst sst(read_alphabet(doc, "input_alphabet"), read_alphabet(doc, "output_alphabet"),
                  read_colorings(doc), doc.value("colors", static_cast<Color>(1)), registers, out);
  for (const auto& s : doc.at("states")) {
    const auto name = s.at("name").get<std::string>();
    if (s.value("polarity", std::string("+")) != "+")
      throw ParseError("state '" + name + "': SST states are forward");
    if (sst.find_state(name)) throw ParseError("duplicate state '" + name + "'");
    sst.add_state(name);
  }
  const auto init = doc.at("initial").get<std::string>();
  const auto q0 = sst.find_state(init);
  if (!q0) throw ParseError("initial state '" + init + "' is not declared");
  sst.set_initial(*q0);

  const auto& transitions = doc.value("transitions", json::array());
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const auto& t = transitions[i];
    const auto from = sst.find_state(t.at("from").get<std::string>());
    const auto to = sst.find_state(t.at("to").get<std::string>());
    if (!from || !to) throw ParseError(where(i) + "unknown state");
    const Symbol a = read_letter(t, sst.input_alphabet(), i);
    if (a == kLeftEnd) throw ParseError(where(i) + "SSTs have no endmarker transitions");
    Substitution sub = resized({}, sst.num_registers());
    const json update = t.value("update", json::object());
    for (const auto& [reg, tokens] : update.items()) {
      const auto r = sst.find_register(reg);
      if (!r) throw ParseError(where(i) + "unknown register '" + reg + "'");
      auto& img = sub.images[static_cast<std::size_t>(*r)];
      for (const auto& tok : tokens) {
        if (tok.contains("reg")) {
          const auto name = tok["reg"].get<std::string>();
          const auto x = sst.find_register(name);
          if (!x) throw ParseError(where(i) + "unknown register '" + name + "'");
          img.push_back(Token::reg(*x));
        } else if (tok.contains("sym")) {
          const auto name = tok["sym"].get<std::string>();
          const auto x = sst.output_alphabet().find(name);
          if (!x) throw ParseError(where(i) + "output letter '" + name + "' is not declared");
          img.push_back(Token::letter(*x));
        } else {
          throw ParseError(where(i) + "update tokens are {\"reg\": ...} or {\"sym\": ...}");
        }
      }
    }
    sst.add_transition(*from, a, *to, std::move(sub),
                       read_colors(t, sst.colorings(), sst.color_bound(), i));
  }
  return sst;
}

json header(const char* kind, const Alphabet& in, const Alphabet& out, std::size_t k, Color l) {
  json doc;
  doc["kind"] = kind;
  doc["input_alphabet"] = in.letters();
  doc["output_alphabet"] = out.letters();
  doc["colorings"] = k;
  doc["colors"] = l;
  return doc;
}

std::string letter_name(Symbol a, const Alphabet& alphabet) {
  return a == kLeftEnd ? std::string(kLeftEndToken) : alphabet.name(a);
}

}  // namespace

Machine parse_machine(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "2dpt") return read_transducer(doc, false);
    if (kind == "1dpt") return read_transducer(doc, true);
    if (kind == "cpsst") return read_sst(doc);
    throw ParseError("unknown machine kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad machine document: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Machine load_machine(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_machine(text);
}

std::string to_json(const Transducer& m) {
  bool one_way = m.is_one_way();
  for (const auto& t : m.transitions()) one_way = one_way && t.letter != kLeftEnd;
  json doc = header(one_way ? "1dpt" : "2dpt", m.input_alphabet(), m.output_alphabet(),
                    m.colorings(), m.color_bound());
  json states = json::array();
  for (std::size_t s = 0; s < m.num_states(); ++s)
    states.push_back({{"name", m.state_name(static_cast<StateId>(s))},
                      {"polarity", m.is_forward(static_cast<StateId>(s)) ? "+" : "-"}});
  doc["states"] = states;
  doc["initial"] = m.initial() == kNoState ? "" : m.state_name(m.initial());
  json ts = json::array();
  for (const auto& t : m.transitions()) {
    json out = json::array();
    for (Symbol b : t.output) out.push_back(m.output_alphabet().name(b));
    ts.push_back({{"from", m.state_name(t.source)},
                  {"letter", letter_name(t.letter, m.input_alphabet())},
                  {"to", m.state_name(t.target)},
                  {"output", out},
                  {"colors", t.colors}});
  }
  doc["transitions"] = ts;
  return doc.dump(2) + "\n";
}

std::string to_json(const CopylessSst& sst) {
  json doc = header("cpsst", sst.input_alphabet(), sst.output_alphabet(), sst.colorings(),
                    sst.color_bound());
  doc["registers"] = sst.registers();
  doc["out"] = sst.registers()[static_cast<std::size_t>(sst.out())];
  json states = json::array();
  for (std::size_t s = 0; s < sst.num_states(); ++s)
    states.push_back({{"name", sst.state_name(static_cast<StateId>(s))}, {"polarity", "+"}});
  doc["states"] = states;
  doc["initial"] = sst.initial() == kNoState ? "" : sst.state_name(sst.initial());
  json ts = json::array();
  for (const auto& t : sst.transitions()) {
    json update = json::object();
    for (std::size_t r = 0; r < sst.num_registers(); ++r) {
      const auto& img = t.update.image(static_cast<RegisterId>(r));
      if (img.empty()) continue;
      json tokens = json::array();
      for (const auto& tok : img) {
        if (tok.is_register())
          tokens.push_back({{"reg", sst.registers()[static_cast<std::size_t>(tok.value)]}});
        else
          tokens.push_back({{"sym", sst.output_alphabet().name(tok.value)}});
      }
      update[sst.registers()[r]] = tokens;
    }
    ts.push_back({{"from", sst.state_name(t.source)},
                  {"letter", sst.input_alphabet().name(t.letter)},
                  {"to", sst.state_name(t.target)},
                  {"update", update},
                  {"colors", t.colors}});
  }
  doc["transitions"] = ts;
  return doc.dump(2) + "\n";
}

std::string to_json(const Machine& machine) {
  return std::visit([](const auto& m) { return to_json(m); }, machine);
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string dot_escape(const std::string& s) {
  std::string r;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') r += '\\';
    r += ch;
  }
  return r;
}

std::string color_suffix(const ColorVector& c) {
  if (c.empty()) return "";
  std::string s = " : ";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s;
}

}  // namespace

std::string to_dot(const Transducer& m) {
  std::ostringstream os;
  os << "digraph transducer {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    const auto id = static_cast<StateId>(s);
    // forward states are circles, backward states boxes
    os << "  q" << s << " [label=\"" << (m.is_forward(id) ? "+" : "-")
       << dot_escape(m.state_name(id)) << "\", shape=" << (m.is_forward(id) ? "circle" : "box")
       << "];\n";
  }
  if (m.initial() != kNoState) os << "  init -> q" << m.initial() << ";\n";
  for (const auto& t : m.transitions()) {
    const auto out = t.output.empty() ? std::string("ε") : format_word(t.output, m.output_alphabet());
    const auto a = t.letter == kLeftEnd ? std::string("⊢") : m.input_alphabet().name(t.letter);
    os << "  q" << t.source << " -> q" << t.target << " [label=\""
       << dot_escape(a + "|" + out + color_suffix(t.colors)) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const CopylessSst& sst) {
  std::ostringstream os;
  os << "digraph sst {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t s = 0; s < sst.num_states(); ++s)
    os << "  q" << s << " [label=\"" << dot_escape(sst.state_name(static_cast<StateId>(s)))
       << "\", shape=circle];\n";
  if (sst.initial() != kNoState) os << "  init -> q" << sst.initial() << ";\n";
  for (const auto& t : sst.transitions())
    os << "  q" << t.source << " -> q" << t.target << " [label=\""
       << dot_escape(sst.input_alphabet().name(t.letter) + " | " + to_string(t.update, sst) +
                     color_suffix(t.colors))
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace omegatrans
