// JSON machine documents, lasso syntax and DOT export.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "omegatrans/core.hpp"
#include "omegatrans/lasso.hpp"

namespace omegatrans {

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Letters concatenated when the alphabet is single-character, else
/// space-separated.
std::string format_word(const Word& w, const Alphabet& alphabet);
/// `u(v)` syntax, e.g. "ab(ba)".
std::string format_lasso(const Lasso& w, const Alphabet& alphabet);
/// Parses `u(v)`. Single-character alphabets read one letter per character;
/// otherwise tokens are whitespace-separated. Throws ParseError.
Lasso parse_lasso(std::string_view text, const Alphabet& alphabet);
Word parse_word(std::string_view text, const Alphabet& alphabet);

using Machine = std::variant<Transducer, CopylessSst>;

/// Accepts kinds "2dpt", "1dpt" and "cpsst". Structural problems are reported
/// as ParseError with the offending transition index; semantic checks
/// (determinism, copylessness) are left to the validators.
Machine parse_machine(std::string_view json_text);
Machine load_machine(const std::string& path);  // "-" reads stdin

std::string to_json(const Transducer& machine);
std::string to_json(const CopylessSst& sst);
std::string to_json(const Machine& machine);

std::string to_dot(const Transducer& machine);
std::string to_dot(const CopylessSst& sst);

}  // namespace omegatrans
