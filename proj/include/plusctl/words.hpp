#pragma once

// Free group words over a named generating set, and the presentation text
// format used by all tools:
//
//   file     := "gens:" namelist ";" "rels:" wordlist
//   namelist := name ("," name)*
//   wordlist := word ("," word)* | empty
//   word     := factor+
//   factor   := name | "(" word ")" | factor "^" integer
//
// Whitespace is insignificant between tokens.  A bare generator admits only
// positive powers; inverses are written as parenthesized subwords with a
// negative exponent, e.g. "a b (a)^-1 (c)^-2".  The identifiers "kernel",
// "decomp" and "assert" are reserved as section keywords of the extended
// kernel / SES file formats and cannot name generators.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plusctl/errors.hpp"

namespace plusctl {

/// A word in a free group.  Letter +i stands for generator i (1-based),
/// letter -i for its inverse.  Words are not implicitly reduced; call
/// free_reduce where reduction is wanted.
struct Word {
  std::vector<std::int32_t> letters;

  Word() = default;
  explicit Word(std::vector<std::int32_t> ls) : letters(std::move(ls)) {}

  static Word generator(int index) { return Word({static_cast<std::int32_t>(index)}); }

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) { return a.letters < b.letters; }
};

/// Concatenation in the free monoid on letters; no cancellation is performed.
inline Word operator*(const Word& a, const Word& b) {
  Word r;
  r.letters.reserve(a.size() + b.size());
  r.letters.insert(r.letters.end(), a.letters.begin(), a.letters.end());
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

/// Formal inverse: reverse the letters and flip signs.
inline Word inverse(const Word& w) {
  Word r;
  r.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(-*it);
  return r;
}

/// Cancel all adjacent x x^-1 pairs.  Idempotent, never lengthens.
inline Word free_reduce(const Word& w) {
  Word r;
  r.letters.reserve(w.size());
  for (std::int32_t l : w.letters) {
    if (l == 0) throw ValidationError("word contains a zero letter");
    if (!r.letters.empty() && r.letters.back() == -l)
      r.letters.pop_back();
    else
      r.letters.push_back(l);
  }
  return r;
}

/// w^e for any integer e (repeated concatenation, no reduction).
inline Word power(const Word& w, long long e) {
  const Word base = e >= 0 ? w : inverse(w);
  const unsigned long long n = e >= 0 ? static_cast<unsigned long long>(e)
                                      : static_cast<unsigned long long>(-(e + 1)) + 1;
  Word r;
  r.letters.reserve(w.size() * static_cast<std::size_t>(n));
  for (unsigned long long i = 0; i < n; ++i)
    r.letters.insert(r.letters.end(), base.letters.begin(), base.letters.end());
  return r;
}

/// [g, h] = g h g^-1 h^-1, freely reduced.
inline Word commutator(const Word& g, const Word& h) {
  return free_reduce(g * h * inverse(g) * inverse(h));
}

/// w^-1 v w, freely reduced.
inline Word conjugate(const Word& v, const Word& w) {
  return free_reduce(inverse(w) * v * w);
}

/// One factor of a relator-consequence product: w^-1 R^sigma w.
struct ConjugatedRelator {
  Word conjugator;  // w
  Word relator;     // R
  int sign = 1;     // +1 or -1
};

/// Product of conjugated relators, freely reduced.  Words built this way are
/// identities of the presented group by construction, checkable by free
/// reduction against any claimed equal word.
inline Word conjugate_relator_product(const std::vector<ConjugatedRelator>& terms) {
  Word acc;
  for (const auto& t : terms) {
    if (t.sign != 1 && t.sign != -1) throw ValidationError("conjugated relator sign must be +1 or -1");
    const Word r = t.sign == 1 ? t.relator : inverse(t.relator);
    acc = acc * inverse(t.conjugator) * r * t.conjugator;
  }
  return free_reduce(acc);
}

/// Exponent sums per generator; index 0 holds the sum for generator 1.
/// This is the abelianization map, a homomorphism on concatenation.
inline std::vector<long long> exponent_sum_vector(const Word& w, int generator_count) {
  std::vector<long long> v(static_cast<std::size_t>(generator_count), 0);
  for (std::int32_t l : w.letters) {
    const int idx = l > 0 ? l : -l;
    if (idx < 1 || idx > generator_count) throw ValidationError("letter outside generator range");
    v[static_cast<std::size_t>(idx - 1)] += l > 0 ? 1 : -1;
  }
  return v;
}

inline bool is_reserved_name(std::string_view s) {
  return s == "kernel" || s == "decomp" || s == "assert";
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

/// A finite presentation: named generators plus relator words over them.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int generator_count() const { return static_cast<int>(generators.size()); }

  /// 1-based index of a generator name, or 0 if absent.
  int generator_index(std::string_view name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return static_cast<int>(i) + 1;
    return 0;
  }

  /// Enforce the structural invariants; throws ValidationError.
  void validate() const {
    if (generators.empty()) throw ValidationError("empty generator list");
    for (const auto& g : generators) {
      if (!is_identifier(g)) throw ValidationError("generator name '" + g + "' is not an identifier");
      if (is_reserved_name(g)) throw ValidationError("generator name '" + g + "' is reserved");
    }
    for (std::size_t i = 0; i < generators.size(); ++i)
      for (std::size_t j = i + 1; j < generators.size(); ++j)
        if (generators[i] == generators[j])
          throw ValidationError("duplicate generator name '" + generators[i] + "'");
    for (const auto& r : relators)
      for (std::int32_t l : r.letters) {
        const int idx = l > 0 ? l : -l;
        if (l == 0 || idx > generator_count())
          throw ValidationError("relator uses a letter outside the generator list");
      }
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.generators == b.generators && a.relators == b.relators;
  }
};

namespace detail {

struct Token {
  enum Kind { Ident, Integer, Comma, Semi, Colon, LParen, RParen, Caret, End } kind = End;
  std::string text;
  long long value = 0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    tok_ = Token{};
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = Token::End;
      return;
    }
    const char c = src_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      tok_.kind = Token::Ident;
      tok_.text = std::string(src_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      std::size_t j = i_ + 1;
      if ((c == '-' || c == '+') &&
          (j >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[j]))))
        throw ParseError("stray sign", i_);
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      tok_.kind = Token::Integer;
      tok_.text = std::string(src_.substr(i_, j - i_));
      try {
        tok_.value = std::stoll(tok_.text);
      } catch (const std::out_of_range&) {
        throw ParseError("integer literal out of range", i_);
      }
      i_ = j;
      return;
    }
    switch (c) {
      case ',': tok_.kind = Token::Comma; break;
      case ';': tok_.kind = Token::Semi; break;
      case ':': tok_.kind = Token::Colon; break;
      case '(': tok_.kind = Token::LParen; break;
      case ')': tok_.kind = Token::RParen; break;
      case '^': tok_.kind = Token::Caret; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
    ++i_;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_;
};

// Guard against pathological exponents; keeps parsed words at desk scale.
constexpr std::size_t kMaxWordLetters = 1u << 20;

class PresentationParser {
 public:
  explicit PresentationParser(std::string_view src) : lex_(src) {}

  Lexer& lexer() { return lex_; }

  Presentation parse_header_and_relators() {
    expect_keyword("gens");
    expect(Token::Colon, "':' after 'gens'");
    Presentation p;
    p.generators.push_back(take_name());
    while (lex_.peek().kind == Token::Comma) {
      lex_.take();
      p.generators.push_back(take_name());
    }
    expect(Token::Semi, "';' after generator list");
    expect_keyword("rels");
    expect(Token::Colon, "':' after 'rels'");
    alphabet_ = &p;
    if (starts_word(lex_.peek())) {
      p.relators.push_back(parse_word());
      while (lex_.peek().kind == Token::Comma) {
        lex_.take();
        p.relators.push_back(parse_word());
      }
    }
    p.validate();
    return p;
  }

  void set_alphabet(const Presentation& p) { alphabet_ = &p; }

  bool at_end() const { return lex_.peek().kind == Token::End; }

  void expect_end() {
    if (!at_end()) throw ParseError("trailing input after presentation", lex_.peek().pos);
  }

  /// True if the token can begin a word (used by callers to detect sections).
  static bool starts_word(const Token& t) {
    return (t.kind == Token::Ident && !is_reserved_name(t.text)) || t.kind == Token::LParen;
  }

  Word parse_word() {
    Word w;
    bool any = false;
    while (starts_word(lex_.peek())) {
      any = true;
      append_factor(w);
    }
    if (!any) throw ParseError("expected a word", lex_.peek().pos);
    return w;
  }

  std::string take_name() {
    const Token t = lex_.take();
    if (t.kind != Token::Ident) throw ParseError("expected a generator name", t.pos);
    if (is_reserved_name(t.text)) throw ParseError("'" + t.text + "' is a reserved keyword", t.pos);
    return t.text;
  }

  void expect(Token::Kind k, const char* what) {
    const Token t = lex_.take();
    if (t.kind != k) throw ParseError(std::string("expected ") + what, t.pos);
  }

  void expect_keyword(const char* kw) {
    const Token t = lex_.take();
    if (t.kind != Token::Ident || t.text != kw)
      throw ParseError(std::string("expected '") + kw + "'", t.pos);
  }

  long long take_integer() {
    const Token t = lex_.take();
    if (t.kind != Token::Integer) throw ParseError("malformed exponent", t.pos);
    return t.value;
  }

 private:
  void append_factor(Word& w) {
    Word base;
    bool parenthesized = false;
    const Token t = lex_.take();
    if (t.kind == Token::Ident) {
      const int idx = alphabet_->generator_index(t.text);
      if (idx == 0) throw ParseError("unknown generator '" + t.text + "'", t.pos);
      base = Word::generator(idx);
    } else if (t.kind == Token::LParen) {
      base = parse_word();
      expect(Token::RParen, "')'");
      parenthesized = true;
    } else {
      throw ParseError("expected a word factor", t.pos);
    }
    while (lex_.peek().kind == Token::Caret) {
      const std::size_t caret_pos = lex_.take().pos;
      const long long e = take_integer();
      if (e <= 0 && !parenthesized)
        throw ParseError("nonpositive exponent requires a parenthesized subword", caret_pos);
      if (base.size() * static_cast<unsigned long long>(e < 0 ? -e : e) > kMaxWordLetters)
        throw ParseError("exponent out of range", caret_pos);
      base = power(base, e);
      parenthesized = false;  // further exponents apply to a power, not a subword
    }
    if (w.size() + base.size() > kMaxWordLetters)
      throw ParseError("word too long", lex_.peek().pos);
    w = w * base;
  }

  Lexer lex_;
  const Presentation* alphabet_ = nullptr;
};

inline void serialize_word_into(const Word& w, const std::vector<std::string>& names,
                                std::string& out) {
  if (w.empty()) {
    // The grammar has no empty-word literal; a zeroth power round-trips to one.
    out += "(" + names.at(0) + ")^0";
    return;
  }
  std::size_t i = 0;
  bool first = true;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    const std::size_t run = j - i;
    const std::int32_t l = w.letters[i];
    const int idx = l > 0 ? l : -l;
    if (idx < 1 || static_cast<std::size_t>(idx) > names.size())
      throw ValidationError("letter outside generator range");
    if (!first) out += ' ';
    first = false;
    const std::string& name = names[static_cast<std::size_t>(idx - 1)];
    if (l > 0) {
      out += name;
      if (run > 1) out += "^" + std::to_string(run);
    } else {
      out += "(" + name + ")^-" + std::to_string(run);
    }
    i = j;
  }
}

}  // namespace detail

/// Parse a full presentation file; the entire input must be consumed.
inline Presentation parse_presentation(std::string_view text) {
  detail::PresentationParser p(text);
  Presentation pres = p.parse_header_and_relators();
  p.expect_end();
  return pres;
}

/// Parse a single word over the generators of `alphabet`.
inline Word parse_word(std::string_view text, const Presentation& alphabet) {
  detail::PresentationParser p(text);
  p.set_alphabet(alphabet);
  Word w = p.parse_word();
  p.expect_end();
  return w;
}

/// Render a word in the input grammar, e.g. "a^2 (b)^-1 a".
inline std::string serialize_word(const Word& w, const std::vector<std::string>& names) {
  std::string out;
  detail::serialize_word_into(w, names, out);
  return out;
}

/// Render a presentation in the input grammar.  parse(serialize(p)) == p.
inline std::string serialize_presentation(const Presentation& p) {
  std::string out = "gens: ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (i) out += ", ";
    out += p.generators[i];
  }
  out += "; rels: ";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (i) out += ", ";
    detail::serialize_word_into(p.relators[i], p.generators, out);
  }
  return out;
}

}  // namespace plusctl
