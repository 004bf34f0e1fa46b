// Word syntax shared by every textual input.
//
//   list  := expr (',' expr)*
//   expr  := term ('*'? term)*            juxtaposition multiplies
//   term  := atom ('^' (int | atom))*     integer -> power, atom -> conjugate
//   atom  := generator | '1' | '(' expr ')' | '{' expr '}' | '[' expr (',' expr)+ ']'
//
// Brackets are left-normalized commutators. Exponents associate to the left,
// so x^y^2 is (x^y)^2; write x^(y^2) for conjugation by y^2.
// An identifier that is not itself a generator name is split greedily into
// the longest matching generator names, so "xy" reads as x*y.

#ifndef FPMN_PARSE_HPP_
#define FPMN_PARSE_HPP_

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "words.hpp"

namespace fpmn {

namespace impl {

class WordParser {
public:
  WordParser(std::string_view text, const Alphabet& alphabet)
    : text_(text), alphabet_(alphabet) {
    tokenize();
  }

  std::vector<Word> parse_list() {
    std::vector<Word> out;
    if (at_end())
      return out;
    out.push_back(parse_expr());
    while (accept(',')) {
      out.push_back(parse_expr());
    }
    expect_end();
    return out;
  }

  Word parse_single() {
    Word w = parse_expr();
    expect_end();
    return w;
  }

private:
  struct Token {
    char kind;  // 'g' generator, 'n' number, or the punctuation character
    std::uint32_t gen = 0;
    long number = 0;
    std::size_t pos = 0;
  };

  [[noreturn]] void error(const std::string& msg, std::size_t pos) const {
    fail(ErrorKind::input, "parse",
         msg + " at column " + std::to_string(pos + 1) + " in '" + std::string(text_) + "'");
  }

  void split_identifier(std::string_view ident, std::size_t pos) {
    if (auto g = alphabet_.find(ident)) {
      tokens_.push_back({'g', *g, 0, pos});
      return;
    }
    std::size_t p = 0;
    while (p < ident.size()) {
      std::size_t best = 0;
      std::uint32_t best_gen = 0;
      for (std::uint32_t g = 0; g < alphabet_.size(); ++g) {
        const std::string& name = alphabet_.name(g);
        if (name.size() > best && ident.substr(p, name.size()) == name) {
          best = name.size();
          best_gen = g;
        }
      }
      if (best == 0)
        error("unknown generator in '" + std::string(ident) + "'", pos + p);
      tokens_.push_back({'g', best_gen, 0, pos + p});
      p += best;
    }
  }

  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      unsigned char c = static_cast<unsigned char>(text_[i]);
      if (std::isspace(c)) {
        ++i;
      } else if (std::isalpha(c) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
          ++j;
        split_identifier(text_.substr(i, j - i), i);
        i = j;
      } else if (std::isdigit(c)) {
        std::size_t j = i;
        long v = 0;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
          v = v * 10 + (text_[j] - '0');
          if (v > 1'000'000)
            error("exponent too large", i);
          ++j;
        }
        tokens_.push_back({'n', 0, v, i});
        i = j;
      } else if (std::string_view("^-+*()[]{},").find(static_cast<char>(c)) != std::string_view::npos) {
        tokens_.push_back({static_cast<char>(c), 0, 0, i});
        ++i;
      } else {
        error(std::string("unexpected character '") + static_cast<char>(c) + "'", i);
      }
    }
  }

  bool at_end() const { return pos_ >= tokens_.size(); }
  char peek() const { return at_end() ? '\0' : tokens_[pos_].kind; }
  std::size_t here() const { return at_end() ? text_.size() : tokens_[pos_].pos; }

  bool accept(char kind) {
    if (peek() == kind) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char kind) {
    if (!accept(kind))
      error(std::string("expected '") + kind + "'", here());
  }

  void expect_end() {
    if (!at_end())
      error("unexpected trailing input", here());
  }

  bool atom_start() const {
    char k = peek();
    return k == 'g' || k == 'n' || k == '(' || k == '[' || k == '{';
  }

  Word parse_expr() {
    if (!atom_start())
      error("expected a word", here());
    Word w = parse_term();
    for (;;) {
      if (accept('*')) {
        w *= parse_term();
      } else if (atom_start()) {
        w *= parse_term();
      } else {
        break;
      }
    }
    return w;
  }

  Word parse_term() {
    Word base = parse_atom();
    while (accept('^')) {
      if (peek() == '-' || peek() == '+' || peek() == 'n') {
        long sign = 1;
        if (accept('-'))
          sign = -1;
        else
          accept('+');
        if (peek() != 'n')
          error("expected an integer exponent", here());
        long k = tokens_[pos_++].number;
        base = base.pow(sign * k);
      } else {
        Word f = parse_atom();
        base = conjugate(base, f);
      }
    }
    return base;
  }

  Word parse_atom() {
    if (at_end())
      error("expected a word", here());
    const Token& t = tokens_[pos_];
    switch (t.kind) {
      case 'g':
        ++pos_;
        return Word(Letter(t.gen, false));
      case 'n':
        if (t.number != 1)
          error("only '1' may stand for a word", t.pos);
        ++pos_;
        return {};
      case '(': {
        ++pos_;
        Word w = parse_expr();
        expect(')');
        return w;
      }
      case '{': {
        ++pos_;
        Word w = parse_expr();
        expect('}');
        return w;
      }
      case '[': {
        ++pos_;
        std::vector<Word> terms{parse_expr()};
        while (accept(','))
          terms.push_back(parse_expr());
        expect(']');
        if (terms.size() < 2)
          error("a commutator needs at least two entries", t.pos);
        return commutator(terms);
      }
      default:
        error("expected a word", t.pos);
    }
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
    --b;
  return std::string(s.substr(a, b - a));
}

} // namespace impl

inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  return impl::WordParser(text, alphabet).parse_single();
}

/// Comma-separated words; commas inside brackets belong to commutators.
inline std::vector<Word> parse_word_list(std::string_view text, const Alphabet& alphabet) {
  return impl::WordParser(text, alphabet).parse_list();
}

} // namespace fpmn

#endif // FPMN_PARSE_HPP_
