#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "awb/formula.hpp"

namespace awb {

namespace {

std::string position_prefix(std::size_t line, std::size_t column) {
  return std::to_string(line) + ":" + std::to_string(column) + ": ";
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t offset, std::size_t line,
                       std::size_t column)
    : std::runtime_error(position_prefix(line, column) + message),
      detail_(message),
      offset_(offset),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Tilde, Amp, Bar, Arrow, DArrow, LParen, RParen, LBrack, RBrack, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::End: return "end of input";
  }
  return "?";
}

enum class Language { Prop, Ail, Hms };

const char* language_name(Language lang) {
  switch (lang) {
    case Language::Prop: return "L_PL";
    case Language::Ail: return "L*_AIL";
    case Language::Hms: return "L*_HMS";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, Language lang) : text_(text), lang_(lang) { tokenize(); }

  Prop parse_prop_only() {
    Prop p = parse_iff();
    expect_end();
    return p;
  }

  AilFormula parse_ail() {
    if (peek_modal() == 'A') {
      auto agent = parse_operator('A');
      return AilFormula::aware(std::move(agent), parse_body());
    }
    if (peek_modal() == 'X') {
      const std::size_t start = peek().offset;
      auto outer = parse_operator('X');
      if (peek_modal() != 'I') {
        fail(peek().offset, "incomplete X[i] I[i] X[i] pattern: expected 'I[' after X[" + outer + "]");
      }
      auto middle = parse_operator('I');
      if (peek_modal() != 'X') {
        fail(peek().offset, "incomplete X[i] I[i] X[i] pattern: expected 'X[' after I[" + middle + "]");
      }
      auto inner = parse_operator('X');
      if (outer != middle || middle != inner) {
        fail(start, "agent mismatch in [≈]I[≈] pattern: production 'X[i] I[i] X[i] prop' needs one agent, got " +
                        outer + ", " + middle + ", " + inner);
      }
      return AilFormula::box_i_box(std::move(outer), parse_body());
    }
    if (peek_modal() == 'I') {
      fail(peek().offset,
           "operator not in L*_AIL: bare I[i] occurs only inside the production 'X[i] I[i] X[i] prop'");
    }
    auto p = parse_iff();
    expect_end();
    return AilFormula::prop(std::move(p));
  }

  HmsFormula parse_hms() {
    if (peek_modal() == 'A') {
      auto agent = parse_operator('A');
      return HmsFormula::aware(std::move(agent), parse_body());
    }
    if (peek_modal() == 'I') {
      auto agent = parse_operator('I');
      return HmsFormula::implicit(std::move(agent), parse_body());
    }
    if (peek_modal() == 'X') {
      fail(peek().offset, "operator not in L*_HMS: X[i] has no production in 'hms := prop | A[i] prop | I[i] prop'");
    }
    auto p = parse_iff();
    expect_end();
    return HmsFormula::prop(std::move(p));
  }

 private:
  [[noreturn]] void fail(std::size_t offset, const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
        ++column;
      }
    }
    throw ParseError(message, offset, line, column);
  }

  [[noreturn]] void unexpected(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::Ident ? "'" + t.text + "'" : describe(t.kind);
    fail(t.offset, "syntax error: expected " + expected + ", found " + found);
  }

  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      const char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      auto single = [&](Tok t) {
        tokens_.push_back({t, std::string(1, c), start});
        ++i;
      };
      switch (c) {
        case '~': single(Tok::Tilde); continue;
        case '&': single(Tok::Amp); continue;
        case '|': single(Tok::Bar); continue;
        case '(': single(Tok::LParen); continue;
        case ')': single(Tok::RParen); continue;
        case '[': single(Tok::LBrack); continue;
        case ']': single(Tok::RBrack); continue;
        default: break;
      }
      if (text_.substr(i, 2) == "->") {
        tokens_.push_back({Tok::Arrow, "->", start});
        i += 2;
        continue;
      }
      if (text_.substr(i, 3) == "<->") {
        tokens_.push_back({Tok::DArrow, "<->", start});
        i += 3;
        continue;
      }
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        while (i < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_')) {
          ++i;
        }
        tokens_.push_back({Tok::Ident, std::string(text_.substr(start, i - start)), start});
        continue;
      }
      fail(start, "syntax error: unexpected character '" + std::string(1, c) + "'");
    }
    tokens_.push_back({Tok::End, {}, text_.size()});
  }

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[k];
  }

  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  // 'A', 'I' or 'X' when the next tokens open a modal operator, 0 otherwise.
  char peek_modal() const {
    const Token& t = peek();
    if (t.kind != Tok::Ident || peek(1).kind != Tok::LBrack) return 0;
    if (t.text == "A" || t.text == "I" || t.text == "X") return t.text[0];
    return 0;
  }

  std::string parse_operator(char op) {
    advance();  // op
    advance();  // '['
    if (peek().kind != Tok::Ident) unexpected("agent identifier after '" + std::string(1, op) + "['");
    std::string agent = advance().text;
    if (peek().kind != Tok::RBrack) unexpected("']'");
    advance();
    return agent;
  }

  Prop parse_body() {
    in_modal_body_ = true;
    auto p = parse_iff();
    expect_end();
    return p;
  }

  void expect_end() {
    if (peek().kind != Tok::End) unexpected("one of '&', '|', '->', '<->' or end of input");
  }

  Prop parse_iff() {
    Prop lhs = parse_imp();
    while (peek().kind == Tok::DArrow) {
      advance();
      lhs = Prop::equivalence(lhs, parse_imp());
    }
    return lhs;
  }

  Prop parse_imp() {
    Prop lhs = parse_or();
    if (peek().kind == Tok::Arrow) {
      advance();
      return Prop::implication(std::move(lhs), parse_imp());
    }
    return lhs;
  }

  Prop parse_or() {
    Prop lhs = parse_and();
    while (peek().kind == Tok::Bar) {
      advance();
      lhs = Prop::disjunction(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Prop parse_and() {
    Prop lhs = parse_neg();
    while (peek().kind == Tok::Amp) {
      advance();
      lhs = Prop::conjunction(std::move(lhs), parse_neg());
    }
    return lhs;
  }

  Prop parse_neg() {
    if (peek_modal() != 0) reject_embedded_modal();
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde:
        advance();
        return Prop::negation(parse_neg());
      case Tok::LParen: {
        advance();
        Prop inner = parse_iff();
        if (peek().kind != Tok::RParen) unexpected("')'");
        advance();
        return inner;
      }
      case Tok::Ident:
        if (!is_valid_atom_name(t.text)) {
          fail(t.offset, "syntax error: '" + t.text + "' is not an atom (atoms match [a-z][a-zA-Z0-9_]*)");
        }
        return Prop::atom(advance().text);
      default:
        unexpected("one of atom, '~', '('");
    }
  }

  [[noreturn]] void reject_embedded_modal() const {
    const std::string lang = language_name(lang_);
    if (lang_ == Language::Prop) {
      fail(peek().offset, "modal operator not in L_PL: 'prop' has no modal production");
    }
    if (in_modal_body_) {
      fail(peek().offset, "modal nesting not in " + lang + ": the body of a modal operator must be propositional");
    }
    fail(peek().offset, "modal operator below a connective not in " + lang +
                            ": modal operators occur only at the top of a formula");
  }

  std::string_view text_;
  Language lang_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool in_modal_body_ = false;
};

}  // namespace

Prop parse_prop(std::string_view text) { return Parser(text, Language::Prop).parse_prop_only(); }
AilFormula parse_ail(std::string_view text) { return Parser(text, Language::Ail).parse_ail(); }
HmsFormula parse_hms(std::string_view text) { return Parser(text, Language::Hms).parse_hms(); }

}  // namespace awb
