// Recursive-descent parser for the prefix concrete syntax:
//
//   formula := atom | conn | quant
//   atom    := IDENT "(" [IDENT {"," IDENT}] ")" | IDENT
//   conn    := IDENT "(" formula {"," formula} ")"
//   quant   := ("forall" | "exists") IDENT "." formula
//   sequent := [formula {"," formula}] "=>" [formula {"," formula}]
//
// Whether IDENT(...) is an atom or a connective is decided by the signature.

#include <cctype>
#include <optional>

#include "fok/errors.hpp"
#include "fok/syntax.hpp"

namespace fok {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      const auto c = static_cast<unsigned char>(src_[pos_]);
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    const char c = src_[pos_];
    switch (c) {
      case '(':
        ++pos_;
        current_ = {Tok::LParen, "(", start};
        return;
      case ')':
        ++pos_;
        current_ = {Tok::RParen, ")", start};
        return;
      case ',':
        ++pos_;
        current_ = {Tok::Comma, ",", start};
        return;
      case '.':
        ++pos_;
        current_ = {Tok::Dot, ".", start};
        return;
      case '=':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          pos_ += 2;
          current_ = {Tok::Arrow, "=>", start};
          return;
        }
        break;
      default:
        break;
    }
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc) || c == '_') {
      while (pos_ < src_.size()) {
        const auto d = static_cast<unsigned char>(src_[pos_]);
        if (!(std::isalnum(d) || d == '_' || d == '\'')) break;
        ++pos_;
      }
      current_ = {Tok::Ident, std::string(src_.substr(start, pos_ - start)), start};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, "", 0};
};

class Parser {
 public:
  Parser(std::string_view src, Signature& sig, UnknownPredicates policy)
      : lex_(src), sig_(sig), policy_(policy) {}

  Formula formula_only() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Sequent sequent() {
    std::vector<Formula> left;
    std::vector<Formula> right;
    if (lex_.peek().kind != Tok::Arrow) left = formula_list();
    expect(Tok::Arrow, "'=>'");
    if (lex_.peek().kind != Tok::End) right = formula_list();
    expect(Tok::End, "end of input");
    return Sequent(std::move(left), std::move(right));
  }

 private:
  std::vector<Formula> formula_list() {
    std::vector<Formula> out;
    out.push_back(formula());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      out.push_back(formula());
    }
    return out;
  }

  Token expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind) {
      const auto& t = lex_.peek();
      throw ParseError(std::string("expected ") + what + ", found " +
                           (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'"),
                       t.offset);
    }
    return lex_.take();
  }

  std::string variable() {
    Token t = expect(Tok::Ident, "variable");
    if (is_reserved_word(t.text)) throw ParseError("reserved word used as variable", t.offset);
    return t.text;
  }

  Formula formula() {
    Token head = expect(Tok::Ident, "formula");
    if (head.text == "forall" || head.text == "exists") {
      std::string var = variable();
      expect(Tok::Dot, "'.' after bound variable");
      Formula body = formula();
      return head.text == "forall" ? Formula::forall(std::move(var), std::move(body))
                                   : Formula::exists(std::move(var), std::move(body));
    }

    if (sig_.has_connective(head.text)) {
      const TruthFunction& f = sig_.connective(head.text);
      std::vector<Formula> args;
      if (lex_.peek().kind == Tok::LParen) {
        lex_.take();
        if (lex_.peek().kind != Tok::RParen) args = formula_list();
        expect(Tok::RParen, "')'");
      }
      if (args.size() != f.arity()) {
        throw ParseError("connective '" + head.text + "' expects " + std::to_string(f.arity()) +
                             " arguments, got " + std::to_string(args.size()),
                         head.offset);
      }
      return Formula::conn(head.text, f, std::move(args));
    }

    std::vector<std::string> vars;
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      if (lex_.peek().kind != Tok::RParen) {
        vars.push_back(argument_variable());
        while (lex_.peek().kind == Tok::Comma) {
          lex_.take();
          vars.push_back(argument_variable());
        }
      }
      expect(Tok::RParen, "')'");
    }

    if (sig_.has_predicate(head.text)) {
      const unsigned arity = sig_.predicate_arity(head.text);
      if (arity != vars.size()) {
        throw ParseError("predicate '" + head.text + "' has arity " + std::to_string(arity) +
                             ", applied to " + std::to_string(vars.size()) + " arguments",
                         head.offset);
      }
    } else if (policy_ == UnknownPredicates::Declare) {
      if (is_reserved_word(head.text)) throw ParseError("reserved word", head.offset);
      sig_.add_predicate(head.text, static_cast<unsigned>(vars.size()));
    } else {
      throw ParseError("unknown symbol '" + head.text + "'", head.offset);
    }
    return Formula::atom(head.text, std::move(vars));
  }

  std::string argument_variable() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && !is_reserved_word(t.text)) {
      std::string name = lex_.take().text;
      if (lex_.peek().kind == Tok::LParen) {
        throw ParseError("atom arguments must be variables (no function symbols)", t.offset);
      }
      return name;
    }
    throw ParseError("expected variable in atom argument list", t.offset);
  }

  Lexer lex_;
  Signature& sig_;
  UnknownPredicates policy_;
};

}  // namespace

Formula parse_formula(std::string_view text, Signature& signature, UnknownPredicates policy) {
  return Parser(text, signature, policy).formula_only();
}

Formula parse_formula(std::string_view text, const Signature& signature) {
  Signature copy = signature;
  return Parser(text, copy, UnknownPredicates::Reject).formula_only();
}

Sequent parse_sequent(std::string_view text, Signature& signature, UnknownPredicates policy) {
  return Parser(text, signature, policy).sequent();
}

Sequent parse_sequent(std::string_view text, const Signature& signature) {
  Signature copy = signature;
  return Parser(text, copy, UnknownPredicates::Reject).sequent();
}

}  // namespace fok
