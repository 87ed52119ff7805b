#include <cctype>
#include <charconv>
#include <set>
#include <string>
#include <vector>

#include "hcevo/lang/program.hpp"

namespace hcevo::lang {

namespace {

enum class Tok { kIdent, kInt, kReal, kPunct, kEnd };

struct Token {
  Tok type = Tok::kEnd;
  std::string text;
  Span span;
  std::int64_t int_value = 0;
  double real_value = 0.0;
};

const std::set<std::string, std::less<>> kKeywords = {
    "fn", "let", "if", "else", "for", "in", "return", "and", "or", "not", "true", "false", "none"};

[[noreturn]] void syntax_error(Span span, const std::string& msg) {
  throw ParseError(ParseErrorKind::kSyntax, span, msg);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.span = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      tok.type = Tok::kIdent;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      bool is_real = false;
      if (j < src.size() && src[j] == '.') {
        is_real = true;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          is_real = true;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      tok.text = std::string(src.substr(i, j - i));
      if (is_real) {
        tok.type = Tok::kReal;
        auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(),
                                       tok.real_value);
        if (ec != std::errc() || p != tok.text.data() + tok.text.size()) {
          syntax_error(tok.span, "invalid real literal '" + tok.text + "'");
        }
      } else {
        tok.type = Tok::kInt;
        auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(),
                                       tok.int_value);
        if (ec != std::errc() || p != tok.text.data() + tok.text.size()) {
          syntax_error(tok.span, "integer literal out of range '" + tok.text + "'");
        }
      }
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    static const char* const kTwoChar[] = {"//", "<=", ">=", "==", "!="};
    tok.type = Tok::kPunct;
    bool matched = false;
    for (const char* op : kTwoChar) {
      if (src.substr(i, 2) == op) {
        tok.text = op;
        matched = true;
        break;
      }
    }
    if (!matched) {
      if (std::string_view("+-*/%<>=(){}[],.;").find(c) == std::string_view::npos) {
        syntax_error(tok.span, std::string("unexpected character '") + c + "'");
      }
      tok.text = std::string(1, c);
    }
    advance(tok.text.size());
    out.push_back(std::move(tok));
  }
  Token end;
  end.type = Tok::kEnd;
  end.span = {line, col};
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Function parse_program() {
    Function fn;
    if (is_word("fn")) {
      next();
      fn.name = expect_ident("function name");
      expect("(");
      if (!is_punct(")")) {
        while (true) {
          const Span span = peek().span;
          std::string p = expect_ident("parameter name");
          for (const auto& existing : fn.params) {
            if (existing == p) syntax_error(span, "duplicate parameter '" + p + "'");
          }
          fn.params.push_back(std::move(p));
          if (!is_punct(",")) break;
          next();
        }
      }
      expect(")");
      fn.body = parse_block();
      if (peek().type != Tok::kEnd) syntax_error(peek().span, "trailing input after function");
    } else {
      while (peek().type != Tok::kEnd) fn.body.push_back(parse_stmt());
    }
    return fn;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).type == Tok::kPunct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).type == Tok::kIdent && peek(ahead).text == w;
  }

  void expect(std::string_view p) {
    if (!is_punct(p)) {
      syntax_error(peek().span, "expected '" + std::string(p) + "' but found '" +
                                    describe(peek()) + "'");
    }
    next();
  }

  void expect_word(std::string_view w) {
    if (!is_word(w)) {
      syntax_error(peek().span, "expected '" + std::string(w) + "' but found '" +
                                    describe(peek()) + "'");
    }
    next();
  }

  std::string expect_ident(std::string_view what) {
    const Token& t = peek();
    if (t.type != Tok::kIdent || kKeywords.count(t.text)) {
      syntax_error(t.span, "expected " + std::string(what) + " but found '" + describe(t) + "'");
    }
    return next().text;
  }

  static std::string describe(const Token& t) {
    return t.type == Tok::kEnd ? std::string("end of input") : t.text;
  }

  void skip_semicolon() {
    if (is_punct(";")) next();
  }

  std::vector<Stmt> parse_block() {
    expect("{");
    std::vector<Stmt> body;
    while (!is_punct("}")) {
      if (peek().type == Tok::kEnd) syntax_error(peek().span, "unterminated block");
      body.push_back(parse_stmt());
    }
    next();
    return body;
  }

  Stmt parse_stmt() {
    Stmt s;
    s.span = peek().span;
    if (is_word("let")) {
      next();
      s.kind = StmtKind::kLet;
      s.name = expect_ident("variable name");
      expect("=");
      s.expr = parse_expr();
      skip_semicolon();
    } else if (is_word("return")) {
      next();
      s.kind = StmtKind::kReturn;
      s.expr = parse_expr();
      skip_semicolon();
    } else if (is_word("if")) {
      next();
      s.kind = StmtKind::kIf;
      s.expr = parse_expr();
      s.body = parse_block();
      if (is_word("else")) {
        next();
        if (is_word("if")) {
          s.orelse.push_back(parse_stmt());
        } else {
          s.orelse = parse_block();
        }
      }
    } else if (is_word("for")) {
      next();
      s.kind = StmtKind::kFor;
      s.name = expect_ident("loop variable");
      expect_word("in");
      s.expr = parse_expr();
      s.body = parse_block();
    } else {
      syntax_error(peek().span, "expected a statement but found '" + describe(peek()) + "'");
    }
    return s;
  }

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (is_word("or")) {
      const Span span = next().span;
      lhs = Expr::make_binary(BinaryOp::kOr, std::move(lhs), parse_and(), span);
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_not();
    while (is_word("and")) {
      const Span span = next().span;
      lhs = Expr::make_binary(BinaryOp::kAnd, std::move(lhs), parse_not(), span);
    }
    return lhs;
  }

  Expr parse_not() {
    if (is_word("not")) {
      const Span span = next().span;
      return Expr::make_unary(UnaryOp::kNot, parse_not(), span);
    }
    return parse_comparison();
  }

  Expr parse_comparison() {
    Expr lhs = parse_additive();
    while (true) {
      BinaryOp op;
      const Span span = peek().span;
      if (is_punct("<")) {
        op = BinaryOp::kLt;
      } else if (is_punct("<=")) {
        op = BinaryOp::kLe;
      } else if (is_punct(">")) {
        op = BinaryOp::kGt;
      } else if (is_punct(">=")) {
        op = BinaryOp::kGe;
      } else if (is_punct("==")) {
        op = BinaryOp::kEq;
      } else if (is_punct("!=")) {
        op = BinaryOp::kNe;
      } else if (is_word("in")) {
        op = BinaryOp::kIn;
      } else if (is_word("not") && is_word("in", 1)) {
        next();
        op = BinaryOp::kNotIn;
      } else {
        return lhs;
      }
      next();
      lhs = Expr::make_binary(op, std::move(lhs), parse_additive(), span);
    }
  }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    while (is_punct("+") || is_punct("-")) {
      const BinaryOp op = peek().text == "+" ? BinaryOp::kAdd : BinaryOp::kSub;
      const Span span = next().span;
      lhs = Expr::make_binary(op, std::move(lhs), parse_multiplicative(), span);
    }
    return lhs;
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_unary();
    while (is_punct("*") || is_punct("/") || is_punct("//") || is_punct("%")) {
      const std::string& t = peek().text;
      const BinaryOp op = t == "*"    ? BinaryOp::kMul
                          : t == "/"  ? BinaryOp::kDiv
                          : t == "//" ? BinaryOp::kFloorDiv
                                      : BinaryOp::kMod;
      const Span span = next().span;
      lhs = Expr::make_binary(op, std::move(lhs), parse_unary(), span);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (is_punct("-")) {
      const Span span = next().span;
      return Expr::make_unary(UnaryOp::kNeg, parse_unary(), span);
    }
    return parse_postfix();
  }

  Expr parse_postfix() {
    Expr e = parse_primary();
    while (true) {
      if (is_punct(".")) {
        const Span span = next().span;
        e = Expr::make_field(std::move(e), expect_ident("field name"), span);
      } else if (is_punct("[")) {
        const Span span = next().span;
        Expr index = parse_expr();
        expect("]");
        e = Expr::make_index(std::move(e), std::move(index), span);
      } else {
        return e;
      }
    }
  }

  std::vector<Expr> parse_items(std::string_view close) {
    std::vector<Expr> items;
    while (!is_punct(close)) {
      items.push_back(parse_expr());
      if (!is_punct(",")) break;
      next();
    }
    expect(close);
    return items;
  }

  Expr parse_primary() {
    const Token& t = peek();
    const Span span = t.span;
    switch (t.type) {
      case Tok::kInt: {
        const auto v = next().int_value;
        return Expr::make_literal(Value::integer(v), span);
      }
      case Tok::kReal: {
        const auto v = next().real_value;
        return Expr::make_literal(Value::real(v), span);
      }
      case Tok::kIdent: {
        if (t.text == "true" || t.text == "false") {
          const bool b = next().text == "true";
          return Expr::make_literal(Value::boolean(b), span);
        }
        if (t.text == "none") {
          next();
          return Expr::make_literal(Value(), span);
        }
        if (kKeywords.count(t.text)) syntax_error(span, "unexpected keyword '" + t.text + "'");
        std::string name = next().text;
        if (is_punct("(")) {
          auto fn = builtin_from_name(name);
          if (!fn) {
            throw ParseError(ParseErrorKind::kUndeclaredIdentifier, span,
                             "call to unknown function '" + name + "'");
          }
          next();
          return Expr::make_call(*fn, parse_items(")"), span);
        }
        return Expr::make_name(std::move(name), span);
      }
      case Tok::kPunct: {
        if (t.text == "(") {
          next();
          if (is_punct(")")) {
            next();
            return Expr::make_tuple({}, span);
          }
          Expr first = parse_expr();
          if (is_punct(")")) {
            next();
            return first;
          }
          expect(",");
          std::vector<Expr> items;
          items.push_back(std::move(first));
          auto rest = parse_items(")");
          for (auto& r : rest) items.push_back(std::move(r));
          return Expr::make_tuple(std::move(items), span);
        }
        if (t.text == "[") {
          next();
          return Expr::make_list(parse_items("]"), span);
        }
        break;
      }
      default:
        break;
    }
    syntax_error(span, "expected an expression but found '" + describe(t) + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Function parse_function(std::string_view source) {
  Parser parser(lex(source));
  return parser.parse_program();
}

}  // namespace hcevo::lang
