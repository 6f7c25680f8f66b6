#include "lexer.hpp"

#include <charconv>

namespace vtkb::detail {

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdent: return "identifier";
    case TokenKind::kVariable: return "variable";
    case TokenKind::kString: return "string";
    case TokenKind::kNumber: return "number";
    case TokenKind::kStar: return "'*'";
    case TokenKind::kDot: return "'.'";
    case TokenKind::kComma: return "','";
    case TokenKind::kSemicolon: return "';'";
    case TokenKind::kLBrace: return "'{'";
    case TokenKind::kRBrace: return "'}'";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kAndAnd: return "'&&'";
    case TokenKind::kBang: return "'!'";
    case TokenKind::kCompare: return "comparison operator";
    case TokenKind::kEnd: return "end of input";
  }
  return "token";
}

namespace {

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '-';
}
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& origin)
      : text_(text), origin_(origin) {}

  std::vector<Token> run() {
    check_utf8();
    std::vector<Token> out;
    while (true) {
      skip_blank();
      Token tok;
      tok.pos = pos();
      if (at_end()) {
        out.push_back(std::move(tok));
        return out;
      }
      char c = peek();
      if (ident_start(c)) {
        tok.kind = TokenKind::kIdent;
        tok.text = identifier();
      } else if (c == '?') {
        advance();
        if (at_end() || !ident_start(peek())) fail("expected variable name after '?'");
        tok.kind = TokenKind::kVariable;
        while (!at_end() && (ident_char(peek()))) tok.text += advance();
      } else if (c == '"') {
        tok.kind = TokenKind::kString;
        tok.text = string_literal();
      } else if (digit(c) || ((c == '-' || c == '+') && digit(peek(1)))) {
        tok.kind = TokenKind::kNumber;
        number(tok);
      } else {
        punctuation(tok);
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < text_.size() ? text_[i_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if (c == '\r' && peek() == '\n') {
      // CRLF counts once, on the '\n'.
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
    return c;
  }

  SourcePos pos() const { return {line_, col_}; }

  [[noreturn]] void fail(const std::string& message,
                         std::vector<std::string> expected = {}) const {
    throw ParseError(ErrorCode::kParse, pos(), message, std::move(expected),
                     origin_);
  }

  void check_utf8() {
    int line = 1, col = 1;
    for (std::size_t k = 0; k < text_.size();) {
      auto b = static_cast<unsigned char>(text_[k]);
      std::size_t len = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3
                      : (b >> 3) == 0x1E ? 4 : 0;
      bool ok = len != 0 && k + len <= text_.size();
      for (std::size_t j = 1; ok && j < len; ++j) {
        ok = (static_cast<unsigned char>(text_[k + j]) & 0xC0) == 0x80;
      }
      if (!ok) {
        throw ParseError(ErrorCode::kParse, {line, col}, "invalid UTF-8 sequence",
                         {}, origin_);
      }
      if (b == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      k += len;
    }
  }

  void skip_blank() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string identifier() {
    std::string out;
    while (true) {
      while (!at_end() && ident_char(peek())) out += advance();
      if (peek() != ':') return out;
      if (!ident_start(peek(1))) {
        advance();
        fail("expected identifier segment after ':'", {"identifier"});
      }
      out += advance();
    }
  }

  std::string string_literal() {
    SourcePos start = pos();
    advance();  // opening quote
    std::string out;
    while (true) {
      if (at_end()) {
        throw ParseError(ErrorCode::kParse, start, "unterminated string literal",
                         {"'\"'"}, origin_);
      }
      char c = advance();
      if (c == '"') return out;
      if (c == '\\') {
        if (peek() != '"' && peek() != '\\') {
          fail("unsupported escape sequence", {"'\\\"'", "'\\\\'"});
        }
        out += advance();
      } else {
        out += c;
      }
    }
  }

  void number(Token& tok) {
    std::size_t start = i_;
    if (peek() == '-' || peek() == '+') advance();
    while (digit(peek())) advance();
    if (peek() == '.' && digit(peek(1))) {
      advance();
      while (digit(peek())) advance();
    }
    tok.text = std::string(text_.substr(start, i_ - start));
    std::string_view digits = tok.text;
    if (digits.front() == '+') digits.remove_prefix(1);
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(),
                               tok.number);
    if (res.ec != std::errc{}) {
      throw ParseError(ErrorCode::kParse, tok.pos, "number out of range", {},
                       origin_);
    }
    if (ident_start(peek())) fail("unexpected character after number");
  }

  void punctuation(Token& tok) {
    char c = peek();
    auto single = [&](TokenKind kind) {
      tok.kind = kind;
      tok.text = std::string(1, advance());
    };
    switch (c) {
      case '*': return single(TokenKind::kStar);
      case '.': return single(TokenKind::kDot);
      case ',': return single(TokenKind::kComma);
      case ';': return single(TokenKind::kSemicolon);
      case '{': return single(TokenKind::kLBrace);
      case '}': return single(TokenKind::kRBrace);
      case '(': return single(TokenKind::kLParen);
      case ')': return single(TokenKind::kRParen);
      case '=': return single(TokenKind::kCompare);
      case '&':
        if (peek(1) == '&') {
          advance();
          advance();
          tok.kind = TokenKind::kAndAnd;
          tok.text = "&&";
          return;
        }
        break;
      case '!':
      case '<':
      case '>':
        tok.text = std::string(1, advance());
        if (peek() == '=') {
          tok.text += advance();
          tok.kind = TokenKind::kCompare;
        } else {
          tok.kind = c == '!' ? TokenKind::kBang : TokenKind::kCompare;
        }
        return;
      default:
        break;
    }
    std::string shown = (static_cast<unsigned char>(c) < 0x20)
                            ? "control character"
                            : "'" + std::string(1, c) + "'";
    fail("unexpected character " + shown);
  }

  std::string_view text_;
  const std::string& origin_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, const std::string& origin) {
  return Lexer(text, origin).run();
}

}  // namespace vtkb::detail
