#pragma once

// Tokenizer shared by the VTKB, query and rule grammars.

#include <string>
#include <string_view>
#include <vector>

#include "vtkb/errors.hpp"

namespace vtkb::detail {

enum class TokenKind {
  kIdent,     // identifiers and keywords
  kVariable,  // ?name (text holds the name without '?')
  kString,    // text holds the unescaped value
  kNumber,
  kStar,
  kDot,
  kComma,
  kSemicolon,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kAndAnd,
  kBang,
  kCompare,   // = != < <= > >=
  kEnd,
};

std::string_view describe(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  double number = 0.0;
  SourcePos pos;
};

// Tokenizes the whole input up front. Throws ParseError on invalid UTF-8, an
// unexpected character or an unterminated string.
std::vector<Token> tokenize(std::string_view text, const std::string& origin);

}  // namespace vtkb::detail
