#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "datcloud/diagnostics.hpp"

namespace datcloud {

enum class TokenKind { Keyword, Identifier, Punct, String, Integer, Comment, Eof };

struct Token {
    TokenKind kind = TokenKind::Eof;
    std::string lexeme;          // exact source text (strings keep their quotes)
    std::string value;           // unescaped content for strings, lexeme otherwise
    std::string leading_trivia;  // whitespace and skipped bytes before the token
    SourceSpan span;
};

struct LexResult {
    std::vector<Token> tokens;  // always ends with an Eof token
    std::vector<Diagnostic> diagnostics;
};

// Concatenating leading_trivia + lexeme over all tokens reproduces the input
// byte for byte. Unknown characters are diagnosed and folded into trivia;
// unterminated strings and block comments end at the line break.
LexResult tokenize(std::string_view source, std::string file = "");

bool is_keyword(std::string_view word);
bool is_identifier(std::string_view word);

}  // namespace datcloud
