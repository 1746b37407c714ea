#include "datcloud/lexer.hpp"

#include <array>
#include <cctype>

namespace datcloud {

namespace {

const std::array<std::string_view, 22> kKeywords = {
    "architecture", "node",   "connection", "description", "type",     "layer",
    "processing",   "formats", "storage",   "in",          "out",      "port",
    "format",       "behavior", "action",   "event",       "link",     "kind",
    "via",          "from",    "to",        "protocol"};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Cursor {
    std::string_view source;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool eof() const { return pos >= source.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos + ahead < source.size() ? source[pos + ahead] : '\0';
    }
    char advance() {
        char c = source[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
};

}  // namespace

bool is_keyword(std::string_view word) {
    for (std::string_view kw : kKeywords) {
        if (kw == word) return true;
    }
    return false;
}

bool is_identifier(std::string_view word) {
    if (word.empty() || is_keyword(word)) return false;
    if (!ident_start(word[0])) return false;
    for (char c : word.substr(1)) {
        if (!ident_char(c)) return false;
    }
    return true;
}

LexResult tokenize(std::string_view source, std::string file) {
    LexResult result;
    Cursor cur{source};
    std::string trivia;

    auto span_from = [&](int line, int col) {
        SourceSpan span;
        span.file = file;
        span.start_line = line;
        span.start_col = col;
        span.end_line = cur.line;
        span.end_col = cur.col > 1 ? cur.col - 1 : 1;
        return span;
    };

    auto push = [&](TokenKind kind, std::string lexeme, std::string value, SourceSpan span) {
        Token token;
        token.kind = kind;
        token.lexeme = std::move(lexeme);
        token.value = std::move(value);
        token.leading_trivia = std::move(trivia);
        token.span = std::move(span);
        trivia.clear();
        result.tokens.push_back(std::move(token));
    };

    auto diagnose = [&](std::string code, std::string message, SourceSpan span) {
        Diagnostic d;
        d.code = std::move(code);
        d.severity = Severity::Error;
        d.message = std::move(message);
        d.span = std::move(span);
        result.diagnostics.push_back(std::move(d));
    };

    while (!cur.eof()) {
        const int start_line = cur.line;
        const int start_col = cur.col;
        const std::size_t start_pos = cur.pos;
        const char c = cur.peek();

        if (std::isspace(static_cast<unsigned char>(c))) {
            trivia.push_back(cur.advance());
            continue;
        }

        if (c == '/' && cur.peek(1) == '/') {
            while (!cur.eof() && cur.peek() != '\n') cur.advance();
            std::string text(source.substr(start_pos, cur.pos - start_pos));
            push(TokenKind::Comment, text, text, span_from(start_line, start_col));
            continue;
        }

        if (c == '/' && cur.peek(1) == '*') {
            cur.advance();
            cur.advance();
            bool closed = false;
            while (!cur.eof()) {
                if (cur.peek() == '*' && cur.peek(1) == '/') {
                    cur.advance();
                    cur.advance();
                    closed = true;
                    break;
                }
                if (cur.peek() == '\n' && !closed) {
                    // keep scanning; block comments may span lines
                }
                cur.advance();
            }
            if (!closed) {
                // recover at the line after the opening `/*`
                cur.pos = start_pos;
                cur.line = start_line;
                cur.col = start_col;
                while (!cur.eof() && cur.peek() != '\n') cur.advance();
                std::string text(source.substr(start_pos, cur.pos - start_pos));
                SourceSpan span = span_from(start_line, start_col);
                diagnose("P003", "unterminated block comment", span);
                push(TokenKind::Comment, text, text, span);
                continue;
            }
            std::string text(source.substr(start_pos, cur.pos - start_pos));
            push(TokenKind::Comment, text, text, span_from(start_line, start_col));
            continue;
        }

        if (c == '"') {
            cur.advance();
            std::string value;
            bool closed = false;
            while (!cur.eof() && cur.peek() != '\n') {
                char ch = cur.advance();
                if (ch == '"') {
                    closed = true;
                    break;
                }
                if (ch == '\\' && !cur.eof() && cur.peek() != '\n') {
                    char esc = cur.advance();
                    switch (esc) {
                        case 'n': value.push_back('\n'); break;
                        case 't': value.push_back('\t'); break;
                        case '"': value.push_back('"'); break;
                        case '\\': value.push_back('\\'); break;
                        default:
                            value.push_back('\\');
                            value.push_back(esc);
                            break;
                    }
                    continue;
                }
                value.push_back(ch);
            }
            std::string lexeme(source.substr(start_pos, cur.pos - start_pos));
            SourceSpan span = span_from(start_line, start_col);
            if (!closed) {
                diagnose("P002", "unterminated string", span);
            }
            push(TokenKind::String, std::move(lexeme), std::move(value), span);
            continue;
        }

        if (ident_start(c)) {
            while (!cur.eof() && ident_char(cur.peek())) cur.advance();
            std::string word(source.substr(start_pos, cur.pos - start_pos));
            TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
            push(kind, word, word, span_from(start_line, start_col));
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (!cur.eof() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
                cur.advance();
            }
            std::string word(source.substr(start_pos, cur.pos - start_pos));
            push(TokenKind::Integer, word, word, span_from(start_line, start_col));
            continue;
        }

        if (c == '-' && cur.peek(1) == '>') {
            cur.advance();
            cur.advance();
            push(TokenKind::Punct, "->", "->", span_from(start_line, start_col));
            continue;
        }

        if (std::string_view("{}[]():,.").find(c) != std::string_view::npos) {
            cur.advance();
            std::string text(1, c);
            push(TokenKind::Punct, text, text, span_from(start_line, start_col));
            continue;
        }

        // unknown byte: diagnose once and fold into trivia
        cur.advance();
        SourceSpan span = span_from(start_line, start_col);
        diagnose("P001", std::string("unexpected character '") + c + "'", span);
        trivia.push_back(c);
    }

    Token eof_token;
    eof_token.kind = TokenKind::Eof;
    eof_token.leading_trivia = std::move(trivia);
    eof_token.span.file = file;
    eof_token.span.start_line = eof_token.span.end_line = cur.line;
    eof_token.span.start_col = eof_token.span.end_col = cur.col;
    result.tokens.push_back(std::move(eof_token));
    return result;
}

}  // namespace datcloud
