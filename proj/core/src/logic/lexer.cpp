#include "ecplan/logic/lexer.hpp"

#include <cctype>

#include "ecplan/logic/errors.hpp"

namespace ecplan::logic {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_blank();
      Token token;
      token.line = line_;
      token.column = column_;
      if (pos_ >= text_.size()) {
        token.kind = TokenKind::End;
        tokens.push_back(token);
        return tokens;
      }
      scan(token);
      tokens.push_back(std::move(token));
    }
  }

 private:
  [[nodiscard]] char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == '%') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  void scan(Token& token) {
    const char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      token.text = std::string(text_.substr(start, pos_ - start));
      token.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? TokenKind::Variable
                                                                              : TokenKind::Identifier;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      token.text = std::string(text_.substr(start, pos_ - start));
      token.kind = TokenKind::Integer;
      try {
        token.number = std::stoll(token.text);
      } catch (const std::out_of_range&) {
        throw ParseError(token.line, token.column, "integer literal out of range");
      }
      return;
    }
    if (c == '#') {
      std::size_t start = pos_;
      advance();
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      token.text = std::string(text_.substr(start, pos_ - start));
      token.kind = TokenKind::Directive;
      return;
    }
    struct Fixed {
      std::string_view text;
      TokenKind kind;
    };
    static constexpr Fixed fixed[] = {
        {":-", TokenKind::If},         {":~", TokenKind::WeakIf},     {"<=", TokenKind::LessEqual},
        {">=", TokenKind::GreaterEqual}, {"!=", TokenKind::NotEqual}, {"<>", TokenKind::NotEqual},
        {"==", TokenKind::Equal},      {"≤", TokenKind::LessEqual},
        {"≥", TokenKind::GreaterEqual}, {"≠", TokenKind::NotEqual},
        {"(", TokenKind::LParen},      {")", TokenKind::RParen},      {"{", TokenKind::LBrace},
        {"}", TokenKind::RBrace},      {"[", TokenKind::LBracket},    {"]", TokenKind::RBracket},
        {",", TokenKind::Comma},       {";", TokenKind::Semicolon},   {".", TokenKind::Dot},
        {":", TokenKind::Colon},       {"@", TokenKind::At},          {"+", TokenKind::Plus},
        {"-", TokenKind::Minus},       {"*", TokenKind::Star},        {"<", TokenKind::Less},
        {">", TokenKind::Greater},     {"=", TokenKind::Equal},
    };
    for (const auto& f : fixed) {
      if (starts_with(f.text)) {
        token.kind = f.kind;
        token.text = std::string(f.text);
        advance(f.text.size());
        return;
      }
    }
    throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Scanner(text).run(); }

std::string describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Variable: return "variable";
    case TokenKind::Integer: return "integer";
    case TokenKind::Directive: return "directive";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Colon: return "':'";
    case TokenKind::At: return "'@'";
    case TokenKind::If: return "':-'";
    case TokenKind::WeakIf: return "':~'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Less: return "'<'";
    case TokenKind::LessEqual: return "'<='";
    case TokenKind::Greater: return "'>'";
    case TokenKind::GreaterEqual: return "'>='";
    case TokenKind::Equal: return "'='";
    case TokenKind::NotEqual: return "'!='";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

}  // namespace ecplan::logic
