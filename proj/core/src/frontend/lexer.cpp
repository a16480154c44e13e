#include "qmod/frontend/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace qmod::frontend {

const char* to_string(TokenKind k) {
  switch (k) {
    case TokenKind::End: return "end of input";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::KwQfunc: return "'qfunc'";
    case TokenKind::KwQstruct: return "'qstruct'";
    case TokenKind::KwOutput: return "'output'";
    case TokenKind::KwQbit: return "'qbit'";
    case TokenKind::KwQnum: return "'qnum'";
    case TokenKind::KwQarray: return "'qarray'";
    case TokenKind::KwInt: return "'int'";
    case TokenKind::KwReal: return "'real'";
    case TokenKind::KwArray: return "'array'";
    case TokenKind::KwSigned: return "'signed'";
    case TokenKind::KwUnsigned: return "'unsigned'";
    case TokenKind::KwAllocate: return "'allocate'";
    case TokenKind::KwPhase: return "'phase'";
    case TokenKind::KwAssignAmplitude: return "'assign_amplitude'";
    case TokenKind::KwControl: return "'control'";
    case TokenKind::KwRepeat: return "'repeat'";
    case TokenKind::KwWithin: return "'within'";
    case TokenKind::KwApply: return "'apply'";
    case TokenKind::KwInvert: return "'invert'";
    case TokenKind::KwPower: return "'power'";
    case TokenKind::KwAnd: return "'and'";
    case TokenKind::KwOr: return "'or'";
    case TokenKind::KwNot: return "'not'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Colon: return "':'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::StarStar: return "'**'";
    case TokenKind::Amp: return "'&'";
    case TokenKind::Pipe: return "'|'";
    case TokenKind::Caret: return "'^'";
    case TokenKind::Tilde: return "'~'";
    case TokenKind::Shl: return "'<<'";
    case TokenKind::Shr: return "'>>'";
    case TokenKind::Less: return "'<'";
    case TokenKind::LessEq: return "'<='";
    case TokenKind::Greater: return "'>'";
    case TokenKind::GreaterEq: return "'>='";
    case TokenKind::EqEq: return "'=='";
    case TokenKind::NotEq: return "'!='";
    case TokenKind::PipeAssign: return "'|='";
    case TokenKind::CaretAssign: return "'^='";
    case TokenKind::PlusAssign: return "'+='";
  }
  return "token";
}

namespace {

const std::unordered_map<std::string_view, TokenKind>& keywords() {
  static const std::unordered_map<std::string_view, TokenKind> table = {
      {"qfunc", TokenKind::KwQfunc},
      {"qstruct", TokenKind::KwQstruct},
      {"output", TokenKind::KwOutput},
      {"qbit", TokenKind::KwQbit},
      {"qnum", TokenKind::KwQnum},
      {"qarray", TokenKind::KwQarray},
      {"int", TokenKind::KwInt},
      {"real", TokenKind::KwReal},
      {"array", TokenKind::KwArray},
      {"signed", TokenKind::KwSigned},
      {"unsigned", TokenKind::KwUnsigned},
      {"allocate", TokenKind::KwAllocate},
      {"phase", TokenKind::KwPhase},
      {"assign_amplitude", TokenKind::KwAssignAmplitude},
      {"control", TokenKind::KwControl},
      {"repeat", TokenKind::KwRepeat},
      {"within", TokenKind::KwWithin},
      {"apply", TokenKind::KwApply},
      {"invert", TokenKind::KwInvert},
      {"power", TokenKind::KwPower},
      {"and", TokenKind::KwAnd},
      {"or", TokenKind::KwOr},
      {"not", TokenKind::KwNot},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= src_.size()) {
        out.push_back({TokenKind::End, "", span_from(line_, col_)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SourceSpan span_from(std::uint32_t line, std::uint32_t col) const {
    return {line, col, line_, col_};
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token next() {
    std::uint32_t line = line_, col = col_;
    std::size_t start = pos_;
    auto c = static_cast<unsigned char>(peek());

    if (std::isalpha(c) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
        advance();
      std::string text(src_.substr(start, pos_ - start));
      auto it = keywords().find(text);
      TokenKind kind = it == keywords().end() ? TokenKind::Identifier : it->second;
      return {kind, std::move(text), span_from(line, col)};
    }

    if (std::isdigit(c) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (std::isdigit(static_cast<unsigned char>(peek(1))) ||
           ((peek(1) == '-' || peek(1) == '+') &&
            std::isdigit(static_cast<unsigned char>(peek(2)))))) {
        advance();
        if (peek() == '-' || peek() == '+') advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      return {TokenKind::Number, std::string(src_.substr(start, pos_ - start)),
              span_from(line, col)};
    }

    auto two = [&](char second) { return peek(1) == second; };
    TokenKind kind;
    int len = 1;
    switch (c) {
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case '{': kind = TokenKind::LBrace; break;
      case '}': kind = TokenKind::RBrace; break;
      case '[': kind = TokenKind::LBracket; break;
      case ']': kind = TokenKind::RBracket; break;
      case ',': kind = TokenKind::Comma; break;
      case ':': kind = TokenKind::Colon; break;
      case ';': kind = TokenKind::Semicolon; break;
      case '.': kind = TokenKind::Dot; break;
      case '~': kind = TokenKind::Tilde; break;
      case '/': kind = TokenKind::Slash; break;
      case '-': kind = TokenKind::Minus; break;
      case '&': kind = TokenKind::Amp; break;
      case '+':
        if (two('=')) { kind = TokenKind::PlusAssign; len = 2; }
        else kind = TokenKind::Plus;
        break;
      case '*':
        if (two('*')) { kind = TokenKind::StarStar; len = 2; }
        else kind = TokenKind::Star;
        break;
      case '|':
        if (two('=')) { kind = TokenKind::PipeAssign; len = 2; }
        else kind = TokenKind::Pipe;
        break;
      case '^':
        if (two('=')) { kind = TokenKind::CaretAssign; len = 2; }
        else kind = TokenKind::Caret;
        break;
      case '<':
        if (two('<')) { kind = TokenKind::Shl; len = 2; }
        else if (two('=')) { kind = TokenKind::LessEq; len = 2; }
        else kind = TokenKind::Less;
        break;
      case '>':
        if (two('>')) { kind = TokenKind::Shr; len = 2; }
        else if (two('=')) { kind = TokenKind::GreaterEq; len = 2; }
        else kind = TokenKind::Greater;
        break;
      case '=':
        if (two('=')) { kind = TokenKind::EqEq; len = 2; break; }
        throw LexError("unexpected character '='; assignment uses '|=', '^=' or '+='",
                       {line, col, line, col + 1});
      case '!':
        if (two('=')) { kind = TokenKind::NotEq; len = 2; break; }
        throw LexError("unexpected character '!'; use 'not'", {line, col, line, col + 1});
      default: {
        std::string shown = std::isprint(c) ? std::string(1, static_cast<char>(c))
                                            : "\\x" + to_hex(c);
        throw LexError("unrecognized character '" + shown + "'", {line, col, line, col + 1});
      }
    }
    for (int i = 0; i < len; ++i) advance();
    return {kind, std::string(src_.substr(start, pos_ - start)), span_from(line, col)};
  }

  static std::string to_hex(unsigned char c) {
    const char* digits = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 15]};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace qmod::frontend
