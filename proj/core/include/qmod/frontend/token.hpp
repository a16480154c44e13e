#pragma once

#include <string>
#include <vector>

#include "qmod/common/source.hpp"

namespace qmod::frontend {

enum class TokenKind {
  End,
  Identifier,
  Number,
  // keywords
  KwQfunc,
  KwQstruct,
  KwOutput,
  KwQbit,
  KwQnum,
  KwQarray,
  KwInt,
  KwReal,
  KwArray,
  KwSigned,
  KwUnsigned,
  KwAllocate,
  KwPhase,
  KwAssignAmplitude,
  KwControl,
  KwRepeat,
  KwWithin,
  KwApply,
  KwInvert,
  KwPower,
  KwAnd,
  KwOr,
  KwNot,
  // punctuation
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Semicolon,
  Dot,
  // operators
  Plus,
  Minus,
  Star,
  Slash,
  StarStar,
  Amp,
  Pipe,
  Caret,
  Tilde,
  Shl,
  Shr,
  Less,
  LessEq,
  Greater,
  GreaterEq,
  EqEq,
  NotEq,
  PipeAssign,
  CaretAssign,
  PlusAssign,
};

const char* to_string(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceSpan span;

  friend bool operator==(const Token& a, const Token& b) {
    return a.kind == b.kind && a.text == b.text;
  }
};

}  // namespace qmod::frontend
