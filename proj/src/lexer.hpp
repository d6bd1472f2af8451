#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lambdapm/term.hpp"

namespace lpm::detail {

enum class Tok { Lambda, Dot, LParen, RParen, Ident, Bottom, Hole, LAngle, RAngle, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else if (c == '\\') {
      out.push_back({Tok::Lambda, "\\", i++});
    } else if (static_cast<unsigned char>(c) == 0xCE && i + 1 < s.size() &&
               static_cast<unsigned char>(s[i + 1]) == 0xBB) {
      out.push_back({Tok::Lambda, "\\", i});
      i += 2;
    } else if (c == '.') {
      out.push_back({Tok::Dot, ".", i++});
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else if (c == '<') {
      out.push_back({Tok::LAngle, "<", i++});
    } else if (c == '>') {
      out.push_back({Tok::RAngle, ">", i++});
    } else if (c == ',') {
      out.push_back({Tok::Comma, ",", i++});
    } else if (s.substr(i, 3) == "_|_") {
      out.push_back({Tok::Bottom, "_|_", i});
      i += 3;
    } else if (s.substr(i, 3) == "[-]") {
      out.push_back({Tok::Hole, "[-]", i});
      i += 3;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

}  // namespace lpm::detail
