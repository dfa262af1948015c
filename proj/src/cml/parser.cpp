// Copyright 2026 The cmlkg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <string>

#include "cmlkg/cml/formula.hpp"
#include "cmlkg/error.hpp"
#include "name_chars.hpp"

namespace cmlkg::cml {

namespace {

class Parser {
 public:
  Parser(FormulaArena& arena, std::string_view text)
      : arena_(arena), text_(text) {}

  FormulaId parse_all() {
    const FormulaId f = disjunction();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    // A keyword must not run into a following name character.
    const std::size_t after = pos_ + kw.size();
    if (after < text_.size() && is_plain_name_char(text_[after]) &&
        text_[after] != '(')
      return false;
    pos_ = after;
    return true;
  }

  FormulaId disjunction() {
    FormulaId f = conjunction();
    while (peek('|')) {
      ++pos_;
      f = arena_.disjoin(f, conjunction());
    }
    return f;
  }

  FormulaId conjunction() {
    FormulaId f = unary();
    while (peek('&')) {
      ++pos_;
      f = arena_.conjoin(f, unary());
    }
    return f;
  }

  FormulaId unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return arena_.negate(unary());
    }
    if (c == '<') {
      ++pos_;
      const std::string rel = name("relation");
      expect('>');
      if (pos_ >= text_.size() || text_[pos_] != '=')
        fail("expected '=' after '>' in diamond");
      ++pos_;
      const std::uint32_t n = count();
      return arena_.diamond(n, rel, unary());
    }
    if (c == '@') {
      ++pos_;
      return arena_.constant(name("constant"));
    }
    if (c == '(') {
      ++pos_;
      const FormulaId f = disjunction();
      expect(')');
      return f;
    }
    if (keyword("top")) return arena_.top();
    if (text_.substr(pos_, 2) == "P(") {
      pos_ += 2;
      const std::string p = name("predicate");
      expect(')');
      return arena_.pred(p);
    }
    fail("expected a formula");
  }

  std::uint32_t count() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
      ++pos_;
    if (start == pos_) fail("expected a count after '>='");
    std::uint64_t value = 0;
    const auto res =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || value > 0xFFFFFFFFULL) {
      pos_ = start;
      fail("count out of range");
    }
    if (value < 1) {
      pos_ = start;
      fail("diamond count must be >= 1");
    }
    return static_cast<std::uint32_t>(value);
  }

  std::string name(const char* what) {
    skip_ws();
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) fail("dangling escape");
        const char e = text_[pos_ + 1];
        if (!is_escapable(e)) {
          ++pos_;
          fail(std::string("unknown escape '\\") + e + "'");
        }
        out += e;
        pos_ += 2;
      } else if (is_plain_name_char(c)) {
        out += c;
        ++pos_;
      } else {
        break;
      }
    }
    if (out.empty()) fail(std::string("expected a ") + what + " name");
    return out;
  }

  FormulaArena& arena_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaId parse(FormulaArena& arena, std::string_view text) {
  return Parser(arena, text).parse_all();
}

}  // namespace cmlkg::cml
