#pragma once

#include <memory>
#include <string>
#include <string_view>

// Arithmetic mini-language for initial-data profiles. Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?          ('^' right-associative)
//   atom   := number | 'x' | 'r' | ident '(' expr ')' | '(' expr ')'
// with ident in {sin, cos, tan, exp, ln, sqrt, tanh, abs} and the
// constants pi and e. Unary minus binds looser than '^'.

namespace hgf {

class Expression {
  public:
    // The single free variable serves as x on line/torus grids and as r on
    // radial grids; both spellings refer to it.
    double eval(double x) const;
    const std::string& text() const { return text_; }

    struct Node;
    explicit Expression(std::shared_ptr<const Node> root, std::string text);

  private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

// Throws ParseError (with byte offset) on malformed input.
Expression parse_expression(std::string_view text);

} // namespace hgf
