#pragma once

// Small expression language for q-series identities.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power (('*'|'/') power)*
//   power  := atom ['^' ['-'] integer]
//   atom   := integer | 'q' | 'f'<d> | '(' expr ')'
//           | dissect(expr, d, r) | inflate(expr, d)
//           | theta(a, b, c) | theta_pos(a, b, c)
//
// Evaluation is demand driven: asking for an expression to truncation T
// expands each subexpression exactly as far as that requires.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "lreg/qseries.hpp"

namespace lreg {

struct ExprNode;

class Expr {
 public:
  static Expr parse(std::string_view text);

  Series evaluate(std::int64_t trunc, Ring ring) const;
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const ExprNode> root_;
  std::string text_;
};

}  // namespace lreg
