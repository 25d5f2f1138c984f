#include "lreg/expr.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "lreg/error.hpp"

namespace lreg {

struct ExprNode {
  enum class Kind { Integer, Q, Eta, Sum, Product, Dissect, Inflate, Theta };

  Kind kind = Kind::Integer;
  BigInt value;
  std::int64_t d = 0;
  std::int64_t r = 0;
  QuadraticForm form;
  ThetaRange range = ThetaRange::AllIntegers;
  // Sum: children with signs (+1/-1). Product: children with exponents.
  std::vector<std::shared_ptr<const ExprNode>> children;
  std::vector<std::int64_t> weights;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;
using Kind = ExprNode::Kind;

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("expression: " + what + " at offset " + std::to_string(pos_) + " in '" +
                          std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::int64_t small_int(bool allow_sign = true) {
    bool neg = false;
    if (allow_sign) {
      if (accept('-')) neg = true;
      else accept('+');
    }
    const std::string t = digits();
    if (t.size() > 15) fail("number too large");
    const std::int64_t v = std::stoll(t);
    return neg ? -v : v;
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  NodePtr expr() {
    auto node = std::make_shared<ExprNode>();
    node->kind = Kind::Sum;
    std::int64_t sign = 1;
    if (accept('-')) sign = -1;
    else accept('+');
    node->children.push_back(term());
    node->weights.push_back(sign);
    while (true) {
      if (accept('+')) sign = 1;
      else if (accept('-')) sign = -1;
      else break;
      node->children.push_back(term());
      node->weights.push_back(sign);
    }
    if (node->children.size() == 1 && sign == 1 && node->weights[0] == 1) return node->children[0];
    return node;
  }

  NodePtr term() {
    auto node = std::make_shared<ExprNode>();
    node->kind = Kind::Product;
    auto add = [&](std::int64_t dir) {
      auto [base, e] = power();
      node->children.push_back(base);
      node->weights.push_back(dir * e);
    };
    add(1);
    while (true) {
      if (accept('*')) add(1);
      else if (accept('/')) add(-1);
      else break;
    }
    if (node->children.size() == 1 && node->weights[0] == 1) return node->children[0];
    return node;
  }

  std::pair<NodePtr, std::int64_t> power() {
    NodePtr base = atom();
    std::int64_t e = 1;
    if (accept('^')) e = small_int();
    return {base, e};
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    auto node = std::make_shared<ExprNode>();
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      node->kind = Kind::Integer;
      node->value = BigInt(digits());
      return node;
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    const std::string name = identifier();
    if (name == "q") {
      node->kind = Kind::Q;
    } else if (name == "f") {
      node->kind = Kind::Eta;
      node->d = small_int(false);
      if (node->d < 1) fail("eta index must be positive");
    } else if (name == "dissect") {
      node->kind = Kind::Dissect;
      expect('(');
      node->children.push_back(expr());
      expect(',');
      node->d = small_int();
      expect(',');
      node->r = small_int();
      expect(')');
      if (node->d < 1 || node->r < 0 || node->r >= node->d) fail("dissect needs d >= 1 and 0 <= r < d");
    } else if (name == "inflate") {
      node->kind = Kind::Inflate;
      expect('(');
      node->children.push_back(expr());
      expect(',');
      node->d = small_int();
      expect(')');
      if (node->d < 1) fail("inflate needs d >= 1");
    } else if (name == "theta" || name == "theta_pos") {
      node->kind = Kind::Theta;
      node->range = name == "theta" ? ThetaRange::AllIntegers : ThetaRange::PositiveOnly;
      expect('(');
      node->form.a = small_int();
      expect(',');
      node->form.b = small_int();
      expect(',');
      node->form.c = small_int();
      expect(')');
      if (node->form.a <= 0) fail("theta needs a > 0");
    } else {
      fail(name.empty() ? "unexpected character" : "unknown name '" + name + "'");
    }
    return node;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct Flat {
  BigInt scalar = 1;
  std::int64_t shift = 0;
  std::map<std::int64_t, std::int64_t> eta;
  std::vector<std::pair<NodePtr, std::int64_t>> others;
};

void flatten(const NodePtr& node, std::int64_t e, Flat& out) {
  switch (node->kind) {
    case Kind::Integer:
      if (e >= 0) {
        BigInt p;
        mpz_pow_ui(p.get_mpz_t(), node->value.get_mpz_t(), static_cast<unsigned long>(e));
        out.scalar *= p;
      } else if (node->value != 1) {
        throw InvalidArgument("expression: division by an integer other than 1");
      }
      return;
    case Kind::Q:
      out.shift = checked_add(out.shift, e);
      return;
    case Kind::Eta:
      out.eta[node->d] = checked_add(out.eta[node->d], e);
      return;
    case Kind::Product:
      for (std::size_t i = 0; i < node->children.size(); ++i) {
        flatten(node->children[i], checked_mul(e, node->weights[i]), out);
      }
      return;
    default:
      out.others.emplace_back(node, e);
  }
}

Series eval(const NodePtr& node, std::int64_t trunc, Ring ring);

Series eval_product(const NodePtr& node, std::int64_t exponent, std::int64_t trunc, Ring ring) {
  Flat f;
  flatten(node, exponent, f);
  if (f.shift < 0) throw InvalidArgument("expression: negative power of q");
  const std::int64_t inner = trunc - f.shift;
  if (inner < 0) return Series(ring, trunc);
  std::erase_if(f.eta, [](const auto& kv) { return kv.second == 0; });
  Series acc = eta_product(f.eta, inner, ring);
  for (const auto& [child, e] : f.others) {
    if (e == 0) continue;
    Series base = eval(child, inner, ring);
    if (e < 0) base = inverse(base);
    for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) acc = mul(acc, base);
  }
  if (f.scalar != 1) acc = scale(acc, f.scalar);
  return f.shift == 0 ? acc : shift(acc, f.shift);
}

Series eval(const NodePtr& node, std::int64_t trunc, Ring ring) {
  switch (node->kind) {
    case Kind::Sum: {
      Series acc(ring, trunc);
      for (std::size_t i = 0; i < node->children.size(); ++i) {
        const Series t = eval(node->children[i], trunc, ring);
        acc = node->weights[i] > 0 ? add(acc, t) : sub(acc, t);
      }
      return acc;
    }
    case Kind::Dissect:
      return dissect(eval(node->children[0], checked_add(checked_mul(node->d, trunc), node->r), ring), node->d,
                     node->r);
    case Kind::Inflate:
      return inflate(eval(node->children[0], (trunc + node->d - 1) / node->d, ring), node->d, trunc);
    case Kind::Theta:
      return theta_series(node->form, node->range, trunc, ring);
    default:
      return eval_product(node, 1, trunc, ring);
  }
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  Expr e;
  e.root_ = Parser(text).parse();
  e.text_ = std::string(text);
  return e;
}

Series Expr::evaluate(std::int64_t trunc, Ring ring) const {
  if (!root_) throw InvalidArgument("empty expression");
  if (trunc < 0) throw InvalidArgument("negative truncation");
  return eval(root_, trunc, ring);
}

}  // namespace lreg
