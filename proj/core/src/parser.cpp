// Copyright 2026 The Decapode Authors. All Rights Reserved.
//
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

#include "decapode/parser.hpp"

#include <algorithm>
#include <optional>

#include "decapode/error.hpp"
#include "decapode/type_inference.hpp"

namespace decapode {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, EqEq, ColonColon, Star, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool is_delimiter(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '(' || c == ')' || c == ',' || c == '=' ||
         c == ':' || c == '#' || c == '*';
}

bool is_ident_byte(unsigned char c) {
  return c >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '.';
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, depth = 0, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      // Continuation bytes do not start a new code point.
      if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) ++col;
      ++i;
    }
  };
  while (i < src.size()) {
    const auto c = static_cast<unsigned char>(src[i]);
    const std::size_t l = line, k = col;
    if (c == '\n') {
      if (depth == 0) out.push_back({Tok::Newline, "", l, k});
      ++i;
      ++line;
      col = 1;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (c == '(') {
      ++depth;
      out.push_back({Tok::LParen, "(", l, k});
      advance(1);
    } else if (c == ')') {
      if (depth == 0) throw SyntaxError(l, k, "unbalanced ')'");
      --depth;
      out.push_back({Tok::RParen, ")", l, k});
      advance(1);
    } else if (c == ',') {
      out.push_back({Tok::Comma, ",", l, k});
      advance(1);
    } else if (c == '*') {
      out.push_back({Tok::Star, "*", l, k});
      advance(1);
    } else if (c == '=') {
      if (i + 1 >= src.size() || src[i + 1] != '=') throw SyntaxError(l, k, "expected '=='");
      out.push_back({Tok::EqEq, "==", l, k});
      advance(2);
    } else if (c == ':') {
      if (i + 1 >= src.size() || src[i + 1] != ':') throw SyntaxError(l, k, "expected '::'");
      out.push_back({Tok::ColonColon, "::", l, k});
      advance(2);
    } else if (is_ident_byte(c)) {
      if (c >= '0' && c <= '9') throw SyntaxError(l, k, "numeric literals are not supported");
      const std::size_t start = i;
      while (i < src.size() && is_ident_byte(static_cast<unsigned char>(src[i])) &&
             !is_delimiter(static_cast<unsigned char>(src[i]))) {
        advance(1);
      }
      out.push_back({Tok::Ident, decompose_dot_above(src.substr(start, i - start)), l, k});
    } else {
      throw SyntaxError(l, k, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct Expr {
  enum class Kind { Ident, Call, Mul };
  Kind kind = Kind::Ident;
  std::string name;
  std::vector<Expr> args;
  std::size_t line = 0;
  std::size_t col = 0;
};

struct Statement {
  enum class Kind { Param, Expose, Ascribe, Equation };
  Kind kind;
  std::vector<Token> names;
  std::optional<Token> type;
  Expr lhs, rhs;
  Token eq{Tok::End, "", 0, 0};
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<Statement> program() {
    std::vector<Statement> out;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Newline) {
        ++pos_;
        continue;
      }
      out.push_back(statement());
      if (peek().kind != Tok::Newline && peek().kind != Tok::End) fail(peek(), "expected end of line");
    }
    return out;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] static void fail(const Token& at, const std::string& what) {
    std::string got = at.kind == Tok::End ? "end of input" : at.kind == Tok::Newline ? "end of line" : "'" + at.text + "'";
    throw SyntaxError(at.line, at.col, what + ", got " + got);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    return next();
  }

  std::vector<Token> ident_list() {
    std::vector<Token> names{expect(Tok::Ident, "identifier")};
    while (peek().kind == Tok::Comma) {
      ++pos_;
      names.push_back(expect(Tok::Ident, "identifier"));
    }
    return names;
  }

  Statement statement() {
    const Token& first = peek();
    if (first.kind == Tok::Ident && (first.text == "param" || first.text == "expose") && peek(1).kind == Tok::Ident) {
      ++pos_;
      Statement s{first.text == "param" ? Statement::Kind::Param : Statement::Kind::Expose, ident_list(), {}, {}, {}};
      if (s.kind == Statement::Kind::Param && peek().kind == Tok::ColonColon) {
        ++pos_;
        s.type = expect(Tok::Ident, "type name");
      }
      return s;
    }
    if (first.kind == Tok::Ident && (peek(1).kind == Tok::ColonColon || peek(1).kind == Tok::Comma)) {
      Statement s{Statement::Kind::Ascribe, ident_list(), {}, {}, {}};
      expect(Tok::ColonColon, "'::'");
      s.type = expect(Tok::Ident, "type name");
      return s;
    }
    Statement s{Statement::Kind::Equation, {}, {}, {}, {}};
    s.lhs = expr();
    s.eq = expect(Tok::EqEq, "'=='");
    s.rhs = expr();
    return s;
  }

  Expr expr() {
    Expr left = primary();
    while (peek().kind == Tok::Star) {
      const Token star = next();
      Expr mul{Expr::Kind::Mul, "*", {std::move(left), primary()}, star.line, star.col};
      left = std::move(mul);
    }
    return left;
  }

  Expr primary() {
    if (peek().kind == Tok::LParen) {
      ++pos_;
      Expr inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    const Token& id = expect(Tok::Ident, "identifier or '('");
    Expr e{Expr::Kind::Ident, id.text, {}, id.line, id.col};
    if (peek().kind != Tok::LParen) return e;
    ++pos_;
    e.kind = Expr::Kind::Call;
    if (peek().kind != Tok::RParen) {
      e.args.push_back(expr());
      while (peek().kind == Tok::Comma) {
        ++pos_;
        e.args.push_back(expr());
      }
    }
    expect(Tok::RParen, "')'");
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool is_time_derivative(const Expr& e) {
  return e.kind == Expr::Kind::Call && canonical_operator_name(e.name) == kTimeDerivative;
}

std::optional<std::size_t> fixed_arity(const std::string& op) {
  if (auto sig = builtin_signature(op)) return sig->inputs.size();
  if (op == "d" || op == "d̃" || op == "⋆" || op == "⋆⁻¹") return 1;
  if (op == "∧") return 2;
  return std::nullopt;
}

class Lowerer {
 public:
  ParseResult run(const std::vector<Statement>& program) {
    for (const Statement& s : program) {
      switch (s.kind) {
        case Statement::Kind::Param:
          for (const Token& n : s.names) {
            const VarId v = ref(n.text);
            ascribe(v, s.type ? type_of(*s.type) : VarType::literal(), n);
            out_.decapode.set_parameter(v, true);
          }
          break;
        case Statement::Kind::Expose:
          for (const Token& n : s.names) out_.exposed.push_back(n.text);
          break;
        case Statement::Kind::Ascribe:
          for (const Token& n : s.names) ascribe(ref(n.text), type_of(*s.type), n);
          break;
        case Statement::Kind::Equation: equation(s); break;
      }
    }
    return std::move(out_);
  }

 private:
  Decapode& d() { return out_.decapode; }

  static VarType type_of(const Token& t) {
    auto type = parse_var_type(t.text);
    if (!type) throw SyntaxError(t.line, t.col, "unknown type '" + t.text + "'");
    return *type;
  }

  void ascribe(VarId v, VarType type, const Token& at) {
    const VarType current = d().var(v).type;
    if (!current.is_infer() && !type.is_infer() && current != type) {
      throw Error(ErrorCode::TypeError, "line " + std::to_string(at.line) + ": '" + at.text + "' declared " +
                                            to_string(type) + " but already " + to_string(current));
    }
    if (!type.is_infer()) d().set_type(v, type);
  }

  VarId ref(const std::string& name) {
    if (auto v = d().find_var(name)) return *v;
    return d().add_var(name);
  }

  bool has_definer(VarId v) const {
    const Decapode& dd = out_.decapode;
    for (const Op1& op : dd.op1s())
      if (op.tgt == v && op.op1 != kTimeDerivative) return true;
    for (const Op2& op : dd.op2s())
      if (op.res == v) return true;
    for (const Sigma& s : dd.sigmas())
      if (s.sum == v) return true;
    return false;
  }

  VarId output(std::optional<VarId> target) {
    if (!target) return d().add_anonymous_var();
    if (has_definer(*target)) out_.warnings.push_back("multiple definitions of " + d().var(*target).name);
    return *target;
  }

  void equation(const Statement& s) {
    const bool lref = s.lhs.kind == Expr::Kind::Ident || is_time_derivative(s.lhs);
    const bool rref = s.rhs.kind == Expr::Kind::Ident || is_time_derivative(s.rhs);
    if (s.lhs.kind == Expr::Kind::Ident && s.rhs.kind == Expr::Kind::Ident) {
      throw SyntaxError(s.eq.line, s.eq.col, "equation relates two variables without an operator");
    }
    if (s.lhs.kind == Expr::Kind::Ident) {
      lower(s.rhs, ref(s.lhs.name));
    } else if (s.rhs.kind == Expr::Kind::Ident) {
      lower(s.lhs, ref(s.rhs.name));
    } else if (lref) {
      const VarId t = lower(s.lhs, std::nullopt);
      if (rref) throw SyntaxError(s.eq.line, s.eq.col, "equation relates two tangents without an operator");
      lower(s.rhs, t);
    } else if (rref) {
      lower(s.lhs, lower(s.rhs, std::nullopt));
    } else {
      // Both sides computed: their top operators write one shared value.
      const VarId t = d().add_anonymous_var();
      lower(s.lhs, t);
      lower(s.rhs, t);
    }
  }

  VarId lower(const Expr& e, std::optional<VarId> target) {
    if (e.kind == Expr::Kind::Ident) return ref(e.name);
    if (e.kind == Expr::Kind::Mul) {
      const VarId a = lower(e.args[0], std::nullopt);
      const VarId b = lower(e.args[1], std::nullopt);
      const VarId out = output(target);
      d().add_op2(a, b, out, "*");
      return out;
    }
    const std::string op = canonical_operator_name(e.name);
    if (op == kTimeDerivative) return tangent(e, target);
    if (op == "sum") {
      if (e.args.empty()) throw SyntaxError(e.line, e.col, "sum needs at least one argument");
      std::vector<VarId> args;
      for (const Expr& a : e.args) args.push_back(lower(a, std::nullopt));
      const VarId out = output(target);
      d().add_sum(out, args);
      return out;
    }
    if (auto n = fixed_arity(op); n && *n != e.args.size()) {
      throw SyntaxError(e.line, e.col,
                        "operator " + op + " expects " + std::to_string(*n) + " argument(s), got " +
                            std::to_string(e.args.size()));
    }
    if (e.args.size() == 1) {
      const VarId a = lower(e.args[0], std::nullopt);
      const VarId out = output(target);
      d().add_op1(a, out, op);
      return out;
    }
    if (e.args.size() == 2) {
      const VarId a = lower(e.args[0], std::nullopt);
      const VarId b = lower(e.args[1], std::nullopt);
      const VarId out = output(target);
      d().add_op2(a, b, out, op);
      return out;
    }
    throw SyntaxError(e.line, e.col,
                      "unknown operator arity: " + op + " applied to " + std::to_string(e.args.size()) + " arguments");
  }

  VarId tangent(const Expr& e, std::optional<VarId> target) {
    if (e.args.size() != 1 || e.args[0].kind != Expr::Kind::Ident) {
      throw SyntaxError(e.line, e.col, "∂ₜ takes exactly one variable");
    }
    const VarId state = ref(e.args[0].name);
    const auto existing = d().tangents_of(state);
    if (!target) {
      if (!existing.empty()) return existing.front();
      target = ref(tangent_name(d().var(state).name));
    } else if (std::find(existing.begin(), existing.end(), *target) != existing.end()) {
      return *target;
    }
    d().add_op1(state, *target, std::string(kTimeDerivative));
    if (!d().is_tangent(*target)) d().add_tvar(*target);
    return *target;
  }

  ParseResult out_;
};

}  // namespace

ParseResult parse_decapode_source(std::string_view source, const ParseOptions& options) {
  auto program = Parser(tokenize(source)).program();
  ParseResult result = Lowerer().run(program);
  for (const std::string& name : result.exposed) {
    if (!result.decapode.find_var(name)) {
      throw Error(ErrorCode::InvalidArgument, "exposed name '" + name + "' is not a variable");
    }
  }
  if (options.infer) infer_types(result.decapode);
  return result;
}

Decapode parse_decapode(std::string_view source, const ParseOptions& options) {
  return parse_decapode_source(source, options).decapode;
}

std::string print_decapode(const Decapode& d, const std::vector<std::string>& exposed) {
  std::string out;
  if (!exposed.empty()) {
    out += "expose ";
    for (std::size_t i = 0; i < exposed.size(); ++i) out += (i ? ", " : "") + exposed[i];
    out += '\n';
  }
  std::vector<bool> used(d.vars().size(), false);
  for (const Op1& op : d.op1s()) used[op.src] = used[op.tgt] = true;
  for (const Op2& op : d.op2s()) used[op.proj1] = used[op.proj2] = used[op.res] = true;
  for (const Sigma& s : d.sigmas()) used[s.sum] = true;
  for (const Summand& s : d.summands()) used[s.summand] = true;
  for (VarId v = 0; v < d.vars().size(); ++v) {
    const Var& var = d.var(v);
    if (var.parameter) {
      out += "param " + var.name;
      if (!var.type.is_literal()) out += " :: " + to_string(var.type);
      out += '\n';
    } else if (!var.type.is_infer() || !used[v]) {
      out += var.name + " :: " + to_string(var.type) + '\n';
    }
  }
  for (const Op1& op : d.op1s()) {
    out += d.var(op.tgt).name + " == " + op.op1 + "(" + d.var(op.src).name + ")\n";
  }
  for (const Op2& op : d.op2s()) {
    const std::string& a = d.var(op.proj1).name;
    const std::string& b = d.var(op.proj2).name;
    out += d.var(op.res).name + " == " + (op.op2 == "*" ? a + " * " + b : op.op2 + "(" + a + ", " + b + ")") + '\n';
  }
  for (std::size_t s = 0; s < d.sigmas().size(); ++s) {
    out += d.var(d.sigmas()[s].sum).name + " == sum(";
    const auto args = d.summands_of(s);
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + d.var(args[i]).name;
    out += ")\n";
  }
  return out;
}

}  // namespace decapode
