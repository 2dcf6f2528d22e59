#pragma once

#include <algorithm>
#include <cassert>
#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "interval.hpp"

namespace mitl {

enum class Op {
  True, False, Atom,
  Not, And, Or,
  Until,       // binary, interval (full interval = untimed)
  Eventually,  // unary, interval
  Always,      // unary, interval
  Next,        // unary; monitoring only, never compiled
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op;
  std::string atom;     // Op::Atom
  Interval ivl;         // Until / Eventually / Always
  FormulaPtr lhs, rhs;  // unary ops use lhs

  Formula(Op o) : op(o) {}
};

inline FormulaPtr f_true() { return std::make_shared<Formula>(Op::True); }
inline FormulaPtr f_false() { return std::make_shared<Formula>(Op::False); }
inline FormulaPtr f_atom(std::string name) {
  auto f = std::make_shared<Formula>(Op::Atom);
  f->atom = std::move(name);
  return f;
}
inline FormulaPtr f_not(FormulaPtr x) {
  auto f = std::make_shared<Formula>(Op::Not);
  f->lhs = std::move(x);
  return f;
}
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>(Op::And);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>(Op::Or);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
inline FormulaPtr f_until(FormulaPtr a, FormulaPtr b, Interval ivl = Interval()) {
  auto f = std::make_shared<Formula>(Op::Until);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  f->ivl = ivl;
  return f;
}
inline FormulaPtr f_ev(FormulaPtr x, Interval ivl = Interval()) {
  auto f = std::make_shared<Formula>(Op::Eventually);
  f->lhs = std::move(x);
  f->ivl = ivl;
  return f;
}
inline FormulaPtr f_alw(FormulaPtr x, Interval ivl = Interval()) {
  auto f = std::make_shared<Formula>(Op::Always);
  f->lhs = std::move(x);
  f->ivl = ivl;
  return f;
}
inline FormulaPtr f_next(FormulaPtr x) {
  auto f = std::make_shared<Formula>(Op::Next);
  f->lhs = std::move(x);
  return f;
}

inline bool equals(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->op != b->op) return false;
  switch (a->op) {
    case Op::True: case Op::False: return true;
    case Op::Atom: return a->atom == b->atom;
    case Op::Not: case Op::Next: return equals(a->lhs, b->lhs);
    case Op::And: case Op::Or:
      return equals(a->lhs, b->lhs) && equals(a->rhs, b->rhs);
    case Op::Until:
      return a->ivl == b->ivl && equals(a->lhs, b->lhs) && equals(a->rhs, b->rhs);
    case Op::Eventually: case Op::Always:
      return a->ivl == b->ivl && equals(a->lhs, b->lhs);
  }
  return false;
}

// Printer. Precedence: | (1) < & (2) < U (3) < prefix ops (4).
namespace detail {
inline int prec(Op op) {
  switch (op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Until: return 3;
    default: return 4;
  }
}

inline void print_rec(const FormulaPtr& f, int parent_prec, std::string& out) {
  int p = prec(f->op);
  bool paren = p < parent_prec;
  if (paren) out += '(';
  auto ivl_suffix = [&](const Interval& ivl) {
    if (!ivl.is_full()) out += ivl.str();
  };
  switch (f->op) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Atom: out += f->atom; break;
    case Op::Not: out += '!'; print_rec(f->lhs, 4, out); break;
    case Op::Next: out += "X "; print_rec(f->lhs, 4, out); break;
    case Op::Eventually:
      out += 'F';
      ivl_suffix(f->ivl);
      out += ' ';
      print_rec(f->lhs, 4, out);
      break;
    case Op::Always:
      out += 'G';
      ivl_suffix(f->ivl);
      out += ' ';
      print_rec(f->lhs, 4, out);
      break;
    case Op::And:
      print_rec(f->lhs, 2, out);
      out += " & ";
      print_rec(f->rhs, 3, out);  // left-assoc: right child needs higher prec
      break;
    case Op::Or:
      print_rec(f->lhs, 1, out);
      out += " | ";
      print_rec(f->rhs, 2, out);
      break;
    case Op::Until:
      print_rec(f->lhs, 4, out);  // right-assoc: left child parenthesized at same level
      out += " U";
      ivl_suffix(f->ivl);
      out += ' ';
      print_rec(f->rhs, 3, out);
      break;
  }
  if (paren) out += ')';
}
}  // namespace detail

inline std::string to_string(const FormulaPtr& f) {
  std::string out;
  detail::print_rec(f, 0, out);
  return out;
}

// Recursive-descent parser.
//
//   or     := and ('|' and)*
//   and    := until ('&' until)*
//   until  := unary ('U' ivl? until)?          right-associative
//   unary  := ('!' | 'X' | 'F' ivl? | 'G' ivl?) unary | primary
//   primary:= '(' or ')' | 'true' | 'false' | ident
//   ivl    := '[' nat ',' (nat | 'inf') ']'
//
// Keywords U F G X true false are reserved; atoms are other identifiers.
class Parser {
 public:
  explicit Parser(std::string text) : text_(std::move(text)) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_or();
    skip_ws();
    if (pos_ != text_.size()) error(pos_, "unexpected trailing input");
    return f;
  }

 private:
  std::string text_;
  size_t pos_ = 0;

  [[noreturn]] void error(size_t at, const std::string& msg) const {
    throw std::runtime_error("parse error at " + std::to_string(at) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
    return false;
  }

  std::string peek_word() {
    skip_ws();
    size_t p = pos_;
    std::string w;
    while (p < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_'))
      w += text_[p++];
    return w;
  }

  void take_word(const std::string& w) { skip_ws(); pos_ += w.size(); }

  std::int64_t parse_nat() {
    skip_ws();
    size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) error(pos_, "expected a number");
    return v;
  }

  Interval parse_interval() {
    size_t at = pos_;
    if (!eat('[')) error(pos_, "expected '['");
    std::int64_t lo = parse_nat();
    if (!eat(',')) error(pos_, "expected ','");
    std::int64_t hi;
    std::string w = peek_word();
    if (w == "inf") { take_word(w); hi = Interval::kInf; }
    else hi = parse_nat();
    if (!eat(']')) error(pos_, "expected ']'");
    if (lo == hi) error(at, "punctual interval [" + std::to_string(lo) + "," +
                            std::to_string(hi) + "] is not allowed");
    if (hi != Interval::kInf && lo > hi) error(at, "empty interval (lower bound exceeds upper)");
    return Interval(lo, hi);
  }

  Interval opt_interval() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '[') return parse_interval();
    return Interval();  // untimed
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (true) {
      skip_ws();
      if (!eat('|')) return f;
      f = f_or(f, parse_and());
    }
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_until();
    while (true) {
      skip_ws();
      if (!eat('&')) return f;
      f = f_and(f, parse_until());
    }
  }

  FormulaPtr parse_until() {
    FormulaPtr f = parse_unary();
    if (peek_word() == "U") {
      take_word("U");
      Interval ivl = opt_interval();
      return f_until(f, parse_until(), ivl);
    }
    return f;
  }

  FormulaPtr parse_unary() {
    skip_ws();
    if (eat('!')) return f_not(parse_unary());
    std::string w = peek_word();
    if (w == "F") { take_word(w); Interval ivl = opt_interval(); return f_ev(parse_unary(), ivl); }
    if (w == "G") { take_word(w); Interval ivl = opt_interval(); return f_alw(parse_unary(), ivl); }
    if (w == "X") error(pos_, "the next operator is not part of the formula grammar");
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    skip_ws();
    if (eat('(')) {
      FormulaPtr f = parse_or();
      if (!eat(')')) error(pos_, "expected ')'");
      return f;
    }
    std::string w = peek_word();
    if (w.empty()) error(pos_, "expected a formula");
    if (w == "true") { take_word(w); return f_true(); }
    if (w == "false") { take_word(w); return f_false(); }
    if (w == "U" || w == "F" || w == "G" || w == "X" || w == "inf")
      error(pos_, "'" + w + "' is reserved");
    if (std::isdigit(static_cast<unsigned char>(w[0])))
      error(pos_, "atom may not start with a digit");
    take_word(w);
    return f_atom(w);
  }
};

inline FormulaPtr parse_formula(const std::string& text) { return Parser(text).parse(); }

// --- normalization to the synthesis fragment ------------------------------
//
// Output grammar: True | False | Atom | !Atom | And | Or | Until (untimed) |
// Eventually[a,b] (finite, a < b) | Always (untimed; timed only when
// allow_timed_always, and then only for monitoring).
//
// Rewrites: negations pushed to atoms; F phi (untimed) = true U phi;
// a U[0,b] b = (a U b) & F[0,b] b.  Out of fragment: Next, lower-bounded
// Until, [lo,inf] windows with lo > 0, negated Until (no release operator);
// these raise.
struct NormalizeOptions {
  bool allow_timed_always = false;
};

namespace detail {
[[noreturn]] inline void reject(const std::string& what) {
  throw std::runtime_error("outside the synthesis fragment: " + what);
}

inline FormulaPtr norm(const FormulaPtr& f, bool neg, const NormalizeOptions& opt) {
  switch (f->op) {
    case Op::True: return neg ? f_false() : f_true();
    case Op::False: return neg ? f_true() : f_false();
    case Op::Atom: return neg ? f_not(f) : f;
    case Op::Not: return norm(f->lhs, !neg, opt);
    case Op::And: {
      auto a = norm(f->lhs, neg, opt), b = norm(f->rhs, neg, opt);
      return neg ? f_or(a, b) : f_and(a, b);
    }
    case Op::Or: {
      auto a = norm(f->lhs, neg, opt), b = norm(f->rhs, neg, opt);
      return neg ? f_and(a, b) : f_or(a, b);
    }
    case Op::Next: reject("next operator");
    case Op::Eventually: {
      if (neg) {
        // !F[I] x = G[I] !x
        auto g = f_alw(f_not(f->lhs), f->ivl);
        return norm(g, false, opt);
      }
      const Interval& I = f->ivl;
      if (I.is_full()) return f_until(f_true(), norm(f->lhs, false, opt));
      if (I.infinite()) reject("unbounded window with positive lower bound " + I.str());
      return f_ev(norm(f->lhs, false, opt), I);
    }
    case Op::Always: {
      if (neg) {
        auto e = f_ev(f_not(f->lhs), f->ivl);
        return norm(e, false, opt);
      }
      const Interval& I = f->ivl;
      if (I.is_full()) return f_alw(norm(f->lhs, false, opt));
      if (I.infinite()) reject("unbounded window with positive lower bound " + I.str());
      if (!opt.allow_timed_always) reject("time-bounded always " + I.str());
      return f_alw(norm(f->lhs, false, opt), I);
    }
    case Op::Until: {
      if (neg) reject("negated until (no release operator)");
      const Interval& I = f->ivl;
      auto a = norm(f->lhs, false, opt), b = norm(f->rhs, false, opt);
      if (I.is_full()) return f_until(a, b);
      if (I.lo != 0) reject("until with positive lower bound " + I.str());
      if (I.infinite()) return f_until(a, b);  // [0,inf] = untimed
      // a U[0,b] c  =  (a U c) & F[0,b] c
      return f_and(f_until(a, b), f_ev(b, I));
    }
  }
  reject("unknown operator");
}
}  // namespace detail

inline FormulaPtr normalize(const FormulaPtr& f, NormalizeOptions opt = {}) {
  return detail::norm(f, false, opt);
}

// Atoms of a formula, sorted and deduplicated.
inline void collect_atoms(const FormulaPtr& f, std::vector<std::string>& out) {
  switch (f->op) {
    case Op::Atom: out.push_back(f->atom); break;
    case Op::True: case Op::False: break;
    default:
      if (f->lhs) collect_atoms(f->lhs, out);
      if (f->rhs) collect_atoms(f->rhs, out);
  }
}

inline std::vector<std::string> atoms_of(const FormulaPtr& f) {
  std::vector<std::string> v;
  collect_atoms(f, v);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace mitl
