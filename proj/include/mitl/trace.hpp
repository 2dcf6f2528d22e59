#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"
#include "rational.hpp"

namespace mitl {

// Three-valued verdict with Kleene ordering False < Unknown < True.
enum class V3 : int { False = 0, Unknown = 1, True = 2 };

inline V3 and3(V3 a, V3 b) { return a < b ? a : b; }
inline V3 or3(V3 a, V3 b) { return a > b ? a : b; }
inline V3 not3(V3 a) { return static_cast<V3>(2 - static_cast<int>(a)); }
inline V3 v3(bool b) { return b ? V3::True : V3::False; }

inline const char* to_string(V3 v) {
  switch (v) {
    case V3::False: return "unsat";
    case V3::Unknown: return "unknown";
    case V3::True: return "sat";
  }
  return "?";
}

// Finite sampled trace: sample k gives the atoms holding on [k*delta, (k+1)*delta).
// delta must be 1/q for integer q so that integer formula bounds land on the grid.
struct TimedTrace {
  Rational delta{1, 2};
  std::vector<std::vector<std::string>> samples;

  size_t size() const { return samples.size(); }
  Rational horizon() const { return delta * Rational(std::int64_t(samples.size())); }

  bool holds(size_t k, const std::string& atom) const {
    assert(k < samples.size());
    const auto& s = samples[k];
    return std::find(s.begin(), s.end(), atom) != s.end();
  }

  // Samples per time unit.
  std::int64_t per_unit() const {
    if (delta.num != 1)
      throw std::runtime_error("trace delta must be 1/q for an integer q");
    return delta.den;
  }
};

inline Rational parse_rational(const std::string& v) {
  size_t slash = v.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(v));
  return Rational(std::stoll(v.substr(0, slash)), std::stoll(v.substr(slash + 1)));
}

// Trace text format: optional header "step: <rational>" (default 1/2), then
// one line per sample listing the active atoms separated by spaces; an empty
// line (or ".") is a sample with no atoms.  '#' lines are comments.
inline TimedTrace parse_trace(const std::string& text) {
  TimedTrace tr;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  bool saw_sample = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty() && toks[0][0] == '#') continue;
    if (!toks.empty() && (toks[0] == "step:" || toks[0].rfind("step:", 0) == 0)) {
      std::string v = toks[0] == "step:" ? (toks.size() > 1 ? toks[1] : "") : toks[0].substr(5);
      if (saw_sample || v.empty() || (toks[0] == "step:" && toks.size() != 2))
        throw std::runtime_error("line " + std::to_string(lineno) + ": bad step header");
      tr.delta = parse_rational(v);
      if (tr.delta.num <= 0)
        throw std::runtime_error("line " + std::to_string(lineno) + ": step must be positive");
      continue;
    }
    if (toks.empty() && !saw_sample) continue;  // leading blanks; use "." for a leading empty sample
    saw_sample = true;
    if (toks.empty() || (toks.size() == 1 && toks[0] == ".")) {
      tr.samples.emplace_back();
      continue;
    }
    for (auto& a : toks)
      if (a == ".") throw std::runtime_error("line " + std::to_string(lineno) + ": '.' mixed with atoms");
    tr.samples.push_back(std::move(toks));
  }
  return tr;
}

// --- determinacy horizon ---------------------------------------------------
//
// hc(f) = number of future grid cells the verdict at cell k may depend on:
// the verdict at k is fully determined by samples k .. k+hc(f).
namespace detail {
constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

inline std::int64_t hc_add(std::int64_t a, std::int64_t b) {
  if (a == kUnbounded || b == kUnbounded) return kUnbounded;
  return a + b;
}

inline std::int64_t hc(const FormulaPtr& f, std::int64_t q) {
  switch (f->op) {
    case Op::True: case Op::False: case Op::Atom: return 0;
    case Op::Not: return hc(f->lhs, q);
    case Op::And: case Op::Or:
      return std::max(hc(f->lhs, q), hc(f->rhs, q));
    case Op::Next: return hc_add(q, hc(f->lhs, q));
    case Op::Until: {
      std::int64_t inner = std::max(hc(f->lhs, q), hc(f->rhs, q));
      if (f->ivl.infinite()) return kUnbounded;
      return hc_add(f->ivl.hi * q, inner);
    }
    case Op::Eventually: case Op::Always: {
      std::int64_t inner = hc(f->lhs, q);
      if (f->ivl.infinite()) return kUnbounded;
      return hc_add(f->ivl.hi * q, inner);
    }
  }
  return kUnbounded;
}
}  // namespace detail

// --- three-valued evaluation ------------------------------------------------
//
// Continuous-time semantics restricted to piecewise-constant traces; with all
// formula bounds integral and delta = 1/q, real-valued quantifiers reduce
// exactly to quantification over grid cells.  Until is inclusive at both ends:
// a witness s requires the left operand at every point of [t, t+s], the
// witness point included; hence p U q is false wherever p is false.
//
// Cells at or beyond the trace end contribute Unknown.  Untimed Always is
// evaluated over the observed prefix: any false cell refutes; when the child's
// determinacy horizon is finite, cells whose verdict is still open at the very
// end of the trace are forgiven, provided every determined cell holds.  This
// deliberately trades horizon-monotonicity for usable finite-trace verdicts.
namespace detail {
class Evaluator {
 public:
  Evaluator(const TimedTrace& tr) : tr_(tr), n_(std::int64_t(tr.size())), q_(tr.per_unit()) {}

  V3 eval(const FormulaPtr& f, std::int64_t k) const {
    if (k >= n_) return V3::Unknown;
    assert(k >= 0);
    switch (f->op) {
      case Op::True: return V3::True;
      case Op::False: return V3::False;
      case Op::Atom: return v3(tr_.holds(size_t(k), f->atom));
      case Op::Not: return not3(eval(f->lhs, k));
      case Op::And: {
        V3 a = eval(f->lhs, k);
        if (a == V3::False) return V3::False;
        return and3(a, eval(f->rhs, k));
      }
      case Op::Or: {
        V3 a = eval(f->lhs, k);
        if (a == V3::True) return V3::True;
        return or3(a, eval(f->rhs, k));
      }
      case Op::Next: return eval(f->lhs, k + q_);
      case Op::Until: return eval_until(f->lhs, f->rhs, f->ivl, k);
      case Op::Eventually: return eval_until(nullptr, f->lhs, f->ivl, k);
      case Op::Always: return eval_always(f->lhs, f->ivl, k);
    }
    return V3::Unknown;
  }

 private:
  const TimedTrace& tr_;
  std::int64_t n_, q_;

  // lhs == nullptr encodes a constant-true left operand (Eventually).
  V3 eval_until(const FormulaPtr& lhs, const FormulaPtr& rhs, const Interval& ivl,
                std::int64_t k) const {
    std::int64_t wlo = k + ivl.lo * q_;
    std::int64_t whi = ivl.infinite() ? kUnbounded : k + ivl.hi * q_;
    V3 chain = V3::True;
    bool saw_unknown = false;
    for (std::int64_t j = k; whi == kUnbounded || j <= whi; ++j) {
      if (j >= n_) { saw_unknown = true; break; }
      V3 v1 = lhs ? eval(lhs, j) : V3::True;
      if (j >= wlo) {
        V3 w = and3(eval(rhs, j), and3(chain, v1));
        if (w == V3::True) return V3::True;
        if (w == V3::Unknown) saw_unknown = true;
      }
      chain = and3(chain, v1);
      if (chain == V3::False) break;
    }
    return saw_unknown ? V3::Unknown : V3::False;
  }

  V3 eval_always(const FormulaPtr& child, const Interval& ivl, std::int64_t k) const {
    if (!ivl.is_full()) {
      // Bounded window: pointwise conjunction over the window's cells.
      V3 acc = V3::True;
      for (std::int64_t j = k + ivl.lo * q_; j <= k + ivl.hi * q_; ++j) {
        acc = and3(acc, eval(child, j));
        if (acc == V3::False) return V3::False;
      }
      return acc;
    }
    // Untimed: prefix semantics with tail forgiveness (see header comment).
    std::int64_t h = hc(child, q_);
    std::int64_t w_last = (h == kUnbounded) ? n_ - 1 : n_ - 1 - h;
    bool determined_unknown = false, tail_unknown = false;
    for (std::int64_t j = k; j < n_; ++j) {
      V3 v = eval(child, j);
      if (v == V3::False) return V3::False;
      if (v == V3::Unknown) {
        if (j <= w_last) determined_unknown = true;
        else tail_unknown = true;
      }
    }
    if (h == kUnbounded) return determined_unknown ? V3::Unknown : V3::True;
    if (w_last < k) return V3::Unknown;  // nothing determined yet
    if (determined_unknown) return V3::Unknown;
    (void)tail_unknown;  // open tail verdicts are forgiven
    return V3::True;
  }
};
}  // namespace detail

inline V3 evaluate(const TimedTrace& tr, const FormulaPtr& f, Rational t = Rational(0)) {
  if (t < Rational(0)) throw std::out_of_range("evaluation time is negative");
  Rational cell = t / tr.delta;
  std::int64_t k = rat_floor(cell);
  if (k >= std::int64_t(tr.size()))
    throw std::out_of_range("evaluation time " + t.str() + " is at or beyond the trace horizon " +
                            tr.horizon().str());
  return detail::Evaluator(tr).eval(f, k);
}

// Determinacy horizon in time units; nullopt-like sentinel via infinite().
struct Horizon {
  std::int64_t cells = 0;  // kUnbounded when infinite
  bool infinite() const { return cells == detail::kUnbounded; }
};

inline Horizon determinacy_horizon(const FormulaPtr& f, std::int64_t per_unit) {
  return Horizon{detail::hc(f, per_unit)};
}

}  // namespace mitl
