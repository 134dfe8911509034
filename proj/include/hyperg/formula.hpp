#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orbit_set.hpp"

namespace hyperg {

// Quantifier-free formulas over hyperedge atoms E(xi,...) and equalities
// xi=xj, combined with !, & and |. Variables are x1..xn.
struct Formula {
  enum class Kind { kEdge, kEq, kNot, kAnd, kOr };

  Kind kind;
  std::vector<int> args;  // zero-based variable indices for atoms
  std::vector<Formula> sub;

  int max_var() const {
    int m = 0;
    for (int a : args) m = std::max(m, a + 1);
    for (const auto& s : sub) m = std::max(m, s.max_var());
    return m;
  }
};

namespace detail {

class FormulaParser {
 public:
  FormulaParser(const std::string& text, int ell) : text_(text), ell_(ell) {}

  Formula parse() {
    Formula f = parse_or();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError("trailing input", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n'))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (eat('|')) {
      Formula g = parse_and();
      Formula o{Formula::Kind::kOr, {}, {}};
      o.sub.push_back(std::move(f));
      o.sub.push_back(std::move(g));
      f = std::move(o);
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (eat('&')) {
      Formula g = parse_unary();
      Formula a{Formula::Kind::kAnd, {}, {}};
      a.sub.push_back(std::move(f));
      a.sub.push_back(std::move(g));
      f = std::move(a);
    }
    return f;
  }

  Formula parse_unary() {
    skip_ws();
    if (eat('!')) {
      Formula n{Formula::Kind::kNot, {}, {}};
      n.sub.push_back(parse_unary());
      return n;
    }
    if (eat('(')) {
      Formula f = parse_or();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return f;
    }
    return parse_atom();
  }

  Formula parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of formula", pos_);
    if (text_[pos_] == 'E') {
      ++pos_;
      if (!eat('(')) throw SyntaxError("expected '(' after E", pos_);
      Formula f{Formula::Kind::kEdge, {}, {}};
      f.args.push_back(parse_var());
      for (int i = 1; i < ell_; ++i) {
        if (!eat(',')) throw SyntaxError("expected ','", pos_);
        f.args.push_back(parse_var());
      }
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return f;
    }
    int a = parse_var();
    if (!eat('=')) throw SyntaxError("expected '='", pos_);
    int b = parse_var();
    return Formula{Formula::Kind::kEq, {a, b}, {}};
  }

  int parse_var() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != 'x') throw SyntaxError("expected variable", pos_);
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == start) throw SyntaxError("expected variable index", pos_);
    int v = std::stoi(text_.substr(start, pos_ - start));
    if (v < 1) throw SyntaxError("variable indices start at 1", start);
    return v - 1;
  }

  const std::string& text_;
  int ell_;
  std::size_t pos_ = 0;
};

inline BddManager::Ref eval_formula(const Formula& f, const std::vector<std::uint8_t>& kernel,
                                    const std::vector<int>& place, int ell,
                                    const std::map<std::uint16_t, int>& reps) {
  switch (f.kind) {
    case Formula::Kind::kEq: {
      int a = place[static_cast<std::size_t>(f.args[0])];
      int b = place[static_cast<std::size_t>(f.args[1])];
      return kernel[static_cast<std::size_t>(a)] == kernel[static_cast<std::size_t>(b)]
                 ? BddManager::one
                 : BddManager::zero;
    }
    case Formula::Kind::kEdge: {
      std::vector<int> pos;
      for (int a : f.args) pos.push_back(place[static_cast<std::size_t>(a)]);
      std::sort(pos.begin(), pos.end());
      std::uint16_t bm = block_mask(kernel, pos);
      if (std::popcount(static_cast<unsigned>(bm)) < ell) return BddManager::zero;
      return bdd().var(reps.at(bm));
    }
    case Formula::Kind::kNot:
      return bdd().lnot(eval_formula(f.sub[0], kernel, place, ell, reps));
    case Formula::Kind::kAnd:
      return bdd().land(eval_formula(f.sub[0], kernel, place, ell, reps),
                        eval_formula(f.sub[1], kernel, place, ell, reps));
    case Formula::Kind::kOr:
      return bdd().lor(eval_formula(f.sub[0], kernel, place, ell, reps),
                       eval_formula(f.sub[1], kernel, place, ell, reps));
  }
  throw InternalError("unhandled formula node");
}

}  // namespace detail

inline Formula parse_formula(const std::string& text, int ell) {
  return detail::FormulaParser(text, ell).parse();
}

// Set of n-orbits satisfying the formula, with formula variable i placed at
// position place[i]. Layers are built kernel by kernel: equalities become
// constants, edge atoms become edge variables of the kernel's block tuples.
inline SymbolicOrbitSet compile_formula(const Formula& f, int arity, const std::vector<int>& place,
                                        const HypergraphClass& cls) {
  if (f.max_var() > static_cast<int>(place.size()))
    throw ArityMismatch("formula uses more variables than the relation arity");
  for (int p : place)
    if (p < 0 || p >= arity) throw ArityError("formula placement out of range");
  SymbolicOrbitSet out(arity, cls);
  for_each_partition(arity, [&](const std::vector<std::uint8_t>& kernel) {
    auto reps = SymbolicOrbitSet::rep_ranks(kernel, cls.ell);
    BddManager::Ref g = detail::eval_formula(f, kernel, place, cls.ell, reps);
    if (g == BddManager::zero) return;
    g = bdd().land(g, SymbolicOrbitSet::layer_base(kernel, cls));
    out.set_layer(kernel, g);
  });
  return out;
}

inline SymbolicOrbitSet compile_formula(const Formula& f, int arity, const HypergraphClass& cls) {
  std::vector<int> place(static_cast<std::size_t>(arity));
  std::iota(place.begin(), place.end(), 0);
  return compile_formula(f, arity, place, cls);
}

}  // namespace hyperg
