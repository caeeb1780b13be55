#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffhyper/char_sums.hpp"

namespace ffhyper {

enum class Family { greene, mccarthy, fuselier_P, fuselier_F, appell_F4 };

std::string to_string(Family f);
Family parse_family(const std::string& name);

// One series evaluation. greene/mccarthy: uppers A_0..A_n, lowers B_1..B_n.
// fuselier: uppers (A, B), lowers (C). appell_F4: uppers (A, B), lowers
// (C, C'), arguments (x, y).
struct SeriesSpec {
  Family family = Family::greene;
  std::vector<Char> uppers;
  std::vector<Char> lowers;
  Elem x;
  std::optional<Elem> y;
};

// Greene's n+1Fn: q/(q-1) * sum_chi (A_0 chi choose chi) prod_i (A_i chi choose B_i chi) chi(x).
CycValue greene_F(const CharSums& s, std::span<const Char> uppers, std::span<const Char> lowers, const Elem& x);

// McCarthy's normalized n+1Fn*, built from Gauss sums.
CycValue mccarthy_F_star(const CharSums& s, std::span<const Char> uppers, std::span<const Char> lowers,
                         const Elem& x);

// 2P1 in the q^2-scaled normalization: q^2/(q-1) BC(-1) sum_chi (A chi choose chi)(B chi choose C chi) chi(x)
// + delta(x) J(B, B-bar C).
CycValue fuselier_P(const CharSums& s, const Char& a, const Char& b, const Char& c, const Elem& x);
// 2P1 / J(B, B-bar C); DomainError when that Jacobi sum vanishes.
CycValue fuselier_F(const CharSums& s, const Char& a, const Char& b, const Char& c, const Elem& x);

// F4(A; B; C, C'; x, y)*: raw double sum over (chi, lambda).
CycValue appell_F4_star(const CharSums& s, const Char& a, const Char& b, const Char& c, const Char& c2,
                        const Elem& x, const Elem& y);

// Dispatches on spec.family; DomainError on arity mismatch.
CycValue evaluate(const CharSums& s, const SeriesSpec& spec);

struct RelationCheck {
  bool admissible = false;
  CycValue lhs;
  CycValue rhs;
  bool pass = false;
  std::string residual;
};

// starred = prod_i (A_i choose B_i)^{-1} * Greene; requires A_0 != eps and A_i != B_i.
RelationCheck greene_mccarthy_relation_check(const CharSums& s, std::span<const Char> uppers,
                                             std::span<const Char> lowers, const Elem& x,
                                             double tol = kDefaultTolerance);

// 2F1 (Fuselier) = q BC(-1)/J(B, B-bar C) * 2F1 (Greene) + delta(x).
RelationCheck fuselier_greene_relation_check(const CharSums& s, const Char& a, const Char& b, const Char& c,
                                             const Elem& x, double tol = kDefaultTolerance);

}  // namespace ffhyper
