#include "ffhyper/hyper_series.hpp"

#include "ffhyper/errors.hpp"

namespace ffhyper {

std::string to_string(Family f) {
  switch (f) {
    case Family::greene:
      return "greene";
    case Family::mccarthy:
      return "mccarthy";
    case Family::fuselier_P:
      return "fuselier-p";
    case Family::fuselier_F:
      return "fuselier";
    case Family::appell_F4:
      return "appell";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "greene") return Family::greene;
  if (name == "mccarthy") return Family::mccarthy;
  if (name == "fuselier-p" || name == "fuselier_P") return Family::fuselier_P;
  if (name == "fuselier" || name == "fuselier-f" || name == "fuselier_F") return Family::fuselier_F;
  if (name == "appell" || name == "appell_F4" || name == "f4") return Family::appell_F4;
  throw DomainError("unknown series family '" + name + "'");
}

namespace {

void check_arity(std::span<const Char> uppers, std::span<const Char> lowers) {
  if (uppers.empty() || uppers.size() != lowers.size() + 1)
    throw DomainError("series needs one more upper than lower parameter (got " + std::to_string(uppers.size()) +
                      " upper, " + std::to_string(lowers.size()) + " lower)");
}

}  // namespace

CycValue greene_F(const CharSums& s, std::span<const Char> uppers, std::span<const Char> lowers, const Elem& x) {
  check_arity(uppers, lowers);
  if (x.is_zero()) return s.zero();
  const std::uint32_t m = s.m();
  const std::uint64_t lx = s.field().dlog(x);
  CycValue acc = s.zero();
  std::uint64_t e = 0;
  for (std::uint32_t k = 0; k < m; ++k, e += lx) {
    const Char chi = s.T(k);
    CycValue term = s.binom(uppers[0] * chi, chi);
    for (std::size_t i = 0; i < lowers.size(); ++i) term *= s.binom(uppers[i + 1] * chi, lowers[i] * chi);
    acc += term * s.zeta_m(e % m);
  }
  return acc * s.frac(s.q(), m);
}

CycValue mccarthy_F_star(const CharSums& s, std::span<const Char> uppers, std::span<const Char> lowers,
                         const Elem& x) {
  check_arity(uppers, lowers);
  if (x.is_zero()) return s.zero();
  const std::uint32_t m = s.m();
  const std::uint64_t lx = s.field().dlog(x);
  const bool odd_power = uppers.size() % 2 == 1;  // chi(-1)^{n+1}
  CycValue norm = s.one();
  for (const Char& a : uppers) norm *= s.gauss(a);
  for (const Char& b : lowers) norm *= s.gauss(b.bar());
  CycValue acc = s.zero();
  std::uint64_t e = 0;
  for (std::uint32_t k = 0; k < m; ++k, e += lx) {
    const Char chi = s.T(k);
    CycValue term = s.gauss(chi.bar());
    for (const Char& a : uppers) term *= s.gauss(a * chi);
    for (const Char& b : lowers) term *= s.gauss((b * chi).bar());
    term *= s.zeta_m(e % m);
    if (odd_power && k % 2 == 1)
      acc -= term;
    else
      acc += term;
  }
  return acc / (norm * static_cast<std::int64_t>(m));
}

CycValue fuselier_P(const CharSums& s, const Char& a, const Char& b, const Char& c, const Elem& x) {
  if (x.is_zero()) return s.jacobi(b, b.bar() * c);
  const std::uint32_t m = s.m();
  const std::uint64_t lx = s.field().dlog(x);
  CycValue acc = s.zero();
  for (std::uint32_t k = 0; k < m; ++k) {
    const Char chi = s.T(k);
    acc += s.binom(a * chi, chi) * s.binom(b * chi, c * chi) * s.zeta_m(std::uint64_t{k} * lx % m);
  }
  const std::int64_t q = s.q();
  return acc * s.frac(q * q * CharSums::sign(b * c), m);
}

CycValue fuselier_F(const CharSums& s, const Char& a, const Char& b, const Char& c, const Elem& x) {
  const CycValue j = s.jacobi(b, b.bar() * c);
  if (j.is_zero()) throw DomainError("J(B, B-bar C) vanishes; 2F1 is undefined for these parameters");
  return fuselier_P(s, a, b, c, x) / j;
}

CycValue appell_F4_star(const CharSums& s, const Char& a, const Char& b, const Char& c, const Char& c2,
                        const Elem& x, const Elem& y) {
  if (x.is_zero() || y.is_zero()) return s.zero();
  const std::uint32_t m = s.m();
  const std::uint64_t lx = s.field().dlog(x);
  const std::uint64_t ly = s.field().dlog(y);
  CycValue acc = s.zero();
  for (std::uint32_t i = 0; i < m; ++i) {
    const Char chi = s.T(i);
    CycValue inner = s.zero();
    for (std::uint32_t j = 0; j < m; ++j) {
      const Char lam = s.T(j);
      const Char prod = a * chi * lam;
      const Char prod_b = b * chi * lam;
      inner += s.gauss(prod) * s.gauss(prod_b) * s.gauss((c2 * lam).bar()) * s.gauss(lam.bar()) *
               s.zeta_m(std::uint64_t{j} * ly % m);
    }
    acc += inner * s.gauss((c * chi).bar()) * s.gauss(chi.bar()) * s.zeta_m(std::uint64_t{i} * lx % m);
  }
  const CycValue norm = s.gauss(a) * s.gauss(b) * s.gauss(c.bar()) * s.gauss(c2.bar());
  const auto mm = static_cast<std::int64_t>(m);
  return acc / (norm * (mm * mm));
}

CycValue evaluate(const CharSums& s, const SeriesSpec& spec) {
  switch (spec.family) {
    case Family::greene:
      return greene_F(s, spec.uppers, spec.lowers, spec.x);
    case Family::mccarthy:
      return mccarthy_F_star(s, spec.uppers, spec.lowers, spec.x);
    case Family::fuselier_P:
    case Family::fuselier_F:
      if (spec.uppers.size() != 2 || spec.lowers.size() != 1)
        throw DomainError("fuselier series takes exactly (A, B; C)");
      return spec.family == Family::fuselier_P ? fuselier_P(s, spec.uppers[0], spec.uppers[1], spec.lowers[0], spec.x)
                                               : fuselier_F(s, spec.uppers[0], spec.uppers[1], spec.lowers[0], spec.x);
    case Family::appell_F4:
      if (spec.uppers.size() != 2 || spec.lowers.size() != 2 || !spec.y)
        throw DomainError("appell F4 takes exactly (A; B; C, C') and two arguments");
      return appell_F4_star(s, spec.uppers[0], spec.uppers[1], spec.lowers[0], spec.lowers[1], spec.x, *spec.y);
  }
  throw DomainError("unknown family");
}

RelationCheck greene_mccarthy_relation_check(const CharSums& s, std::span<const Char> uppers,
                                             std::span<const Char> lowers, const Elem& x, double tol) {
  check_arity(uppers, lowers);
  RelationCheck r;
  if (uppers[0].is_trivial()) return r;
  for (std::size_t i = 0; i < lowers.size(); ++i)
    if (uppers[i + 1] == lowers[i]) return r;
  r.admissible = true;
  r.lhs = mccarthy_F_star(s, uppers, lowers, x);
  CycValue factor = s.one();
  for (std::size_t i = 0; i < lowers.size(); ++i) factor *= s.binom(uppers[i + 1], lowers[i]);
  r.rhs = greene_F(s, uppers, lowers, x) / factor;
  r.pass = values_equal(s.backend(), r.lhs, r.rhs, tol);
  r.residual = residual_string(r.lhs, r.rhs);
  return r;
}

RelationCheck fuselier_greene_relation_check(const CharSums& s, const Char& a, const Char& b, const Char& c,
                                             const Elem& x, double tol) {
  RelationCheck r;
  const CycValue j = s.jacobi(b, b.bar() * c);
  if (j.is_zero()) return r;
  r.admissible = true;
  const Char ups[] = {a, b};
  const Char lows[] = {c};
  r.lhs = fuselier_F(s, a, b, c, x);
  r.rhs = greene_F(s, ups, lows, x) * (static_cast<std::int64_t>(s.q()) * CharSums::sign(b * c)) / j +
          delta_point(x);
  r.pass = values_equal(s.backend(), r.lhs, r.rhs, tol);
  r.residual = residual_string(r.lhs, r.rhs);
  return r;
}

}  // namespace ffhyper
