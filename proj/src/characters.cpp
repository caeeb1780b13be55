#include "ffhyper/characters.hpp"

#include "ffhyper/errors.hpp"
#include "ffhyper/numtheory.hpp"

namespace ffhyper {

Char::Char(std::int64_t k, std::uint32_t group_order)
    : k_(static_cast<std::uint32_t>(nt::mod(k, group_order))), m_(group_order) {}

std::uint32_t Char::order() const {
  return static_cast<std::uint32_t>(m_ / nt::gcd(k_, m_));
}

Char Char::pow(std::int64_t e) const {
  const std::int64_t m = m_;
  return {nt::mod(nt::mod(e, m) * static_cast<std::int64_t>(k_), m), m_};
}

bool special_exists(const FieldCtx& f, Special which) {
  const std::uint32_t m = f.q() - 1;
  switch (which) {
    case Special::eps:
    case Special::phi:
      return true;
    case Special::chi3:
      return m % 3 == 0;
    case Special::chi4:
      return m % 4 == 0;
  }
  return false;
}

Char special_char(const FieldCtx& f, Special which) {
  const std::uint32_t m = f.q() - 1;
  switch (which) {
    case Special::eps:
      return Char::trivial(m);
    case Special::phi:
      return {m / 2, m};
    case Special::chi3:
      if (m % 3 != 0) throw ExistenceError("no cubic character: q=" + std::to_string(f.q()) + " is not 1 mod 3");
      return {m / 3, m};
    case Special::chi4:
      if (m % 4 != 0) throw ExistenceError("no quartic character: q=" + std::to_string(f.q()) + " is not 1 mod 4");
      return {m / 4, m};
  }
  throw DomainError("unknown special character");
}

Char char_sqrt(const Char& c) {
  if (!c.is_square()) throw DomainError(c.to_string() + " is not a square");
  return {c.k() / 2, c.group_order()};
}

bool minus_one_criterion(const Char& c) {
  const std::uint32_t ord = c.order();
  return ord % 2 == 0 && (c.group_order() / ord) % 2 == 1;
}

CharAlgebra char_algebra(const Char& c) {
  CharAlgebra a;
  a.order = c.order();
  a.is_square = c.is_square();
  if (a.is_square) a.sqrt = char_sqrt(c);
  a.inverse = c.bar();
  // dlog(-1) = (q-1)/2, so T^k(-1) = (-1)^k
  a.sign_at_minus_one = c.k() % 2 == 0 ? 1 : -1;
  return a;
}

CycValue char_eval(const FieldCtx& f, const Backend& b, const Char& c, const Elem& x) {
  if (x.is_zero()) return b.zero();
  const std::uint64_t m = f.q() - 1;
  const std::uint64_t e = std::uint64_t{c.k()} * f.dlog(x) % m;
  return b.root_of_unity(m, static_cast<std::int64_t>(e));
}

CycValue theta(const FieldCtx& f, const Backend& b, const Elem& a) {
  return b.root_of_unity(f.p(), f.trace(a));
}

}  // namespace ffhyper
