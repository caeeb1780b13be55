#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ffhyper/field.hpp"
#include "ffhyper/value_domain.hpp"

namespace ffhyper {

// The multiplicative character T^k, where T is the dual generator fixed by
// T(g) = zeta_{q-1} for the field's canonical generator g. The exponent is
// kept reduced mod q-1.
class Char {
 public:
  Char() = default;
  Char(std::int64_t k, std::uint32_t group_order);

  static Char trivial(std::uint32_t group_order) { return {0, group_order}; }

  std::uint32_t k() const { return k_; }
  std::uint32_t group_order() const { return m_; }
  bool is_trivial() const { return k_ == 0; }
  // Order of T^k in the character group: m / gcd(k, m).
  std::uint32_t order() const;
  bool is_square() const { return k_ % 2 == 0; }  // q odd, so m is even

  Char bar() const { return {-static_cast<std::int64_t>(k_), m_}; }
  Char pow(std::int64_t e) const;

  friend Char operator*(const Char& a, const Char& b) {
    return {static_cast<std::int64_t>(a.k_) + b.k_, a.m_};
  }
  friend bool operator==(const Char& a, const Char& b) { return a.k_ == b.k_; }

  std::string to_string() const { return "T^" + std::to_string(k_); }

 private:
  std::uint32_t k_ = 0;
  std::uint32_t m_ = 1;
};

inline Char bar(const Char& c) { return c.bar(); }

enum class Special { eps, phi, chi3, chi4 };

// eps = T^0, phi = T^{(q-1)/2}, chi3 = T^{(q-1)/3}, chi4 = T^{(q-1)/4}.
// ExistenceError if 3 (resp. 4) does not divide q-1.
Char special_char(const FieldCtx& f, Special which);
bool special_exists(const FieldCtx& f, Special which);

struct CharAlgebra {
  std::uint32_t order = 1;
  bool is_square = true;
  std::optional<Char> sqrt;  // canonical T^{k/2}, k in [0, q-1)
  Char inverse;
  int sign_at_minus_one = 1;
};

CharAlgebra char_algebra(const Char& c);
// Canonical square root T^{k/2}; DomainError for odd k.
Char char_sqrt(const Char& c);
// Order-based criterion for A(-1) = -1: order even and (q-1)/order odd.
bool minus_one_criterion(const Char& c);

// chi(x) with chi(0) = 0 for every chi, including eps.
CycValue char_eval(const FieldCtx& f, const Backend& b, const Char& c, const Elem& x);
// theta(a) = zeta_p^{tr(a)}
CycValue theta(const FieldCtx& f, const Backend& b, const Elem& a);

inline int delta_char(const Char& c) { return c.is_trivial() ? 1 : 0; }
inline int delta_point(const Elem& x) { return x.is_zero() ? 1 : 0; }

}  // namespace ffhyper
