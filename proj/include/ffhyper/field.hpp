#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ffhyper {

class FieldCtx;

// Field element handle: the element's code plus the field it lives in.
// Codes are coordinate vectors over F_p packed as c_0 + c_1 p + ... +
// c_{r-1} p^{r-1}, so for r = 1 the code is the residue itself.
class Elem {
 public:
  Elem() = default;
  Elem(const FieldCtx* f, std::uint32_t code) : f_(f), v_(code) {}

  std::uint32_t code() const { return v_; }
  const FieldCtx& field() const { return *f_; }
  bool is_zero() const { return v_ == 0; }

  friend bool operator==(const Elem& a, const Elem& b) { return a.v_ == b.v_; }
  friend bool operator==(const Elem& a, std::int64_t n);

  friend Elem operator+(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a, const Elem& b);
  friend Elem operator*(const Elem& a, const Elem& b);
  friend Elem operator/(const Elem& a, const Elem& b);  // DomainError on zero divisor
  Elem operator-() const;

  friend Elem operator+(const Elem& a, std::int64_t n);
  friend Elem operator+(std::int64_t n, const Elem& a) { return a + n; }
  friend Elem operator-(const Elem& a, std::int64_t n) { return a + (-n); }
  friend Elem operator-(std::int64_t n, const Elem& a) { return (-a) + n; }
  friend Elem operator*(const Elem& a, std::int64_t n);
  friend Elem operator*(std::int64_t n, const Elem& a) { return a * n; }
  friend Elem operator/(const Elem& a, std::int64_t n);
  friend Elem operator/(std::int64_t n, const Elem& a);

  std::string to_string() const;

 private:
  const FieldCtx* f_ = nullptr;
  std::uint32_t v_ = 0;
};

inline constexpr std::uint64_t kMaxFieldOrder = 100000;

// F_q for q = p^r, fully tabulated. Immutable after build_field().
class FieldCtx {
 public:
  std::uint32_t p() const { return p_; }
  unsigned r() const { return r_; }
  std::uint32_t q() const { return q_; }
  // Low-to-high coefficients c_0..c_{r-1} of the monic modulus (empty for r = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem generator() const { return {this, exp_[1 % (q_ - 1)]}; }

  Elem element(std::uint32_t code) const;
  Elem from_int(std::int64_t n) const;
  Elem zero() const { return {this, 0}; }
  Elem one() const { return {this, 1}; }

  // g^{dlog(x)} = x; DomainError for x = 0.
  std::uint32_t dlog(const Elem& x) const;
  std::uint32_t dlog_code(std::uint32_t code) const { return log_[code]; }  // unchecked, code != 0
  Elem exp(std::int64_t m) const;
  // tr(x) as an element of the prime field, returned as its residue.
  std::uint32_t trace(const Elem& x) const { return trace_[x.code()]; }
  std::uint32_t trace_code(std::uint32_t code) const { return trace_[code]; }
  // Canonical square root g^{dlog(x)/2}; 0 for 0; nullopt for non-squares.
  std::optional<Elem> sqrt(const Elem& x) const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;

  std::string element_string(std::uint32_t code) const;
  std::string modulus_string() const;

  friend std::shared_ptr<const FieldCtx> build_field(std::uint32_t p, unsigned r);

 private:
  FieldCtx() = default;

  std::uint32_t p_ = 0;
  unsigned r_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;    // exp_[m] = code of g^m, m < q-1
  std::vector<std::uint32_t> log_;    // log_[code], undefined at 0
  std::vector<std::uint32_t> trace_;  // trace_[code] in [0, p)
};

// Canonical modulus: lexicographically smallest monic irreducible of degree r
// (coefficients compared from c_0 upward). Canonical generator: smallest
// element of order q-1 in the same order.
std::shared_ptr<const FieldCtx> build_field(std::uint32_t p, unsigned r);

}  // namespace ffhyper
