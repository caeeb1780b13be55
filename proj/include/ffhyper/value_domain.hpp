#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ffhyper {

enum class BackendKind { complex_float, modular_embed };

std::string to_string(BackendKind kind);
BackendKind parse_backend_kind(const std::string& name);

inline constexpr double kDefaultTolerance = 1e-7;

// Arithmetic in Z/ell for an odd ell < 2^63, residues kept in Montgomery form.
struct Montgomery {
  std::uint64_t ell = 0;
  std::uint64_t ninv = 0;  // -ell^{-1} mod 2^64
  std::uint64_t r2 = 0;    // 2^128 mod ell
  std::uint64_t one = 0;   // 2^64 mod ell

  explicit Montgomery(std::uint64_t modulus);

  std::uint64_t reduce(unsigned __int128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * ninv;
    const std::uint64_t s = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * ell) >> 64);
    return s >= ell ? s - ell : s;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(static_cast<unsigned __int128>(a) * b);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= ell ? s - ell : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + ell - b; }
  std::uint64_t to_mont(std::uint64_t standard) const { return mul(standard % ell, r2); }
  std::uint64_t from_mont(std::uint64_t m) const { return reduce(m); }
  std::uint64_t from_int(std::int64_t v) const;
  std::uint64_t pow(std::uint64_t base, std::uint64_t e) const;
  // Throws DomainError on zero.
  std::uint64_t inv(std::uint64_t a) const;
};

// An element of Q(zeta_{p(q-1)}) as seen through one backend: a complex
// double, or a residue modulo the backend's auxiliary prime.
class CycValue {
 public:
  CycValue() = default;

  static CycValue complex(std::complex<double> z) {
    CycValue v;
    v.kind_ = BackendKind::complex_float;
    v.z_ = z;
    return v;
  }
  static CycValue residue(std::uint64_t mont_residue, const Montgomery* ring) {
    CycValue v;
    v.kind_ = BackendKind::modular_embed;
    v.r_ = mont_residue;
    v.ring_ = ring;
    return v;
  }

  BackendKind kind() const { return kind_; }
  std::complex<double> as_complex() const { return z_; }
  // Standard (non-Montgomery) residue; modular backend only.
  std::uint64_t residue() const;
  std::uint64_t raw_residue() const { return r_; }
  const Montgomery* ring() const { return ring_; }

  // Exact zero test: residue 0, or complex value exactly 0.
  bool is_zero() const { return kind_ == BackendKind::complex_float ? z_ == std::complex<double>{} : r_ == 0; }

  CycValue& operator+=(const CycValue& o);
  CycValue& operator-=(const CycValue& o);
  CycValue& operator*=(const CycValue& o);
  CycValue& operator/=(const CycValue& o);
  CycValue& operator*=(std::int64_t n);
  CycValue& operator/=(std::int64_t n);

  friend CycValue operator+(CycValue a, const CycValue& b) { return a += b; }
  friend CycValue operator-(CycValue a, const CycValue& b) { return a -= b; }
  friend CycValue operator*(CycValue a, const CycValue& b) { return a *= b; }
  friend CycValue operator/(CycValue a, const CycValue& b) { return a /= b; }
  friend CycValue operator*(CycValue a, std::int64_t n) { return a *= n; }
  friend CycValue operator*(std::int64_t n, CycValue a) { return a *= n; }
  friend CycValue operator/(CycValue a, std::int64_t n) { return a /= n; }
  friend CycValue operator+(CycValue a, std::int64_t n);
  friend CycValue operator+(std::int64_t n, const CycValue& a) { return a + n; }
  friend CycValue operator-(const CycValue& a, std::int64_t n) { return a + (-n); }
  friend CycValue operator-(std::int64_t n, const CycValue& a) { return -a + n; }
  CycValue operator-() const;

  std::string to_string() const;

 private:
  void check_same(const CycValue& o) const;

  BackendKind kind_ = BackendKind::complex_float;
  std::complex<double> z_{};
  std::uint64_t r_ = 0;
  const Montgomery* ring_ = nullptr;
};

// Value carrier configuration. Immutable after construction; copies share
// the modular ring.
class Backend {
 public:
  BackendKind kind() const { return kind_; }
  std::uint64_t p() const { return p_; }
  std::uint64_t order() const { return m_; }  // q - 1
  std::uint64_t seed() const { return seed_; }
  // N = p (q - 1): every root used by the backend has order dividing N.
  std::uint64_t root_order() const { return p_ * m_; }

  // Modular backend only (0 for complex).
  std::uint64_t ell() const { return ring_ ? ring_->ell : 0; }
  std::uint64_t omega_p() const;
  std::uint64_t omega_m() const;
  const Montgomery* ring() const { return ring_.get(); }

  CycValue zero() const;
  CycValue one() const { return from_int(1); }
  CycValue from_int(std::int64_t v) const;
  CycValue rational(std::int64_t num, std::int64_t den) const;

  // zeta_n^k; n must divide p (q - 1).
  CycValue root_of_unity(std::uint64_t n, std::int64_t k) const;
  // [zeta_n^0, ..., zeta_n^{n-1}]
  std::vector<CycValue> root_table(std::uint64_t n) const;

  std::string describe() const;

  friend Backend make_backend(BackendKind, std::uint64_t, std::uint64_t, std::uint64_t);

 private:
  BackendKind kind_ = BackendKind::complex_float;
  std::uint64_t p_ = 0;
  std::uint64_t m_ = 0;
  std::uint64_t seed_ = 0;
  std::shared_ptr<const Montgomery> ring_;
  std::uint64_t omega_n_ = 0;  // Montgomery form, order exactly p(q-1)
};

inline constexpr std::uint64_t kEllLow = 1ULL << 31;
inline constexpr std::uint64_t kEllHigh = 1ULL << 40;

// For modular_embed: the smallest prime ell = 1 mod p*m at or above a
// seed-derived offset in [2^31, 2^40] (wrapping once), and a root of order
// exactly p*m drawn from the same seed.
Backend make_backend(BackendKind kind, std::uint64_t p, std::uint64_t m, std::uint64_t seed);

inline CycValue root_of_unity(const Backend& b, std::uint64_t n, std::int64_t k) { return b.root_of_unity(n, k); }

// Modular: exact residue comparison (tol ignored). Complex: |a-c| <= tol * max(1, |a|, |c|).
bool values_equal(const Backend& b, const CycValue& a, const CycValue& c, double tol = kDefaultTolerance);

// Printable residual: "0" for an exact modular match, the residue of a - c
// otherwise; |a - c| in scientific notation for complex.
std::string residual_string(const CycValue& a, const CycValue& c);

}  // namespace ffhyper
