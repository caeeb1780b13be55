#include "ffhyper/value_domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "ffhyper/errors.hpp"
#include "ffhyper/numtheory.hpp"

namespace ffhyper {

std::string to_string(BackendKind kind) {
  return kind == BackendKind::complex_float ? "complex" : "modular";
}

BackendKind parse_backend_kind(const std::string& name) {
  if (name == "complex" || name == "complex-float") return BackendKind::complex_float;
  if (name == "modular" || name == "modular-embed") return BackendKind::modular_embed;
  throw DomainError("unknown backend '" + name + "' (expected complex or modular)");
}

Montgomery::Montgomery(std::uint64_t modulus) : ell(modulus) {
  if (modulus % 2 == 0 || modulus >= (1ULL << 63)) throw DomainError("Montgomery modulus must be odd and below 2^63");
  std::uint64_t inv = modulus;
  for (int i = 0; i < 6; ++i) inv *= 2 - modulus * inv;
  ninv = ~inv + 1;
  one = (~modulus + 1) % modulus;
  r2 = static_cast<std::uint64_t>(static_cast<unsigned __int128>(one) * one % modulus);
}

std::uint64_t Montgomery::from_int(std::int64_t v) const {
  const auto l = static_cast<std::int64_t>(ell);
  return to_mont(static_cast<std::uint64_t>(nt::mod(v, l)));
}

std::uint64_t Montgomery::pow(std::uint64_t base, std::uint64_t e) const {
  std::uint64_t r = one;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::uint64_t Montgomery::inv(std::uint64_t a) const {
  if (a == 0) throw DomainError("division by a value that is zero modulo ell");
  return pow(a, ell - 2);
}

// ---------------------------------------------------------------------------

std::uint64_t CycValue::residue() const {
  if (kind_ != BackendKind::modular_embed) throw DomainError("residue() on a complex value");
  return ring_->from_mont(r_);
}

void CycValue::check_same(const CycValue& o) const {
  if (kind_ != o.kind_ || ring_ != o.ring_) {
    if (kind_ == o.kind_ && ring_ && o.ring_ && ring_->ell == o.ring_->ell) return;
    throw DomainError("values from different backends cannot be combined");
  }
}

CycValue& CycValue::operator+=(const CycValue& o) {
  check_same(o);
  if (kind_ == BackendKind::complex_float)
    z_ += o.z_;
  else
    r_ = ring_->add(r_, o.r_);
  return *this;
}

CycValue& CycValue::operator-=(const CycValue& o) {
  check_same(o);
  if (kind_ == BackendKind::complex_float)
    z_ -= o.z_;
  else
    r_ = ring_->sub(r_, o.r_);
  return *this;
}

CycValue& CycValue::operator*=(const CycValue& o) {
  check_same(o);
  if (kind_ == BackendKind::complex_float)
    z_ *= o.z_;
  else
    r_ = ring_->mul(r_, o.r_);
  return *this;
}

CycValue& CycValue::operator/=(const CycValue& o) {
  check_same(o);
  if (kind_ == BackendKind::complex_float) {
    if (o.z_ == std::complex<double>{}) throw DomainError("division by zero");
    z_ /= o.z_;
  } else {
    r_ = ring_->mul(r_, ring_->inv(o.r_));
  }
  return *this;
}

CycValue& CycValue::operator*=(std::int64_t n) {
  if (kind_ == BackendKind::complex_float)
    z_ *= static_cast<double>(n);
  else
    r_ = ring_->mul(r_, ring_->from_int(n));
  return *this;
}

CycValue& CycValue::operator/=(std::int64_t n) {
  if (n == 0) throw DomainError("division by zero");
  if (kind_ == BackendKind::complex_float)
    z_ /= static_cast<double>(n);
  else
    r_ = ring_->mul(r_, ring_->inv(ring_->from_int(n)));
  return *this;
}

CycValue operator+(CycValue a, std::int64_t n) {
  if (a.kind_ == BackendKind::complex_float)
    a.z_ += static_cast<double>(n);
  else
    a.r_ = a.ring_->add(a.r_, a.ring_->from_int(n));
  return a;
}

CycValue CycValue::operator-() const {
  CycValue v = *this;
  if (kind_ == BackendKind::complex_float)
    v.z_ = -z_;
  else
    v.r_ = ring_->sub(0, r_);
  return v;
}

std::string CycValue::to_string() const {
  char buf[96];
  if (kind_ == BackendKind::complex_float) {
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z_.real(), z_.imag());
  } else {
    std::snprintf(buf, sizeof buf, "%llu mod %llu", static_cast<unsigned long long>(residue()),
                  static_cast<unsigned long long>(ring_->ell));
  }
  return buf;
}

// ---------------------------------------------------------------------------

std::uint64_t Backend::omega_p() const {
  if (!ring_) return 0;
  return ring_->from_mont(ring_->pow(omega_n_, m_));
}

std::uint64_t Backend::omega_m() const {
  if (!ring_) return 0;
  return ring_->from_mont(ring_->pow(omega_n_, p_));
}

CycValue Backend::zero() const {
  if (kind_ == BackendKind::complex_float) return CycValue::complex({});
  return CycValue::residue(0, ring_.get());
}

CycValue Backend::from_int(std::int64_t v) const {
  if (kind_ == BackendKind::complex_float) return CycValue::complex({static_cast<double>(v), 0.0});
  return CycValue::residue(ring_->from_int(v), ring_.get());
}

CycValue Backend::rational(std::int64_t num, std::int64_t den) const {
  return from_int(num) / den;
}

CycValue Backend::root_of_unity(std::uint64_t n, std::int64_t k) const {
  const std::uint64_t big_n = root_order();
  if (n == 0 || big_n % n != 0) throw DomainError("root order " + std::to_string(n) + " does not divide p(q-1)");
  const auto j = static_cast<std::uint64_t>(nt::mod(k, static_cast<std::int64_t>(n)));
  if (kind_ == BackendKind::complex_float) {
    if (j == 0) return CycValue::complex({1.0, 0.0});
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j) / static_cast<long double>(n);
    return CycValue::complex({static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))});
  }
  return CycValue::residue(ring_->pow(omega_n_, (big_n / n) * j), ring_.get());
}

std::vector<CycValue> Backend::root_table(std::uint64_t n) const {
  std::vector<CycValue> out;
  out.reserve(n);
  if (kind_ == BackendKind::complex_float) {
    for (std::uint64_t j = 0; j < n; ++j) out.push_back(root_of_unity(n, static_cast<std::int64_t>(j)));
  } else {
    const CycValue step = root_of_unity(n, 1);
    CycValue cur = one();
    for (std::uint64_t j = 0; j < n; ++j) {
      out.push_back(cur);
      cur *= step;
    }
  }
  return out;
}

std::string Backend::describe() const {
  if (kind_ == BackendKind::complex_float) return "complex";
  return "modular(ell=" + std::to_string(ell()) + ")";
}

Backend make_backend(BackendKind kind, std::uint64_t p, std::uint64_t m, std::uint64_t seed) {
  if (!nt::is_prime(p)) throw DomainError("backend characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) throw DomainError("character group order must be at least 1");
  Backend b;
  b.kind_ = kind;
  b.p_ = p;
  b.m_ = m;
  b.seed_ = seed;
  if (kind == BackendKind::complex_float) return b;

  const std::uint64_t big_n = p * m;
  std::mt19937_64 rng(seed);
  const std::uint64_t start = kEllLow + rng() % (kEllHigh - kEllLow);

  auto first_candidate = [&](std::uint64_t from) {
    // smallest value >= from that is 1 mod big_n
    const std::uint64_t r = from % big_n;
    std::uint64_t c = from - r + 1;
    if (c < from) c += big_n;
    return c;
  };

  std::uint64_t ell = 0;
  for (std::uint64_t c = first_candidate(start); c <= kEllHigh; c += big_n) {
    if (nt::is_prime(c)) {
      ell = c;
      break;
    }
  }
  if (ell == 0) {
    for (std::uint64_t c = first_candidate(kEllLow); c < start; c += big_n) {
      if (nt::is_prime(c)) {
        ell = c;
        break;
      }
    }
  }
  if (ell == 0)
    throw ResourceError("no prime ell = 1 mod " + std::to_string(big_n) + " in [2^31, 2^40]");

  auto ring = std::make_shared<Montgomery>(ell);
  const auto factors = nt::prime_factors(big_n);
  const std::uint64_t cofactor = (ell - 1) / big_n;
  for (;;) {
    const std::uint64_t h = 2 + rng() % (ell - 3);
    const std::uint64_t w = ring->pow(ring->to_mont(h), cofactor);
    const bool exact = std::all_of(factors.begin(), factors.end(),
                                   [&](std::uint64_t f) { return ring->pow(w, big_n / f) != ring->one; });
    if (exact) {
      b.omega_n_ = w;
      break;
    }
  }
  b.ring_ = std::move(ring);
  return b;
}

bool values_equal(const Backend& b, const CycValue& a, const CycValue& c, double tol) {
  if (a.kind() != b.kind() || c.kind() != b.kind()) throw DomainError("value does not belong to this backend");
  if (b.kind() == BackendKind::modular_embed) {
    if (a.ring()->ell != b.ell() || c.ring()->ell != b.ell()) throw DomainError("value does not belong to this backend");
    return a.raw_residue() == c.raw_residue();
  }
  const double scale = std::max({1.0, std::abs(a.as_complex()), std::abs(c.as_complex())});
  return std::abs(a.as_complex() - c.as_complex()) <= tol * scale;
}

std::string residual_string(const CycValue& a, const CycValue& c) {
  const CycValue d = a - c;
  if (d.kind() == BackendKind::modular_embed) return std::to_string(d.residue());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", std::abs(d.as_complex()));
  return buf;
}

}  // namespace ffhyper
