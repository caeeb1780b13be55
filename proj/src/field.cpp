#include "ffhyper/field.hpp"

#include <algorithm>

#include "ffhyper/errors.hpp"
#include "ffhyper/numtheory.hpp"

namespace ffhyper {

namespace {

using Poly = std::vector<std::uint32_t>;  // r coefficients, low to high

// a * b mod (x^r + c_{r-1} x^{r-1} + ... + c_0)
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& modulus, std::uint32_t p) {
  const std::size_t r = modulus.size();
  std::vector<std::uint64_t> prod(2 * r - 1, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t d = 2 * r - 2; d >= r; --d) {
    const std::uint64_t lead = prod[d];
    if (!lead) continue;
    prod[d] = 0;
    for (std::size_t i = 0; i < r; ++i) prod[d - r + i] = (prod[d - r + i] + (p - modulus[i]) * lead) % p;
  }
  return Poly(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(r));
}

Poly poly_pow(Poly base, std::uint64_t e, const Poly& modulus, std::uint32_t p) {
  Poly result(modulus.size(), 0);
  result[0] = 1;
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, modulus, p);
    base = poly_mulmod(base, base, modulus, p);
    e >>= 1;
  }
  return result;
}

bool is_one(const Poly& a) {
  return a[0] == 1 && std::all_of(a.begin() + 1, a.end(), [](std::uint32_t c) { return c == 0; });
}

// Coordinates of the t-th vector in lexicographic order with c_0 most significant.
Poly lex_vector(std::uint64_t t, std::size_t r, std::uint32_t p) {
  Poly v(r);
  for (std::size_t i = r; i-- > 0;) {
    v[i] = static_cast<std::uint32_t>(t % p);
    t /= p;
  }
  return v;
}

std::uint32_t encode(const Poly& v, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = v.size(); i-- > 0;) code = code * p + v[i];
  return code;
}

bool has_root(const Poly& modulus, std::uint32_t p) {
  for (std::uint64_t a = 0; a < p; ++a) {
    std::uint64_t v = 1;  // monic leading term, Horner from the top
    for (std::size_t i = modulus.size(); i-- > 0;) v = (v * a + modulus[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

// Smallest element of multiplicative order q-1 in the quotient ring, if any.
// Existence certifies that the modulus is irreducible.
std::optional<Poly> find_primitive(const Poly& modulus, std::uint32_t p, std::uint64_t q) {
  const std::size_t r = modulus.size();
  const auto factors = nt::prime_factors(q - 1);
  for (std::uint64_t t = 1; t < q; ++t) {
    Poly cand = lex_vector(t, r, p);
    if (!is_one(poly_pow(cand, q - 1, modulus, p))) continue;
    const bool primitive = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t f) {
      return !is_one(poly_pow(cand, (q - 1) / f, modulus, p));
    });
    if (primitive) return cand;
  }
  return std::nullopt;
}

}  // namespace

std::shared_ptr<const FieldCtx> build_field(std::uint32_t p, unsigned r) {
  if (p == 2 || !nt::is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not an odd prime");
  if (r < 1) throw DomainError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < r; ++i) {
    q *= p;
    if (q > kMaxFieldOrder)
      throw ResourceError("field order " + std::to_string(p) + "^" + std::to_string(r) + " exceeds " +
                          std::to_string(kMaxFieldOrder));
  }

  std::shared_ptr<FieldCtx> f(new FieldCtx());
  f->p_ = p;
  f->r_ = r;
  f->q_ = static_cast<std::uint32_t>(q);
  const std::uint32_t m = f->q_ - 1;

  Poly generator;
  if (r == 1) {
    const auto factors = nt::prime_factors(m);
    for (std::uint32_t a = 1; a < p; ++a) {
      const bool primitive = std::all_of(factors.begin(), factors.end(),
                                         [&](std::uint64_t d) { return nt::powmod(a, m / d, p) != 1; });
      if (primitive) {
        generator = {a};
        break;
      }
    }
  } else {
    for (std::uint64_t t = 0; t < q; ++t) {
      Poly cand = lex_vector(t, r, p);
      if (cand[0] == 0 || has_root(cand, p)) continue;
      if (auto g = find_primitive(cand, p, q)) {
        f->modulus_ = cand;
        generator = *g;
        break;
      }
    }
  }

  f->exp_.resize(m);
  f->log_.assign(q, 0);
  if (r == 1) {
    std::uint64_t cur = 1;
    for (std::uint32_t e = 0; e < m; ++e) {
      f->exp_[e] = static_cast<std::uint32_t>(cur);
      f->log_[cur] = e;
      cur = cur * generator[0] % p;
    }
  } else {
    Poly cur(r, 0);
    cur[0] = 1;
    for (std::uint32_t e = 0; e < m; ++e) {
      const std::uint32_t code = encode(cur, p);
      f->exp_[e] = code;
      f->log_[code] = e;
      cur = poly_mulmod(cur, generator, f->modulus_, p);
    }
  }

  f->trace_.assign(q, 0);
  for (std::uint32_t e = 0; e < m; ++e) {
    std::uint32_t acc = 0;
    std::uint64_t power = e;
    for (unsigned i = 0; i < r; ++i) {
      acc = f->add(acc, f->exp_[power % m]);
      power = power * p % m;
    }
    // the trace lies in the prime field, i.e. only c_0 can be nonzero
    if (acc >= p) throw DomainError("internal: trace left the prime field");
    f->trace_[f->exp_[e]] = acc;
  }
  return f;
}

Elem FieldCtx::element(std::uint32_t code) const {
  if (code >= q_) throw DomainError("element code " + std::to_string(code) + " out of range for q=" + std::to_string(q_));
  return {this, code};
}

Elem FieldCtx::from_int(std::int64_t n) const {
  return {this, static_cast<std::uint32_t>(nt::mod(n, p_))};
}

std::uint32_t FieldCtx::dlog(const Elem& x) const {
  if (x.is_zero()) throw DomainError("dlog of zero is undefined");
  return log_[x.code()];
}

Elem FieldCtx::exp(std::int64_t m) const {
  return {this, exp_[static_cast<std::size_t>(nt::mod(m, q_ - 1))]};
}

std::optional<Elem> FieldCtx::sqrt(const Elem& x) const {
  if (x.is_zero()) return zero();
  const std::uint32_t l = log_[x.code()];
  if (l % 2 != 0) return std::nullopt;
  return exp(l / 2);
}

std::uint32_t FieldCtx::add(std::uint32_t a, std::uint32_t b) const {
  if (r_ == 1) return (a + b) % p_;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  for (unsigned i = 0; i < r_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::neg(std::uint32_t a) const {
  if (r_ == 1) return (p_ - a) % p_;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  for (unsigned i = 0; i < r_; ++i) {
    out += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(std::uint64_t{log_[a]} + log_[b]) % (q_ - 1)];
}

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
  if (a == 0) throw DomainError("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::string FieldCtx::element_string(std::uint32_t code) const {
  if (r_ == 1) return std::to_string(code);
  std::string out;
  for (unsigned i = r_; i-- > 0;) {
    std::uint32_t place = 1;
    for (unsigned j = 0; j < i; ++j) place *= p_;
    const std::uint32_t c = code / place % p_;
    if (!c) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

std::string FieldCtx::modulus_string() const {
  if (r_ == 1) return "none";
  std::string out = "x^" + std::to_string(r_);
  for (unsigned i = r_; i-- > 0;) {
    const std::uint32_t c = modulus_[i];
    if (!c) continue;
    out += "+";
    if (i == 0)
      out += std::to_string(c);
    else
      out += (c != 1 ? std::to_string(c) : "") + (i == 1 ? "x" : "x^" + std::to_string(i));
  }
  return out;
}

// ---------------------------------------------------------------------------

bool operator==(const Elem& a, std::int64_t n) { return a.v_ == a.f_->from_int(n).v_; }

Elem operator+(const Elem& a, const Elem& b) { return {a.f_, a.f_->add(a.v_, b.v_)}; }
Elem operator-(const Elem& a, const Elem& b) { return {a.f_, a.f_->add(a.v_, a.f_->neg(b.v_))}; }
Elem operator*(const Elem& a, const Elem& b) { return {a.f_, a.f_->mul(a.v_, b.v_)}; }
Elem operator/(const Elem& a, const Elem& b) { return {a.f_, a.f_->mul(a.v_, a.f_->inv(b.v_))}; }
Elem Elem::operator-() const { return {f_, f_->neg(v_)}; }
Elem operator+(const Elem& a, std::int64_t n) { return a + a.f_->from_int(n); }
Elem operator*(const Elem& a, std::int64_t n) { return a * a.f_->from_int(n); }
Elem operator/(const Elem& a, std::int64_t n) { return a / a.f_->from_int(n); }
Elem operator/(std::int64_t n, const Elem& a) { return a.f_->from_int(n) / a; }

std::string Elem::to_string() const { return f_->element_string(v_); }

}  // namespace ffhyper
