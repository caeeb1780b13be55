#pragma once

// Brute-force reference for prime fields and for F_{p^2} = F_p[i], i^2 = -1.
// Shares no code with the library: its own arithmetic, generator search
// and defining sums, evaluated in long double.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

using cx = std::complex<long double>;

class Field {
 public:
  // r = 1: F_p. r = 2: F_p[i] with i^2 = -1 (needs p = 3 mod 4). Code a + b p.
  Field(int p, int r) : p_(p), r_(r), q_(r == 1 ? p : p * p) {
    if (r == 2 && p % 4 != 3) throw std::invalid_argument("x^2 + 1 is reducible");
    // Candidates in lexicographic order of (c_0, c_1).
    for (int i = 1; i < q_ && !gen_; ++i) {
      const int c = r == 1 ? i : i / p + (i % p) * p;
      if (order(c) == q_ - 1) gen_ = c;
    }
    log_.assign(q_, -1);
    exp_.assign(q_ - 1, 0);
    int x = 1;
    for (int m = 0; m < q_ - 1; ++m) {
      exp_[m] = x;
      log_[x] = m;
      x = mul(x, gen_);
    }
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int gen() const { return gen_; }
  int log(int x) const { return log_[x]; }

  int add(int a, int b) const {
    if (r_ == 1) return (a + b) % p_;
    return (a % p_ + b % p_) % p_ + ((a / p_ + b / p_) % p_) * p_;
  }
  int neg(int a) const {
    if (r_ == 1) return (p_ - a) % p_;
    return (p_ - a % p_) % p_ + ((p_ - a / p_) % p_) * p_;
  }
  int mul(int a, int b) const {
    if (r_ == 1) return a * b % p_;
    const int a0 = a % p_, a1 = a / p_, b0 = b % p_, b1 = b / p_;
    const int c0 = ((a0 * b0 - a1 * b1) % p_ + p_) % p_;
    const int c1 = (a0 * b1 + a1 * b0) % p_;
    return c0 + c1 * p_;
  }
  int inv(int a) const { return exp_[(q_ - 1 - log_[a]) % (q_ - 1)]; }
  int from_int(long long n) const { return static_cast<int>(((n % p_) + p_) % p_); }
  // tr(a) = a + a^p; for a + b i this is 2a.
  int trace(int a) const { return r_ == 1 ? a : (2 * (a % p_)) % p_; }

  int order(int c) const {
    int x = c, n = 1;
    while (x != 1) {
      x = mul(x, c);
      if (++n > q_) return 0;
    }
    return n;
  }

 private:
  int p_, r_, q_;
  int gen_ = 0;
  std::vector<int> log_;
  std::vector<int> exp_;
};

inline cx unit(long double frac) {
  const long double a = 2 * std::numbers::pi_v<long double> * frac;
  return {std::cos(a), std::sin(a)};
}

class Sums {
 public:
  explicit Sums(const Field& f) : f_(f), m_(f.q() - 1) {}

  int m() const { return m_; }
  int k(long long e) const { return static_cast<int>(((e % m_) + m_) % m_); }

  cx chi(long long kk, int x) const {
    if (x == 0) return 0;
    return unit(static_cast<long double>((k(kk) * static_cast<long long>(f_.log(x))) % m_) / m_);
  }
  cx theta(int x) const { return unit(static_cast<long double>(f_.trace(x)) / f_.p()); }

  cx gauss(long long a) const {
    cx s = 0;
    for (int x = 1; x < f_.q(); ++x) s += chi(a, x) * theta(x);
    return s;
  }
  cx jacobi(long long a, long long b) const {
    cx s = 0;
    for (int x = 0; x < f_.q(); ++x) s += chi(a, x) * chi(b, f_.add(1, f_.neg(x)));
    return s;
  }
  // (A choose B) = B(-1)/q J(A, B-bar)
  cx binom(long long a, long long b) const {
    return chi(b, f_.neg(1)) / static_cast<long double>(f_.q()) * jacobi(a, -b);
  }

  cx greene(const std::vector<long long>& up, const std::vector<long long>& low, int x) const {
    cx s = 0;
    for (int c = 0; c < m_; ++c) {
      cx t = binom(up[0] + c, c);
      for (std::size_t i = 1; i < up.size(); ++i) t *= binom(up[i] + c, low[i - 1] + c);
      s += t * chi(c, x);
    }
    return s * static_cast<long double>(f_.q()) / static_cast<long double>(m_);
  }

  cx mccarthy(const std::vector<long long>& up, const std::vector<long long>& low, int x) const {
    const int n = static_cast<int>(low.size());
    cx s = 0;
    for (int c = 0; c < m_; ++c) {
      cx t = gauss(-c);
      if ((n + 1) % 2 == 1) t *= chi(c, f_.neg(1));
      for (long long a : up) t *= gauss(a + c) / gauss(a);
      for (long long b : low) t *= gauss(-(b + c)) / gauss(-b);
      s += t * chi(c, x);
    }
    return s / static_cast<long double>(m_);
  }

  cx fuselier_P(long long a, long long b, long long c, int x) const {
    cx s = 0;
    for (int ch = 0; ch < m_; ++ch) s += binom(a + ch, ch) * binom(b + ch, c + ch) * chi(ch, x);
    const long double q = f_.q();
    s *= q * q / static_cast<long double>(m_) * chi(b + c, f_.neg(1));
    if (x == 0) s += jacobi(b, c - b);
    return s;
  }

  cx appell(long long a, long long b, long long c, long long c2, int x, int y) const {
    cx s = 0;
    const cx den = gauss(a) * gauss(b) * gauss(-c) * gauss(-c2);
    for (int u = 0; u < m_; ++u) {
      for (int v = 0; v < m_; ++v) {
        s += gauss(a + u + v) * gauss(b + u + v) * gauss(-(c + u)) * gauss(-(c2 + v)) * gauss(-v) * gauss(-u) *
             chi(u, x) * chi(v, y);
      }
    }
    return s / den / static_cast<long double>(m_) / static_cast<long double>(m_);
  }

 private:
  const Field& f_;
  int m_;
};

}  // namespace oracle
