#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ffhyper/characters.hpp"
#include "ffhyper/field.hpp"
#include "ffhyper/value_domain.hpp"

namespace ffhyper {

// Execution policy for the table and scan kernels. The serial path is the
// reference; both produce bit-identical results.
enum class Exec { serial, parallel };

// Defining sums, O(q) each.
CycValue gauss_sum_direct(const FieldCtx& f, const Backend& b, const Char& c);
CycValue jacobi_sum_direct(const FieldCtx& f, const Backend& b, const Char& a, const Char& c);
// (A choose B) = B(-1)/q * J(A, B-bar)
CycValue binom_direct(const FieldCtx& f, const Backend& b, const Char& a, const Char& c);

namespace kernels {

// g(T^k) for k = 0..q-2.
std::vector<CycValue> gauss_table(const FieldCtx& f, const Backend& b, Exec exec);
// Row-major (q-1) x (q-1): entry (a, c) = J(T^a, T^c).
std::vector<CycValue> jacobi_table(const FieldCtx& f, const Backend& b, Exec exec);

}  // namespace kernels

// Tables above this order are not materialized; lookups fall back to the
// defining sums.
inline constexpr std::uint32_t kMaxTableOrder = 1024;

// Field + backend + every cached character sum. Built eagerly, then
// read-only, so one instance can be shared by concurrent scan workers.
class CharSums {
 public:
  CharSums(std::shared_ptr<const FieldCtx> field, Backend backend, Exec exec = Exec::parallel);

  const FieldCtx& field() const { return *field_; }
  const std::shared_ptr<const FieldCtx>& field_ptr() const { return field_; }
  const Backend& backend() const { return backend_; }
  std::uint32_t q() const { return field_->q(); }
  std::uint32_t m() const { return field_->q() - 1; }

  Char T(std::int64_t k) const { return {k, m()}; }
  Elem el(std::int64_t n) const { return field_->from_int(n); }

  CycValue num(std::int64_t n) const { return backend_.from_int(n); }
  CycValue frac(std::int64_t num, std::int64_t den) const { return backend_.rational(num, den); }
  CycValue zero() const { return backend_.zero(); }
  CycValue one() const { return backend_.one(); }

  // zeta_{q-1}^j
  const CycValue& zeta_m(std::uint64_t j) const { return zeta_m_[j % m()]; }
  CycValue chi(const Char& c, const Elem& x) const {
    if (x.is_zero()) return backend_.zero();
    return zeta_m_[std::uint64_t{c.k()} * field_->dlog_code(x.code()) % m()];
  }
  // T^k(-1) as an integer sign
  static int sign(const Char& c) { return c.k() % 2 == 0 ? 1 : -1; }
  CycValue theta(const Elem& a) const { return zeta_p_[field_->trace(a)]; }

  const CycValue& gauss(const Char& c) const { return gauss_[c.k()]; }
  CycValue jacobi(const Char& a, const Char& c) const;
  CycValue binom(const Char& a, const Char& c) const;
  bool has_tables() const { return !jacobi_.empty(); }

  const std::vector<CycValue>& gauss_cache() const { return gauss_; }
  const std::vector<CycValue>& jacobi_cache() const { return jacobi_; }
  const std::vector<CycValue>& binom_cache() const { return binom_; }

 private:
  std::shared_ptr<const FieldCtx> field_;
  Backend backend_;
  std::vector<CycValue> zeta_m_;
  std::vector<CycValue> zeta_p_;
  std::vector<CycValue> gauss_;
  std::vector<CycValue> jacobi_;
  std::vector<CycValue> binom_;
};

// Binomial table built from the Jacobi table: entry (a, c) = (T^a choose T^c).
std::vector<CycValue> build_binom_table(const CharSums& sums);

}  // namespace ffhyper
