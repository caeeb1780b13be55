#include "ffhyper/char_sums.hpp"

#include <utility>

namespace ffhyper {

namespace {

std::vector<CycValue> binom_from_jacobi(const std::vector<CycValue>& jacobi, std::uint32_t m, std::uint32_t q,
                                        const Backend& b, Exec exec) {
  std::vector<CycValue> out(jacobi.size());
  const CycValue inv_q = b.rational(1, q);
  const CycValue minus_inv_q = -inv_q;
  const auto n = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::uint32_t c = 0; c < m; ++c) {
      const std::uint32_t cbar = (m - c) % m;
      out[static_cast<std::size_t>(a) * m + c] =
          jacobi[static_cast<std::size_t>(a) * m + cbar] * (c % 2 == 0 ? inv_q : minus_inv_q);
    }
  }
  return out;
}

}  // namespace

CycValue gauss_sum_direct(const FieldCtx& f, const Backend& b, const Char& c) {
  CycValue acc = b.zero();
  for (std::uint32_t x = 1; x < f.q(); ++x) {
    const Elem e = f.element(x);
    acc += char_eval(f, b, c, e) * theta(f, b, e);
  }
  return acc;
}

CycValue jacobi_sum_direct(const FieldCtx& f, const Backend& b, const Char& a, const Char& c) {
  CycValue acc = b.zero();
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    const Elem e = f.element(x);
    acc += char_eval(f, b, a, e) * char_eval(f, b, c, 1 - e);
  }
  return acc;
}

CycValue binom_direct(const FieldCtx& f, const Backend& b, const Char& a, const Char& c) {
  const int sign = c.k() % 2 == 0 ? 1 : -1;
  return jacobi_sum_direct(f, b, a, c.bar()) * sign / f.q();
}

namespace kernels {

std::vector<CycValue> gauss_table(const FieldCtx& f, const Backend& b, Exec exec) {
  const std::uint32_t m = f.q() - 1;
  const auto zm = b.root_table(m);
  const auto zp = b.root_table(f.p());
  std::vector<std::uint32_t> logs(f.q()), traces(f.q());
  for (std::uint32_t x = 1; x < f.q(); ++x) {
    logs[x] = f.dlog_code(x);
    traces[x] = f.trace_code(x);
  }
  std::vector<CycValue> out(m);
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(m); ++k) {
    CycValue acc = b.zero();
    for (std::uint32_t x = 1; x < f.q(); ++x)
      acc += zm[static_cast<std::uint64_t>(k) * logs[x] % m] * zp[traces[x]];
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

std::vector<CycValue> jacobi_table(const FieldCtx& f, const Backend& b, Exec exec) {
  const std::uint32_t m = f.q() - 1;
  const auto zm = b.root_table(m);
  // (dlog x, dlog(1-x)) for x outside {0, 1}
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(f.q());
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    const Elem e = f.element(x);
    const Elem one_minus = 1 - e;
    if (e.is_zero() || one_minus.is_zero()) continue;
    pairs.emplace_back(f.dlog(e), f.dlog(one_minus));
  }
  std::vector<CycValue> out(static_cast<std::size_t>(m) * m);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(m); ++a) {
    for (std::uint32_t c = 0; c < m; ++c) {
      CycValue acc = b.zero();
      for (const auto& [la, lc] : pairs)
        acc += zm[(static_cast<std::uint64_t>(a) * la + std::uint64_t{c} * lc) % m];
      out[static_cast<std::size_t>(a) * m + c] = acc;
    }
  }
  return out;
}

}  // namespace kernels

CharSums::CharSums(std::shared_ptr<const FieldCtx> field, Backend backend, Exec exec)
    : field_(std::move(field)), backend_(std::move(backend)) {
  zeta_m_ = backend_.root_table(m());
  zeta_p_ = backend_.root_table(field_->p());
  gauss_ = kernels::gauss_table(*field_, backend_, exec);
  if (q() <= kMaxTableOrder) {
    jacobi_ = kernels::jacobi_table(*field_, backend_, exec);
    binom_ = binom_from_jacobi(jacobi_, m(), q(), backend_, exec);
  }
}

CycValue CharSums::jacobi(const Char& a, const Char& c) const {
  if (jacobi_.empty()) return jacobi_sum_direct(*field_, backend_, a, c);
  return jacobi_[static_cast<std::size_t>(a.k()) * m() + c.k()];
}

CycValue CharSums::binom(const Char& a, const Char& c) const {
  if (binom_.empty()) return binom_direct(*field_, backend_, a, c);
  return binom_[static_cast<std::size_t>(a.k()) * m() + c.k()];
}

std::vector<CycValue> build_binom_table(const CharSums& sums) {
  if (sums.has_tables()) return binom_from_jacobi(sums.jacobi_cache(), sums.m(), sums.q(), sums.backend(), Exec::serial);
  std::vector<CycValue> out;
  out.reserve(static_cast<std::size_t>(sums.m()) * sums.m());
  for (std::uint32_t a = 0; a < sums.m(); ++a)
    for (std::uint32_t c = 0; c < sums.m(); ++c) out.push_back(sums.binom(sums.T(a), sums.T(c)));
  return out;
}

}  // namespace ffhyper
