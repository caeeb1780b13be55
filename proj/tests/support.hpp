#pragma once

#include <complex>
#include <cstdint>
#include <memory>

#include "doctest.h"
#include "ffhyper/char_sums.hpp"
#include "ffhyper/run.hpp"
#include "oracle.hpp"

namespace testing {

inline std::shared_ptr<const ffhyper::CharSums> sums(std::uint32_t q, ffhyper::BackendKind kind,
                                                    std::uint64_t seed = 1,
                                                    ffhyper::Exec exec = ffhyper::Exec::parallel) {
  const auto f = ffhyper::field_for_order(q);
  return std::make_shared<const ffhyper::CharSums>(f, ffhyper::make_backend(kind, f->p(), q - 1, seed), exec);
}

inline std::shared_ptr<const ffhyper::CharSums> cplx(std::uint32_t q) {
  return sums(q, ffhyper::BackendKind::complex_float);
}
inline std::shared_ptr<const ffhyper::CharSums> modular(std::uint32_t q, std::uint64_t seed = 1) {
  return sums(q, ffhyper::BackendKind::modular_embed, seed);
}

inline oracle::Field oracle_field(std::uint32_t q) {
  if (q == 9) return oracle::Field(3, 2);
  if (q == 49) return oracle::Field(7, 2);
  return oracle::Field(static_cast<int>(q), 1);
}

inline bool near(const ffhyper::CycValue& v, oracle::cx want, double tol = 1e-9) {
  const std::complex<double> w(static_cast<double>(want.real()), static_cast<double>(want.imag()));
  const double scale = std::max({1.0, std::abs(v.as_complex()), std::abs(w)});
  return std::abs(v.as_complex() - w) <= tol * scale;
}

// The identity on values: an exact modular residue equals its complex
// counterpart when both are zero or both nonzero.
inline bool same_zero_pattern(const ffhyper::CycValue& modular, const ffhyper::CycValue& complex,
                              double tol = 1e-9) {
  return modular.is_zero() == (std::abs(complex.as_complex()) <= tol);
}

}  // namespace testing
