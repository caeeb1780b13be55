#include "ffhyper/run.hpp"

#include "ffhyper/errors.hpp"
#include "ffhyper/numtheory.hpp"

namespace ffhyper {

std::vector<std::uint32_t> default_q_suite() { return {5, 9, 13, 17, 25, 29, 37, 41, 49, 53, 61, 73, 81}; }

std::shared_ptr<const FieldCtx> field_for_order(std::uint32_t q) {
  const auto pp = nt::as_prime_power(q);
  if (pp.p == 0 || pp.p == 2) throw DomainError("q = " + std::to_string(q) + " is not an odd prime power");
  return build_field(static_cast<std::uint32_t>(pp.p), static_cast<unsigned>(pp.r));
}

std::vector<std::shared_ptr<const CharSums>> contexts_for(std::uint32_t q, const std::vector<BackendKind>& kinds,
                                                         std::uint64_t seed, Exec exec) {
  const auto field = field_for_order(q);
  std::vector<std::shared_ptr<const CharSums>> out;
  for (BackendKind k : kinds) {
    if (k == BackendKind::complex_float) {
      out.push_back(std::make_shared<const CharSums>(field, make_backend(k, field->p(), q - 1, seed), exec));
    } else {
      Backend first = make_backend(k, field->p(), q - 1, seed);
      std::uint64_t s2 = seed + 1;
      Backend second = make_backend(k, field->p(), q - 1, s2);
      while (second.ell() == first.ell()) second = make_backend(k, field->p(), q - 1, ++s2);
      out.push_back(std::make_shared<const CharSums>(field, std::move(first), exec));
      out.push_back(std::make_shared<const CharSums>(field, std::move(second), exec));
    }
  }
  return out;
}

std::uint64_t derived_seed(std::uint64_t seed, const std::string& id, std::uint32_t q) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = seed ^ h ^ (std::uint64_t{q} << 32);
  z += 0x9e3779b97f4a7c15ULL;  // splitmix64 finalizer
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<VerificationReport> run_verification(const std::vector<const IdentityDescriptor*>& ids,
                                                 const RunConfig& cfg) {
  std::vector<VerificationReport> out;
  for (std::uint32_t q : cfg.qs) {
    if (cfg.strict_congruence)
      for (const auto* d : ids) check_congruence(*d, q);
    const auto contexts = contexts_for(q, cfg.backends, cfg.seed, cfg.scan.exec);
    for (const auto& ctx : contexts) {
      for (const auto* d : ids) {
        if (!d->congruence.admits(q)) continue;
        Strategy st = cfg.strategy;
        if (st.kind == Strategy::Kind::automatic) st.seed = derived_seed(cfg.seed, d->id, q);
        out.push_back(scan(*d, *ctx, st, cfg.scan));
      }
    }
  }
  return out;
}

}  // namespace ffhyper
