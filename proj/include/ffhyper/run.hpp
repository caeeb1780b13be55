#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffhyper/identity.hpp"

namespace ffhyper {

std::vector<std::uint32_t> default_q_suite();

struct RunConfig {
  std::vector<std::uint32_t> qs = default_q_suite();
  std::vector<BackendKind> backends = {BackendKind::modular_embed};
  std::uint64_t seed = 1;
  Strategy strategy;
  ScanOptions scan;
  // Exact-id selections raise ConstraintError on an excluded q; family
  // selections skip the pair instead.
  bool strict_congruence = false;
};

// The evaluation contexts for one q: a complex backend counts once, a
// modular backend contributes two independent primes (seeds s and s + 1).
std::vector<std::shared_ptr<const CharSums>> contexts_for(std::uint32_t q, const std::vector<BackendKind>& kinds,
                                                         std::uint64_t seed, Exec exec = Exec::parallel);

// Builds the field for q (DomainError unless q is an odd prime power).
std::shared_ptr<const FieldCtx> field_for_order(std::uint32_t q);

// Seed used for an identity's random sample under the auto strategy.
std::uint64_t derived_seed(std::uint64_t seed, const std::string& id, std::uint32_t q);

// Reports ordered by q, then backend context, then catalog order.
std::vector<VerificationReport> run_verification(const std::vector<const IdentityDescriptor*>& ids,
                                                 const RunConfig& cfg);

}  // namespace ffhyper
