#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffhyper/hyper_series.hpp"

namespace ffhyper {

// Characters as dual exponents, field arguments as element codes.
struct Params {
  std::vector<Char> chars;
  std::vector<Elem> args;

  std::vector<std::uint32_t> char_exponents() const;
  std::vector<std::uint32_t> arg_codes() const;
  std::string to_string() const;
};

// Evaluation context handed to catalog evaluators: cached sums plus the
// canonical choices (chi3, chi4, square roots). With `alternate` set, every
// choice flips to its conjugate / other root; verdicts must not change.
class Terms {
 public:
  Terms(const CharSums& sums, bool alternate) : s(sums), alt(alternate), q(sums.q()) {}

  const CharSums& s;
  const bool alt;
  const std::int64_t q;

  Char eps() const { return s.T(0); }
  Char phi() const { return special_char(s.field(), Special::phi); }
  Char chi3() const;
  Char chi4() const;
  // Canonical square root of a square character (times phi when alternate).
  Char char_root(const Char& c) const;
  // Canonical root of a square field element (negated when alternate).
  std::optional<Elem> root(const Elem& x) const;

  CycValue g(const Char& c) const { return s.gauss(c); }
  CycValue J(const Char& a, const Char& b) const { return s.jacobi(a, b); }
  CycValue B(const Char& a, const Char& b) const { return s.binom(a, b); }
  CycValue chi(const Char& c, const Elem& x) const { return s.chi(c, x); }
  CycValue chi(const Char& c, std::int64_t n) const { return s.chi(c, s.el(n)); }
  // c(-1) as +-1
  static std::int64_t sgn(const Char& c) { return CharSums::sign(c); }
  static std::int64_t d(const Char& c) { return delta_char(c); }
  static std::int64_t d(const Elem& x) { return delta_point(x); }

  CycValue num(std::int64_t n) const { return s.num(n); }
  CycValue frac(std::int64_t a, std::int64_t b) const { return s.frac(a, b); }
  Elem el(std::int64_t n) const { return s.el(n); }

  CycValue F(std::initializer_list<Char> up, std::initializer_list<Char> low, const Elem& x) const;
  CycValue Fs(std::initializer_list<Char> up, std::initializer_list<Char> low, const Elem& x) const;
};

enum class IdentityKind { lemma, relation, transformation, product, value };
std::string to_string(IdentityKind k);

struct Hypothesis {
  std::string name;
  std::function<bool(const Terms&, const Params&)> holds;
};

// Allowed residues of q modulo `modulus`.
struct Congruence {
  std::uint32_t modulus = 1;
  std::vector<std::uint32_t> residues{0};

  bool admits(std::uint32_t q) const;
  std::string to_string() const;
};

struct IdentityDescriptor {
  std::string id;
  std::string statement;
  IdentityKind kind = IdentityKind::transformation;
  std::vector<std::string> char_names;
  std::vector<std::string> arg_names;
  Congruence congruence;
  std::vector<Hypothesis> hypotheses;
  std::function<CycValue(const Terms&, const Params&)> lhs;
  std::function<CycValue(const Terms&, const Params&)> rhs;
  std::function<std::string(const Terms&, const Params&)> branch;  // value identities
  double cost = 1.0;  // series evaluations per instance, for the exhaustive budget
  std::size_t random_samples = 200;
  std::uint32_t exhaustive_up_to = 13;  // auto strategy: exhaustive iff q <= this

  std::size_t n_chars() const { return char_names.size(); }
  std::size_t n_args() const { return arg_names.size(); }
  // All hypotheses hold (optionally ignoring one, for tightness probes).
  bool admissible(const Terms& t, const Params& p, const std::string& dropped = {}) const;
};

// Stable catalog, in listing order.
const std::vector<IdentityDescriptor>& catalog();
// LookupError for unknown ids.
const IdentityDescriptor& find_identity(const std::string& id);
// "all", an exact id, or a family prefix such as LEMMA_PACK.
std::vector<const IdentityDescriptor*> select_identities(const std::string& selector);

struct Witness {
  Params params;
  std::string residual;
  std::string branch;
  std::string lhs;
  std::string rhs;
};

struct VerificationReport {
  std::string id;
  std::uint32_t q = 0;
  BackendKind backend = BackendKind::modular_embed;
  std::uint64_t ell = 0;
  std::string strategy;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;  // inadmissible parameter tuples
  std::size_t errors = 0;   // evaluation raised (counted as failures)
  bool pass = true;
  std::map<std::string, std::size_t> branches;
  std::vector<Witness> failures;  // first kMaxWitnesses
  // Single-instance fields.
  std::optional<Params> params;
  std::string residual;
  std::string branch;
  std::string lhs;
  std::string rhs;
  bool admissible = true;
};

inline constexpr std::size_t kMaxWitnesses = 10;
inline constexpr double kDefaultBudget = 1e7;

struct Strategy {
  enum class Kind { automatic, exhaustive, random } kind = Kind::automatic;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  static Strategy parse(const std::string& text);  // auto | exhaustive | random:N[:SEED]
  std::string to_string() const;
};

struct ScanOptions {
  double tol = kDefaultTolerance;
  double budget = kDefaultBudget;
  Exec exec = Exec::parallel;
  bool alternate = false;
  std::string dropped_hypothesis;  // tightness probe
};

// ConstraintError when q violates the identity's congruence.
void check_congruence(const IdentityDescriptor& d, std::uint32_t q);

VerificationReport verify_instance(const IdentityDescriptor& d, const CharSums& s, const Params& params,
                                   const ScanOptions& opts = {});

// ResourceError when an exhaustive scan exceeds opts.budget.
VerificationReport scan(const IdentityDescriptor& d, const CharSums& s, const Strategy& strategy,
                        const ScanOptions& opts = {});

struct TabulatedValue {
  CycValue lhs;
  CycValue rhs;
  std::string branch;
  std::string residual;
  bool pass = false;
};

// Special-value identities only; DomainError otherwise.
TabulatedValue tabulate_value(const IdentityDescriptor& d, const CharSums& s, const Params& params,
                              const ScanOptions& opts = {});

// Enumerates every admissible parameter tuple in canonical order.
std::vector<Params> admissible_params(const IdentityDescriptor& d, const CharSums& s, const ScanOptions& opts = {});

}  // namespace ffhyper
