#include <algorithm>
#include <random>
#include <sstream>

#include "ffhyper/errors.hpp"
#include "ffhyper/identity.hpp"

namespace ffhyper {

std::vector<std::uint32_t> Params::char_exponents() const {
  std::vector<std::uint32_t> out;
  out.reserve(chars.size());
  for (const auto& c : chars) out.push_back(c.k());
  return out;
}

std::vector<std::uint32_t> Params::arg_codes() const {
  std::vector<std::uint32_t> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(a.code());
  return out;
}

std::string Params::to_string() const {
  std::ostringstream os;
  os << "chars=[";
  for (std::size_t i = 0; i < chars.size(); ++i) os << (i ? "," : "") << chars[i].k();
  os << "] args=[";
  for (std::size_t i = 0; i < args.size(); ++i) os << (i ? "," : "") << args[i].code();
  os << "]";
  return os.str();
}

std::string to_string(IdentityKind k) {
  switch (k) {
    case IdentityKind::lemma:
      return "lemma";
    case IdentityKind::relation:
      return "relation";
    case IdentityKind::transformation:
      return "transformation";
    case IdentityKind::product:
      return "product";
    case IdentityKind::value:
      return "value";
  }
  return "?";
}

bool Congruence::admits(std::uint32_t q) const {
  return std::find(residues.begin(), residues.end(), q % modulus) != residues.end();
}

std::string Congruence::to_string() const {
  if (modulus == 1) return "any";
  std::string s = "q = ";
  for (std::size_t i = 0; i < residues.size(); ++i) s += (i ? "," : "") + std::to_string(residues[i]);
  return s + " mod " + std::to_string(modulus);
}

bool IdentityDescriptor::admissible(const Terms& t, const Params& p, const std::string& dropped) const {
  for (const auto& h : hypotheses) {
    if (!dropped.empty() && h.name == dropped) continue;
    if (!h.holds(t, p)) return false;
  }
  return true;
}

Strategy Strategy::parse(const std::string& text) {
  Strategy s;
  if (text == "auto") return s;
  if (text == "exhaustive") {
    s.kind = Kind::exhaustive;
    return s;
  }
  if (text.rfind("random:", 0) == 0) {
    s.kind = Kind::random;
    const std::string rest = text.substr(7);
    const auto colon = rest.find(':');
    try {
      std::size_t used = 0;
      const std::string n_part = rest.substr(0, colon);
      s.n = std::stoull(n_part, &used);
      if (used != n_part.size() || s.n == 0) throw DomainError("bad");
      if (colon != std::string::npos) {
        const std::string seed_part = rest.substr(colon + 1);
        s.seed = std::stoull(seed_part, &used);
        if (used != seed_part.size()) throw DomainError("bad");
      }
    } catch (const std::exception&) {
      throw DomainError("bad strategy '" + text + "' (expected random:N or random:N:SEED with N > 0)");
    }
    return s;
  }
  throw DomainError("unknown strategy '" + text + "' (expected auto, exhaustive or random:N[:SEED])");
}

std::string Strategy::to_string() const {
  switch (kind) {
    case Kind::automatic:
      return "auto";
    case Kind::exhaustive:
      return "exhaustive";
    case Kind::random:
      return "random:" + std::to_string(n) + ":" + std::to_string(seed);
  }
  return "?";
}

void check_congruence(const IdentityDescriptor& d, std::uint32_t q) {
  if (!d.congruence.admits(q))
    throw ConstraintError(d.id + " requires " + d.congruence.to_string() + ", but q = " + std::to_string(q));
}

namespace {

struct Outcome {
  bool admissible = false;
  bool pass = false;
  bool error = false;
  CycValue lhs;
  CycValue rhs;
  std::string message;
  std::string branch;
};

Outcome run_one(const IdentityDescriptor& d, const Terms& t, const Params& p, const ScanOptions& opts) {
  Outcome o;
  o.admissible = d.admissible(t, p, opts.dropped_hypothesis);
  if (!o.admissible) return o;
  try {
    if (d.branch) o.branch = d.branch(t, p);
    o.lhs = d.lhs(t, p);
    o.rhs = d.rhs(t, p);
    o.pass = values_equal(t.s.backend(), o.lhs, o.rhs, opts.tol);
  } catch (const std::exception& e) {
    o.error = true;
    o.pass = false;
    o.message = e.what();
  }
  return o;
}

std::string residual_of(const Outcome& o) { return o.error ? "error: " + o.message : residual_string(o.lhs, o.rhs); }

VerificationReport blank_report(const IdentityDescriptor& d, const CharSums& s) {
  VerificationReport r;
  r.id = d.id;
  r.q = s.q();
  r.backend = s.backend().kind();
  r.ell = s.backend().ell();
  return r;
}

void merge(VerificationReport& r, const Params& p, const Outcome& o) {
  if (!o.admissible) {
    ++r.skipped;
    return;
  }
  ++r.checked;
  if (!o.branch.empty()) ++r.branches[o.branch];
  if (o.pass) {
    ++r.passed;
    return;
  }
  r.pass = false;
  if (o.error) ++r.errors;
  if (r.failures.size() < kMaxWitnesses) {
    Witness w{p, residual_of(o), o.branch, o.error ? "" : o.lhs.to_string(), o.error ? "" : o.rhs.to_string()};
    r.failures.push_back(std::move(w));
  }
}

// Mixed-radix cube: characters range over [0, q-1), arguments over [0, q).
struct Cube {
  std::vector<std::uint32_t> radix;
  double size = 1.0;

  Cube(const IdentityDescriptor& d, const CharSums& s) {
    for (std::size_t i = 0; i < d.n_chars(); ++i) radix.push_back(s.m());
    for (std::size_t i = 0; i < d.n_args(); ++i) radix.push_back(s.q());
    for (auto r : radix) size *= r;
  }

  Params decode(const IdentityDescriptor& d, const CharSums& s, std::uint64_t idx) const {
    std::vector<std::uint32_t> digits(radix.size());
    for (std::size_t i = radix.size(); i-- > 0;) {
      digits[i] = static_cast<std::uint32_t>(idx % radix[i]);
      idx /= radix[i];
    }
    return make(d, s, digits);
  }

  static Params make(const IdentityDescriptor& d, const CharSums& s, const std::vector<std::uint32_t>& digits) {
    Params p;
    for (std::size_t i = 0; i < d.n_chars(); ++i) p.chars.push_back(s.T(digits[i]));
    for (std::size_t i = 0; i < d.n_args(); ++i) p.args.push_back(s.field().element(digits[d.n_chars() + i]));
    return p;
  }
};

constexpr std::int64_t kChunk = 1 << 14;

void evaluate_batch(const IdentityDescriptor& d, const CharSums& s, const std::vector<Params>& batch,
                    const ScanOptions& opts, VerificationReport& r) {
  std::vector<Outcome> results(batch.size());
  const auto n = static_cast<std::int64_t>(batch.size());
#pragma omp parallel if (opts.exec == Exec::parallel)
  {
    const Terms t(s, opts.alternate);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) results[i] = run_one(d, t, batch[i], opts);
  }
  for (std::size_t i = 0; i < batch.size(); ++i) merge(r, batch[i], results[i]);
}

VerificationReport scan_exhaustive(const IdentityDescriptor& d, const CharSums& s, const Cube& cube,
                                   const ScanOptions& opts) {
  VerificationReport r = blank_report(d, s);
  r.strategy = "exhaustive";
  const auto total = static_cast<std::uint64_t>(cube.size);
  std::vector<Params> batch;
  for (std::uint64_t start = 0; start < total; start += kChunk) {
    const std::uint64_t end = std::min<std::uint64_t>(total, start + kChunk);
    batch.clear();
    for (std::uint64_t i = start; i < end; ++i) batch.push_back(cube.decode(d, s, i));
    evaluate_batch(d, s, batch, opts, r);
  }
  return r;
}

VerificationReport scan_random(const IdentityDescriptor& d, const CharSums& s, const Cube& cube, std::size_t n,
                               std::uint64_t seed, const ScanOptions& opts) {
  VerificationReport r = blank_report(d, s);
  r.strategy = "random:" + std::to_string(n) + ":" + std::to_string(seed);
  std::mt19937_64 rng(seed);
  const Terms t(s, opts.alternate);
  const std::size_t max_draws = std::max<std::size_t>(100 * n, 100000);
  std::vector<Params> picked;
  std::vector<std::uint32_t> digits(cube.radix.size());
  std::size_t draws = 0;
  while (picked.size() < n && draws < max_draws) {
    ++draws;
    for (std::size_t i = 0; i < digits.size(); ++i)
      digits[i] = std::uniform_int_distribution<std::uint32_t>(0, cube.radix[i] - 1)(rng);
    Params p = Cube::make(d, s, digits);
    if (d.admissible(t, p, opts.dropped_hypothesis))
      picked.push_back(std::move(p));
    else
      ++r.skipped;
  }
  for (std::size_t start = 0; start < picked.size(); start += kChunk) {
    const std::size_t end = std::min(picked.size(), start + static_cast<std::size_t>(kChunk));
    std::vector<Params> batch(picked.begin() + static_cast<std::ptrdiff_t>(start),
                              picked.begin() + static_cast<std::ptrdiff_t>(end));
    const std::size_t skipped = r.skipped;
    evaluate_batch(d, s, batch, opts, r);
    r.skipped = skipped;
  }
  return r;
}

void check_arity(const IdentityDescriptor& d, const Params& p) {
  if (p.chars.size() != d.n_chars() || p.args.size() != d.n_args())
    throw DomainError(d.id + " takes " + std::to_string(d.n_chars()) + " character(s) and " +
                      std::to_string(d.n_args()) + " argument(s)");
}

}  // namespace

VerificationReport verify_instance(const IdentityDescriptor& d, const CharSums& s, const Params& params,
                                   const ScanOptions& opts) {
  check_congruence(d, s.q());
  check_arity(d, params);
  VerificationReport r = blank_report(d, s);
  r.strategy = "instance";
  r.params = params;
  const Terms t(s, opts.alternate);
  const Outcome o = run_one(d, t, params, opts);
  merge(r, params, o);
  r.admissible = o.admissible;
  if (o.admissible) {
    r.residual = residual_of(o);
    r.branch = o.branch;
    if (!o.error) {
      r.lhs = o.lhs.to_string();
      r.rhs = o.rhs.to_string();
    }
  }
  return r;
}

VerificationReport scan(const IdentityDescriptor& d, const CharSums& s, const Strategy& strategy,
                        const ScanOptions& opts) {
  check_congruence(d, s.q());
  const Cube cube(d, s);
  Strategy::Kind kind = strategy.kind;
  std::size_t n = strategy.n;
  if (kind == Strategy::Kind::automatic) {
    kind = s.q() <= d.exhaustive_up_to ? Strategy::Kind::exhaustive : Strategy::Kind::random;
    n = d.random_samples;
  }
  if (kind == Strategy::Kind::random && cube.size <= static_cast<double>(n)) kind = Strategy::Kind::exhaustive;
  if (kind == Strategy::Kind::exhaustive) {
    const double work = cube.size * d.cost;
    if (work > opts.budget) {
      std::ostringstream os;
      os << d.id << " at q = " << s.q() << ": exhaustive scan needs " << cube.size << " instances (weighted "
         << work << ") which exceeds the budget " << opts.budget << "; use a random strategy";
      throw ResourceError(os.str());
    }
    return scan_exhaustive(d, s, cube, opts);
  }
  return scan_random(d, s, cube, n, strategy.seed, opts);
}

TabulatedValue tabulate_value(const IdentityDescriptor& d, const CharSums& s, const Params& params,
                              const ScanOptions& opts) {
  if (d.kind != IdentityKind::value) throw DomainError(d.id + " is a " + to_string(d.kind) + ", not a special value");
  check_congruence(d, s.q());
  check_arity(d, params);
  const Terms t(s, opts.alternate);
  if (!d.admissible(t, params, opts.dropped_hypothesis))
    throw DomainError(d.id + ": parameters " + params.to_string() + " violate the hypotheses");
  TabulatedValue v;
  v.branch = d.branch ? d.branch(t, params) : "";
  v.lhs = d.lhs(t, params);
  v.rhs = d.rhs(t, params);
  v.pass = values_equal(s.backend(), v.lhs, v.rhs, opts.tol);
  v.residual = residual_string(v.lhs, v.rhs);
  return v;
}

std::vector<Params> admissible_params(const IdentityDescriptor& d, const CharSums& s, const ScanOptions& opts) {
  const Cube cube(d, s);
  const Terms t(s, opts.alternate);
  std::vector<Params> out;
  const auto total = static_cast<std::uint64_t>(cube.size);
  for (std::uint64_t i = 0; i < total; ++i) {
    Params p = cube.decode(d, s, i);
    if (d.admissible(t, p, opts.dropped_hypothesis)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace ffhyper
