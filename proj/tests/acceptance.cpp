// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is nonzero when a criterion fails for a reason outside
// kKnownDeviations. Known deviations still print FAIL.

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ffhyper/identity.hpp"
#include "ffhyper/report.hpp"
#include "ffhyper/run.hpp"

using namespace ffhyper;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Statements whose printed form is false on some test fields. A failure of
// (id, q) is tolerated only when listed here; q = 0 matches every q.
struct Deviation {
  std::string id;
  std::set<std::uint32_t> qs;
  const char* reason;
};

const std::vector<Deviation> kKnownDeviations = {
    {"INVERSION", {0}, "printed sign BC(-1) fails when A(-1) = -1; ABC(-1) holds"},
    {"ONO8", {9, 81}, "p = 3: -8 = 1 and the x = 1/2 correction is live"},
    {"VALUE44", {9, 81}, "p = 3: -8 = 1 and the x = 1/2 correction is live"},
    {"VALUE43", {9, 81}, "p = 3: -8 = 1 and the x = 1/2 correction is live"},
    {"EG_FROM_43", {9, 81}, "p = 3: -8 = 1 and the x = 1/2 correction is live"},
    {"VALUE46", {25, 37, 49, 61, 73}, "q = 1 mod 12 branch holds with C(4)/q^2, not C(4)/q"},
};

const Deviation* known(const std::string& id, std::uint32_t q) {
  for (const auto& d : kKnownDeviations)
    if (d.id == id && (d.qs.count(0) || d.qs.count(q))) return &d;
  return nullptr;
}

struct Key {
  std::string id;
  std::uint32_t q;
  bool operator<(const Key& o) const { return id != o.id ? id < o.id : q < o.q; }
};

// Reports for every context: complex, then two modular primes.
struct Runs {
  std::map<Key, std::vector<VerificationReport>> by_key;

  void add(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports) by_key[{r.id, r.q}].push_back(r);
  }
};

Runs run_set(const std::vector<const IdentityDescriptor*>& ids, const std::vector<std::uint32_t>& qs,
             std::uint64_t seed = 1) {
  RunConfig cfg;
  cfg.qs = qs;
  cfg.backends = {BackendKind::complex_float, BackendKind::modular_embed};
  cfg.seed = seed;
  Runs runs;
  runs.add(run_verification(ids, cfg));
  return runs;
}

struct Verdict {
  bool pass = true;
  bool excused = true;  // every failure is a known deviation
  std::vector<std::string> notes;

  void fail(const std::string& what, bool is_known) {
    pass = false;
    excused = excused && is_known;
    if (notes.size() < 40) notes.push_back(what + (is_known ? " [known]" : ""));
  }
};

int g_unexcused = 0;

void print(int n, const std::string& title, const Verdict& v, double secs) {
  std::printf("%s criterion %d: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", n, title.c_str(), secs);
  for (const auto& note : v.notes) std::printf("    %s\n", note.c_str());
  if (!v.pass && !v.excused) ++g_unexcused;
  std::fflush(stdout);
}

// One line per (id, q): the first failing context plus how many failed.
void fail_key(Verdict& v, const std::vector<VerificationReport>& reports) {
  const VerificationReport* first = nullptr;
  std::size_t failing = 0;
  for (const auto& r : reports)
    if (!r.pass) {
      if (!first) first = &r;
      ++failing;
    }
  if (!first) return;
  v.fail(first->id + " q=" + std::to_string(first->q) + " " + first->strategy + " " + std::to_string(first->passed) +
             "/" + std::to_string(first->checked) + " passed, failing in " + std::to_string(failing) + " of " +
             std::to_string(reports.size()) + " contexts",
         known(first->id, first->q) != nullptr);
}

std::string describe(const VerificationReport& r) {
  return r.id + " q=" + std::to_string(r.q) + " " + to_string(r.backend) +
         (r.ell ? "(ell=" + std::to_string(r.ell) + ")" : "") + " " + r.strategy + " " + std::to_string(r.passed) +
         "/" + std::to_string(r.checked);
}

// Every report passes; expected strategy is exhaustive for q <= 13 and a
// random sample of `samples` above, unless `always_exhaustive`.
void check_reports(const Runs& runs, Verdict& v, std::size_t samples, bool always_exhaustive) {
  for (const auto& [key, reports] : runs.by_key) {
    if (reports.size() != 3) v.fail(key.id + " q=" + std::to_string(key.q) + ": expected 3 contexts", false);
    for (const auto& r : reports) {
      const bool exhaustive_expected = always_exhaustive || r.q <= 13;
      const std::string want = exhaustive_expected ? "exhaustive" : "random:" + std::to_string(samples) + ":";
      if (r.strategy.rfind(want, 0) != 0) v.fail(describe(r) + ": wrong strategy", false);
      if (!exhaustive_expected && r.checked != samples && r.strategy != "exhaustive")
        v.fail(describe(r) + ": sample size", false);
      if (r.checked == 0 && r.skipped == 0) v.fail(describe(r) + ": nothing checked", false);
    }
    fail_key(v, reports);
  }
}

std::vector<const IdentityDescriptor*> pick(std::initializer_list<const char*> ids) {
  std::vector<const IdentityDescriptor*> out;
  for (const char* id : ids) out.push_back(&find_identity(id));
  return out;
}

std::vector<std::uint32_t> suite_admitting(const IdentityDescriptor& d, const std::vector<std::uint32_t>& qs) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q : qs)
    if (d.congruence.admits(q)) out.push_back(q);
  return out;
}

Runs run_each(const std::vector<const IdentityDescriptor*>& ids, const std::vector<std::uint32_t>& qs) {
  Runs all;
  for (const auto* d : ids) {
    const auto mine = suite_admitting(*d, qs);
    if (mine.empty()) continue;
    const Runs r = run_set({d}, mine);
    for (const auto& [k, v] : r.by_key) all.by_key[k] = v;
  }
  return all;
}

std::vector<Runs> g_scanned;  // everything scanned by criteria 1-4, for criterion 5

}  // namespace

int main() {
  const auto suite = default_q_suite();
  std::printf("acceptance: default q suite");
  for (auto q : suite) std::printf(" %u", q);
  std::printf("\n");

  // 1. Lemma pack.
  {
    const auto t0 = Clock::now();
    Verdict v;
    const Runs runs = run_each(select_identities("LEMMA_PACK"), suite);
    for (const auto& [key, reports] : runs.by_key) {
      for (const auto& r : reports) {
        const bool g2 = r.id == "LEMMA_PACK:g2";
        const bool exhaustive_expected = !g2 || r.q <= 13;
        if ((r.strategy == "exhaustive") != exhaustive_expected) v.fail(describe(r) + ": wrong strategy", false);
        if (g2 && r.q > 13 && (r.strategy.rfind("random:500:", 0) != 0 || r.checked != 500))
          v.fail(describe(r) + ": expected 500 seeded tuples", false);
      }
      fail_key(v, reports);
    }
    const double secs = seconds_since(t0);
    if (secs >= 30) v.fail("runtime " + std::to_string(secs) + " s exceeds 30 s", false);
    g_scanned.push_back(runs);
    print(1, "lemma pack exhaustive on every suite q, g2 exhaustive to 13 then 500 seeded tuples", v, secs);
  }

  // 2. Greene transformations and values.
  {
    const auto t0 = Clock::now();
    Verdict v;
    const Runs runs =
        run_each(pick({"GREENE_T1", "GREENE_T2", "GREENE_T3", "INVERSION", "G_NEG1", "G_AT2", "FL_VALUE", "MC_AT_1"}),
                 suite);
    for (const auto& [key, reports] : runs.by_key) {
      for (const auto& r : reports) {
        // Above 13 a full scan is also accepted (special values are cheap).
        const bool random500 = r.strategy.rfind("random:500:", 0) == 0 && r.checked == 500;
        if (!(r.strategy == "exhaustive" || (r.q > 13 && random500))) v.fail(describe(r) + ": wrong strategy", false);
      }
      fail_key(v, reports);
    }
    g_scanned.push_back(runs);
    print(2, "Greene transformations, inversion and small values: exhaustive to q = 13, random(500) to 81", v,
          seconds_since(t0));
  }

  // 3. Product formulas and tightness probes.
  {
    const auto t0 = Clock::now();
    Verdict v;
    const Runs runs = run_each(pick({"MT41", "MT41_COR", "MT41C1", "CLAUSEN", "MT42", "MT43", "MT43_COR",
                                     "F4_PRODUCT", "F4_GREENE", "MT41_COR_STAR", "MT42_STAR", "MT43_COR_STAR"}),
                               suite);
    check_reports(runs, v, 200, false);
    g_scanned.push_back(runs);

    const std::pair<const char*, const char*> probes[] = {
        {"MT41_COR", "x != 1/2"}, {"CLAUSEN", "x != 1/2"}, {"MT43_COR", "A^2 C-bar^2 != eps"}};
    for (auto [id, hyp] : probes) {
      std::size_t failures = 0;
      for (std::uint32_t q : {9u, 13u}) {
        for (const auto& ctx : contexts_for(q, {BackendKind::modular_embed}, 1)) {
          ScanOptions opts;
          opts.dropped_hypothesis = hyp;
          const auto r = scan(find_identity(id), *ctx, Strategy::parse("exhaustive"), opts);
          failures += r.checked - r.passed;
        }
      }
      if (failures == 0) v.fail(std::string(id) + " without '" + hyp + "': no counterexample", false);
      else
        v.notes.push_back(std::string("probe ") + id + " without '" + hyp + "': " + std::to_string(failures) +
                          " counterexamples");
    }
    print(3, "product formulas and starred forms: exhaustive to q = 13, random(200) to 81; tightness probes", v,
          seconds_since(t0));
  }

  // 4. Special values.
  {
    const auto t0 = Clock::now();
    Verdict v;
    Runs runs = run_each(pick({"ONO8", "VALUE43", "EG_FROM_43", "VALUE44", "VALUE41_I", "VALUE41_II", "V41C1"}), suite);
    const Runs v45 = run_each(pick({"VALUE45"}), {17, 41, 73});
    const Runs v46 = run_each(pick({"VALUE46", "VALUE49"}), {13, 37, 61, 73, 11, 23, 47});
    for (const auto* extra : {&v45, &v46})
      for (const auto& [k, r] : extra->by_key) runs.by_key[k] = r;
    check_reports(runs, v, 0, true);
    for (std::uint32_t q : {17u, 41u, 73u}) {
      const auto& r = v45.by_key.at({"VALUE45", q}).front();
      if (r.branches.size() != 2) v.fail("VALUE45 q=" + std::to_string(q) + ": one branch only", false);
    }
    for (const char* id : {"VALUE46", "VALUE49"}) {
      std::set<std::string> seen;
      for (const auto& [k, r] : v46.by_key)
        if (k.id == id)
          for (const auto& [b, n] : r.front().branches) seen.insert(b);
      if (seen.size() != 2) v.fail(std::string(id) + ": both q mod 12 branches not exercised", false);
    }
    for (std::uint32_t q : suite) {
      if (q % 4 == 1 && !runs.by_key.count({"ONO8", q})) v.fail("ONO8 missing q=" + std::to_string(q), false);
    }
    g_scanned.push_back(runs);
    print(4, "special values over all admissible parameters", v, seconds_since(t0));
  }

  // 5. Backend agreement over everything scanned above.
  {
    const auto t0 = Clock::now();
    Verdict v;
    std::size_t compared = 0;
    for (const auto& runs : g_scanned) {
      for (const auto& [key, reports] : runs.by_key) {
        ++compared;
        for (const auto& r : reports) {
          const auto& ref = reports.front();
          if (r.pass != ref.pass || r.passed != ref.passed || r.checked != ref.checked)
            v.fail("disagreement: " + describe(ref) + " vs " + describe(r), false);
        }
      }
    }
    v.notes.push_back(std::to_string(compared) + " (id, q) pairs compared over complex and two primes");
    print(5, "complex and two modular primes give identical verdicts", v, seconds_since(t0));
  }

  // 6 and 7. verify all, twice, default configuration.
  {
    RunConfig cfg;
    const auto ids = select_identities("all");
    const auto t0 = Clock::now();
    const auto first = run_verification(ids, cfg);
    const double secs = seconds_since(t0);
    const auto second = run_verification(ids, cfg);

    Verdict det;
    if (reports_json(first) != reports_json(second)) det.fail("JSON reports differ between runs", false);
    if (reports_csv(first) != reports_csv(second)) det.fail("CSV reports differ between runs", false);
    det.notes.push_back(std::to_string(first.size()) + " reports, " + std::to_string(reports_json(first).size()) +
                        " bytes of JSON");
    print(6, "verify all twice with the same seed is byte-identical", det, 0);

    Verdict timing;
    if (secs >= 300) timing.fail("took " + std::to_string(secs) + " s", false);
    std::size_t failed = 0;
    for (const auto& r : first) failed += !r.pass;
    timing.notes.push_back(std::to_string(first.size()) + " reports, " + std::to_string(failed) + " failing");
    print(7, "default verify all completes in under 5 minutes", timing, secs);
  }

  std::printf("known deviations:\n");
  for (const auto& d : kKnownDeviations) {
    std::string qs;
    for (auto q : d.qs) qs += (qs.empty() ? "" : ",") + (q ? std::to_string(q) : std::string("all"));
    std::printf("    %s q=%s: %s\n", d.id.c_str(), qs.c_str(), d.reason);
  }
  return g_unexcused == 0 ? 0 : 1;
}
