#include <algorithm>
#include <set>

#include "doctest.h"
#include "ffhyper/errors.hpp"
#include "ffhyper/identity.hpp"
#include "ffhyper/report.hpp"
#include "ffhyper/run.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace ffhyper;
using testing::near;

namespace {

const Strategy kExhaustive = Strategy::parse("exhaustive");

Params params(const CharSums& s, std::initializer_list<std::int64_t> ks, std::initializer_list<std::int64_t> xs = {}) {
  Params p;
  for (auto k : ks) p.chars.push_back(s.T(k));
  for (auto x : xs) p.args.push_back(s.el(x));
  return p;
}

}  // namespace

TEST_CASE("catalog listing") {
  const auto& cat = catalog();
  CHECK(cat.size() >= 25);
  std::set<std::string> ids;
  for (const auto& d : cat) {
    CHECK(ids.insert(d.id).second);
    CHECK(d.lhs);
    CHECK(d.rhs);
    CHECK_FALSE(d.statement.empty());
  }
  for (const char* id : {"G_NEG1", "G_AT2", "V41C1", "VALUE45", "VALUE46", "VALUE49"}) CHECK(find_identity(id).branch);
  CHECK(find_identity("ONO8").congruence.to_string() == "q = 1 mod 4");
  CHECK(find_identity("VALUE45").congruence.to_string() == "q = 1 mod 8");
  CHECK(find_identity("MT41").congruence.to_string() == "any");
  for (const char* id : {"GREENE_T1", "GREENE_T2", "GREENE_T3", "INVERSION", "MC_AT_1", "FL_VALUE", "G_NEG1",
                         "G_AT2", "MT41", "MT41_COR", "MT41_COR_STAR", "MT41C1", "CLAUSEN", "MT42", "MT42_STAR",
                         "MT43", "MT43_COR", "MT43_COR_STAR", "F4_PRODUCT", "F4_GREENE", "VALUE41_I", "VALUE41_II",
                         "V41C1", "VALUE44", "ONO8", "VALUE45", "VALUE46", "VALUE43", "EG_FROM_43", "VALUE49"})
    CHECK(ids.count(id) == 1);
}

TEST_CASE("catalog ordering and selection are stable") {
  const auto all = select_identities("all");
  REQUIRE(all.size() == catalog().size());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == &catalog()[i]);
  const auto lemmas = select_identities("LEMMA_PACK");
  CHECK(lemmas.size() == 15);
  for (const auto* d : lemmas) CHECK(d->id.rfind("LEMMA_PACK:", 0) == 0);
  CHECK(select_identities("MT41").size() == 1);
  CHECK_THROWS_AS(find_identity("MT99"), LookupError);
  CHECK_THROWS_AS(select_identities("NOPE"), LookupError);
}

TEST_CASE("verify_instance examples") {
  const auto s13 = testing::modular(13);
  const auto r = verify_instance(find_identity("MT41"), *s13, params(*s13, {1, 2, 7}, {3}));
  CHECK(r.admissible);
  CHECK(r.pass);
  CHECK(r.residual == "0");
  CHECK(r.strategy == "instance");

  CHECK(verify_instance(find_identity("ONO8"), *s13, Params{}).pass);

  const auto s17 = testing::cplx(17);
  const auto& v45 = find_identity("VALUE45");
  const auto t = tabulate_value(v45, *s17, params(*s17, {1}));
  CHECK(t.pass);
  CHECK(t.branch == "C chi4 non-square");
  CHECK(near(t.lhs, 1.0L / 17));
  CHECK(near(t.rhs, 1.0L / 17));
}

TEST_CASE("verify_instance errors and inadmissible parameters") {
  const auto s7 = testing::modular(7);
  CHECK_THROWS_AS(verify_instance(find_identity("ONO8"), *s7, Params{}), ConstraintError);
  const auto s13 = testing::modular(13);
  // x = 1 violates MT41's hypotheses: skipped, not failed.
  const auto r = verify_instance(find_identity("MT41"), *s13, params(*s13, {1, 2, 7}, {1}));
  CHECK_FALSE(r.admissible);
  CHECK(r.pass);
  CHECK(r.skipped == 1);
  CHECK(r.checked == 0);
  CHECK_THROWS_AS(verify_instance(find_identity("MT41"), *s13, params(*s13, {1, 2})), DomainError);
}

TEST_CASE("scan examples") {
  const auto s9 = testing::modular(9);
  const auto g1 = scan(find_identity("LEMMA_PACK:g1"), *s9, kExhaustive);
  CHECK(g1.checked == 8);
  CHECK(g1.passed == 8);
  CHECK(g1.pass);

  const auto s13 = testing::modular(13);
  const auto gn = scan(find_identity("G_NEG1"), *s13, kExhaustive);
  CHECK(gn.pass);
  CHECK(gn.checked == 144);
  CHECK(gn.branches.count("B square") == 1);
  CHECK(gn.branches.count("B non-square") == 1);

  const auto s81 = testing::modular(81);
  const auto mt = scan(find_identity("MT41"), *s81, Strategy::parse("random:200:42"));
  CHECK(mt.checked == 200);
  CHECK(mt.passed == 200);
  CHECK(mt.strategy == "random:200:42");
}

TEST_CASE("exhaustive scan over budget raises a resource error") {
  const auto s81 = testing::modular(81);
  CHECK_THROWS_AS(scan(find_identity("LEMMA_PACK:g2"), *s81, kExhaustive), ResourceError);
  ScanOptions tight;
  tight.budget = 100;
  const auto s13 = testing::modular(13);
  CHECK_THROWS_AS(scan(find_identity("GREENE_T1"), *s13, kExhaustive, tight), ResourceError);
}

TEST_CASE("random scans are deterministic and counts add up") {
  const auto s = testing::modular(49);
  const auto& d = find_identity("MT43");
  const auto a = scan(d, *s, Strategy::parse("random:150:9"));
  const auto b = scan(d, *s, Strategy::parse("random:150:9"));
  CHECK(report_json(a) == report_json(b));
  CHECK(a.checked == 150);
  CHECK(a.skipped > 0);
  const auto c = scan(d, *s, Strategy::parse("random:150:10"));
  CHECK(c.checked == 150);
  CHECK(c.skipped != a.skipped);
}

TEST_CASE("exhaustive scans count every tuple once") {
  const auto s = testing::modular(9);
  for (const char* id : {"GREENE_T1", "MT41", "FL_VALUE", "LEMMA_PACK:b6"}) {
    const auto& d = find_identity(id);
    const auto r = scan(d, *s, kExhaustive);
    double cube = 1;
    for (std::size_t i = 0; i < d.n_chars(); ++i) cube *= 8;
    for (std::size_t i = 0; i < d.n_args(); ++i) cube *= 9;
    CAPTURE(id);
    CHECK(static_cast<double>(r.checked + r.skipped) == cube);
    CHECK(r.checked == admissible_params(d, *s).size());
  }
}

TEST_CASE("serial and parallel scans produce identical reports") {
  ScanOptions serial, parallel;
  serial.exec = Exec::serial;
  parallel.exec = Exec::parallel;
  for (std::uint32_t q : {9u, 13u}) {
    const auto s = testing::modular(q);
    for (const char* id : {"GREENE_T2", "MT41", "INVERSION", "F4_PRODUCT"}) {
      const auto& d = find_identity(id);
      CHECK(report_json(scan(d, *s, kExhaustive, serial)) == report_json(scan(d, *s, kExhaustive, parallel)));
    }
    const auto& d = find_identity("MT42");
    CHECK(report_json(scan(d, *s, Strategy::parse("random:300:5"), serial)) ==
          report_json(scan(d, *s, Strategy::parse("random:300:5"), parallel)));
  }
}

TEST_CASE("choice invariance: conjugate chi3/chi4 and the other square roots leave verdicts unchanged") {
  ScanOptions alt;
  alt.alternate = true;
  for (std::uint32_t q : {5u, 9u, 13u, 17u, 25u}) {
    const auto s = testing::modular(q);
    for (const auto& d : catalog()) {
      if (!d.congruence.admits(q)) continue;
      const Strategy st = q <= 13 ? kExhaustive : Strategy::parse("random:60:3");
      const auto a = scan(d, *s, st);
      const auto b = scan(d, *s, st, alt);
      CAPTURE(d.id);
      CAPTURE(q);
      CHECK(a.checked == b.checked);
      CHECK(a.passed == b.passed);
      CHECK(a.branches == b.branches);
    }
  }
}

TEST_CASE("VALUE45: rhs unchanged under D -> D phi") {
  for (std::uint32_t q : {17u, 41u}) {
    const auto s = testing::modular(q);
    const auto& d = find_identity("VALUE45");
    ScanOptions alt;
    alt.alternate = true;
    std::size_t square_branch = 0;
    for (const Params& p : admissible_params(d, *s)) {
      const auto a = tabulate_value(d, *s, p);
      const auto b = tabulate_value(d, *s, p, alt);
      REQUIRE(values_equal(s->backend(), a.rhs, b.rhs));
      square_branch += a.branch == "C chi4 square";
    }
    CHECK(square_branch > 0);
  }
}

TEST_CASE("starred forms pass wherever the plain forms do") {
  const std::pair<const char*, const char*> pairs[] = {
      {"MT41_COR", "MT41_COR_STAR"}, {"MT42", "MT42_STAR"}, {"MT43_COR", "MT43_COR_STAR"}};
  for (auto [plain, star] : pairs) {
    const auto& dp = find_identity(plain);
    const auto& ds = find_identity(star);
    std::size_t n = 0;
    for (std::uint32_t q : {5u, 9u, 13u}) {
      const auto s = testing::modular(q);
      const Terms t(*s, false);
      for (const Params& p : admissible_params(ds, *s)) {
        REQUIRE(dp.admissible(t, p));
        const auto a = verify_instance(dp, *s, p);
        const auto b = verify_instance(ds, *s, p);
        REQUIRE(a.pass);
        REQUIRE(b.pass);
        ++n;
      }
    }
    CAPTURE(star);
    CHECK(n > 0);
  }
}

TEST_CASE("tightness probes: each dropped hypothesis admits a counterexample") {
  const std::pair<const char*, const char*> probes[] = {
      {"MT41_COR", "x != 1/2"}, {"CLAUSEN", "x != 1/2"}, {"MT43_COR", "A^2 C-bar^2 != eps"}};
  for (auto [id, hyp] : probes) {
    const auto& d = find_identity(id);
    bool named = false;
    for (const auto& h : d.hypotheses) named = named || h.name == hyp;
    REQUIRE(named);
    std::size_t failures = 0;
    for (std::uint32_t q : {9u, 13u}) {
      const auto s = testing::modular(q);
      REQUIRE(scan(d, *s, kExhaustive).pass);
      ScanOptions probe;
      probe.dropped_hypothesis = hyp;
      const auto r = scan(d, *s, kExhaustive, probe);
      failures += r.checked - r.passed;
    }
    CAPTURE(id);
    CHECK(failures >= 1);
  }
}

TEST_CASE("tabulate_value examples") {
  const auto s13 = testing::cplx(13);
  const auto& v46 = find_identity("VALUE46");
  const auto t = tabulate_value(v46, *s13, params(*s13, {2}));
  CHECK(t.branch == "q=1 mod 12");
  const oracle::Field of(13, 1);
  const oracle::Sums os(of);
  const auto two_re = 2.0L * (os.jacobi(2, 4) * os.jacobi(-2, 4)).real();
  CHECK(near(t.rhs, os.chi(2, 4) / 13.0L * (13.0L + two_re)));

  const auto s11 = testing::modular(11);
  const auto& v49 = find_identity("VALUE49");
  const auto adm = admissible_params(v49, *s11);
  CHECK_FALSE(adm.empty());
  for (const Params& p : adm) {
    const auto v = tabulate_value(v49, *s11, p);
    CHECK(v.branch == "q=11 mod 12");
    CHECK(v.pass);
  }

  for (const auto& s : {testing::cplx(5), testing::modular(5)}) {
    const auto o = tabulate_value(find_identity("ONO8"), *s, Params{});
    CHECK(o.pass);
    CHECK(values_equal(s->backend(), o.lhs, o.rhs));
  }
  const auto s5 = testing::cplx(5);
  const oracle::Field f5(5, 1);
  const oracle::Sums o5(f5);
  const auto b = o5.binom(1, 2) + o5.binom(3, 2);
  CHECK(near(tabulate_value(find_identity("ONO8"), *s5, Params{}).rhs, b * b - 0.2L));
  CHECK(near(tabulate_value(find_identity("ONO8"), *s5, Params{}).lhs, o5.greene({2, 2, 2}, {0, 0}, f5.from_int(-8))));

  CHECK_THROWS_AS(tabulate_value(find_identity("MT41"), *s13, params(*s13, {1, 2, 7}, {3})), DomainError);
  CHECK_THROWS_AS(tabulate_value(v46, *s13, params(*s13, {1})), DomainError);
}

TEST_CASE("V41C1 branches follow q mod 8") {
  const auto& d = find_identity("V41C1");
  for (std::uint32_t q : {17u, 29u}) {
    const auto s = testing::modular(q);
    const auto r = scan(d, *s, kExhaustive);
    CHECK(r.pass);
    CHECK(r.branches.count(q % 8 == 1 ? "q=1 mod 8" : "q=5 mod 8") == 1);
    CHECK(r.branches.size() == 1);
  }
}

// Characterizations of three statements whose printed form fails on some
// fields; the catalog keeps the printed form and these pin down the gap.
TEST_CASE("INVERSION fails only when A(-1) = -1; the sign ABC(-1) repairs it") {
  std::size_t failures = 0;
  for (std::uint32_t q : {5u, 9u, 13u}) {
    const auto s = testing::modular(q);
    const Backend& b = s->backend();
    const auto& d = find_identity("INVERSION");
    for (const Params& p : admissible_params(d, *s)) {
      const Char &a = p.chars[0], &bb = p.chars[1], &c = p.chars[2];
      const Elem& x = p.args[0];
      const auto r = verify_instance(d, *s, p);
      if (!r.pass) {
        REQUIRE(CharSums::sign(a) == -1);
        ++failures;
      }
      const CycValue lhs = greene_F(*s, std::vector<Char>{a, bb}, std::vector<Char>{c}, x);
      const CycValue rhs = s->num(CharSums::sign(a * bb * c)) * s->chi(a.bar(), x) *
                           greene_F(*s, std::vector<Char>{a, a * c.bar()}, std::vector<Char>{a * bb.bar()}, 1 / x);
      REQUIRE(values_equal(b, lhs, rhs));
    }
  }
  CHECK(failures > 0);
}

TEST_CASE("VALUE46 for q = 1 mod 12 holds with C(4)/q^2 in front") {
  for (std::uint32_t q : {13u, 25u, 37u, 49u, 61u}) {
    const auto s = testing::modular(q);
    const Backend& b = s->backend();
    const auto& d = find_identity("VALUE46");
    const Char x3 = special_char(s->field(), Special::chi3);
    std::size_t nonzero = 0;
    for (const Params& p : admissible_params(d, *s)) {
      const Char& c = p.chars[0];
      const auto v = tabulate_value(d, *s, p);
      const CycValue two_re =
          s->jacobi(c, x3) * s->jacobi(c.bar(), x3) + s->jacobi(c.bar(), x3.bar()) * s->jacobi(c, x3.bar());
      const CycValue want = s->chi(c, s->el(4)) * (s->num(q) + two_re) / s->num(q * q);
      REQUIRE(values_equal(b, v.lhs, want));
      REQUIRE(values_equal(b, v.rhs, want * s->num(q)));
      nonzero += !v.lhs.is_zero();
    }
    if (q > 13) CHECK(nonzero > 0);
  }
}

TEST_CASE("ONO8 in characteristic 3 falls short by exactly 1/q") {
  for (std::uint32_t q : {9u, 81u}) {
    const auto s = testing::modular(q);
    const auto v = tabulate_value(find_identity("ONO8"), *s, Params{});
    CHECK_FALSE(v.pass);
    CHECK(values_equal(s->backend(), v.rhs - v.lhs, s->frac(1, q)));
  }
}

TEST_CASE("strategy parsing") {
  CHECK(Strategy::parse("auto").kind == Strategy::Kind::automatic);
  CHECK(Strategy::parse("exhaustive").kind == Strategy::Kind::exhaustive);
  const Strategy r = Strategy::parse("random:200:42");
  CHECK(r.kind == Strategy::Kind::random);
  CHECK(r.n == 200);
  CHECK(r.seed == 42);
  CHECK(r.to_string() == "random:200:42");
  CHECK(Strategy::parse("random:5").n == 5);
  CHECK_THROWS_AS(Strategy::parse("random:0"), DomainError);
  CHECK_THROWS_AS(Strategy::parse("random:x"), DomainError);
  CHECK_THROWS_AS(Strategy::parse("sometimes"), DomainError);
}

TEST_CASE("congruence") {
  Congruence c{12, {1, 11}};
  CHECK(c.admits(13));
  CHECK(c.admits(23));
  CHECK_FALSE(c.admits(17));
  CHECK(c.to_string() == "q = 1,11 mod 12");
  CHECK(Congruence{}.admits(7));
  CHECK_THROWS_AS(check_congruence(find_identity("VALUE45"), 13), ConstraintError);
  CHECK_NOTHROW(check_congruence(find_identity("VALUE45"), 17));
}

TEST_CASE("report serialization") {
  const auto s = testing::modular(13);
  const auto r = scan(find_identity("G_NEG1"), *s, kExhaustive);
  const auto doc = nlohmann::json::parse(reports_json({r}));
  CHECK(doc["schema"] == kReportSchema);
  const auto& j = doc["reports"][0];
  CHECK(j["id"] == "G_NEG1");
  CHECK(j["q"] == 13);
  CHECK(j["backend"] == "modular");
  CHECK(j["ell"] == s->backend().ell());
  CHECK(j["checked"] == r.checked);
  CHECK(j["pass"] == true);
  CHECK(j["branches"].size() == 2);

  const auto inst = verify_instance(find_identity("MT41"), *s, params(*s, {1, 2, 7}, {3}));
  const auto ji = nlohmann::json::parse(report_json(inst));
  CHECK(ji["params"]["chars"] == std::vector<int>{1, 2, 7});
  CHECK(ji["params"]["args"] == std::vector<int>{3});
  CHECK(ji["residual"] == "0");

  const std::string csv = reports_csv({r, inst});
  CHECK(csv.rfind(csv_header(), 0) == 0);
  CHECK(csv_header() ==
        "schema,id,q,backend,ell,strategy,checked,passed,skipped,errors,pass,branches,failure_chars,failure_args,"
        "failure_residual");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(summary_line(r).find("G_NEG1 q=13") == 0);
  CHECK(summary_line(r).find("PASS") != std::string::npos);
}

TEST_CASE("failing scans keep at most ten witnesses") {
  const auto s = testing::modular(13);
  const auto r = scan(find_identity("INVERSION"), *s, kExhaustive);
  CHECK_FALSE(r.pass);
  CHECK(r.failures.size() == kMaxWitnesses);
  CHECK(r.checked - r.passed > kMaxWitnesses);
  for (const auto& w : r.failures) CHECK(w.residual != "0");
}

TEST_CASE("run_verification ordering, backends and seeds") {
  RunConfig cfg;
  cfg.qs = {5, 13};
  cfg.backends = {BackendKind::complex_float, BackendKind::modular_embed};
  const auto ids = select_identities("GREENE_T1");
  const auto reports = run_verification(ids, cfg);
  REQUIRE(reports.size() == 6);
  CHECK(reports[0].q == 5);
  CHECK(reports[0].backend == BackendKind::complex_float);
  CHECK(reports[1].backend == BackendKind::modular_embed);
  CHECK(reports[2].backend == BackendKind::modular_embed);
  CHECK(reports[1].ell != reports[2].ell);
  CHECK(reports[3].q == 13);
  for (const auto& r : reports) CHECK(r.pass);

  CHECK(derived_seed(1, "MT41", 81) == derived_seed(1, "MT41", 81));
  CHECK(derived_seed(1, "MT41", 81) != derived_seed(2, "MT41", 81));
  CHECK(derived_seed(1, "MT41", 81) != derived_seed(1, "MT42", 81));
  CHECK(derived_seed(1, "MT41", 81) != derived_seed(1, "MT41", 73));

  RunConfig strict;
  strict.qs = {7};
  strict.strict_congruence = true;
  CHECK_THROWS_AS(run_verification(select_identities("ONO8"), strict), ConstraintError);
  strict.strict_congruence = false;
  CHECK(run_verification(select_identities("ONO8"), strict).empty());
  CHECK_THROWS_AS(field_for_order(15), DomainError);
}
