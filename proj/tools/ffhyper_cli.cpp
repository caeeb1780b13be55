#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "ffhyper/errors.hpp"
#include "ffhyper/identity.hpp"
#include "ffhyper/numtheory.hpp"
#include "ffhyper/report.hpp"
#include "ffhyper/run.hpp"

using namespace ffhyper;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw DomainError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::uint32_t> parse_q_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  for (const auto& item : split(s, ',')) {
    const std::int64_t v = parse_int(item);
    if (v < 3) throw DomainError("q = " + item + " is not an odd prime power");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) throw DomainError("empty q list");
  return out;
}

// Dual exponent or alias eps / phi / chi3 / chi4.
Char parse_char(const FieldCtx& f, const std::string& s) {
  if (s == "eps") return special_char(f, Special::eps);
  if (s == "phi") return special_char(f, Special::phi);
  if (s == "chi3") return special_char(f, Special::chi3);
  if (s == "chi4") return special_char(f, Special::chi4);
  return {parse_int(s), f.q() - 1};
}

std::vector<Char> parse_chars(const FieldCtx& f, const std::string& s) {
  std::vector<Char> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_char(f, item));
  return out;
}

// Element code in [0, q), a negative integer, or a fraction a/b of integers.
Elem parse_elem(const FieldCtx& f, const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos)
    return f.from_int(parse_int(s.substr(0, slash))) / f.from_int(parse_int(s.substr(slash + 1)));
  const std::int64_t v = parse_int(s);
  if (v >= 0 && v < static_cast<std::int64_t>(f.q())) return f.element(static_cast<std::uint32_t>(v));
  return f.from_int(v);
}

std::vector<BackendKind> parse_backends(const std::string& s) {
  if (s == "all") return {BackendKind::complex_float, BackendKind::modular_embed};
  return {parse_backend_kind(s)};
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file '" + path + "'");
  out << text;
}

void set_jobs(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

double budget_from_env(double fallback) {
  if (const char* env = std::getenv("FFHYPER_BUDGET")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw DomainError(std::string("FFHYPER_BUDGET is not a number: '") + env + "'");
    }
  }
  return fallback;
}

int cmd_field_info(std::uint32_t p, unsigned r) {
  const auto f = build_field(p, r);
  const std::uint32_t m = f->q() - 1;
  std::cout << "q = " << f->q() << " (p = " << f->p() << ", r = " << f->r() << ")\n";
  std::cout << "modulus: " << f->modulus_string() << "\n";
  std::cout << "generator: " << f->element_string(f->generator().code()) << " (code " << f->generator().code()
            << ")\n";
  std::cout << "character group order: " << m << "\n";
  std::cout << "character orders:";
  for (std::uint32_t d = 1; d <= m; ++d)
    if (m % d == 0) std::cout << ' ' << d;
  std::cout << "\n";
  std::cout << "phi = T^" << m / 2 << "\n";
  std::cout << "chi3: ";
  if (special_exists(*f, Special::chi3))
    std::cout << "available (T^" << special_char(*f, Special::chi3).k() << ")\n";
  else
    std::cout << "unavailable (3 does not divide q-1)\n";
  std::cout << "chi4: ";
  if (special_exists(*f, Special::chi4))
    std::cout << "available (T^" << special_char(*f, Special::chi4).k() << ")\n";
  else
    std::cout << "unavailable (4 does not divide q-1)\n";
  return 0;
}

struct EvalArgs {
  std::string family;
  std::uint32_t q = 0;
  std::string up;
  std::string low;
  std::string x;
  std::string y;
  std::string backend = "complex";
  std::uint64_t seed = 1;
};

int cmd_eval(const EvalArgs& a) {
  const auto field = field_for_order(a.q);
  SeriesSpec spec;
  spec.family = parse_family(a.family);
  spec.uppers = parse_chars(*field, a.up);
  spec.lowers = parse_chars(*field, a.low);
  spec.x = parse_elem(*field, a.x);
  if (!a.y.empty()) spec.y = parse_elem(*field, a.y);
  if (spec.family == Family::appell_F4) {
    // Appell defaults: A = B = C = C' = eps when not given.
    if (spec.uppers.empty()) spec.uppers = {Char::trivial(a.q - 1), Char::trivial(a.q - 1)};
    if (spec.lowers.empty()) spec.lowers = {Char::trivial(a.q - 1), Char::trivial(a.q - 1)};
    if (!spec.y) throw DomainError("appell needs --y");
  }
  for (const auto& ctx : contexts_for(a.q, parse_backends(a.backend), a.seed)) {
    const CycValue v = evaluate(*ctx, spec);
    std::cout << to_string(spec.family) << " q=" << a.q << ' ' << ctx->backend().describe() << ": " << v.to_string()
              << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string id;
  std::string qs;
  std::string backend = "modular";
  std::uint64_t seed = 1;
  std::string strategy = "auto";
  std::string format = "json";
  std::string out;
  int jobs = 0;
  double tol = kDefaultTolerance;
  double budget = kDefaultBudget;
  bool serial = false;
};

RunConfig make_config(const VerifyArgs& a) {
  RunConfig cfg;
  if (!a.qs.empty()) cfg.qs = parse_q_list(a.qs);
  cfg.backends = parse_backends(a.backend);
  cfg.seed = a.seed;
  cfg.strategy = Strategy::parse(a.strategy);
  if (!(a.tol > 0)) throw DomainError("tolerance must be positive");
  cfg.scan.tol = a.tol;
  cfg.scan.budget = a.budget;
  cfg.scan.exec = a.serial ? Exec::serial : Exec::parallel;
  return cfg;
}

int cmd_verify(const VerifyArgs& a) {
  if (a.format != "json" && a.format != "csv") throw DomainError("format must be json or csv");
  set_jobs(a.jobs);
  const auto ids = select_identities(a.id);
  RunConfig cfg = make_config(a);
  cfg.strict_congruence = ids.size() == 1 && ids.front()->id == a.id;
  for (std::uint32_t q : cfg.qs) field_for_order(q);
  const auto reports = run_verification(ids, cfg);
  bool ok = true;
  for (const auto& r : reports) {
    std::cerr << summary_line(r) << "\n";
    ok = ok && r.pass;
  }
  write_output(a.format == "json" ? reports_json(reports) : reports_csv(reports), a.out);
  return ok ? 0 : kExitFail;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_codes(const std::vector<std::uint32_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

int cmd_table(const VerifyArgs& a) {
  const IdentityDescriptor& d = find_identity(a.id);
  if (d.kind != IdentityKind::value)
    throw DomainError(d.id + " is a " + to_string(d.kind) + ", not a special value");
  RunConfig cfg = make_config(a);
  std::ostringstream os;
  os << "id,q,backend,chars,args,branch,lhs,rhs,residual,pass\n";
  bool ok = true;
  for (std::uint32_t q : cfg.qs) {
    check_congruence(d, q);
    for (const auto& ctx : contexts_for(q, cfg.backends, cfg.seed)) {
      for (const Params& p : admissible_params(d, *ctx, cfg.scan)) {
        const TabulatedValue v = tabulate_value(d, *ctx, p, cfg.scan);
        ok = ok && v.pass;
        os << d.id << ',' << q << ',' << to_string(ctx->backend().kind()) << ',' << join_codes(p.char_exponents())
           << ',' << join_codes(p.arg_codes()) << ',' << csv_escape(v.branch) << ',' << csv_escape(v.lhs.to_string())
           << ',' << csv_escape(v.rhs.to_string()) << ',' << csv_escape(v.residual) << ','
           << (v.pass ? "true" : "false") << "\n";
      }
    }
  }
  write_output(os.str(), a.out);
  return ok ? 0 : kExitFail;
}

int cmd_list() {
  std::cout << "id\tkind\tcharacters\targuments\tconstraint\tstatement\n";
  for (const auto& d : catalog()) {
    std::string chars, args;
    for (const auto& c : d.char_names) chars += (chars.empty() ? "" : ",") + c;
    for (const auto& x : d.arg_names) args += (args.empty() ? "" : ",") + x;
    std::cout << d.id << '\t' << to_string(d.kind) << '\t' << (chars.empty() ? "-" : chars) << '\t'
              << (args.empty() ? "-" : args) << '\t' << d.congruence.to_string() << '\t' << d.statement << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian hypergeometric series over finite fields: evaluation and identity verification"};
  app.require_subcommand(1);

  std::uint32_t fp = 0;
  unsigned fr = 1;
  auto* field_info = app.add_subcommand("field-info", "Describe F_q for q = p^r");
  field_info->add_option("p", fp, "characteristic")->required();
  field_info->add_option("r", fr, "degree")->required();

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate one series");
  eval->add_option("family", ev.family, "greene | mccarthy | fuselier | fuselier-p | appell")->required();
  eval->add_option("--q", ev.q, "field order")->required();
  eval->add_option("--up", ev.up, "upper characters (dual exponents or eps/phi/chi3/chi4), comma separated");
  eval->add_option("--low", ev.low, "lower characters, comma separated");
  eval->add_option("--x", ev.x, "argument: element code, negative integer or a/b")->required();
  eval->add_option("--y", ev.y, "second argument (appell)");
  eval->add_option("--backend", ev.backend, "complex | modular | all")->capture_default_str();
  eval->add_option("--seed", ev.seed, "modular prime seed")->capture_default_str();

  VerifyArgs va;
  va.budget = budget_from_env(kDefaultBudget);
  auto* verify = app.add_subcommand("verify", "Verify catalog identities");
  verify->add_option("id", va.id, "identity id, family prefix, or all")->required();
  verify->add_option("--q", va.qs, "comma-separated field orders (default suite when omitted)");
  verify->add_option("--backend", va.backend, "modular | complex | all")->capture_default_str();
  verify->add_option("--seed", va.seed, "seed for primes and sampling")->capture_default_str();
  verify->add_option("--strategy", va.strategy, "auto | exhaustive | random:N[:SEED]")->capture_default_str();
  verify->add_option("--format", va.format, "json | csv")->capture_default_str();
  verify->add_option("--out", va.out, "output path (stdout when omitted)");
  verify->add_option("--jobs", va.jobs, "worker threads (0 = OpenMP default)");
  verify->add_option("--tol", va.tol, "relative tolerance for the complex backend")->capture_default_str();
  verify->add_option("--budget", va.budget, "exhaustive budget in weighted instances (env FFHYPER_BUDGET)");
  verify->add_flag("--serial", va.serial, "use the serial reference kernels");

  VerifyArgs ta;
  ta.backend = "complex";
  auto* table = app.add_subcommand("table", "Tabulate a special-value identity as CSV");
  table->add_option("id", ta.id, "special-value identity id")->required();
  table->add_option("--q", ta.qs, "comma-separated field orders")->required();
  table->add_option("--backend", ta.backend, "complex | modular | all")->capture_default_str();
  table->add_option("--seed", ta.seed, "modular prime seed")->capture_default_str();
  table->add_option("--tol", ta.tol, "relative tolerance for the complex backend")->capture_default_str();
  table->add_option("--out", ta.out, "output path (stdout when omitted)");

  auto* list = app.add_subcommand("list", "List catalog identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*field_info) return cmd_field_info(fp, fr);
    if (*eval) return cmd_eval(ev);
    if (*verify) return cmd_verify(va);
    if (*table) return cmd_table(ta);
    if (*list) return cmd_list();
  } catch (const ConstraintError& e) {
    std::cerr << "constraint error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LookupError& e) {
    std::cerr << "lookup error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
