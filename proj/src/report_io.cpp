#include "ffhyper/report.hpp"

#include <sstream>

#include "json.hpp"

namespace ffhyper {

namespace {

using nlohmann::ordered_json;

ordered_json params_json(const Params& p) {
  return {{"chars", p.char_exponents()}, {"args", p.arg_codes()}};
}

ordered_json to_json(const VerificationReport& r) {
  ordered_json j;
  j["id"] = r.id;
  j["q"] = r.q;
  j["backend"] = to_string(r.backend);
  if (r.ell != 0) j["ell"] = r.ell;
  j["strategy"] = r.strategy;
  j["checked"] = r.checked;
  j["passed"] = r.passed;
  j["skipped"] = r.skipped;
  j["errors"] = r.errors;
  j["pass"] = r.pass;
  if (r.params) {
    j["params"] = params_json(*r.params);
    j["admissible"] = r.admissible;
    j["residual"] = r.residual;
    j["branch"] = r.branch;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
  }
  j["branches"] = ordered_json::object();
  for (const auto& [name, count] : r.branches) j["branches"][name] = count;
  j["failures"] = ordered_json::array();
  for (const auto& w : r.failures) {
    ordered_json f = params_json(w.params);
    f["residual"] = w.residual;
    f["branch"] = w.branch;
    f["lhs"] = w.lhs;
    f["rhs"] = w.rhs;
    j["failures"].push_back(std::move(f));
  }
  return j;
}

std::string join(const std::vector<std::uint32_t>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

// Quote a CSV field when it contains a delimiter or quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_json(const VerificationReport& r) { return to_json(r).dump(2); }

std::string reports_json(const std::vector<VerificationReport>& reports) {
  ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["reports"] = ordered_json::array();
  for (const auto& r : reports) doc["reports"].push_back(to_json(r));
  return doc.dump(2) + "\n";
}

std::string csv_header() {
  return "schema,id,q,backend,ell,strategy,checked,passed,skipped,errors,pass,branches,"
         "failure_chars,failure_args,failure_residual";
}

std::string report_csv_row(const VerificationReport& r) {
  std::ostringstream os;
  std::string branches;
  for (const auto& [name, count] : r.branches) branches += (branches.empty() ? "" : ";") + name + "=" + std::to_string(count);
  os << kReportSchema << ',' << csv_field(r.id) << ',' << r.q << ',' << to_string(r.backend) << ',' << r.ell << ','
     << csv_field(r.strategy) << ',' << r.checked << ',' << r.passed << ',' << r.skipped << ',' << r.errors << ','
     << (r.pass ? "true" : "false") << ',' << csv_field(branches) << ',';
  if (!r.failures.empty()) {
    const Witness& w = r.failures.front();
    os << join(w.params.char_exponents(), ';') << ',' << join(w.params.arg_codes(), ';') << ','
       << csv_field(w.residual);
  } else {
    os << ",,";
  }
  return os.str();
}

std::string reports_csv(const std::vector<VerificationReport>& reports) {
  std::string out = csv_header() + "\n";
  for (const auto& r : reports) out += report_csv_row(r) + "\n";
  return out;
}

std::string summary_line(const VerificationReport& r) {
  std::ostringstream os;
  os << r.id << " q=" << r.q << ' ' << to_string(r.backend);
  if (r.ell) os << "(ell=" << r.ell << ')';
  os << ' ' << r.strategy << ' ' << r.passed << '/' << r.checked << " passed, " << r.skipped << " skipped "
     << (r.pass ? "PASS" : "FAIL");
  return os.str();
}

}  // namespace ffhyper
