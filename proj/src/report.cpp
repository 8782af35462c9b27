#include "csl/report.hpp"

#include <sstream>

#include "csl/version.hpp"

namespace csl {

using nlohmann::ordered_json;

ordered_json flag_to_json(const Flag& f) {
  ordered_json out;
  if (!f.applicable) {
    out["value"] = nullptr;
    out["note"] = f.witness;
    return out;
  }
  out["value"] = f.value;
  if (!f.value) out["witness"] = f.witness;
  return out;
}

ordered_json audit_to_json(const AuditReport& r) {
  ordered_json out;
  out["tool_version"] = kToolVersion;
  out["subject"] = r.subject;
  out["graph"] = r.graph_name;
  ordered_json flags;
  for (auto [name, flag] : r.flags()) flags[name] = flag_to_json(*flag);
  out["flags"] = std::move(flags);
  ordered_json ledger = ordered_json::array();
  for (const LedgerEntry& e : r.ledger) {
    ordered_json je;
    je["name"] = e.name;
    je["hypotheses_met"] = e.hypotheses_met;
    if (e.conclusion_observed)
      je["conclusion_observed"] = *e.conclusion_observed;
    else
      je["conclusion_observed"] = nullptr;
    je["consistent"] = e.consistent;
    je["note"] = e.note;
    ledger.push_back(std::move(je));
  }
  out["ledger"] = std::move(ledger);
  out["consistent"] = r.consistent;
  return out;
}

ordered_json scm_audit_to_json(const ScmAuditReport& r) {
  ordered_json out;
  out["positivity"] = flag_to_json(r.positivity);
  out["non_constant_fibers"] = flag_to_json(r.non_constant_fibers);
  out["noise_injective"] = flag_to_json(r.noise_injective);
  out["noise_surjective"] = flag_to_json(r.noise_surjective);
  ordered_json uni;
  for (auto& [label, flag] : r.noise_uniform) uni[label] = flag;
  out["noise_uniform"] = std::move(uni);
  out["model_audit"] = audit_to_json(r.base);
  return out;
}

namespace {

std::string flag_text(const std::string& name, const Flag& f) {
  std::ostringstream os;
  os << "  " << name << ": ";
  if (!f.applicable)
    os << "n/a (" << f.witness << ")";
  else if (f.value)
    os << "yes";
  else
    os << "NO  [" << f.witness << "]";
  os << '\n';
  return os.str();
}

}  // namespace

std::string audit_to_text(const AuditReport& r) {
  std::ostringstream os;
  os << "audit of " << (r.subject.empty() ? "model" : r.subject)
     << " against graph: " << r.graph_name << '\n';
  for (auto [name, flag] : r.flags()) os << flag_text(name, *flag);
  os << "theorem ledger:\n";
  for (const LedgerEntry& e : r.ledger) {
    os << "  " << e.name << ": ";
    if (!e.hypotheses_met)
      os << "hypotheses not met (n/a)";
    else if (*e.conclusion_observed)
      os << "hypotheses met, conclusion observed";
    else
      os << "hypotheses met, CONCLUSION NOT OBSERVED";
    os << '\n';
  }
  os << (r.consistent ? "consistent: yes" : "consistent: NO") << '\n';
  return os.str();
}

std::string scm_audit_to_text(const ScmAuditReport& r) {
  std::ostringstream os;
  os << "scm conditions:\n";
  os << flag_text("positivity", r.positivity);
  os << flag_text("non_constant_fibers", r.non_constant_fibers);
  os << flag_text("noise_injective", r.noise_injective);
  os << flag_text("noise_surjective", r.noise_surjective);
  os << "  noise_uniform:";
  for (auto& [label, flag] : r.noise_uniform)
    os << ' ' << label << '=' << (flag ? "yes" : "no");
  os << '\n';
  os << audit_to_text(r.base);
  return os.str();
}

ordered_json fixture_result_to_json(const FixtureResult& r) {
  ordered_json out;
  out["tool_version"] = kToolVersion;
  out["id"] = r.fixture.id;
  out["description"] = r.fixture.description;
  ordered_json expected;
  for (const ExpectedFlag& e : r.fixture.manifest) {
    ordered_json je;
    je["value"] = e.value;
    je["source"] = e.source == FlagSource::Asserted ? "asserted" : "derived";
    expected[e.name] = std::move(je);
  }
  out["expected"] = std::move(expected);
  ordered_json actual;
  for (auto& [name, value] : r.actual) actual[name] = value;
  out["actual"] = std::move(actual);
  ordered_json diffs = ordered_json::array();
  for (const FixtureDiff& d : r.diffs) {
    ordered_json jd;
    jd["name"] = d.name;
    jd["expected"] = d.expected;
    jd["actual"] = d.actual;
    jd["source"] = d.source == FlagSource::Asserted ? "asserted" : "derived";
    diffs.push_back(std::move(jd));
  }
  out["diffs"] = std::move(diffs);
  out["pass"] = r.diffs.empty();
  return out;
}

std::string fixture_result_to_text(const FixtureResult& r) {
  std::ostringstream os;
  os << "fixture " << r.fixture.id << ": " << r.fixture.description << '\n';
  for (auto& [name, value] : r.actual) {
    os << "  " << name << " = " << (value ? "yes" : "no");
    for (const ExpectedFlag& e : r.fixture.manifest)
      if (e.name == name) {
        os << "  (expected " << (e.value ? "yes" : "no") << ", "
           << (e.source == FlagSource::Asserted ? "asserted" : "derived")
           << ")";
        if (e.value != value) os << "  MISMATCH";
      }
    os << '\n';
  }
  os << (r.diffs.empty() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace csl
