#pragma once

#include <string>

#include "json.hpp"

#include "csl/audit.hpp"
#include "csl/fixtures.hpp"

namespace csl {

/// JSON report schema: see docs/report-schema.md. Field names are stable.
nlohmann::ordered_json flag_to_json(const Flag& f);
nlohmann::ordered_json audit_to_json(const AuditReport& r);
nlohmann::ordered_json scm_audit_to_json(const ScmAuditReport& r);
nlohmann::ordered_json fixture_result_to_json(const FixtureResult& r);

std::string audit_to_text(const AuditReport& r);
std::string scm_audit_to_text(const ScmAuditReport& r);
std::string fixture_result_to_text(const FixtureResult& r);

}  // namespace csl
