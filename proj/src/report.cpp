#include "tksub/report.hpp"

#include <algorithm>

namespace tksub {

bool ValidationReport::passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.passed; });
}

void ValidationReport::check(std::string id, bool ok, std::string witness) {
  clauses.push_back({std::move(id), ok, ok ? std::string() : std::move(witness)});
}

void ValidationReport::absorb(const std::string& prefix, const ValidationReport& inner) {
  for (const ClauseResult& c : inner.clauses) clauses.push_back({prefix + c.id, c.passed, c.witness});
}

std::string ValidationReport::failed_ids() const {
  std::string out;
  for (const ClauseResult& c : clauses) {
    if (c.passed) continue;
    if (!out.empty()) out += ",";
    out += c.id;
  }
  return out;
}

}  // namespace tksub
