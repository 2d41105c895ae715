#pragma once

#include <string>
#include <vector>

namespace tksub {

struct ClauseResult {
  std::string id;
  bool passed = false;
  std::string witness;  // empty when passed
};

struct ValidationReport {
  std::vector<ClauseResult> clauses;

  bool passed() const;
  void check(std::string id, bool ok, std::string witness = {});
  void absorb(const std::string& prefix, const ValidationReport& inner);
  // Ids of the failed clauses, comma separated.
  std::string failed_ids() const;
};

}  // namespace tksub
