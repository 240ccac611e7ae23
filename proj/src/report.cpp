#include "ncdr/report.hpp"

#include <algorithm>

namespace ncdr {

std::size_t CheckReport::failures() const {
  return std::count_if(checks.begin(), checks.end(), [](const IdentityCheck& c) { return !c.pass(); });
}

nlohmann::json CheckReport::to_json(bool include_passing) const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    if (c.pass() && !include_passing) continue;
    list.push_back({{"name", c.name}, {"where", c.where}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)},
                    {"pass", c.pass()}});
  }
  return {{"suite", name},
          {"checkedCount", checks.size()},
          {"failureCount", failures()},
          {include_passing ? "checks" : "mismatches", list}};
}

}  // namespace ncdr
