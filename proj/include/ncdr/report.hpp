#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ncdr/rational.hpp"

namespace ncdr {

// One exact comparison inside a verification suite.
struct IdentityCheck {
  std::string name;
  nlohmann::json where;
  Rational lhs;
  Rational rhs;
  bool pass() const { return lhs == rhs; }
};

struct CheckReport {
  std::string name;
  std::vector<IdentityCheck> checks;
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
  // Lists only failing checks unless include_passing is set.
  nlohmann::json to_json(bool include_passing = false) const;
};

}  // namespace ncdr
