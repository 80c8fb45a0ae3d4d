#pragma once

#include <json.hpp>

#include <fstream>
#include <string>

#include "fusswalk/dyck.hpp"
#include "fusswalk/ncst.hpp"

namespace fixtures {

inline const nlohmann::json& data() {
  static const nlohmann::json j = [] {
    std::ifstream in(std::string(FUSSWALK_TEST_DATA_DIR) +
                     "/example_fixtures.json");
    nlohmann::json parsed;
    in >> parsed;
    return parsed;
  }();
  return j;
}

inline fusswalk::DyckPath path(const char* key) {
  return fusswalk::DyckPath::parse(data().at(key).get<std::string>());
}

inline fusswalk::Ncst tree(const char* key) {
  return fusswalk::Ncst::parse(data().at(key).get<std::string>());
}

}  // namespace fixtures
