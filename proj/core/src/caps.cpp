#include "fusswalk/caps.hpp"

#include <cstdlib>

namespace fusswalk {

const Caps& caps() {
  static const Caps instance = [] {
    Caps c;
    if (const char* env = std::getenv("FUSSWALK_MAX_N")) {
      int v = std::atoi(env);
      if (v > 0) {
        c.enumeration = v;
        c.matrix = v;
        c.eigen = v;
        c.tv = v;
        c.census = v;
      }
    }
    return c;
  }();
  return instance;
}

}  // namespace fusswalk
