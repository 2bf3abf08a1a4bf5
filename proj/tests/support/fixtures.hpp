#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "apg/io.hpp"

namespace apgtest {

inline std::string fixture_path(const std::string& name) {
  return std::string(APG_FIXTURES_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline apg::Graph load_graph(const std::string& name) {
  return apg::read_graph(slurp(fixture_path(name)));
}

inline apg::GraphPtr load_shared(const std::string& name) {
  return apg::share(load_graph(name));
}

inline const char* const kGraphFixtures[] = {
    "vertices.apg", "edges.apg",  "names.apg",  "plates1.apg",       "plates2.apg",
    "trips.apg",    "knows.apg",  "aliases.apg", "driver_status.apg", "tags.apg",
    "properties.apg", "mapping_target.apg",
};

}  // namespace apgtest
