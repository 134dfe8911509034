#pragma once

#include <string>

#include <hyperg/json_io.hpp>

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(HYPERG_DATA_DIR) + "/" + name;
}

inline hyperg::Json load_data(const std::string& name) {
  return hyperg::load_json(data_path(name));
}

inline hyperg::Template load_template(const std::string& name) {
  return hyperg::template_from_json(load_data(name));
}

inline hyperg::Template explicit_template(const std::string& rel_name, int arity,
                                          const std::vector<std::string>& orbits) {
  hyperg::Template t;
  t.cls = hyperg::HypergraphClass::all(3);
  hyperg::Relation r;
  r.name = rel_name;
  r.arity = arity;
  for (const auto& s : orbits) r.explicit_members.push_back(hyperg::orbit_from_string(s));
  t.relations[rel_name] = std::move(r);
  return t;
}

}  // namespace testutil
