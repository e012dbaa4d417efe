// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/systems.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace causalis {

Eigen::Index total_dim(const SystemList& systems) {
  Eigen::Index d = 1;
  for (const auto& s : systems) d *= s.dim;
  return d;
}

bool contains(const SystemList& systems, std::string_view name) {
  return std::any_of(systems.begin(), systems.end(),
                     [&](const SystemId& s) { return s.name == name; });
}

std::size_t index_of(const SystemList& systems, std::string_view name) {
  for (std::size_t i = 0; i < systems.size(); ++i)
    if (systems[i].name == name) return i;
  throw std::invalid_argument("unknown system label: " + std::string(name));
}

const SystemId& find_system(const SystemList& systems, std::string_view name) {
  return systems[index_of(systems, name)];
}

bool disjoint(const SystemList& a, const SystemList& b) {
  return std::none_of(a.begin(), a.end(),
                      [&](const SystemId& s) { return contains(b, s.name); });
}

void check_unique_names(const SystemList& systems) {
  std::set<std::string> seen;
  for (const auto& s : systems) {
    if (s.dim < 1) throw std::invalid_argument("system dim must be >= 1: " + s.name);
    if (!seen.insert(s.name).second)
      throw std::invalid_argument("duplicate system label: " + s.name);
  }
}

SystemList select(const SystemList& systems, const std::vector<std::string>& names) {
  SystemList out;
  for (const auto& s : systems)
    if (std::find(names.begin(), names.end(), s.name) != names.end()) out.push_back(s);
  return out;
}

SystemList drop(const SystemList& systems, const std::vector<std::string>& names) {
  SystemList out;
  for (const auto& s : systems)
    if (std::find(names.begin(), names.end(), s.name) == names.end()) out.push_back(s);
  return out;
}

std::vector<std::string> names_of(const SystemList& systems) {
  std::vector<std::string> out;
  out.reserve(systems.size());
  for (const auto& s : systems) out.push_back(s.name);
  return out;
}

SystemList concat(const SystemList& a, const SystemList& b) {
  SystemList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<Eigen::Index> strides_of(const SystemList& systems) {
  std::vector<Eigen::Index> strides(systems.size(), 1);
  for (std::size_t i = systems.size(); i-- > 1;)
    strides[i - 1] = strides[i] * systems[i].dim;
  return strides;
}

void unrank(Eigen::Index flat, const std::vector<Eigen::Index>& strides,
            std::vector<Eigen::Index>& digits) {
  digits.resize(strides.size());
  for (std::size_t i = 0; i < strides.size(); ++i) {
    digits[i] = flat / strides[i];
    flat %= strides[i];
  }
}

}  // namespace causalis
