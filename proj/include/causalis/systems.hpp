// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_SYSTEMS_HPP
#define CAUSALIS_SYSTEMS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace causalis {

/// A named finite-dimensional system (tensor factor).
struct SystemId {
  std::string name;
  Eigen::Index dim = 1;

  friend bool operator==(const SystemId& a, const SystemId& b) {
    return a.name == b.name && a.dim == b.dim;
  }
};

/// Ordered list of systems; the order is the tensor-factor order
/// (first system is the most significant index, row-major).
using SystemList = std::vector<SystemId>;

Eigen::Index total_dim(const SystemList& systems);

bool contains(const SystemList& systems, std::string_view name);

/// Index of a named system; throws std::invalid_argument if absent.
std::size_t index_of(const SystemList& systems, std::string_view name);

const SystemId& find_system(const SystemList& systems, std::string_view name);

/// True when no name occurs in both lists.
bool disjoint(const SystemList& a, const SystemList& b);

/// Throws if a name appears twice within the list.
void check_unique_names(const SystemList& systems);

/// Subset of `systems` whose names appear in `names`, keeping the order of
/// `systems`.
SystemList select(const SystemList& systems, const std::vector<std::string>& names);

/// Systems of `systems` whose names are not listed in `names`.
SystemList drop(const SystemList& systems, const std::vector<std::string>& names);

std::vector<std::string> names_of(const SystemList& systems);

SystemList concat(const SystemList& a, const SystemList& b);

/// Row-major strides: strides[i] = product of dims of systems after i.
std::vector<Eigen::Index> strides_of(const SystemList& systems);

/// Decompose a flat index into per-system digits (row-major).
void unrank(Eigen::Index flat, const std::vector<Eigen::Index>& strides,
            std::vector<Eigen::Index>& digits);

}  // namespace causalis

#endif
