// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_CHANNELS_HPP
#define CAUSALIS_CHANNELS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "causalis/labeled_operator.hpp"

namespace causalis {

/// Choi representative of a linear map, in the transposed convention:
/// M = [(I x M)(|phi+><phi+|)]^T with the transposition taken in the
/// computational basis. The operator lives on [in..., out...].
struct ChoiOperator {
  SystemList in_systems;
  SystemList out_systems;
  LabeledOperator op;

  double tp_residual() const;
  bool is_cp(double tol = 1e-10) const;
  bool is_tp(double tol = 1e-10) const { return tp_residual() <= tol; }
};

/// Choi operator of the CP map with the given Kraus operators. Each Kraus
/// operator maps the (common) column systems to the row systems; empty
/// registries model trivial (dim-1) input or output.
ChoiOperator choi_from_map(const std::vector<LabeledOperator>& kraus);

ChoiOperator identity_choi(const SystemList& in, const SystemList& out);

/// Action of the map on a state over the input systems.
LabeledOperator apply_via_choi(const ChoiOperator& c, const LabeledOperator& rho);

/// Link composition over the shared systems: contracts the named systems
/// (with a partial transpose on the shared block, as the convention
/// requires) and returns the Choi operator of the composite.
ChoiOperator link_compose(const ChoiOperator& a, const ChoiOperator& b,
                          const std::vector<std::string>& shared);

/// Random CPTP channel: random isometry into out x env followed by an
/// environment trace.
ChoiOperator random_cptp(const SystemList& in, const SystemList& out,
                         Eigen::Index env_dim, std::uint64_t seed);

/// Collection of CP maps labeled by outcome; their sum must be TP.
struct Instrument {
  std::string party;
  std::vector<std::pair<std::string, ChoiOperator>> outcomes;

  ChoiOperator total() const;
};

/// Seeded random instrument with `n_outcomes` CP branches summing to a
/// random CPTP channel.
Instrument random_instrument(const std::string& party, const SystemList& in,
                             const SystemList& out, int n_outcomes,
                             std::uint64_t seed);

}  // namespace causalis

#endif
