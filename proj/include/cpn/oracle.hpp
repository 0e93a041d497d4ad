#pragma once

#include "cpn/semantics.hpp"

namespace cpn {

/// Strong bisimilarity of two states, one from each LTS, computed by
/// signature-based partition refinement on the disjoint union. Actions are
/// matched by label string.
bool bisimilar(const Lts& a, const Lts& b, std::size_t state_a, std::size_t state_b);

/// Largest-bisimulation greatest fixpoint on the disjoint union. Quadratic;
/// kept as an independent oracle for the refinement implementation.
bool bisimilar_naive(const Lts& a, const Lts& b, std::size_t state_a, std::size_t state_b);

enum class IsoMode {
    /// States are compared by key: reachable fragments are equal when state
    /// key sets and labeled edge sets coincide. Right mode for restriction,
    /// which never renames states.
    StateKeys,
    /// Backtracking label-preserving bijection search; small LTSs only.
    General,
};

bool reachable_isomorphic(const Lts& a, const Lts& b, IsoMode mode = IsoMode::StateKeys);

}  // namespace cpn
