#pragma once

#include <map>
#include <string>
#include <vector>

#include "iclsc/ground.hpp"

namespace icl {

struct AcyclicityResult {
  bool acyclic = false;
  /// Witnessing level map over the grounded atoms (only when acyclic).
  std::map<std::string, int> levels;
  /// One witness cycle of atom strings (only when not acyclic).
  std::vector<std::string> cycle;
};

/// Checks acyclicity of the ground dependency graph restricted to atoms
/// whose situation argument has do-depth <= horizon. Situations are sampled
/// along per-action chains built from the ground actions; bodies whose
/// situations stay at or below their head's depth make this sufficient for
/// situation calculus programs.
AcyclicityResult checkAcyclic(const Program& program, int horizon,
                              const std::vector<Term>& groundActions = {},
                              const Theory* theory = nullptr);

AcyclicityResult checkAcyclic(const Theory& theory, int horizon);

}  // namespace icl
