#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tausynth/net.hpp"
#include "tausynth/region.hpp"
#include "tausynth/transition_system.hpp"

namespace tausynth {

// Isomorphism over states with events identified pointwise (both systems must
// have the same event alphabet).  Both inputs are deterministic and reachable,
// so the only candidate is the simulation map grown by paired traversal from
// the two initial states; it is returned iff it is an edge-preserving
// bijection in both directions.
struct IsoResult {
  std::optional<std::vector<int>> mapping;  // a-state index -> b-state index
  std::string reason;                       // set when mapping is absent
};

IsoResult isomorphic(const TransitionSystem& a, const TransitionSystem& b);

// End-to-end certificate check for a claimed d-restricted admissible set.
struct CertificateReport {
  std::vector<int> invalid_regions;          // indices into the region list
  std::vector<int> over_budget_regions;      // restriction_count > d
  std::vector<SeparationAtom> unsolved_atoms;
  bool isomorphic = false;
  std::string iso_reason;
  bool accepted = false;
};

CertificateReport check_certificate(const TransitionSystem& ts, const NetType& type, int d,
                                    const std::vector<Region>& regions);

}  // namespace tausynth
