#pragma once

#include "germstab/general_position.hpp"
#include "germstab/stability.hpp"

#include <vector>

namespace germstab {

/* A multigerm rewritten in normal-form coordinates: after an invertible
   target change each stratum tangent is a coordinate subspace, and each
   germ component indexed by the complement of its index set is exactly a
   source coordinate jet.

   For germ l with index set I_l and complement Ibar_l (both 0-based target
   indices), sigma_l : Ibar_l -> source variables is injective and
   component k equals x_{sigma_l(k)} for every k in Ibar_l; free_indices[l]
   lists the source variables not hit by sigma_l. */
struct AdaptedMultigerm {
    MultigermConfig base;             // germs and strata in the new coordinates
    CoordinateAdaptation adaptation;  // target-side change y' = L y
    /* aligned with adaptation.complements[l] */
    std::vector<std::vector<int>> sigma;
    std::vector<std::vector<int>> free_indices;
    /* source change phi_l with base germ = L o (original f_l) o phi_l */
    std::vector<MapGermJet> source_changes;

    const std::vector<int>& index_set(int l) const { return adaptation.index_sets.at(l); }
    const std::vector<int>& complement(int l) const { return adaptation.complements.at(l); }
    /* sigma_l(k) for a target index k in complement(l) */
    int sigma_of(int l, int k) const;
};

/* Target coordinate adaptation followed by per-germ source changes built
   order by order (jet-level implicit function theorem). Preconditions:
   strata present on every germ, in general position when s >= 2, and for
   each germ the differentials of its complement components independent.
   The returned structure satisfies the normal-form invariants exactly;
   this is verified before returning. */
AdaptedMultigerm adapt_multigerm(const MultigermConfig& config);

/* Exact check of all normal-form invariants. */
bool adapted_invariants_hold(const AdaptedMultigerm& adapted);

}  // namespace germstab
