#pragma once

#include "germstab/linalg.hpp"

#include <optional>
#include <vector>

namespace germstab {

/* A finite collection of subspaces of one ambient Q^n. General-position
   queries need at least two members; singleton families are still legal
   data (coordinate adaptation accepts them). */
struct SubspaceFamily {
    int ambient_dim;
    std::vector<Subspace> members;

    SubspaceFamily(int ambient_dim_, std::vector<Subspace> members_);
    int size() const { return static_cast<int>(members.size()); }
};

/* The four implemented characterizations of mutual transversality:
     direct    - Q = P_i + intersection of the others, for every i
     quotient  - the diagonal map Q -> direct sum of Q/P_i is surjective
     diagonal  - the diagonal embedding of Q is transverse to the direct
                 sum of the P_i inside the direct sum of s copies of Q
     translate - every tuple (v_1..v_s) admits z with v_i - z in P_i,
                 checked on a spanning set of tuples
   All four agree on every input. */
enum class GpMethod { direct, quotient, diagonal, translate };

bool gp_check(const SubspaceFamily& family, GpMethod method = GpMethod::direct);

/* z with v_i - z in P_i for all i, or nullopt. Always succeeds when the
   family is in general position; membership is verified exactly before
   returning. */
std::optional<Vec> find_common_translate(const SubspaceFamily& family,
                                         const std::vector<Vec>& vectors);

/* Invertible change of target coordinates taking every member of a family
   onto a coordinate subspace: in the new coordinates y' = L*y, member l is
   cut out by y'_i = 0 for i in index_sets[l] (0-based). */
struct CoordinateAdaptation {
    Mat change_of_basis;                         // L, acting y' = L*y
    std::vector<std::vector<int>> index_sets;    // I_l, pairwise disjoint
    std::vector<std::vector<int>> complements;   // {0..n-1} minus I_l
};

/* The inductive construction: at step l, extend the chosen linear forms by
   codim(P_l) forms vanishing on P_l; mutual transversality keeps the
   stacked forms independent. Requires general position for size >= 2;
   accepts a singleton family. Index sets come out as consecutive blocks
   starting at 0. */
CoordinateAdaptation adapt_coordinates(const SubspaceFamily& family);

/* Verifies the defining property of an adaptation against a family:
   L invertible, sets disjoint of the right sizes, and L maps each member
   exactly onto its coordinate subspace. Used as the postcondition check. */
bool adaptation_matches(const CoordinateAdaptation& adaptation, const SubspaceFamily& family);

}  // namespace germstab
