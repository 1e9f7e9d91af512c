#pragma once

#include "germstab/adapt.hpp"

#include <optional>
#include <vector>

namespace germstab {

/* The reduced infinitesimal stability equations of an adapted multigerm,
   at one jet order. For germ l the equations read

     k in I_l:    sum_{i in L_l} (df_k/dx_i) u~_i  +  v~_k o f  =  w~_k
     k in Ibar_l: u~_{sigma_l(k)}              +  v~_k o f  =  w~_k

   The right-hand-side transform w -> w~ eliminates the Ibar-indexed
   unknowns of the full system; going back, a solution of the reduced
   system solves the full system up to an explicitly recorded multiple of
   the germ components (the term the reduction drops, an f*(m_q) element
   whenever v~ vanishes at the origin). */
struct ReducedSystem {
    AdaptedMultigerm adapted;
    int order = 0;

    /* d f_k / d x_i at the working order, for k in I_l and i in L_l,
       indexed [l][position of k in index_set(l)][position of i in
       free_indices(l)] */
    std::vector<std::vector<std::vector<Jet>>> free_partials;
    /* d f_k / d x_{sigma_l(j)} for k in I_l and j in Ibar_l, indexed
       [l][position of k in index_set(l)][position of j in complement(l)] */
    std::vector<std::vector<std::vector<Jet>>> sigma_partials;

    const MapGermJet& germ(int l) const { return adapted.base.germs.at(l); }
};

ReducedSystem reduce_system(const AdaptedMultigerm& adapted);

/* w~ from w with the constant shifts c_k = v_k(0):
     k in Ibar_l: w~_k = w_k
     k in I_l:    w~_k = w_k - sum_j (df_k/dx_sigma(j)) w_j
                          - c_k + sum_j c_j (df_k/dx_sigma(j))
   (sums over j in Ibar_l). The main pipeline uses c = 0 and accounts for
   the constants through the recorded drop term instead. */
std::vector<VectorFieldAlongGerm> transform_rhs(const ReducedSystem& sys,
                                                const std::vector<VectorFieldAlongGerm>& w,
                                                const Vec& c);

/* Left-hand side minus right-hand side of the reduced system for one
   germ; identically zero iff (u~, v~) solves it for w~. */
VectorFieldAlongGerm m7_residual(const ReducedSystem& sys, int l, const SourceVectorField& u_tilde,
                                 const TargetVectorField& v_tilde,
                                 const VectorFieldAlongGerm& w_tilde);

/* The term the reduction drops between the intermediate system and the
   reduced one: for k in I_l the jet sum_{j in Ibar_l}
   (df_k/dx_sigma(j)) * (v~_j o f), zero on Ibar components. An f*(m_q)C
   element whenever v~(0) = 0. */
VectorFieldAlongGerm reduction_drop_term(const ReducedSystem& sys, int l,
                                         const TargetVectorField& v_tilde);

/* Full solution data of one germ's own reduced system: all m source
   coefficient jets and all n target coefficient jets, with the w~ they
   solve. */
struct PerGermSolution {
    std::vector<Jet> a;  // m jets in the germ's source variables
    std::vector<Jet> b;  // n jets in the target variables
    VectorFieldAlongGerm rhs;
};

/* Exact coefficient-space solve of germ l's single-germ reduced system;
   nullopt when unsolvable at this order. b_k = 0 for k outside I_l and
   a_{sigma(k)} = w~_k by the Ibar equations. */
std::optional<PerGermSolution> solve_single_reduced(const ReducedSystem& sys, int l,
                                                    const VectorFieldAlongGerm& w_tilde);

/* exact check that (a, b) solves germ l's single-germ reduced system */
bool per_germ_solution_valid(const ReducedSystem& sys, int l, const PerGermSolution& sol);

struct ReducedSolution {
    std::vector<SourceVectorField> u_tilde;  // per germ
    TargetVectorField v_tilde;
};

/* The explicit assembly: v~_k = b_k of the germ owning k (zero outside
   every index set), u~_{sigma(k)} = w~_k - v~_k o f, u~_i = a_i on the
   free indices. Verifies the preconditions and the assembled multigerm
   system exactly. */
ReducedSolution solve_reduced(const ReducedSystem& sys,
                              const std::vector<PerGermSolution>& per_germ, int target_order);

struct BackSubstitution {
    std::vector<SourceVectorField> u;  // per germ
    TargetVectorField v;
    /* recorded drop terms: tf(u) + wf(v) - w = recorded, exactly */
    std::vector<VectorFieldAlongGerm> recorded;
};

/* Inverse of the elimination with c = 0: u agrees with u~, v with v~, and
   the exact defect against the full system is returned (and re-verified)
   as the recorded drop term. */
BackSubstitution back_substitute(const ReducedSystem& sys, const ReducedSolution& sol,
                                 const std::vector<VectorFieldAlongGerm>& w);

struct PipelineResult {
    std::vector<VectorFieldAlongGerm> w_tilde;
    std::vector<PerGermSolution> per_germ;
    ReducedSolution reduced;
    BackSubstitution back;
};

/* adapt -> reduce -> per-germ solve -> assemble -> back-substitute for a
   given right-hand side w; every step is verified exactly. */
PipelineResult solve_via_reduction(const ReducedSystem& sys,
                                   const std::vector<VectorFieldAlongGerm>& w);

}  // namespace germstab
