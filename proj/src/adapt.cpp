#include "germstab/adapt.hpp"

#include "germstab/errors.hpp"

#include <algorithm>

namespace germstab {

int AdaptedMultigerm::sigma_of(int l, int k) const {
    const auto& comp = complement(l);
    for (std::size_t t = 0; t < comp.size(); ++t)
        if (comp[t] == k)
            return sigma.at(l).at(t);
    throw argument_error("sigma_of: target index not in the complement set");
}

namespace {

/* Strata that are already coordinate subspaces with pairwise disjoint
   vanishing sets keep the identity target change, so catalog normal forms
   pass through unchanged. */
std::optional<CoordinateAdaptation> identity_adaptation(const SubspaceFamily& family) {
    CoordinateAdaptation out;
    const int n = family.ambient_dim;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const Subspace& p : family.members) {
        std::vector<int> zero_cols;
        for (int j = 0; j < n; ++j) {
            bool all_zero = true;
            for (Eigen::Index r = 0; r < p.basis().rows() && all_zero; ++r)
                all_zero = p.basis()(r, j) == 0;
            if (all_zero)
                zero_cols.push_back(j);
        }
        if (static_cast<int>(zero_cols.size()) != p.codim())
            return std::nullopt;
        for (int j : zero_cols) {
            if (used[static_cast<std::size_t>(j)])
                return std::nullopt;
            used[static_cast<std::size_t>(j)] = true;
        }
        out.index_sets.push_back(std::move(zero_cols));
    }
    out.change_of_basis = Mat::Identity(n, n);
    for (const auto& set : out.index_sets) {
        std::vector<int> comp;
        for (int j = 0; j < n; ++j)
            if (std::find(set.begin(), set.end(), j) == set.end())
                comp.push_back(j);
        out.complements.push_back(std::move(comp));
    }
    return out;
}

/* Linear part of a jet component as a row vector. */
Vec linear_row(const Jet& jet) {
    Vec row = Vec::Zero(jet.num_vars());
    for (int j = 0; j < jet.num_vars(); ++j)
        row(j) = jet.coeff(MultiIndex::unit(jet.num_vars(), j));
    return row;
}

/* homogeneous degree-d part */
Jet homogeneous_part(const Jet& jet, int d) {
    Jet out(jet.num_vars(), jet.order());
    for (const auto& [mi, c] : jet.terms())
        if (mi.degree() == d)
            out.set_coeff(mi, c);
    return out;
}

Mat inverse(const Mat& a) {
    const Eigen::Index n = a.rows();
    Mat aug(n, 2 * n);
    aug.leftCols(n) = a;
    aug.rightCols(n) = Mat::Identity(n, n);
    RrefResult red = rref(std::move(aug));
    if (red.rank != n)
        throw argument_error("inverse: matrix is singular");
    return red.r.rightCols(n);
}

}  // namespace

AdaptedMultigerm adapt_multigerm(const MultigermConfig& config) {
    const int n = config.target_dim;
    const int s = config.size();
    const int order = config.order();

    std::vector<Subspace> members;
    for (int l = 0; l < s; ++l) {
        if (!config.strata[l])
            throw argument_error("adapt_multigerm: germ '" + config.labels[l] +
                                 "' is missing stratum data");
        members.push_back(*config.strata[l]);
    }
    SubspaceFamily family(n, members);
    if (s >= 2 && !gp_check(family))
        throw precondition_error("adapt_multigerm: strata are not in general position");

    AdaptedMultigerm out;
    if (auto ident = identity_adaptation(family))
        out.adaptation = std::move(*ident);
    else
        out.adaptation = adapt_coordinates(family);

    // Target change, then strata become coordinate subspaces.
    MapGermJet target_linear = linear_germ(out.adaptation.change_of_basis, order);
    out.base = config;
    for (int l = 0; l < s; ++l) {
        out.base.germs[l] = map_compose(target_linear, config.germs[l]);
        Mat rows = Mat::Zero(static_cast<int>(out.adaptation.complements[l].size()), n);
        for (std::size_t t = 0; t < out.adaptation.complements[l].size(); ++t)
            rows(static_cast<Eigen::Index>(t), out.adaptation.complements[l][t]) = 1;
        out.base.strata[l] = Subspace::span_of_rows(rows);
    }

    // Per-germ source change: make the complement components coordinate
    // jets, degree by degree.
    for (int l = 0; l < s; ++l) {
        const MapGermJet& f = out.base.germs[l];
        const int m = f.source_dim();
        const std::vector<int>& comp = out.adaptation.complements[l];
        const int t = static_cast<int>(comp.size());
        if (t > m)
            throw precondition_error(
                "adapt_multigerm: germ '" + config.labels[l] +
                "' has fewer source variables than stratum directions; stratum data inconsistent");

        Mat jac(t, m);
        for (int r = 0; r < t; ++r)
            jac.row(r) = linear_row(f.component(comp[r])).transpose();
        RrefResult red = rref(jac);
        if (red.rank != t)
            throw precondition_error(
                "adapt_multigerm: differentials of the complement components of germ '" +
                config.labels[l] + "' are dependent; germ/stratum data inconsistent");

        std::vector<int> sig(red.pivot_cols.begin(), red.pivot_cols.end());
        Mat jac_sigma(t, t);
        for (int r = 0; r < t; ++r)
            for (int c = 0; c < t; ++c)
                jac_sigma(r, c) = jac(r, sig[c]);
        Mat jac_sigma_inv = inverse(jac_sigma);

        MapGermJet phi = MapGermJet::identity(m, order);
        for (int d = 1; d <= order; ++d) {
            MapGermJet composed = map_compose(f, phi);
            // Defect of degree d on the complement components.
            std::vector<Jet> defect;
            bool any = false;
            for (int r = 0; r < t; ++r) {
                Jet g = composed.component(comp[r]);
                g -= Jet::coordinate(m, order, sig[r]);
                Jet part = homogeneous_part(g, d);
                any = any || !part.is_zero();
                defect.push_back(std::move(part));
            }
            if (!any)
                continue;
            // Correct the sigma components of phi: jac_sigma * delta = -defect.
            for (int c = 0; c < t; ++c) {
                Jet delta(m, order);
                for (int r = 0; r < t; ++r) {
                    if (jac_sigma_inv(c, r) == 0)
                        continue;
                    delta -= jac_sigma_inv(c, r) * defect[r];
                }
                if (!delta.is_zero())
                    phi.set_component(sig[c], phi.component(sig[c]) + delta);
            }
        }

        MapGermJet adapted_germ = map_compose(f, phi);
        for (int r = 0; r < t; ++r) {
            if (!(adapted_germ.component(comp[r]) == Jet::coordinate(m, order, sig[r])))
                throw precondition_error(
                    "adapt_multigerm: source normalization did not converge for germ '" +
                    config.labels[l] + "'");
        }

        out.base.germs[l] = adapted_germ;
        out.sigma.push_back(sig);
        std::vector<int> free_vars;
        for (int i = 0; i < m; ++i)
            if (std::find(sig.begin(), sig.end(), i) == sig.end())
                free_vars.push_back(i);
        out.free_indices.push_back(std::move(free_vars));
        out.source_changes.push_back(std::move(phi));
    }

    if (!adapted_invariants_hold(out))
        throw precondition_error("adapt_multigerm: postcondition verification failed");
    return out;
}

bool adapted_invariants_hold(const AdaptedMultigerm& adapted) {
    const MultigermConfig& cfg = adapted.base;
    const int n = cfg.target_dim;
    if (static_cast<int>(adapted.adaptation.index_sets.size()) != cfg.size())
        return false;
    std::vector<bool> used_target(static_cast<std::size_t>(n), false);
    for (int l = 0; l < cfg.size(); ++l) {
        const auto& iset = adapted.index_set(l);
        const auto& comp = adapted.complement(l);
        if (static_cast<int>(iset.size() + comp.size()) != n)
            return false;
        for (int k : iset) {
            if (k < 0 || k >= n || used_target[static_cast<std::size_t>(k)])
                return false;
            used_target[static_cast<std::size_t>(k)] = true;
        }
        const MapGermJet& f = cfg.germs[l];
        const int m = f.source_dim();
        const auto& sig = adapted.sigma.at(l);
        if (sig.size() != comp.size())
            return false;
        // sigma injective, complement components are coordinate jets
        std::vector<bool> hit(static_cast<std::size_t>(m), false);
        for (std::size_t t = 0; t < comp.size(); ++t) {
            int sv = sig[t];
            if (sv < 0 || sv >= m || hit[static_cast<std::size_t>(sv)])
                return false;
            hit[static_cast<std::size_t>(sv)] = true;
            if (!(f.component(comp[t]) == Jet::coordinate(m, f.order(), sv)))
                return false;
        }
        // free indices partition the remaining source variables
        const auto& free_vars = adapted.free_indices.at(l);
        std::vector<bool> seen = hit;
        for (int i : free_vars) {
            if (i < 0 || i >= m || seen[static_cast<std::size_t>(i)])
                return false;
            seen[static_cast<std::size_t>(i)] = true;
        }
        for (bool b : seen)
            if (!b)
                return false;
        // stratum is the coordinate subspace on the complement indices
        if (!cfg.strata[l])
            return false;
        Mat rows = Mat::Zero(static_cast<int>(comp.size()), n);
        for (std::size_t t = 0; t < comp.size(); ++t)
            rows(static_cast<Eigen::Index>(t), comp[t]) = 1;
        if (!(*cfg.strata[l] == Subspace::span_of_rows(rows)))
            return false;
    }
    return true;
}

}  // namespace germstab
