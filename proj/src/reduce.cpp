#include "germstab/reduce.hpp"

#include "germstab/errors.hpp"

#include <algorithm>
#include <map>

namespace germstab {

ReducedSystem reduce_system(const AdaptedMultigerm& adapted) {
    if (!adapted_invariants_hold(adapted))
        throw precondition_error("reduce_system: adapted multigerm invariants do not hold");
    ReducedSystem sys;
    sys.adapted = adapted;
    sys.order = adapted.base.order();
    const int s = adapted.base.size();
    for (int l = 0; l < s; ++l) {
        const MapGermJet& f = adapted.base.germs[l];
        const auto& iset = adapted.index_set(l);
        const auto& comp = adapted.complement(l);
        const auto& free_vars = adapted.free_indices[l];
        std::vector<std::vector<Jet>> fp, sp;
        for (int k : iset) {
            std::vector<Jet> row_free, row_sigma;
            for (int i : free_vars)
                row_free.push_back(jet_partial(f.component(k), i));
            for (std::size_t t = 0; t < comp.size(); ++t)
                row_sigma.push_back(jet_partial(f.component(k), adapted.sigma[l][t]));
            fp.push_back(std::move(row_free));
            sp.push_back(std::move(row_sigma));
        }
        sys.free_partials.push_back(std::move(fp));
        sys.sigma_partials.push_back(std::move(sp));
    }
    return sys;
}

std::vector<VectorFieldAlongGerm> transform_rhs(const ReducedSystem& sys,
                                                const std::vector<VectorFieldAlongGerm>& w,
                                                const Vec& c) {
    const MultigermConfig& cfg = sys.adapted.base;
    const int n = cfg.target_dim;
    if (static_cast<int>(w.size()) != cfg.size())
        throw argument_error("transform_rhs: one field per germ required");
    if (c.rows() != n)
        throw argument_error("transform_rhs: constant vector has wrong size");

    std::vector<VectorFieldAlongGerm> out;
    for (int l = 0; l < cfg.size(); ++l) {
        const int m = cfg.germs[l].source_dim();
        if (static_cast<int>(w[l].components.size()) != n)
            throw argument_error("transform_rhs: field has wrong number of components");
        VectorFieldAlongGerm wt = VectorFieldAlongGerm::zero(m, n, sys.order);
        const auto& iset = sys.adapted.index_set(l);
        const auto& comp = sys.adapted.complement(l);
        for (int k : comp)
            wt.components[k] = w[l].components[k].truncated(sys.order);
        for (std::size_t kt = 0; kt < iset.size(); ++kt) {
            int k = iset[kt];
            Jet acc = w[l].components[k].truncated(sys.order);
            for (std::size_t jt = 0; jt < comp.size(); ++jt) {
                const Jet& partial = sys.sigma_partials[l][kt][jt];
                acc -= jet_mul(partial, w[l].components[comp[jt]].truncated(sys.order));
                if (c(comp[jt]) != 0)
                    acc += c(comp[jt]) * partial;
            }
            if (c(k) != 0)
                acc -= Jet::constant(m, sys.order, c(k));
            wt.components[k] = acc;
        }
        out.push_back(std::move(wt));
    }
    return out;
}

namespace {

Jet compose_target(const Jet& target_jet, const MapGermJet& f) {
    return jet_compose(target_jet, f);
}

}  // namespace

VectorFieldAlongGerm m7_residual(const ReducedSystem& sys, int l, const SourceVectorField& u_tilde,
                                 const TargetVectorField& v_tilde,
                                 const VectorFieldAlongGerm& w_tilde) {
    const MultigermConfig& cfg = sys.adapted.base;
    const int n = cfg.target_dim;
    const MapGermJet& f = cfg.germs[l];
    const int m = f.source_dim();
    if (static_cast<int>(u_tilde.components.size()) != m ||
        static_cast<int>(v_tilde.components.size()) != n ||
        static_cast<int>(w_tilde.components.size()) != n)
        throw argument_error("m7_residual: component count mismatch");

    VectorFieldAlongGerm res = VectorFieldAlongGerm::zero(m, n, sys.order);
    const auto& iset = sys.adapted.index_set(l);
    const auto& comp = sys.adapted.complement(l);
    const auto& free_vars = sys.adapted.free_indices[l];
    for (std::size_t kt = 0; kt < iset.size(); ++kt) {
        int k = iset[kt];
        Jet lhs(m, sys.order);
        for (std::size_t it = 0; it < free_vars.size(); ++it)
            lhs += jet_mul(sys.free_partials[l][kt][it],
                           u_tilde.components[free_vars[it]].truncated(sys.order));
        lhs += compose_target(v_tilde.components[k].truncated(sys.order), f);
        res.components[k] = lhs - w_tilde.components[k].truncated(sys.order);
    }
    for (std::size_t t = 0; t < comp.size(); ++t) {
        int k = comp[t];
        Jet lhs = u_tilde.components[sys.adapted.sigma[l][t]].truncated(sys.order);
        lhs += compose_target(v_tilde.components[k].truncated(sys.order), f);
        res.components[k] = lhs - w_tilde.components[k].truncated(sys.order);
    }
    return res;
}

VectorFieldAlongGerm reduction_drop_term(const ReducedSystem& sys, int l,
                                         const TargetVectorField& v_tilde) {
    const MultigermConfig& cfg = sys.adapted.base;
    const int n = cfg.target_dim;
    const MapGermJet& f = cfg.germs[l];
    const int m = f.source_dim();
    VectorFieldAlongGerm drop = VectorFieldAlongGerm::zero(m, n, sys.order);
    const auto& iset = sys.adapted.index_set(l);
    const auto& comp = sys.adapted.complement(l);
    for (std::size_t kt = 0; kt < iset.size(); ++kt) {
        int k = iset[kt];
        Jet acc(m, sys.order);
        for (std::size_t jt = 0; jt < comp.size(); ++jt) {
            const Jet& vj = v_tilde.components[comp[jt]];
            if (vj.is_zero())
                continue;
            acc += jet_mul(sys.sigma_partials[l][kt][jt],
                           compose_target(vj.truncated(sys.order), f));
        }
        drop.components[k] = acc;
    }
    return drop;
}

std::optional<PerGermSolution> solve_single_reduced(const ReducedSystem& sys, int l,
                                                    const VectorFieldAlongGerm& w_tilde) {
    const MultigermConfig& cfg = sys.adapted.base;
    const int n = cfg.target_dim;
    const MapGermJet& f = cfg.germs[l];
    const int m = f.source_dim();
    const int order = sys.order;
    const auto& iset = sys.adapted.index_set(l);
    const auto& free_vars = sys.adapted.free_indices[l];
    const auto& comp = sys.adapted.complement(l);

    std::vector<MultiIndex> src_basis = monomial_basis(m, order);
    std::vector<MultiIndex> tgt_basis = monomial_basis(n, order);
    const int sb = static_cast<int>(src_basis.size());
    const int tb = static_cast<int>(tgt_basis.size());
    std::map<MultiIndex, int, GrlexLess> src_index;
    for (int t = 0; t < sb; ++t)
        src_index.emplace(src_basis[t], t);

    // Unknowns: a_i coefficients for i in L_l, then b_k coefficients for
    // k in I_l. Equations: coefficient match on every I_l component.
    const int num_i = static_cast<int>(iset.size());
    const Eigen::Index rows = static_cast<Eigen::Index>(num_i) * sb;
    const Eigen::Index cols =
        static_cast<Eigen::Index>(free_vars.size()) * sb + static_cast<Eigen::Index>(num_i) * tb;
    Mat mat = Mat::Zero(rows, cols);
    Vec rhs = Vec::Zero(rows);

    auto put_jet = [&](Eigen::Index row_block, Eigen::Index col, const Jet& jet) {
        for (const auto& [mi, cf] : jet.terms()) {
            auto it = src_index.find(mi);
            if (it != src_index.end())
                mat(row_block * sb + it->second, col) = cf;
        }
    };

    Eigen::Index col = 0;
    for (std::size_t it = 0; it < free_vars.size(); ++it) {
        for (int t = 0; t < sb; ++t, ++col) {
            Jet g = Jet::monomial(m, order, src_basis[t], 1);
            for (int kt = 0; kt < num_i; ++kt)
                put_jet(kt, col, jet_mul(sys.free_partials[l][static_cast<std::size_t>(kt)][it], g));
        }
    }
    for (int kt = 0; kt < num_i; ++kt) {
        for (int t = 0; t < tb; ++t, ++col) {
            Jet h = Jet::monomial(n, order, tgt_basis[t], 1);
            put_jet(kt, col, compose_target(h, f));
        }
    }
    for (int kt = 0; kt < num_i; ++kt) {
        Jet wk = w_tilde.components[iset[static_cast<std::size_t>(kt)]].truncated(order);
        for (const auto& [mi, cf] : wk.terms()) {
            auto it = src_index.find(mi);
            if (it != src_index.end())
                rhs(static_cast<Eigen::Index>(kt) * sb + it->second) = cf;
        }
    }

    std::optional<Vec> x = solve(mat, rhs);
    if (!x)
        return std::nullopt;

    PerGermSolution sol;
    sol.rhs = VectorFieldAlongGerm::zero(m, n, order);
    for (int i = 0; i < n; ++i)
        sol.rhs.components[i] = w_tilde.components[i].truncated(order);
    sol.a.assign(m, Jet(m, order));
    sol.b.assign(n, Jet(n, order));
    col = 0;
    for (std::size_t it = 0; it < free_vars.size(); ++it)
        for (int t = 0; t < sb; ++t, ++col)
            if ((*x)(col) != 0)
                sol.a[free_vars[it]].set_coeff(src_basis[t], (*x)(col));
    for (int kt = 0; kt < num_i; ++kt)
        for (int t = 0; t < tb; ++t, ++col)
            if ((*x)(col) != 0)
                sol.b[iset[static_cast<std::size_t>(kt)]].set_coeff(tgt_basis[t], (*x)(col));
    // Ibar equations: b_k = 0 there, so a_{sigma(k)} = w~_k.
    for (std::size_t t = 0; t < comp.size(); ++t)
        sol.a[sys.adapted.sigma[l][t]] = sol.rhs.components[comp[t]];
    return sol;
}

bool per_germ_solution_valid(const ReducedSystem& sys, int l, const PerGermSolution& sol) {
    const MultigermConfig& cfg = sys.adapted.base;
    const int m = cfg.germs[l].source_dim();
    const int n = cfg.target_dim;
    if (static_cast<int>(sol.a.size()) != m || static_cast<int>(sol.b.size()) != n)
        return false;
    SourceVectorField u;
    u.components = sol.a;
    TargetVectorField v;
    v.components = sol.b;
    VectorFieldAlongGerm res = m7_residual(sys, l, u, v, sol.rhs);
    for (const Jet& r : res.components)
        if (!r.is_zero())
            return false;
    return true;
}

ReducedSolution solve_reduced(const ReducedSystem& sys,
                              const std::vector<PerGermSolution>& per_germ, int target_order) {
    const MultigermConfig& cfg = sys.adapted.base;
    const int n = cfg.target_dim;
    const int s = cfg.size();
    if (static_cast<int>(per_germ.size()) != s)
        throw argument_error("solve_reduced: one per-germ solution required per germ");
    if (target_order > sys.order)
        throw argument_error("solve_reduced: target order exceeds the system order");

    for (int l = 0; l < s; ++l) {
        if (!per_germ_solution_valid(sys, l, per_germ[l])) {
            // Identify the first failing equation for the error message.
            SourceVectorField u;
            u.components = per_germ[l].a;
            TargetVectorField v;
            v.components = per_germ[l].b;
            VectorFieldAlongGerm res = m7_residual(sys, l, u, v, per_germ[l].rhs);
            int bad = 0;
            for (int i = 0; i < n; ++i)
                if (!res.components[i].is_zero()) {
                    bad = i;
                    break;
                }
            throw precondition_error("solve_reduced: solution for germ '" + cfg.labels[l] +
                                     "' fails its reduced equation for component " +
                                     std::to_string(bad + 1));
        }
    }

    ReducedSolution out;
    out.v_tilde = TargetVectorField::zero(n, sys.order);
    for (int l = 0; l < s; ++l)
        for (int k : sys.adapted.index_set(l))
            out.v_tilde.components[k] = per_germ[l].b[k];

    for (int l = 0; l < s; ++l) {
        const MapGermJet& f = cfg.germs[l];
        const int m = f.source_dim();
        SourceVectorField u = SourceVectorField::zero(m, sys.order);
        for (int i : sys.adapted.free_indices[l])
            u.components[i] = per_germ[l].a[i];
        const auto& comp = sys.adapted.complement(l);
        for (std::size_t t = 0; t < comp.size(); ++t) {
            int k = comp[t];
            Jet val = per_germ[l].rhs.components[k] -
                      compose_target(out.v_tilde.components[k], f);
            u.components[sys.adapted.sigma[l][t]] = val;
        }
        out.u_tilde.push_back(std::move(u));
    }

    // The assembled data must solve the multigerm system identically.
    for (int l = 0; l < s; ++l) {
        VectorFieldAlongGerm res =
            m7_residual(sys, l, out.u_tilde[l], out.v_tilde, per_germ[l].rhs);
        for (int i = 0; i < n; ++i)
            if (!res.components[i].truncated(target_order).is_zero())
                throw precondition_error(
                    "solve_reduced: assembled solution fails the multigerm system at germ '" +
                    cfg.labels[l] + "', component " + std::to_string(i + 1));
    }
    return out;
}

BackSubstitution back_substitute(const ReducedSystem& sys, const ReducedSolution& sol,
                                 const std::vector<VectorFieldAlongGerm>& w) {
    const MultigermConfig& cfg = sys.adapted.base;
    const int n = cfg.target_dim;
    const int s = cfg.size();
    if (static_cast<int>(w.size()) != s)
        throw argument_error("back_substitute: one field per germ required");

    BackSubstitution out;
    out.v = TargetVectorField::zero(n, sys.order);
    out.v.components = sol.v_tilde.components;
    for (int l = 0; l < s; ++l) {
        out.u.push_back(sol.u_tilde[l]);
        out.recorded.push_back(reduction_drop_term(sys, l, sol.v_tilde));
        for (Jet& j : out.recorded.back().components)
            j = -j;
    }

    // Exact identity: tf(u) + wf(v) - w == recorded.
    for (int l = 0; l < s; ++l) {
        MapGermJet f = cfg.germs[l].truncated(sys.order);
        VectorFieldAlongGerm tf_part = tf_apply(f, out.u[l]);
        VectorFieldAlongGerm wf_part = wf_apply(f, out.v);
        for (int i = 0; i < n; ++i) {
            Jet defect = tf_part.components[i] + wf_part.components[i] -
                         w[l].components[i].truncated(sys.order) -
                         out.recorded[l].components[i];
            if (!defect.is_zero())
                throw precondition_error(
                    "back_substitute: exact identity check failed at germ '" + cfg.labels[l] +
                    "', component " + std::to_string(i + 1));
        }
    }
    return out;
}

PipelineResult solve_via_reduction(const ReducedSystem& sys,
                                   const std::vector<VectorFieldAlongGerm>& w) {
    const MultigermConfig& cfg = sys.adapted.base;
    PipelineResult out;
    out.w_tilde = transform_rhs(sys, w, Vec::Zero(cfg.target_dim));
    for (int l = 0; l < cfg.size(); ++l) {
        std::optional<PerGermSolution> sol = solve_single_reduced(sys, l, out.w_tilde[l]);
        if (!sol)
            throw precondition_error(
                "solve_via_reduction: germ '" + cfg.labels[l] +
                "' has no single-germ solution at this order (germ not stable at this order?)");
        out.per_germ.push_back(std::move(*sol));
    }
    out.reduced = solve_reduced(sys, out.per_germ, sys.order);
    out.back = back_substitute(sys, out.reduced, w);
    return out;
}

}  // namespace germstab
