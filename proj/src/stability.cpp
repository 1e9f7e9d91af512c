#include "germstab/stability.hpp"

#include "germstab/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace germstab {

VectorFieldAlongGerm VectorFieldAlongGerm::zero(int source_dim, int target_dim, int order) {
    VectorFieldAlongGerm w;
    w.components.assign(target_dim, Jet(source_dim, order));
    return w;
}

SourceVectorField SourceVectorField::zero(int source_dim, int order) {
    SourceVectorField u;
    u.components.assign(source_dim, Jet(source_dim, order));
    return u;
}

TargetVectorField TargetVectorField::zero(int target_dim, int order) {
    TargetVectorField v;
    v.components.assign(target_dim, Jet(target_dim, order));
    return v;
}

VectorFieldAlongGerm tf_apply(const MapGermJet& f, const SourceVectorField& u) {
    if (static_cast<int>(u.components.size()) != f.source_dim())
        throw argument_error("tf_apply: field has wrong number of components");
    for (const auto& c : u.components)
        if (c.num_vars() != f.source_dim() || c.order() != f.order())
            throw argument_error("tf_apply: component shape mismatch");
    VectorFieldAlongGerm w = VectorFieldAlongGerm::zero(f.source_dim(), f.target_dim(), f.order());
    for (int i = 0; i < f.target_dim(); ++i) {
        Jet acc(f.source_dim(), f.order());
        for (int j = 0; j < f.source_dim(); ++j)
            acc += jet_mul(jet_partial(f.component(i), j), u.components[j]);
        w.components[i] = acc;
    }
    return w;
}

VectorFieldAlongGerm wf_apply(const MapGermJet& f, const TargetVectorField& v) {
    if (static_cast<int>(v.components.size()) != f.target_dim())
        throw argument_error("wf_apply: field has wrong number of components");
    VectorFieldAlongGerm w = VectorFieldAlongGerm::zero(f.source_dim(), f.target_dim(), f.order());
    for (int i = 0; i < f.target_dim(); ++i)
        w.components[i] = jet_compose(v.components[i], f);
    return w;
}

MultigermConfig::MultigermConfig(int target_dim_, std::vector<MapGermJet> germs_,
                                 std::vector<std::optional<Subspace>> strata_,
                                 std::vector<std::string> labels_)
    : target_dim(target_dim_),
      germs(std::move(germs_)),
      strata(std::move(strata_)),
      labels(std::move(labels_)) {
    if (germs.empty())
        throw argument_error("multigerm needs at least one germ");
    for (const auto& g : germs) {
        if (g.target_dim() != target_dim)
            throw argument_error("multigerm: germ target dimension mismatch");
        if (g.order() != germs[0].order())
            throw argument_error("multigerm: germs must share one jet order");
    }
    strata.resize(germs.size());
    for (const auto& p : strata)
        if (p && p->ambient_dim() != target_dim)
            throw argument_error("multigerm: stratum ambient dimension mismatch");
    if (labels.size() > germs.size())
        throw argument_error("multigerm: more labels than germs");
    for (std::size_t i = labels.size(); i < germs.size(); ++i)
        labels.push_back("p" + std::to_string(i + 1));
}

MultigermConfig MultigermConfig::at_order(int new_order) const {
    MultigermConfig out = *this;
    for (auto& g : out.germs)
        g = g.truncated(new_order);
    return out;
}

MultigermConfig MultigermConfig::germ_config(int l) const {
    return MultigermConfig(target_dim, {germs.at(l)}, {strata.at(l)}, {labels.at(l)});
}

int effective_order(const MultigermConfig& config, int k) {
    return k > 0 ? k : config.default_order();
}

MapGermJet linear_germ(const Mat& a, int order) {
    MapGermJet f(static_cast<int>(a.cols()), static_cast<int>(a.rows()), order);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Jet comp(static_cast<int>(a.cols()), order);
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0)
                comp.set_coeff(MultiIndex::unit(static_cast<int>(a.cols()), static_cast<int>(j)),
                               a(i, j));
        f.set_component(static_cast<int>(i), comp);
    }
    return f;
}

MultigermConfig transform_config(const MultigermConfig& config, const Mat& target_change,
                                 const std::vector<Mat>& source_changes) {
    const int n = config.target_dim;
    if (target_change.rows() != n || target_change.cols() != n || rank(target_change) != n)
        throw argument_error("transform_config: target change must be invertible n x n");
    if (static_cast<int>(source_changes.size()) != config.size())
        throw argument_error("transform_config: one source change per germ required");

    MultigermConfig out = config;
    MapGermJet t = linear_germ(target_change, config.order());
    for (int l = 0; l < config.size(); ++l) {
        const Mat& a = source_changes[l];
        int m = config.germs[l].source_dim();
        if (a.rows() != m || a.cols() != m || rank(a) != m)
            throw argument_error("transform_config: source change must be invertible m x m");
        out.germs[l] = map_compose(map_compose(t, config.germs[l]), linear_germ(a, config.order()));
        if (config.strata[l]) {
            Mat rows = config.strata[l]->basis() * target_change.transpose();
            out.strata[l] = Subspace::span_of_rows(rows);
        }
    }
    return out;
}

namespace {

std::map<MultiIndex, int, GrlexLess> index_of(const std::vector<MultiIndex>& basis) {
    std::map<MultiIndex, int, GrlexLess> m;
    for (std::size_t i = 0; i < basis.size(); ++i)
        m.emplace(basis[i], static_cast<int>(i));
    return m;
}

}  // namespace

Vec field_to_vec(const VectorFieldAlongGerm& w, const std::vector<MultiIndex>& basis) {
    const int b = static_cast<int>(basis.size());
    auto idx = index_of(basis);
    Vec out = Vec::Zero(static_cast<Eigen::Index>(w.components.size()) * b);
    for (std::size_t i = 0; i < w.components.size(); ++i) {
        for (const auto& [mi, c] : w.components[i].terms()) {
            auto it = idx.find(mi);
            if (it == idx.end())
                throw argument_error("field term outside the coefficient basis");
            out(static_cast<Eigen::Index>(i) * b + it->second) = c;
        }
    }
    return out;
}

VectorFieldAlongGerm vec_to_field(const Vec& coeffs, int source_dim, int target_dim, int order,
                                  const std::vector<MultiIndex>& basis) {
    const int b = static_cast<int>(basis.size());
    if (coeffs.rows() != static_cast<Eigen::Index>(target_dim) * b)
        throw argument_error("coefficient vector has wrong size");
    VectorFieldAlongGerm w = VectorFieldAlongGerm::zero(source_dim, target_dim, order);
    for (int i = 0; i < target_dim; ++i)
        for (int t = 0; t < b; ++t)
            if (coeffs(static_cast<Eigen::Index>(i) * b + t) != 0)
                w.components[i].set_coeff(basis[t], coeffs(static_cast<Eigen::Index>(i) * b + t));
    return w;
}

int OperatorMatrix::rows_of_germ(int l) const {
    const int next = (l + 1 < static_cast<int>(row_offset.size()))
                         ? row_offset[static_cast<std::size_t>(l) + 1]
                         : static_cast<int>(m.rows());
    return next - row_offset.at(l);
}

namespace {

/* Column builders. Jets are computed at the germ's declared order and
   truncated to the row order afterwards, so higher jet data of the germ
   still contributes to low-degree rows through derivatives and
   compositions. */

Jet truncate_to(const Jet& j, int order) {
    return j.truncated(order);
}

struct GermColumnSet {
    std::vector<OperatorColumn> info;
    std::vector<VectorFieldAlongGerm> fields;  // at the row order
};

GermColumnSet source_columns(const MapGermJet& f, int germ, int row_order) {
    GermColumnSet out;
    const int m = f.source_dim();
    const int big = f.order();
    std::vector<Jet> partials;
    for (int i = 0; i < f.target_dim(); ++i)
        for (int j = 0; j < m; ++j)
            partials.push_back(jet_partial(f.component(i), j));
    for (int j = 0; j < m; ++j) {
        for (const MultiIndex& g : monomial_basis(m, row_order)) {
            Jet gj = Jet::monomial(m, big, g, 1);
            VectorFieldAlongGerm col = VectorFieldAlongGerm::zero(m, f.target_dim(), row_order);
            for (int i = 0; i < f.target_dim(); ++i)
                col.components[i] =
                    truncate_to(jet_mul(partials[static_cast<std::size_t>(i) * m + j], gj),
                                row_order);
            out.info.push_back({OperatorColumn::Kind::source, germ, j, g, -1});
            out.fields.push_back(std::move(col));
        }
    }
    return out;
}

GermColumnSet ideal_columns(const MapGermJet& f, int germ, int row_order, bool keep_zero) {
    GermColumnSet out;
    const int m = f.source_dim();
    const int n = f.target_dim();
    const int big = f.order();
    for (int i = 0; i < n; ++i) {
        for (const MultiIndex& g : monomial_basis(m, row_order)) {
            Jet gj = Jet::monomial(m, big, g, 1);
            for (int j = 0; j < n; ++j) {
                Jet prod = truncate_to(jet_mul(gj, f.component(j)), row_order);
                if (prod.is_zero() && !keep_zero)
                    continue;
                VectorFieldAlongGerm col = VectorFieldAlongGerm::zero(m, n, row_order);
                col.components[i] = prod;
                out.info.push_back({OperatorColumn::Kind::ideal, germ, i, g, j});
                out.fields.push_back(std::move(col));
            }
        }
    }
    return out;
}

/* wf image of (monomial h) d/dy_i on one germ */
Jet target_column_jet(const MapGermJet& f, const MultiIndex& h, int row_order) {
    Jet hj = Jet::monomial(f.target_dim(), f.order(), h, 1);
    return truncate_to(jet_compose(hj, f), row_order);
}

}  // namespace

OperatorMatrix assemble_operator(const MultigermConfig& config, int order) {
    if (order < 1)
        throw argument_error("assemble_operator: order must be positive");
    if (config.order() < order)
        throw argument_error("assemble_operator: germs carry fewer jet data than the order");
    const int n = config.target_dim;
    const int s = config.size();

    OperatorMatrix op;
    op.order = order;
    int rows = 0;
    for (int l = 0; l < s; ++l) {
        op.row_offset.push_back(rows);
        op.row_basis.push_back(monomial_basis(config.germs[l].source_dim(), order));
        rows += n * static_cast<int>(op.row_basis.back().size());
    }

    std::vector<Vec> cols;
    auto push_germ_col = [&](int l, const VectorFieldAlongGerm& field, const OperatorColumn& ci) {
        Vec v = Vec::Zero(rows);
        v.segment(op.row_offset[l], n * static_cast<int>(op.row_basis[l].size())) =
            field_to_vec(field, op.row_basis[l]);
        cols.push_back(std::move(v));
        op.columns.push_back(ci);
    };

    for (int l = 0; l < s; ++l) {
        GermColumnSet sc = source_columns(config.germs[l], l, order);
        for (std::size_t c = 0; c < sc.info.size(); ++c)
            push_germ_col(l, sc.fields[c], sc.info[c]);
    }
    for (int i = 0; i < n; ++i) {
        for (const MultiIndex& h : monomial_basis(n, order)) {
            Vec v = Vec::Zero(rows);
            for (int l = 0; l < s; ++l) {
                Jet composed = target_column_jet(config.germs[l], h, order);
                VectorFieldAlongGerm field =
                    VectorFieldAlongGerm::zero(config.germs[l].source_dim(), n, order);
                field.components[i] = composed;
                v.segment(op.row_offset[l], n * static_cast<int>(op.row_basis[l].size())) =
                    field_to_vec(field, op.row_basis[l]);
            }
            cols.push_back(std::move(v));
            op.columns.push_back({OperatorColumn::Kind::target, -1, i, h, -1});
        }
    }
    for (int l = 0; l < s; ++l) {
        GermColumnSet ic = ideal_columns(config.germs[l], l, order, /*keep_zero=*/true);
        for (std::size_t c = 0; c < ic.info.size(); ++c)
            push_germ_col(l, ic.fields[c], ic.info[c]);
    }

    op.m.resize(rows, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        op.m.col(static_cast<Eigen::Index>(c)) = cols[c];
    return op;
}

StabilitySolver::StabilitySolver(MultigermConfig config, int order)
    : config_(std::move(config)), order_(order) {
    if (order_ < 1)
        throw argument_error("stability check: order must be positive");
    if (config_.order() < order_)
        config_ = config_.at_order(order_);

    const int n = config_.target_dim;
    const int s = config_.size();
    for (int l = 0; l < s; ++l) {
        row_offset_.push_back(total_rows_);
        row_basis_.push_back(monomial_basis(config_.germs[l].source_dim(), order_));
        total_rows_ += n * static_cast<int>(row_basis_.back().size());
    }

    // Per-germ blocks: tf and ideal columns act on a single germ.
    for (int l = 0; l < s; ++l) {
        GermBlock block;
        GermColumnSet sc = source_columns(config_.germs[l], l, order_);
        GermColumnSet ic = ideal_columns(config_.germs[l], l, order_, /*keep_zero=*/false);
        const int germ_rows = n * static_cast<int>(row_basis_[l].size());
        block.d.resize(germ_rows, static_cast<Eigen::Index>(sc.info.size() + ic.info.size()));
        Eigen::Index c = 0;
        for (std::size_t t = 0; t < sc.info.size(); ++t, ++c) {
            block.d.col(c) = field_to_vec(sc.fields[t], row_basis_[l]);
            block.columns.push_back(sc.info[t]);
        }
        for (std::size_t t = 0; t < ic.info.size(); ++t, ++c) {
            block.d.col(c) = field_to_vec(ic.fields[t], row_basis_[l]);
            block.columns.push_back(ic.info[t]);
        }
        block.coker = cokernel_basis(block.d);
        blocks_.push_back(std::move(block));
    }

    // Shared wf columns, then their projection onto the per-germ cokernels.
    std::vector<MultiIndex> target_basis = monomial_basis(n, order_);
    const int e_cols = n * static_cast<int>(target_basis.size());
    target_cols_ = Mat::Zero(total_rows_, e_cols);
    int col = 0;
    for (int i = 0; i < n; ++i) {
        for (const MultiIndex& h : target_basis) {
            for (int l = 0; l < s; ++l) {
                Jet composed = target_column_jet(config_.germs[l], h, order_);
                VectorFieldAlongGerm field =
                    VectorFieldAlongGerm::zero(config_.germs[l].source_dim(), n, order_);
                field.components[i] = composed;
                target_cols_.col(col).segment(row_offset_[l],
                                              n * static_cast<int>(row_basis_[l].size())) =
                    field_to_vec(field, row_basis_[l]);
            }
            target_info_.push_back({OperatorColumn::Kind::target, -1, i, h, -1});
            ++col;
        }
    }

    int coupled = 0;
    for (const auto& block : blocks_)
        coupled += static_cast<int>(block.coker.size());
    coupled_ = Mat::Zero(coupled, e_cols);
    int r = 0;
    for (int l = 0; l < s; ++l) {
        const int germ_rows = config_.target_dim * static_cast<int>(row_basis_[l].size());
        for (const Vec& c : blocks_[l].coker) {
            coupled_.row(r) =
                c.transpose() * target_cols_.middleRows(row_offset_[l], germ_rows);
            ++r;
        }
    }
}

int StabilitySolver::coupled_rows() const {
    return static_cast<int>(coupled_.rows());
}

bool StabilitySolver::surjective() const {
    if (coupled_.rows() == 0)
        return true;
    return rank(coupled_) == coupled_.rows();
}

std::vector<Vec> StabilitySolver::coupled_cokernel() const {
    return cokernel_basis(coupled_);
}

Vec StabilitySolver::lift_functional(const Vec& phi) const {
    Vec out = Vec::Zero(total_rows_);
    int r = 0;
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        const int germ_rows = config_.target_dim * static_cast<int>(row_basis_[l].size());
        for (const Vec& c : blocks_[l].coker) {
            if (phi(r) != 0)
                out.segment(row_offset_[l], germ_rows) += phi(r) * c;
            ++r;
        }
    }
    return out;
}

StabilitySolution StabilitySolver::solve(const std::vector<VectorFieldAlongGerm>& w) const {
    const int n = config_.target_dim;
    const int s = config_.size();
    if (static_cast<int>(w.size()) != s)
        throw argument_error("solve: one field per germ required");

    std::vector<VectorFieldAlongGerm> rhs;
    Vec w_vec = Vec::Zero(total_rows_);
    for (int l = 0; l < s; ++l) {
        if (static_cast<int>(w[l].components.size()) != n)
            throw argument_error("solve: field has wrong number of components");
        VectorFieldAlongGerm trunc =
            VectorFieldAlongGerm::zero(config_.germs[l].source_dim(), n, order_);
        for (int i = 0; i < n; ++i) {
            if (w[l].components[i].num_vars() != config_.germs[l].source_dim())
                throw argument_error("solve: field variable count mismatch");
            trunc.components[i] = w[l].components[i].truncated(order_);
        }
        w_vec.segment(row_offset_[l], n * static_cast<int>(row_basis_[l].size())) =
            field_to_vec(trunc, row_basis_[l]);
        rhs.push_back(std::move(trunc));
    }

    // Coupled part first: choose the shared target field.
    Vec y = Vec::Zero(target_cols_.cols());
    if (coupled_.rows() > 0) {
        Vec proj(coupled_.rows());
        int r = 0;
        for (int l = 0; l < s; ++l) {
            const int germ_rows = n * static_cast<int>(row_basis_[l].size());
            for (const Vec& c : blocks_[l].coker) {
                proj(r) = c.dot(w_vec.segment(row_offset_[l], germ_rows));
                ++r;
            }
        }
        std::optional<Vec> sol = germstab::solve(coupled_, proj);
        if (!sol)
            throw precondition_error("stability solve: right-hand side is not reachable");
        y = *sol;
    }

    StabilitySolution out;
    out.v = TargetVectorField::zero(n, order_);
    for (std::size_t c = 0; c < target_info_.size(); ++c) {
        if (y(static_cast<Eigen::Index>(c)) != 0) {
            const auto& info = target_info_[c];
            Rat cur = out.v.components[info.direction].coeff(info.monomial);
            out.v.components[info.direction].set_coeff(info.monomial,
                                                       cur + y(static_cast<Eigen::Index>(c)));
        }
    }

    Vec covered = target_cols_ * y;
    for (int l = 0; l < s; ++l) {
        const int m = config_.germs[l].source_dim();
        const int germ_rows = n * static_cast<int>(row_basis_[l].size());
        Vec r_l = w_vec.segment(row_offset_[l], germ_rows) -
                  covered.segment(row_offset_[l], germ_rows);
        std::optional<Vec> x = germstab::solve(blocks_[l].d, r_l);
        if (!x)
            throw precondition_error("stability solve: per-germ block solve failed");
        SourceVectorField u = SourceVectorField::zero(m, order_);
        VectorFieldAlongGerm residual = VectorFieldAlongGerm::zero(m, n, order_);
        for (Eigen::Index c = 0; c < x->rows(); ++c) {
            if ((*x)(c) == 0)
                continue;
            const OperatorColumn& info = blocks_[l].columns[static_cast<std::size_t>(c)];
            if (info.kind == OperatorColumn::Kind::source) {
                Rat cur = u.components[info.direction].coeff(info.monomial);
                u.components[info.direction].set_coeff(info.monomial, cur + (*x)(c));
            } else {
                // Accumulate the exact ideal contribution as a field.
                Jet g = Jet::monomial(m, config_.germs[l].order(), info.monomial, 1);
                Jet prod = jet_mul(g, config_.germs[l].component(info.component))
                               .truncated(order_);
                residual.components[info.direction] += (*x)(c)*prod;
            }
        }
        out.u.push_back(std::move(u));
        out.residual.push_back(std::move(residual));
    }

    // Exact postcondition: tf(u) + wf(v) + residual == w at the solver order.
    for (int l = 0; l < s; ++l) {
        MapGermJet f = config_.germs[l].truncated(order_);
        VectorFieldAlongGerm tf_part = tf_apply(f, out.u[l]);
        VectorFieldAlongGerm wf_part = wf_apply(f, out.v);
        for (int i = 0; i < n; ++i) {
            Jet total = tf_part.components[i] + wf_part.components[i] +
                        out.residual[l].components[i];
            if (!(total == rhs[l].components[i]))
                throw precondition_error("stability solve: exact residual check failed");
        }
    }
    return out;
}

namespace {

/* Smallest-support functional among the canonical cokernel basis, scaled
   to coprime integers with a positive leading entry. */
Vec tidy_functional(Vec v) {
    mpz_class lcm_den = 1;
    for (Eigen::Index i = 0; i < v.rows(); ++i)
        if (v(i) != 0)
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v(i).get_den().get_mpz_t());
    mpz_class gcd_num = 0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        if (v(i) == 0)
            continue;
        mpz_class scaled_num = v(i).get_num() * (lcm_den / v(i).get_den());
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled_num.get_mpz_t());
    }
    if (gcd_num == 0)
        return v;
    Rat scale(lcm_den, gcd_num);
    scale.canonicalize();
    v *= scale;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        if (v(i) != 0) {
            if (v(i) < 0)
                v = -v;
            break;
        }
    }
    return v;
}

int count_nonzero(const Vec& v) {
    int c = 0;
    for (Eigen::Index i = 0; i < v.rows(); ++i)
        if (v(i) != 0)
            ++c;
    return c;
}

}  // namespace

StabilityVerdict check_infinitesimal_stability(const MultigermConfig& config, int k) {
    const int order = effective_order(config, k);
    auto solver = std::make_shared<StabilitySolver>(config, order);

    StabilityVerdict verdict;
    verdict.jet_order = order;
    if (solver->surjective()) {
        verdict.stable = true;
        verdict.solver = std::move(solver);
        return verdict;
    }

    verdict.stable = false;
    std::vector<Vec> coker = solver->coupled_cokernel();
    Vec best;
    int best_count = -1;
    for (const Vec& phi : coker) {
        Vec lifted = solver->lift_functional(phi);
        int c = count_nonzero(lifted);
        if (best_count < 0 || c < best_count) {
            best_count = c;
            best = lifted;
        }
    }
    best = tidy_functional(std::move(best));

    // Witness field: the unit monomial field at the functional's first
    // nonzero coefficient; the pairing is then that coefficient.
    const MultigermConfig& cfg = solver->config();
    const int n = cfg.target_dim;
    StabilityWitness witness;
    witness.functional = best;
    for (int l = 0; l < cfg.size(); ++l)
        witness.field.push_back(
            VectorFieldAlongGerm::zero(cfg.germs[l].source_dim(), n, order));
    int offset = 0;
    bool placed = false;
    for (int l = 0; l < cfg.size() && !placed; ++l) {
        std::vector<MultiIndex> basis = monomial_basis(cfg.germs[l].source_dim(), order);
        const int b = static_cast<int>(basis.size());
        std::vector<std::string> names;
        for (int j = 0; j < cfg.germs[l].source_dim(); ++j)
            names.push_back("x" + std::to_string(j + 1));
        for (int i = 0; i < n && !placed; ++i) {
            for (int t = 0; t < b && !placed; ++t) {
                if (best(offset + static_cast<Eigen::Index>(i) * b + t) != 0) {
                    witness.field[l].components[i].set_coeff(basis[t], 1);
                    std::ostringstream os;
                    os << "unreachable jet direction: (" << monomial_str(basis[t], names)
                       << ") d/dy" << (i + 1) << " at germ " << cfg.labels[l];
                    witness.description = os.str();
                    placed = true;
                }
            }
        }
        offset += n * b;
    }
    verdict.witness = std::move(witness);
    return verdict;
}

bool verify_witness(const MultigermConfig& config, int k, const StabilityWitness& witness) {
    const int order = effective_order(config, k);
    MultigermConfig work = config.order() >= order ? config : config.at_order(order);
    OperatorMatrix op = assemble_operator(work, order);
    if (witness.functional.rows() != op.m.rows())
        return false;
    for (Eigen::Index c = 0; c < op.m.cols(); ++c) {
        if (witness.functional.dot(op.m.col(c)) != 0)
            return false;
    }
    if (static_cast<int>(witness.field.size()) != work.size())
        return false;
    Vec w_vec = Vec::Zero(op.m.rows());
    for (int l = 0; l < work.size(); ++l) {
        VectorFieldAlongGerm trunc = VectorFieldAlongGerm::zero(
            work.germs[l].source_dim(), work.target_dim, order);
        for (int i = 0; i < work.target_dim; ++i)
            trunc.components[i] = witness.field[l].components[i].truncated(order);
        w_vec.segment(op.row_offset[l],
                      static_cast<Eigen::Index>(work.target_dim) *
                          static_cast<int>(op.row_basis[l].size())) =
            field_to_vec(trunc, op.row_basis[l]);
    }
    return witness.functional.dot(w_vec) != 0;
}

NormalCrossingReport check_normal_crossing_report(const MultigermConfig& config, int k) {
    const int order = effective_order(config, k);
    NormalCrossingReport report;
    bool all_stable = true;
    for (int l = 0; l < config.size(); ++l) {
        report.per_germ.push_back(check_infinitesimal_stability(config.germ_config(l), order));
        all_stable = all_stable && report.per_germ.back().stable;
    }
    if (config.size() >= 2) {
        std::vector<Subspace> members;
        for (int l = 0; l < config.size(); ++l) {
            if (!config.strata[l])
                throw argument_error("normal crossing check: germ '" + config.labels[l] +
                                     "' is missing stratum data");
            members.push_back(*config.strata[l]);
        }
        report.strata_in_general_position =
            gp_check(SubspaceFamily(config.target_dim, std::move(members)));
    }
    report.value = all_stable && report.strata_in_general_position.value_or(true);
    return report;
}

bool check_normal_crossing(const MultigermConfig& config, int k) {
    return check_normal_crossing_report(config, k).value;
}

Theorem1Report theorem1_local_equivalence(const MultigermConfig& config, int k) {
    Theorem1Report report;
    report.infinitesimal = check_infinitesimal_stability(config, k);
    report.normal_crossing = check_normal_crossing_report(config, k);
    report.agree = (report.infinitesimal.stable == report.normal_crossing.value);
    return report;
}

}  // namespace germstab
