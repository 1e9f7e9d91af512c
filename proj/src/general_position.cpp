#include "germstab/general_position.hpp"

#include "germstab/errors.hpp"

#include <numeric>

namespace germstab {

SubspaceFamily::SubspaceFamily(int ambient_dim_, std::vector<Subspace> members_)
    : ambient_dim(ambient_dim_), members(std::move(members_)) {
    if (ambient_dim < 1)
        throw argument_error("subspace family ambient dimension must be positive");
    if (members.empty())
        throw argument_error("subspace family needs at least one member");
    for (const auto& p : members)
        if (p.ambient_dim() != ambient_dim)
            throw argument_error("subspace family ambient dimension mismatch");
}

namespace {

bool gp_direct(const SubspaceFamily& family) {
    const int s = family.size();
    for (int i = 0; i < s; ++i) {
        std::vector<Subspace> others;
        others.reserve(s - 1);
        for (int j = 0; j < s; ++j)
            if (j != i)
                others.push_back(family.members[j]);
        Subspace cap = subspace_intersection(others);
        if (subspace_sum(family.members[i], cap).dim() != family.ambient_dim)
            return false;
    }
    return true;
}

/* Rows of the stacked annihilators: x |-> (x mod P_1, ..., x mod P_s),
   with each quotient written in annihilator coordinates. */
Mat quotient_map_matrix(const SubspaceFamily& family) {
    int total = 0;
    for (const auto& p : family.members)
        total += p.codim();
    Mat m(total, family.ambient_dim);
    int row = 0;
    for (const auto& p : family.members) {
        Mat ann = p.annihilator().basis();
        m.middleRows(row, ann.rows()) = ann;
        row += static_cast<int>(ann.rows());
    }
    return m;
}

bool gp_quotient(const SubspaceFamily& family) {
    Mat m = quotient_map_matrix(family);
    return rank(m) == m.rows();
}

/* [stacked identity | blockdiag of member bases^T], an (s*n) x (n + sum dim)
   matrix; condition (3) asks it to have full row rank. */
Mat diagonal_plus_blocks_matrix(const SubspaceFamily& family) {
    const int n = family.ambient_dim;
    const int s = family.size();
    int dims = 0;
    for (const auto& p : family.members)
        dims += p.dim();
    Mat m = Mat::Zero(static_cast<Eigen::Index>(s) * n, n + dims);
    int col = n;
    for (int i = 0; i < s; ++i) {
        m.block(static_cast<Eigen::Index>(i) * n, 0, n, n) = Mat::Identity(n, n);
        const Mat& basis = family.members[i].basis();
        m.block(static_cast<Eigen::Index>(i) * n, col, n, basis.rows()) = basis.transpose();
        col += static_cast<int>(basis.rows());
    }
    return m;
}

bool gp_diagonal(const SubspaceFamily& family) {
    Mat m = diagonal_plus_blocks_matrix(family);
    return rank(m) == m.rows();
}

/* Condition (5) on the spanning tuples (0,..,e_j,..,0): each one must
   admit a common translate. */
bool gp_translate(const SubspaceFamily& family) {
    const int n = family.ambient_dim;
    const int s = family.size();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<Vec> tuple(s, Vec::Zero(n));
            tuple[i](j) = 1;
            if (!find_common_translate(family, tuple))
                return false;
        }
    }
    return true;
}

}  // namespace

bool gp_check(const SubspaceFamily& family, GpMethod method) {
    if (family.size() < 2)
        throw argument_error("general position needs at least two subspaces");
    switch (method) {
        case GpMethod::direct:
            return gp_direct(family);
        case GpMethod::quotient:
            return gp_quotient(family);
        case GpMethod::diagonal:
            return gp_diagonal(family);
        case GpMethod::translate:
            return gp_translate(family);
    }
    throw argument_error("unknown general-position method");
}

std::optional<Vec> find_common_translate(const SubspaceFamily& family,
                                         const std::vector<Vec>& vectors) {
    const int n = family.ambient_dim;
    const int s = family.size();
    if (static_cast<int>(vectors.size()) != s)
        throw argument_error("find_common_translate: one vector per member required");
    for (const auto& v : vectors)
        if (v.rows() != n)
            throw argument_error("find_common_translate: vector dimension mismatch");

    // v_i - z in P_i  <=>  z + B_i^T c_i = v_i for some coefficients c_i.
    Mat m = diagonal_plus_blocks_matrix(family);
    Vec rhs(static_cast<Eigen::Index>(s) * n);
    for (int i = 0; i < s; ++i)
        rhs.segment(static_cast<Eigen::Index>(i) * n, n) = vectors[i];
    std::optional<Vec> x = solve(m, rhs);
    if (!x)
        return std::nullopt;
    Vec z = x->head(n);
    for (int i = 0; i < s; ++i) {
        Vec diff = vectors[i] - z;
        if (!family.members[i].contains(diff))
            throw precondition_error("common translate failed exact membership verification");
    }
    return z;
}

CoordinateAdaptation adapt_coordinates(const SubspaceFamily& family) {
    const int n = family.ambient_dim;
    if (family.size() >= 2 && !gp_check(family, GpMethod::direct))
        throw precondition_error("adapt_coordinates: family is not in general position");

    // Stack annihilator bases; general position keeps the rows independent.
    int forms = 0;
    for (const auto& p : family.members)
        forms += p.codim();
    Mat chosen(forms, n);
    CoordinateAdaptation out;
    int row = 0;
    for (const auto& p : family.members) {
        Mat ann = p.annihilator().basis();
        std::vector<int> indices(static_cast<std::size_t>(ann.rows()));
        std::iota(indices.begin(), indices.end(), row);
        chosen.middleRows(row, ann.rows()) = ann;
        out.index_sets.push_back(std::move(indices));
        row += static_cast<int>(ann.rows());
    }
    if (rank(chosen) != forms)
        throw precondition_error("adapt_coordinates: stacked annihilator forms are dependent");

    // Complete to a basis of the dual with standard forms on the non-pivot
    // coordinates, in ascending order.
    RrefResult red = rref(chosen);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : red.pivot_cols)
        is_pivot[static_cast<std::size_t>(p)] = true;
    Mat l = Mat::Zero(n, n);
    l.topRows(forms) = chosen;
    int next = forms;
    for (int j = 0; j < n; ++j) {
        if (!is_pivot[static_cast<std::size_t>(j)])
            l(next++, j) = 1;
    }

    for (int li = 0; li < family.size(); ++li) {
        std::vector<int> comp;
        for (int j = 0; j < n; ++j) {
            bool in_set = false;
            for (int k : out.index_sets[li])
                in_set = in_set || (k == j);
            if (!in_set)
                comp.push_back(j);
        }
        out.complements.push_back(std::move(comp));
    }
    out.change_of_basis = std::move(l);

    if (!adaptation_matches(out, family))
        throw precondition_error("adapt_coordinates: postcondition verification failed");
    return out;
}

bool adaptation_matches(const CoordinateAdaptation& adaptation, const SubspaceFamily& family) {
    const int n = family.ambient_dim;
    const Mat& l = adaptation.change_of_basis;
    if (l.rows() != n || l.cols() != n || rank(l) != n)
        return false;
    if (static_cast<int>(adaptation.index_sets.size()) != family.size())
        return false;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int li = 0; li < family.size(); ++li) {
        const auto& set = adaptation.index_sets[li];
        if (static_cast<int>(set.size()) != family.members[li].codim())
            return false;
        for (int k : set) {
            if (k < 0 || k >= n || used[static_cast<std::size_t>(k)])
                return false;
            used[static_cast<std::size_t>(k)] = true;
        }
    }
    for (int li = 0; li < family.size(); ++li) {
        // L maps the member into (hence, by dimension, onto) the
        // coordinate subspace with the I_l coordinates zero.
        const Mat& basis = family.members[li].basis();
        for (Eigen::Index b = 0; b < basis.rows(); ++b) {
            Vec image = l * basis.row(b).transpose();
            for (int k : adaptation.index_sets[li])
                if (image(k) != 0)
                    return false;
        }
    }
    return true;
}

}  // namespace germstab
