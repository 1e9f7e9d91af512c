#include "germstab/linalg.hpp"

#include "germstab/errors.hpp"

namespace germstab {

RrefResult rref(Mat m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    RrefResult out;
    out.pivot_cols.reserve(static_cast<std::size_t>(std::min(rows, cols)));
    Eigen::Index lead = 0;
    for (Eigen::Index col = 0; col < cols && lead < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = lead; r < rows; ++r) {
            if (m(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            continue;
        if (pivot != lead)
            m.row(pivot).swap(m.row(lead));
        Rat inv = 1 / m(lead, col);
        for (Eigen::Index c = col; c < cols; ++c)
            m(lead, c) *= inv;
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r == lead || m(r, col) == 0)
                continue;
            Rat factor = m(r, col);
            for (Eigen::Index c = col; c < cols; ++c)
                m(r, c) -= factor * m(lead, c);
        }
        out.pivot_cols.push_back(static_cast<int>(col));
        ++lead;
    }
    out.rank = static_cast<int>(lead);
    out.r = std::move(m);
    return out;
}

int rank(const Mat& m) {
    // Row echelon without the Jordan backsweep.
    Mat a = m;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index lead = 0;
    for (Eigen::Index col = 0; col < cols && lead < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = lead; r < rows; ++r) {
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            continue;
        if (pivot != lead)
            a.row(pivot).swap(a.row(lead));
        for (Eigen::Index r = lead + 1; r < rows; ++r) {
            if (a(r, col) == 0)
                continue;
            Rat factor = a(r, col) / a(lead, col);
            a(r, col) = 0;
            for (Eigen::Index c = col + 1; c < cols; ++c)
                a(r, c) -= factor * a(lead, c);
        }
        ++lead;
    }
    return static_cast<int>(lead);
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    if (a.rows() != b.rows())
        throw argument_error("solve: dimension mismatch");
    Mat aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    RrefResult red = rref(std::move(aug));
    // A pivot in the last column means b is outside the column span.
    if (!red.pivot_cols.empty() && red.pivot_cols.back() == static_cast<int>(a.cols()))
        return std::nullopt;
    Vec x = Vec::Zero(a.cols());
    for (std::size_t i = 0; i < red.pivot_cols.size(); ++i)
        x(red.pivot_cols[i]) = red.r(static_cast<Eigen::Index>(i), a.cols());
    return x;
}

std::vector<Vec> kernel_basis(const Mat& a) {
    RrefResult red = rref(a);
    const Eigen::Index cols = a.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : red.pivot_cols)
        is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Vec> basis;
    for (Eigen::Index free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)])
            continue;
        Vec v = Vec::Zero(cols);
        v(free) = 1;
        for (std::size_t i = 0; i < red.pivot_cols.size(); ++i)
            v(red.pivot_cols[i]) = -red.r(static_cast<Eigen::Index>(i), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> cokernel_basis(const Mat& a) {
    return kernel_basis(Mat(a.transpose()));
}

Subspace::Subspace(int ambient_dim) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {
    if (ambient_dim < 1)
        throw argument_error("subspace ambient dimension must be positive");
}

Subspace Subspace::span_of_rows(const Mat& rows) {
    Subspace s(static_cast<int>(rows.cols()));
    RrefResult red = rref(rows);
    s.basis_ = red.r.topRows(red.rank);
    return s;
}

Subspace Subspace::full(int ambient_dim) {
    Subspace s(ambient_dim);
    s.basis_ = Mat::Identity(ambient_dim, ambient_dim);
    return s;
}

bool Subspace::contains(const Vec& v) const {
    if (v.rows() != ambient_dim_)
        throw argument_error("vector/subspace ambient dimension mismatch");
    bool all_zero = true;
    for (Eigen::Index i = 0; i < v.rows() && all_zero; ++i)
        all_zero = v(i) == 0;
    if (all_zero)
        return true;
    Mat stacked(basis_.rows() + 1, ambient_dim_);
    stacked.topRows(basis_.rows()) = basis_;
    stacked.row(basis_.rows()) = v.transpose();
    return rank(stacked) == dim();
}

Subspace Subspace::annihilator() const {
    Subspace out(ambient_dim_);
    std::vector<Vec> ker = kernel_basis(basis_);
    Mat rows(static_cast<Eigen::Index>(ker.size()), ambient_dim_);
    for (std::size_t i = 0; i < ker.size(); ++i)
        rows.row(static_cast<Eigen::Index>(i)) = ker[i].transpose();
    return span_of_rows(rows);
}

bool Subspace::operator==(const Subspace& other) const {
    return ambient_dim_ == other.ambient_dim_ && basis_.rows() == other.basis_.rows() &&
           basis_ == other.basis_;
}

Subspace subspace_sum(const Subspace& p, const Subspace& q) {
    if (p.ambient_dim() != q.ambient_dim())
        throw argument_error("subspace_sum: ambient dimension mismatch");
    Mat stacked(p.dim() + q.dim(), p.ambient_dim());
    stacked.topRows(p.dim()) = p.basis();
    stacked.bottomRows(q.dim()) = q.basis();
    return Subspace::span_of_rows(stacked);
}

Subspace subspace_intersection(const std::vector<Subspace>& family) {
    if (family.empty())
        throw argument_error("subspace_intersection: empty family");
    // ann(P cap Q) = ann(P) + ann(Q); intersect by doubling through duals.
    Subspace anns = family[0].annihilator();
    for (std::size_t i = 1; i < family.size(); ++i) {
        if (family[i].ambient_dim() != family[0].ambient_dim())
            throw argument_error("subspace_intersection: ambient dimension mismatch");
        anns = subspace_sum(anns, family[i].annihilator());
    }
    return anns.annihilator();
}

}  // namespace germstab
