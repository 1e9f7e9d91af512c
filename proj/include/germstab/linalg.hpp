#pragma once

#include "germstab/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace germstab {

using Mat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

struct RrefResult {
    Mat r;
    int rank = 0;
    std::vector<int> pivot_cols;
};

/* Exact reduced row-echelon form (Gauss-Jordan over Q). */
RrefResult rref(Mat m);

/* rank only, cheaper bookkeeping */
int rank(const Mat& m);

/* One exact solution of a*x = b with free variables set to zero, or
   nullopt when b is outside the column span. */
std::optional<Vec> solve(const Mat& a, const Vec& b);

/* Basis of the right null space {x : a*x = 0}, canonical free-variable
   construction from the RREF. */
std::vector<Vec> kernel_basis(const Mat& a);

/* Basis of the left null space {c : c^T a = 0}. Over Q the dot product is
   definite, so these vectors span a complement of the column space; each
   one certifies non-surjectivity. */
std::vector<Vec> cokernel_basis(const Mat& a);

/* Linear subspace of Q^n, canonicalized: the stored basis rows are the
   nonzero rows of an RREF, so equal subspaces compare equal structurally. */
class Subspace {
public:
    /* zero subspace */
    explicit Subspace(int ambient_dim);

    static Subspace span_of_rows(const Mat& rows);
    static Subspace full(int ambient_dim);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return static_cast<int>(basis_.rows()); }
    int codim() const { return ambient_dim_ - dim(); }

    /* dim() x ambient_dim() matrix in RREF */
    const Mat& basis() const { return basis_; }

    bool contains(const Vec& v) const;

    /* {phi : phi(p) = 0 for all p in this}, identified with Q^n */
    Subspace annihilator() const;

    bool operator==(const Subspace& other) const;

private:
    int ambient_dim_;
    Mat basis_;
};

Subspace subspace_sum(const Subspace& p, const Subspace& q);
Subspace subspace_intersection(const std::vector<Subspace>& family);

}  // namespace germstab
