#pragma once

#include <string>
#include <vector>

namespace germstab {

/* Exponent vector of a monomial. The global ordering is graded
   lexicographic: lower total degree first, and within one degree a larger
   exponent on an earlier variable first, so monomial_basis(2, 2) lists
   1, x1, x2, x1^2, x1*x2, x2^2. Variable indices are 0-based. */
struct MultiIndex {
    std::vector<int> exponents;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {}

    int num_vars() const { return static_cast<int>(exponents.size()); }
    int degree() const;

    static MultiIndex zero(int num_vars);
    /* x_var, 0-based */
    static MultiIndex unit(int num_vars, int var);

    bool operator==(const MultiIndex&) const = default;
};

bool grlex_less(const MultiIndex& a, const MultiIndex& b);

struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(a, b); }
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);

/* All multi-indices of degree <= order in graded-lex order,
   binom(num_vars + order, order) of them. */
std::vector<MultiIndex> monomial_basis(int num_vars, int order);

/* "x1^2*x3" with the given variable names; "1" for the zero index. */
std::string monomial_str(const MultiIndex& mi, const std::vector<std::string>& var_names);

}  // namespace germstab
