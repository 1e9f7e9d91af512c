#include "germstab/multi_index.hpp"

#include "germstab/errors.hpp"

#include <algorithm>
#include <numeric>

namespace germstab {

int MultiIndex::degree() const {
    return std::accumulate(exponents.begin(), exponents.end(), 0);
}

MultiIndex MultiIndex::zero(int num_vars) {
    return MultiIndex(std::vector<int>(num_vars, 0));
}

MultiIndex MultiIndex::unit(int num_vars, int var) {
    if (var < 0 || var >= num_vars)
        throw argument_error("variable index out of range");
    MultiIndex mi = zero(num_vars);
    mi.exponents[var] = 1;
    return mi;
}

bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da < db;
    // Same degree: earlier variable with the larger exponent comes first.
    for (std::size_t i = 0; i < a.exponents.size() && i < b.exponents.size(); ++i) {
        if (a.exponents[i] != b.exponents[i])
            return a.exponents[i] > b.exponents[i];
    }
    return a.exponents.size() < b.exponents.size();
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.num_vars() != b.num_vars())
        throw argument_error("multi-index variable count mismatch");
    MultiIndex r = a;
    for (std::size_t i = 0; i < r.exponents.size(); ++i)
        r.exponents[i] += b.exponents[i];
    return r;
}

namespace {

void enumerate(int num_vars, int pos, int remaining, MultiIndex& scratch,
               std::vector<MultiIndex>& out) {
    if (pos + 1 == num_vars) {
        scratch.exponents[pos] = remaining;
        out.push_back(scratch);
        scratch.exponents[pos] = 0;
        return;
    }
    // Descending exponent on the earlier variable matches grlex order
    // within a fixed total degree.
    for (int e = remaining; e >= 0; --e) {
        scratch.exponents[pos] = e;
        enumerate(num_vars, pos + 1, remaining - e, scratch, out);
    }
    scratch.exponents[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> monomial_basis(int num_vars, int order) {
    if (num_vars < 1)
        throw argument_error("monomial_basis: need at least one variable");
    if (order < 0)
        throw argument_error("monomial_basis: negative order");
    std::vector<MultiIndex> out;
    MultiIndex scratch = MultiIndex::zero(num_vars);
    for (int d = 0; d <= order; ++d)
        enumerate(num_vars, 0, d, scratch, out);
    return out;
}

std::string monomial_str(const MultiIndex& mi, const std::vector<std::string>& var_names) {
    std::string s;
    for (int i = 0; i < mi.num_vars(); ++i) {
        int e = mi.exponents[i];
        if (e == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += var_names.at(i);
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

}  // namespace germstab
