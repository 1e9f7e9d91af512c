#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <string>

namespace germstab {

/* Exact rational scalar. GMP keeps values in lowest terms with positive
   denominator through arithmetic; the constructors below canonicalize at
   the boundaries (literals, parsed input). No rounding anywhere. */
using Rat = mpq_class;

/* den == 0 -> argument_error. */
Rat make_rat(long num, long den = 1);

/* Accepts "p" and "p/q" with optional sign; nullopt on anything else. */
std::optional<Rat> parse_rat(const std::string& text);

/* "p" or "p/q", canonical form. */
std::string rat_str(const Rat& q);

}  // namespace germstab

namespace Eigen {

/* Adapter so dense Eigen types can carry exact rationals. Costs are rough
   relative weights; nothing here does floating point. */
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;

    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

}  // namespace Eigen
