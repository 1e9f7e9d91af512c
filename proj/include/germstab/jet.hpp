#pragma once

#include "germstab/multi_index.hpp"
#include "germstab/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace germstab {

/* Order-k jet of a function germ: a polynomial of degree <= k with exact
   rational coefficients, truncated multiplicatively at k. Zero
   coefficients are never stored, so equality is structural. */
class Jet {
public:
    using TermMap = std::map<MultiIndex, Rat, GrlexLess>;

    Jet(int num_vars, int order);

    static Jet zero(int num_vars, int order) { return Jet(num_vars, order); }
    static Jet constant(int num_vars, int order, const Rat& value);
    /* the coordinate function x_var (0-based) */
    static Jet coordinate(int num_vars, int order, int var);
    static Jet monomial(int num_vars, int order, const MultiIndex& mi, const Rat& coeff);

    int num_vars() const { return num_vars_; }
    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }

    Rat coeff(const MultiIndex& mi) const;
    /* erases the term when value == 0; degree > order is an argument_error */
    void set_coeff(const MultiIndex& mi, const Rat& value);

    bool is_zero() const { return terms_.empty(); }
    Rat constant_term() const;
    /* largest degree actually present; -1 for the zero jet */
    int max_degree() const;

    /* same content up to new_order, declared order changed */
    Jet truncated(int new_order) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& other);
    Jet& operator-=(const Jet& other);
    Jet& operator*=(const Rat& scalar);

    bool operator==(const Jet& other) const;

    std::string str(const std::vector<std::string>& var_names) const;
    std::string str() const;  // default names x1..xm

private:
    int num_vars_;
    int order_;
    TermMap terms_;

    void check_compatible(const Jet& other) const;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Rat& scalar, Jet a);
Jet operator*(Jet a, const Rat& scalar);

/* truncated product; operands must share num_vars and order */
Jet jet_mul(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);

/* formal partial derivative with respect to x_var (0-based); the declared
   order is kept, content degree drops by one */
Jet jet_partial(const Jet& a, int var);

/* A based map germ f:(Q^m,0) -> (Q^n,0): n component jets in m variables,
   all with zero constant term and one shared order. */
struct MapGermJet {
    MapGermJet(int source_dim, int target_dim, int order);

    static MapGermJet identity(int dim, int order);
    /* validates the invariants */
    static MapGermJet from_components(std::vector<Jet> components);

    int source_dim() const { return source_dim_; }
    int target_dim() const { return static_cast<int>(components_.size()); }
    int order() const { return order_; }

    const Jet& component(int i) const { return components_.at(i); }
    void set_component(int i, const Jet& jet);
    const std::vector<Jet>& components() const { return components_; }

    MapGermJet truncated(int new_order) const;
    /* max over components */
    int max_degree() const;

    bool operator==(const MapGermJet& other) const = default;

private:
    int source_dim_;
    int order_;
    std::vector<Jet> components_;
};

/* outer(inner_1, ..., inner_n) truncated at the shared order; requires
   outer.num_vars == inner.target_dim, equal orders, and based inner */
Jet jet_compose(const Jet& outer, const MapGermJet& inner);

/* component-wise jet_compose: (outer o inner) as a map germ */
MapGermJet map_compose(const MapGermJet& outer, const MapGermJet& inner);

}  // namespace germstab
