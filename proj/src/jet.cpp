#include "germstab/jet.hpp"

#include "germstab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace germstab {

Jet::Jet(int num_vars, int order) : num_vars_(num_vars), order_(order) {
    if (num_vars < 1)
        throw argument_error("jet needs at least one variable");
    if (order < 0)
        throw argument_error("jet order must be non-negative");
}

Jet Jet::constant(int num_vars, int order, const Rat& value) {
    Jet j(num_vars, order);
    j.set_coeff(MultiIndex::zero(num_vars), value);
    return j;
}

Jet Jet::coordinate(int num_vars, int order, int var) {
    if (order < 1)
        throw argument_error("coordinate jet needs order >= 1");
    Jet j(num_vars, order);
    j.set_coeff(MultiIndex::unit(num_vars, var), 1);
    return j;
}

Jet Jet::monomial(int num_vars, int order, const MultiIndex& mi, const Rat& coeff) {
    Jet j(num_vars, order);
    j.set_coeff(mi, coeff);
    return j;
}

Rat Jet::coeff(const MultiIndex& mi) const {
    auto it = terms_.find(mi);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Jet::set_coeff(const MultiIndex& mi, const Rat& value) {
    if (mi.num_vars() != num_vars_)
        throw argument_error("multi-index variable count mismatch");
    if (mi.degree() > order_)
        throw argument_error("monomial degree exceeds jet order");
    if (value == 0)
        terms_.erase(mi);
    else
        terms_[mi] = value;
}

Rat Jet::constant_term() const {
    return coeff(MultiIndex::zero(num_vars_));
}

int Jet::max_degree() const {
    int d = -1;
    for (const auto& [mi, c] : terms_)
        d = std::max(d, mi.degree());
    return d;
}

Jet Jet::truncated(int new_order) const {
    Jet out(num_vars_, new_order);
    for (const auto& [mi, c] : terms_)
        if (mi.degree() <= new_order)
            out.terms_[mi] = c;
    return out;
}

void Jet::check_compatible(const Jet& other) const {
    if (num_vars_ != other.num_vars_)
        throw argument_error("jet variable count mismatch");
    if (order_ != other.order_)
        throw argument_error("jet order mismatch");
}

Jet Jet::operator-() const {
    Jet out(num_vars_, order_);
    for (const auto& [mi, c] : terms_)
        out.terms_[mi] = -c;
    return out;
}

Jet& Jet::operator+=(const Jet& other) {
    check_compatible(other);
    for (const auto& [mi, c] : other.terms_) {
        auto it = terms_.find(mi);
        if (it == terms_.end()) {
            terms_[mi] = c;
        } else {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& other) {
    check_compatible(other);
    for (const auto& [mi, c] : other.terms_) {
        auto it = terms_.find(mi);
        if (it == terms_.end()) {
            terms_[mi] = -c;
        } else {
            it->second -= c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }
    return *this;
}

Jet& Jet::operator*=(const Rat& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [mi, c] : terms_)
        c *= scalar;
    return *this;
}

bool Jet::operator==(const Jet& other) const {
    return num_vars_ == other.num_vars_ && order_ == other.order_ && terms_ == other.terms_;
}

Jet operator+(Jet a, const Jet& b) {
    a += b;
    return a;
}

Jet operator-(Jet a, const Jet& b) {
    a -= b;
    return a;
}

Jet operator*(const Rat& scalar, Jet a) {
    a *= scalar;
    return a;
}

Jet operator*(Jet a, const Rat& scalar) {
    a *= scalar;
    return a;
}

Jet jet_mul(const Jet& a, const Jet& b) {
    if (a.num_vars() != b.num_vars())
        throw argument_error("jet_mul: variable count mismatch");
    if (a.order() != b.order())
        throw argument_error("jet_mul: order mismatch");
    Jet out(a.num_vars(), a.order());
    for (const auto& [ma, ca] : a.terms()) {
        int da = ma.degree();
        for (const auto& [mb, cb] : b.terms()) {
            if (da + mb.degree() > a.order())
                continue;
            MultiIndex m = ma + mb;
            Rat c = out.coeff(m) + ca * cb;
            out.set_coeff(m, c);
        }
    }
    return out;
}

Jet operator*(const Jet& a, const Jet& b) {
    return jet_mul(a, b);
}

Jet jet_partial(const Jet& a, int var) {
    if (var < 0 || var >= a.num_vars())
        throw argument_error("jet_partial: variable index out of range");
    Jet out(a.num_vars(), a.order());
    for (const auto& [mi, c] : a.terms()) {
        int e = mi.exponents[var];
        if (e == 0)
            continue;
        MultiIndex m = mi;
        m.exponents[var] = e - 1;
        out.set_coeff(m, c * e);
    }
    return out;
}

std::string Jet::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mi, c] : terms_) {
        Rat abs_c = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0)
                os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::string mono = monomial_str(mi, var_names);
        if (mono == "1")
            os << rat_str(abs_c);
        else if (abs_c == 1)
            os << mono;
        else
            os << rat_str(abs_c) << "*" << mono;
    }
    return os.str();
}

std::string Jet::str() const {
    std::vector<std::string> names;
    for (int i = 0; i < num_vars_; ++i)
        names.push_back("x" + std::to_string(i + 1));
    return str(names);
}

MapGermJet::MapGermJet(int source_dim, int target_dim, int order)
    : source_dim_(source_dim), order_(order) {
    if (source_dim < 1 || target_dim < 1)
        throw argument_error("map germ dimensions must be positive");
    components_.assign(target_dim, Jet(source_dim, order));
}

MapGermJet MapGermJet::identity(int dim, int order) {
    MapGermJet f(dim, dim, order);
    for (int i = 0; i < dim; ++i)
        f.set_component(i, Jet::coordinate(dim, order, i));
    return f;
}

MapGermJet MapGermJet::from_components(std::vector<Jet> components) {
    if (components.empty())
        throw argument_error("map germ needs at least one component");
    MapGermJet f(components[0].num_vars(), static_cast<int>(components.size()),
                 components[0].order());
    for (std::size_t i = 0; i < components.size(); ++i)
        f.set_component(static_cast<int>(i), components[i]);
    return f;
}

void MapGermJet::set_component(int i, const Jet& jet) {
    if (i < 0 || i >= target_dim())
        throw argument_error("component index out of range");
    if (jet.num_vars() != source_dim_)
        throw argument_error("component variable count mismatch");
    if (jet.order() != order_)
        throw argument_error("component order mismatch");
    if (jet.constant_term() != 0)
        throw argument_error("map germ component has nonzero constant term");
    components_[i] = jet;
}

MapGermJet MapGermJet::truncated(int new_order) const {
    MapGermJet f(source_dim_, target_dim(), new_order);
    for (int i = 0; i < target_dim(); ++i)
        f.set_component(i, components_[i].truncated(new_order));
    return f;
}

int MapGermJet::max_degree() const {
    int d = -1;
    for (const auto& comp : components_)
        d = std::max(d, comp.max_degree());
    return d;
}

Jet jet_compose(const Jet& outer, const MapGermJet& inner) {
    if (outer.num_vars() != inner.target_dim())
        throw argument_error("jet_compose: outer variable count must equal inner target dim");
    if (outer.order() != inner.order())
        throw argument_error("jet_compose: order mismatch");
    for (int j = 0; j < inner.target_dim(); ++j)
        if (inner.component(j).constant_term() != 0)
            throw argument_error("jet_compose: inner germ has nonzero constant term");

    int order = outer.order();
    int m = inner.source_dim();

    // Cached powers of each inner component. A based component has content
    // of degree >= 1, so exponents above the order only produce zero.
    std::vector<std::vector<Jet>> powers(inner.target_dim());
    auto power = [&](int j, int e) -> const Jet& {
        auto& cache = powers[j];
        if (cache.empty())
            cache.push_back(Jet::constant(m, order, 1));
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(jet_mul(cache.back(), inner.component(j)));
        return cache[e];
    };

    Jet result(m, order);
    for (const auto& [mi, c] : outer.terms()) {
        if (mi.degree() > order)
            continue;
        Jet term = Jet::constant(m, order, c);
        for (int j = 0; j < mi.num_vars(); ++j) {
            int e = mi.exponents[j];
            if (e == 0)
                continue;
            term = jet_mul(term, power(j, e));
            if (term.is_zero())
                break;
        }
        result += term;
    }
    return result;
}

MapGermJet map_compose(const MapGermJet& outer, const MapGermJet& inner) {
    if (outer.source_dim() != inner.target_dim())
        throw argument_error("map_compose: dimension mismatch");
    std::vector<Jet> comps;
    comps.reserve(outer.target_dim());
    for (int i = 0; i < outer.target_dim(); ++i)
        comps.push_back(jet_compose(outer.component(i), inner));
    return MapGermJet::from_components(std::move(comps));
}

}  // namespace germstab
