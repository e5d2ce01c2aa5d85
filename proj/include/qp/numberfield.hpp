#pragma once

#include "qp/matrix.hpp"
#include "qp/poly.hpp"

namespace qp {

// Element of a number field, stored by rational coordinates relative to the
// field's integral basis.
struct NFElement {
    std::vector<Rat> coords;

    NFElement() = default;
    explicit NFElement(std::vector<Rat> c) : coords(std::move(c)) {}
    bool operator==(const NFElement& o) const { return coords == o.coords; }
    bool operator!=(const NFElement& o) const { return coords != o.coords; }
    bool is_zero() const
    {
        for (auto& c : coords)
            if (c != 0) return false;
        return true;
    }
    bool is_integral() const
    {
        for (auto& c : coords)
            if (c.get_den() != 1) return false;
        return true;
    }
};

// Number field Q[t]/(f) with a maximal-order integral basis. Rows of `basis`
// express the integral basis in the power basis 1, t, ..., t^(d-1); the
// first basis element is always 1.
class NumberField {
public:
    IntPoly min_poly;
    int degree = 0;
    MatQ basis;
    MatQ basis_inv;
    Int disc; // field discriminant

    NumberField() = default;

    static NumberField rationals();

    NFElement zero() const { return NFElement(std::vector<Rat>(degree, Rat(0))); }
    NFElement one() const;
    NFElement from_rational(const Rat& r) const;
    NFElement generator() const; // the class of t

    NFElement add(const NFElement& a, const NFElement& b) const;
    NFElement sub(const NFElement& a, const NFElement& b) const;
    NFElement neg(const NFElement& a) const;
    NFElement mul(const NFElement& a, const NFElement& b) const;
    NFElement mul(const Rat& r, const NFElement& a) const;
    NFElement inv(const NFElement& a) const;
    NFElement div(const NFElement& a, const NFElement& b) const;

    // power-basis coordinates of an element (row vector times basis)
    std::vector<Rat> to_power_basis(const NFElement& a) const;
    NFElement from_power_basis(const std::vector<Rat>& p) const;

    // field norm and a unit test for integral elements
    Rat norm(const NFElement& a) const;
    bool is_unit(const NFElement& a) const;

    // real embedding sending the generator to the largest real root
    double embed(const NFElement& a) const;
    int sign(const NFElement& a) const; // certified, a may be zero

    // coordinates of the ring multiplication table, cached lazily elsewhere
    std::string str(const NFElement& a, const std::string& var = "a") const;
};

// Maximal order of Q[t]/(f) for monic irreducible f of degree <= 8.
NumberField nf_maximal_order(const IntPoly& f);

// Dedekind test: is Z[t]/(f) already p-maximal?
bool dedekind_p_maximal(const IntPoly& f, const Int& p);

} // namespace qp
