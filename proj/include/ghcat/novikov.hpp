#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghcat/rational.hpp"

namespace ghcat {

// Truncation context. All series arithmetic is performed modulo terms with
// exponent >= energy_cap ("mod T^E"); exponents below -floor_bound are a
// FloorUnderflow. floor_bound == nullopt disables the floor check (Lambda-valued
// intermediates in witness arithmetic).
struct Trunc {
    Rat energy_cap;
    std::optional<Rat> floor_bound; // 0 for Lambda_0 slots

    static Trunc lambda0(Rat cap) { return Trunc{std::move(cap), Rat(0)}; }
    static Trunc lambda(Rat cap) { return Trunc{std::move(cap), std::nullopt}; }
    static Trunc with_floor(Rat cap, Rat floor) { return Trunc{std::move(cap), std::move(floor)}; }
};

// Finite formal sum sum_i c_i T^{e_i} with exact rational coefficients and
// exponents, exponents strictly increasing, no zero coefficients stored.
// Canonical form is unique, so operator== is bit equality.
class Scalar {
public:
    using Term = std::pair<Rat, Rat>; // (exponent, coefficient)

    Scalar() = default;
    static Scalar zero() { return Scalar(); }
    static Scalar one() { return monomial(Rat(1), Rat(0)); }
    static Scalar tpow(const Rat& e) { return monomial(Rat(1), e); }
    static Scalar monomial(const Rat& c, const Rat& e);
    // Sorts, merges equal exponents, drops zeros. No truncation.
    static Scalar from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    // nullopt encodes +infinity (valuation of 0)
    std::optional<Rat> valuation() const;

    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const { return terms_ < o.terms_; }

    std::string str() const; // e.g. "1 - T^1/2 + 2*T^3"

private:
    std::vector<Term> terms_;
    friend Scalar add(const Scalar&, const Scalar&);
    friend Scalar neg(const Scalar&);
    friend Scalar scale(const Scalar&, const Rat&);
    friend Scalar truncate(const Scalar&, const Trunc&);
    friend Scalar mul(const Scalar&, const Scalar&, const Trunc&);
    friend Scalar tshift(const Scalar&, const Rat&, const Trunc&);
    friend Scalar div_exact(const Scalar&, const Scalar&, const Trunc&);
};

Scalar add(const Scalar& x, const Scalar& y);
Scalar sub(const Scalar& x, const Scalar& y);
Scalar neg(const Scalar& x);
Scalar scale(const Scalar& x, const Rat& c);
// Drops terms with exponent >= E; FloorUnderflow if a term sits below the floor.
Scalar truncate(const Scalar& x, const Trunc& t);
// Convolution product, truncated at E.
Scalar mul(const Scalar& x, const Scalar& y, const Trunc& t);
// Adds delta to every exponent.
Scalar tshift(const Scalar& x, const Rat& delta, const Trunc& t);
// Series quotient q with q*y == x mod T^E. Requires y != 0 and val(x) >= val(y)
// whenever the floor forbids negative exponents; the quotient is exact mod T^E.
Scalar div_exact(const Scalar& x, const Scalar& y, const Trunc& t);

// min(val x, +inf) as a comparable; true when val(x) >= bound (0 counts as >= anything).
bool valuation_at_least(const Scalar& x, const Rat& bound);
bool valuation_greater(const Scalar& x, const Rat& bound);

} // namespace ghcat
