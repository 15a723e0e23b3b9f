#include "ghcat/novikov.hpp"

#include <algorithm>

namespace ghcat {

Scalar Scalar::monomial(const Rat& c, const Rat& e) {
    Scalar s;
    if (c != 0) s.terms_.push_back({e, c});
    return s;
}

Scalar Scalar::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    Scalar s;
    for (auto& t : terms) {
        if (t.second == 0) continue;
        if (!s.terms_.empty() && s.terms_.back().first == t.first) {
            s.terms_.back().second += t.second;
            if (s.terms_.back().second == 0) s.terms_.pop_back();
        } else {
            s.terms_.push_back(std::move(t));
        }
    }
    return s;
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

std::optional<Rat> Scalar::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().first;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat ac = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (e == 0) {
            out += rat_str(ac);
        } else {
            if (ac != 1) out += rat_str(ac) + "*";
            out += "T^" + rat_str(e);
        }
    }
    return out;
}

Scalar add(const Scalar& x, const Scalar& y) {
    Scalar s;
    s.terms_.reserve(x.terms_.size() + y.terms_.size());
    auto a = x.terms_.begin(), b = y.terms_.begin();
    while (a != x.terms_.end() && b != y.terms_.end()) {
        if (a->first < b->first) {
            s.terms_.push_back(*a++);
        } else if (b->first < a->first) {
            s.terms_.push_back(*b++);
        } else {
            Rat c = a->second + b->second;
            if (c != 0) s.terms_.push_back({a->first, std::move(c)});
            ++a, ++b;
        }
    }
    s.terms_.insert(s.terms_.end(), a, x.terms_.end());
    s.terms_.insert(s.terms_.end(), b, y.terms_.end());
    return s;
}

Scalar sub(const Scalar& x, const Scalar& y) { return add(x, neg(y)); }

Scalar neg(const Scalar& x) {
    Scalar s = x;
    for (auto& t : s.terms_) t.second = -t.second;
    return s;
}

Scalar scale(const Scalar& x, const Rat& c) {
    if (c == 0) return Scalar();
    Scalar s = x;
    for (auto& t : s.terms_) t.second *= c;
    return s;
}

Scalar truncate(const Scalar& x, const Trunc& t) {
    Scalar s;
    for (const auto& term : x.terms_) {
        if (t.floor_bound && term.first < -*t.floor_bound)
            fail(ErrKind::FloorUnderflow,
                 "exponent " + rat_str(term.first) + " below floor -" + rat_str(*t.floor_bound));
        if (term.first < t.energy_cap) s.terms_.push_back(term);
    }
    return s;
}

Scalar mul(const Scalar& x, const Scalar& y, const Trunc& t) {
    std::vector<Scalar::Term> prod;
    prod.reserve(x.terms_.size() * y.terms_.size());
    for (const auto& a : x.terms_)
        for (const auto& b : y.terms_) {
            Rat e = a.first + b.first;
            if (e >= t.energy_cap) continue;
            if (t.floor_bound && e < -*t.floor_bound)
                fail(ErrKind::FloorUnderflow,
                     "product exponent " + rat_str(e) + " below floor -" + rat_str(*t.floor_bound));
            prod.push_back({std::move(e), a.second * b.second});
        }
    return Scalar::from_terms(std::move(prod));
}

Scalar tshift(const Scalar& x, const Rat& delta, const Trunc& t) {
    Scalar s;
    for (const auto& a : x.terms_) {
        Rat e = a.first + delta;
        if (e >= t.energy_cap) continue;
        if (t.floor_bound && e < -*t.floor_bound)
            fail(ErrKind::FloorUnderflow,
                 "shifted exponent " + rat_str(e) + " below floor -" + rat_str(*t.floor_bound));
        s.terms_.push_back({std::move(e), a.second});
    }
    return s;
}

Scalar div_exact(const Scalar& x, const Scalar& y, const Trunc& t) {
    if (y.is_zero()) fail(ErrKind::InputError, "division by zero scalar");
    const Rat& vy = y.terms_.front().first;
    const Rat& cy = y.terms_.front().second;
    Scalar q;
    Scalar r = x;
    int guard = 0;
    while (!r.is_zero() && r.terms_.front().first - vy < t.energy_cap) {
        if (++guard > 200000)
            fail(ErrKind::TruncationInsufficient, "series division did not stabilize below the cap");
        Rat e = r.terms_.front().first - vy;
        if (t.floor_bound && e < -*t.floor_bound)
            fail(ErrKind::FloorUnderflow, "quotient exponent " + rat_str(e) + " below floor");
        Rat c = r.terms_.front().second / cy;
        Scalar mono = Scalar::monomial(c, e);
        q.terms_.push_back({std::move(e), std::move(c)});
        // r only matters below T^{E + vy}
        Trunc wide{t.energy_cap + vy, std::nullopt};
        r = sub(r, mul(mono, y, wide));
    }
    return q;
}

bool valuation_at_least(const Scalar& x, const Rat& bound) {
    auto v = x.valuation();
    return !v || *v >= bound;
}

bool valuation_greater(const Scalar& x, const Rat& bound) {
    auto v = x.valuation();
    return !v || *v > bound;
}

} // namespace ghcat
