#pragma once

// Shared category fixtures for tests.

#include <string>
#include <vector>

#include "ghcat/ainf.hpp"
#include "ghcat/complex_cat.hpp"
#include "support/gen.hpp"

namespace ghcat::testgen {

// One object, m_1(x) = T^a y, nothing else.
inline Category simple_m1(Rat a = Rat(1, 2), Rat cap = Rat(100)) {
    Category C;
    C.trunc = Trunc::lambda0(cap);
    ObId c = C.add_object("c");
    GenId x = C.add_gen("x", c, c, 0);
    GenId y = C.add_gen("y", c, c, 1);
    C.add_op({x}, y, Scalar::tpow(a));
    return C;
}

// Objects are points of a finite pseudo-metric space; hom(c_i, c_j) = Lambda_0
// u_ij with u_ij o u_jk = T^{a_ij + a_jk - a_ik} u_ik, a_ij = d(i,j)/2.
// Strictly unital DG category (m_1 = 0); d_Hof(c_i, c_j) <= d(i,j).
inline Category metric_category(const std::vector<std::vector<Rat>>& d, Rat cap = Rat(100)) {
    int n = static_cast<int>(d.size());
    Category C;
    C.trunc = Trunc::lambda0(cap);
    std::vector<std::vector<GenId>> u(n, std::vector<GenId>(n));
    for (int i = 0; i < n; ++i) C.add_object("c" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::string nm = i == j ? "e" + std::to_string(i)
                                    : "u" + std::to_string(i) + std::to_string(j);
            u[i][j] = C.add_gen(nm, i, j, 0);
        }
    for (int i = 0; i < n; ++i) C.units[i] = u[i][i];
    auto a = [&](int i, int j) { return d[i][j] / 2; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Rat w = a(i, j) + a(j, k) - a(i, k);
                if (w < 0) fail(ErrKind::InputError, "metric violates the triangle inequality");
                C.add_op({u[i][j], u[j][k]}, u[i][k], Scalar::tpow(w));
            }
    return C;
}

// Rank-one complex with an optional acyclic pair d(a) = T^gamma b attached.
inline FilteredComplex point_complex(const std::string& p, bool with_cone = false,
                                     Rat gamma = Rat(1, 4), Rat cap = Rat(100)) {
    FilteredComplex V;
    V.trunc = Trunc::lambda0(cap);
    V.gens.push_back({p, 0, Rat(0)});
    if (with_cone) {
        V.gens.push_back({p + "_a", 0, Rat(0)});
        V.gens.push_back({p + "_b", 1, Rat(0)});
        V.diff[{1, 2}] = Scalar::tpow(gamma);
    }
    return V;
}

} // namespace ghcat::testgen
