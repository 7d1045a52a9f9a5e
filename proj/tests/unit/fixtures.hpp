#pragma once

#include <vector>

#include "adjoints/fieldtower.hpp"
#include "adjoints/laurent.hpp"
#include "adjoints/multipoly.hpp"

namespace fixtures {

using namespace adjoints;

inline const std::vector<std::string>& sextic_vars() {
    static const std::vector<std::string> v{"x", "y", "z", "w"};
    return v;
}

// w^3*y^2*z + (x*z + w^2)^3, an irreducible sextic surface in P^3
inline MultiPoly sextic_poly() {
    const auto& vs = sextic_vars();
    MultiPoly x = MultiPoly::variable(vs, "x"), y = MultiPoly::variable(vs, "y"),
              z = MultiPoly::variable(vs, "z"), w = MultiPoly::variable(vs, "w");
    return w.pow(3) * y.pow(2) * z + (x * z + w.pow(2)).pow(3);
}

// Q(s)[a], a^2 + s = 0
inline TowerPtr tower_qsa() {
    TowerPtr base = FieldTower::make({"s"});
    TowerElem s = TowerElem::symbol(base, "s");
    return base->extended("a", {s, TowerElem::zero(base), TowerElem::one(base)});
}

// The known divisor of the sextic: images of (x, y, z, w), w truncated at 11.
inline std::vector<TruncLaurent> sextic_images(const TowerPtr& t) {
    TowerElem s = TowerElem::symbol(t, "s");
    TowerElem a = TowerElem::symbol(t, "a");
    TowerElem one = TowerElem::one(t);
    auto r = [&](long n, long d = 1) { return TowerElem::from_rational(t, rat_of(n, d)); };
    TruncLaurent ix = TruncLaurent::constant(one);
    TruncLaurent iy = TruncLaurent::monomial(r(-8) / s, 3);
    TruncLaurent iz = TruncLaurent::monomial(r(64) / s, 6);
    std::vector<TowerElem> wc{
        r(-8) / s * a,                // t^3
        r(-8) / s,                    // t^4
        r(4) / (s * s) * a,           // t^5
        TowerElem::zero(t),           // t^6
        r(1) / (s * s * s) * a,       // t^7
        TowerElem::zero(t),           // t^8
        r(1, 2) / (s * s * s * s) * a,  // t^9
        TowerElem::zero(t),           // t^10
    };
    TruncLaurent iw = TruncLaurent::make(t, 3, wc, 11);
    return {ix, iy, iz, iw};
}

}  // namespace fixtures
