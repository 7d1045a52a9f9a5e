#include "adjoints/fieldtower.hpp"

#include "adjoints/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace adjoints;

namespace {

// Q(s)[a] with a^2 + s = 0
TowerPtr qsa() {
    TowerPtr base = FieldTower::make({"s"});
    TowerElem s = TowerElem::symbol(base, "s");
    std::vector<TowerElem> minpoly{s, TowerElem::zero(base), TowerElem::one(base)};
    return base->extended("a", minpoly);
}

TowerElem elem_s(const TowerPtr& t) { return TowerElem::symbol(t, "s"); }
TowerElem elem_a(const TowerPtr& t) { return TowerElem::symbol(t, "a"); }
TowerElem rat(const TowerPtr& t, long n, long d = 1) {
    return TowerElem::from_rational(t, rat_of(n, d));
}

testutil::Rng g_rng(1234);

TowerElem random_elem(const TowerPtr& t) {
    // random element of Q(s)[a]-shaped towers (1 transcendental, height = full)
    const auto& trans = t->transcendentals();
    int h = static_cast<int>(t->num_extensions());
    TowerElem acc = TowerElem::zero(t);
    TowerElem a = h > 0 ? TowerElem::symbol(t, t->ext(t->num_extensions() - 1).gen)
                        : TowerElem::one(t);
    for (int r = 0; r < (h > 0 ? 2 : 1); ++r) {
        MultiPoly num = testutil::random_poly(g_rng, trans, 2, 2);
        MultiPoly den{trans};
        while (den.is_zero()) den = testutil::random_poly(g_rng, trans, 1, 2);
        TowerElem coeff =
            TowerElem::from_val(t, 0, t->v_frac(num, den)).lifted(h);
        acc = acc + coeff * a.pow(r);
    }
    return acc;
}

}  // namespace

TEST_CASE("reduction by the minimal polynomial") {
    auto t = qsa();
    TowerElem a = elem_a(t), s = elem_s(t);
    CHECK(a * a == -s);
    CHECK(a * a + s == TowerElem::zero(t));
}

TEST_CASE("additive inverse cancels") {
    auto t = qsa();
    TowerElem s = elem_s(t);
    TowerElem x = rat(t, 64) / (s * s);
    CHECK((x + (-x)).is_zero());
}

TEST_CASE("product of base fractions") {
    auto t = qsa();
    TowerElem s = elem_s(t);
    TowerElem m8s = rat(t, -8) / s;
    CHECK(m8s * m8s == rat(t, 64) / (s * s));
}

TEST_CASE("inverses") {
    auto t = qsa();
    TowerElem a = elem_a(t), s = elem_s(t);
    CHECK(a.inv() == -(a / s));
    CHECK((rat(t, 64) / s).inv() == s / rat(t, 64));
    TowerElem u = rat(t, 1) + a;
    TowerElem expect = (rat(t, 1) - a) / (rat(t, 1) + s);
    CHECK(u.inv() == expect);
    CHECK(u * u.inv() == TowerElem::one(t));
    CHECK_THROWS_AS(TowerElem::zero(t).inv(), DivisionByZero);
}

TEST_CASE("decompose in the power basis") {
    auto t = qsa();
    TowerElem a = elem_a(t), s = elem_s(t);
    TowerElem m8s = rat(t, -8) / s;
    auto d = tower_decompose(m8s + m8s * a, 1);
    REQUIRE(d.size() == 2);
    CHECK(d[0].to_string() == "-8/s");
    CHECK(d[1].to_string() == "-8/s");

    auto d7 = tower_decompose(rat(t, 7), 1);
    CHECK(d7[0].to_string() == "7");
    CHECK(d7[1].is_zero());

    auto dsa = tower_decompose(s * a, 1);
    CHECK(dsa[0].is_zero());
    CHECK(dsa[1] == s.decompose()[0].lifted(0));  // s one level down

    CHECK_THROWS_AS(tower_decompose(rat(t, 1), 2), BadLevel);
}

TEST_CASE("decompose sums back") {
    auto t = qsa();
    for (int iter = 0; iter < 100; ++iter) {
        TowerElem x = random_elem(t);
        auto d = x.decompose();
        TowerElem a = elem_a(t);
        TowerElem back = TowerElem::zero(t);
        for (std::size_t r = 0; r < d.size(); ++r)
            back = back + d[r].lifted(1) * a.pow(static_cast<long>(r));
        CHECK(back == x);
    }
}

TEST_CASE("derivatives with implicit differentiation") {
    auto t = qsa();
    TowerElem a = elem_a(t), s = elem_s(t);
    // d/ds a = a/(2s)
    CHECK(tower_deriv(a, "s") == a / (rat(t, 2) * s));
    CHECK(tower_deriv(rat(t, 64) / s, "s") == rat(t, -64) / (s * s));
    // product rule: d/ds (s*a) = (3/2) a
    CHECK(tower_deriv(s * a, "s") == rat(t, 3, 2) * a);
    CHECK_THROWS_AS(tower_deriv(a, "q"), UnknownSymbol);
}

TEST_CASE("field axioms on random elements") {
    auto t = qsa();
    for (int iter = 0; iter < 100; ++iter) {
        TowerElem x = random_elem(t), y = random_elem(t), z = random_elem(t);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!x.is_zero()) CHECK(x * x.inv() == TowerElem::one(t));
        CHECK((x - y == TowerElem::zero(t)) == (x == y));
    }
}

TEST_CASE("leibniz rule on random pairs") {
    auto t = qsa();
    for (int iter = 0; iter < 100; ++iter) {
        TowerElem x = random_elem(t), y = random_elem(t);
        CHECK(tower_deriv(x * y, "s") ==
              tower_deriv(x, "s") * y + x * tower_deriv(y, "s"));
    }
}

TEST_CASE("two-story tower arithmetic") {
    // Q[r][i] with r^2 - 2 and i^2 + 1
    TowerPtr q = FieldTower::rationals();
    TowerPtr qr = q->extended(
        "r", {TowerElem::from_rational(q, Rat(-2)), TowerElem::zero(q), TowerElem::one(q)});
    TowerPtr qri = qr->extended(
        "i", {TowerElem::one(qr), TowerElem::zero(qr), TowerElem::one(qr)});
    TowerElem r = TowerElem::symbol(qri, "r"), i = TowerElem::symbol(qri, "i");
    CHECK(r * r == TowerElem::from_rational(qri, Rat(2)));
    CHECK(i * i == TowerElem::from_rational(qri, Rat(-1)));
    TowerElem x = r + i;
    // (r+i)^-1 * (r+i) == 1
    CHECK(x.inv() * x == TowerElem::one(qri));
    // norm of r+i: (r+i)(r-i) = 2 - (-1) = 3
    CHECK(x * (r - i) == TowerElem::from_rational(qri, Rat(3)));
}

TEST_CASE("squarefree sanity check on extension") {
    TowerPtr q = FieldTower::rationals();
    // (x-1)^2 = x^2 - 2x + 1 is rejected
    CHECK_THROWS_AS(q->extended("b", {TowerElem::one(q),
                                      TowerElem::from_rational(q, Rat(-2)),
                                      TowerElem::one(q)}),
                    FormatError);
    // non-monic rejected
    CHECK_THROWS_AS(q->extended("b", {TowerElem::one(q), TowerElem::zero(q),
                                      TowerElem::from_rational(q, Rat(2))}),
                    FormatError);
}

TEST_CASE("tower mismatch is detected") {
    auto t1 = qsa();
    TowerPtr t2 = FieldTower::make({"u"});
    CHECK_THROWS_AS(elem_s(t1) + TowerElem::symbol(t2, "u"), TowerMismatch);
}

TEST_CASE("element printing") {
    auto t = qsa();
    TowerElem a = elem_a(t), s = elem_s(t);
    CHECK((rat(t, -8) / s).to_string() == "-8/s");
    CHECK((rat(t, 64) / (s * s)).to_string() == "64/s^2");
    CHECK((rat(t, -8) / s * a).to_string() == "-8/s*a");
    CHECK(((rat(t, 1) - s) / (rat(t, 1) + s)).to_string() == "(-s + 1)/(s + 1)");
    CHECK((rat(t, 1) / (rat(t, 2) * s)).to_string() == "1/2/s");
}

TEST_CASE("polynomial evaluation over a tower") {
    auto t = qsa();
    std::vector<std::string> vs{"x", "y"};
    MultiPoly x = MultiPoly::variable(vs, "x"), y = MultiPoly::variable(vs, "y");
    MultiPoly p = x * x + y;
    TowerElem a = elem_a(t), s = elem_s(t);
    CHECK(eval_poly_tower(p, {a, s}) == TowerElem::zero(t));
}

TEST_CASE("univariate tower polynomials") {
    auto t = qsa();
    TowerElem a = elem_a(t);
    // gcd((X-a)(X+1), (X-a)(X+2)) = X - a
    TPoly f1 = tp_mul({-a, TowerElem::one(t)}, {TowerElem::one(t), TowerElem::one(t)});
    TPoly f2 = tp_mul({-a, TowerElem::one(t)}, {rat(t, 2), TowerElem::one(t)});
    TPoly g = tp_gcd_monic(f1, f2);
    REQUIRE(tp_degree(g) == 1);
    CHECK(g[0] == -a);
    CHECK(g[1].is_one());
    // resultant of (X^2 + s) and (X - a) is a^2 + s = 0
    TowerElem s = elem_s(t);
    TPoly m{s, TowerElem::zero(t), TowerElem::one(t)};
    TPoly lin{-a, TowerElem::one(t)};
    CHECK(tp_resultant(m, lin).is_zero());
    // resultant of X^2+s and X-1 is 1+s
    TPoly lin2{-TowerElem::one(t), TowerElem::one(t)};
    CHECK(tp_resultant(m, lin2) == rat(t, 1) + s);
}
