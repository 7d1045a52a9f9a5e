#include "adjoints/factor.hpp"

#include <algorithm>
#include <optional>

#include "adjoints/errors.hpp"

namespace adjoints {

namespace {

// ------------------------------------------------ integer polynomial helpers

using ZPoly = std::vector<Int>;  // ascending coefficients

long zdeg(const ZPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<long>(i);
    return -1;
}

void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (zdeg(a) < 0 || zdeg(b) < 0) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

Int zcontent(const ZPoly& p) {
    Int g(0);
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zprimitive(ZPoly p) {
    Int g = zcontent(p);
    if (g == 0) return p;
    if (p[static_cast<std::size_t>(zdeg(p))] < 0) g = -g;
    for (auto& c : p) c /= g;
    return p;
}

// exact division test over Z; returns quotient when b | a
std::optional<ZPoly> ztry_divexact(ZPoly a, const ZPoly& b) {
    long db = zdeg(b);
    if (db < 0) return std::nullopt;
    long da = zdeg(a);
    if (da < db) return da < 0 ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
    const Int& lcb = b[static_cast<std::size_t>(db)];
    ZPoly q(static_cast<std::size_t>(da - db + 1), Int(0));
    while ((da = zdeg(a)) >= db) {
        Int lca = a[static_cast<std::size_t>(da)];
        if (!mpz_divisible_p(lca.get_mpz_t(), lcb.get_mpz_t())) return std::nullopt;
        Int f = lca / lcb;
        q[static_cast<std::size_t>(da - db)] = f;
        for (long j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(da - db + j)] -= f * b[static_cast<std::size_t>(j)];
    }
    if (zdeg(a) >= 0) return std::nullopt;
    return q;
}

// -------------------------------------------- polynomials modulo an integer

Int smod(const Int& a, const Int& m) {  // symmetric representative in (-m/2, m/2]
    Int r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly mreduce(ZPoly p, const Int& m) {
    for (auto& c : p) {
        c %= m;
        if (c < 0) c += m;
    }
    ztrim(p);
    return p;
}

ZPoly msym(ZPoly p, const Int& m) {
    for (auto& c : p) c = smod(c, m);
    ztrim(p);
    return p;
}

ZPoly madd(const ZPoly& a, const ZPoly& b, const Int& m) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    return mreduce(std::move(r), m);
}

ZPoly msub(const ZPoly& a, const ZPoly& b, const Int& m) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    return mreduce(std::move(r), m);
}

ZPoly mmul(const ZPoly& a, const ZPoly& b, const Int& m) { return mreduce(zmul(a, b), m); }

ZPoly mscale(const ZPoly& a, const Int& c, const Int& m) {
    ZPoly r = a;
    for (auto& x : r) x = (x * c) % m;
    return mreduce(std::move(r), m);
}

Int minv(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw Error("internal", "non-invertible element in modular arithmetic");
    return r;
}

// division by a polynomial whose leading coefficient is invertible mod m
void mdivrem(const ZPoly& a, const ZPoly& b, const Int& m, ZPoly* q_out, ZPoly* r_out) {
    long db = zdeg(b);
    if (db < 0) throw Error("internal", "modular division by zero polynomial");
    Int lcinv = minv(b[static_cast<std::size_t>(db)], m);
    ZPoly r = mreduce(a, m);
    long da = zdeg(r);
    ZPoly q;
    if (da >= db) q.assign(static_cast<std::size_t>(da - db + 1), Int(0));
    while ((da = zdeg(r)) >= db) {
        Int f = (r[static_cast<std::size_t>(da)] * lcinv) % m;
        q[static_cast<std::size_t>(da - db)] = f;
        for (long j = 0; j <= db; ++j) {
            Int& c = r[static_cast<std::size_t>(da - db + j)];
            c = (c - f * b[static_cast<std::size_t>(j)]) % m;
            if (c < 0) c += m;
        }
    }
    ztrim(r);
    if (q_out) *q_out = q;
    if (r_out) *r_out = r;
}

ZPoly mmulmod(const ZPoly& a, const ZPoly& b, const ZPoly& f, const Int& m) {
    ZPoly prod = mmul(a, b, m);
    ZPoly r;
    mdivrem(prod, f, m, nullptr, &r);
    return r;
}

ZPoly mpowmod(ZPoly base, Int e, const ZPoly& f, const Int& m) {
    ZPoly acc{Int(1)};
    ZPoly b;
    mdivrem(base, f, m, nullptr, &b);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = mmulmod(acc, b, f, m);
        b = mmulmod(b, b, f, m);
        e /= 2;
    }
    return acc;
}

ZPoly mmonic(const ZPoly& a, const Int& m) {
    long d = zdeg(a);
    if (d < 0) return a;
    return mscale(a, minv(a[static_cast<std::size_t>(d)], m), m);
}

ZPoly mgcd(ZPoly a, ZPoly b, const Int& p) {
    a = mreduce(std::move(a), p);
    b = mreduce(std::move(b), p);
    while (zdeg(b) >= 0) {
        ZPoly r;
        mdivrem(a, b, p, nullptr, &r);
        a = std::move(b);
        b = std::move(r);
    }
    return mmonic(a, p);
}

ZPoly mderiv(const ZPoly& a, const Int& m) {
    if (a.size() <= 1) return {};
    ZPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = (a[i] * Int(static_cast<long>(i))) % m;
    ztrim(r);
    return r;
}

// ------------------------------------- factorization over F_p (degree-wise)

// equal-degree splitting for a product of irreducibles of degree d
void edf(const ZPoly& f, long d, const Int& p, std::vector<ZPoly>& out) {
    long n = zdeg(f);
    if (n == d) {
        out.push_back(mmonic(f, p));
        return;
    }
    Int pd;
    mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    Int e = (pd - 1) / 2;
    for (long c = 1;; ++c) {
        // deterministic scan over candidates a = (x + c)
        ZPoly a{Int(c), Int(1)};
        ZPoly t = mpowmod(a, e, f, p);
        if (!t.empty()) t[0] = (t[0] - 1 + p) % p;
        ztrim(t);
        ZPoly g = mgcd(f, t, p);
        long dg = zdeg(g);
        if (dg > 0 && dg < n) {
            ZPoly q;
            mdivrem(f, g, p, &q, nullptr);
            edf(g, d, p, out);
            edf(mmonic(q, p), d, p, out);
            return;
        }
    }
}

// distinct-degree then equal-degree factorization of a squarefree monic f
std::vector<ZPoly> factor_mod_p(ZPoly f, const Int& p) {
    std::vector<ZPoly> out;
    f = mmonic(mreduce(std::move(f), p), p);
    ZPoly h{Int(0), Int(1)};  // x
    long d = 0;
    while (zdeg(f) > 0) {
        ++d;
        if (2 * d > zdeg(f)) {
            out.push_back(f);
            break;
        }
        h = mpowmod(h, p, f, p);
        ZPoly hx = h;
        if (hx.size() < 2) hx.resize(2, Int(0));
        hx[1] = (hx[1] - 1 + p) % p;
        ztrim(hx);
        ZPoly g = mgcd(f, hx, p);
        if (zdeg(g) > 0) {
            edf(g, d, p, out);
            ZPoly q;
            mdivrem(f, g, p, &q, nullptr);
            f = mmonic(q, p);
            mdivrem(h, f, p, nullptr, &h);
        }
    }
    std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

// ------------------------------------------------------------ Hensel lifting

struct BezoutPair {
    ZPoly s, t;  // s*g + t*h = 1 (mod p)
};

BezoutPair ext_gcd_mod_p(const ZPoly& g, const ZPoly& h, const Int& p) {
    ZPoly r0 = mreduce(g, p), r1 = mreduce(h, p);
    ZPoly s0{Int(1)}, s1{};
    ZPoly t0{}, t1{Int(1)};
    while (zdeg(r1) >= 0) {
        ZPoly q, r;
        mdivrem(r0, r1, p, &q, &r);
        ZPoly ns = msub(s0, mmul(q, s1, p), p);
        ZPoly nt = msub(t0, mmul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(ns);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (zdeg(r0) != 0) throw Error("internal", "modular factors are not coprime");
    Int c = minv(r0[0], p);
    return BezoutPair{mscale(s0, c, p), mscale(t0, c, p)};
}

// One quadratic Hensel step: from f = g*h (mod m) to (mod m^2); f, g, h monic.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Int& m) {
    Int m2 = m * m;
    ZPoly e = msub(f, mmul(g, h, m2), m2);
    ZPoly q, r;
    mdivrem(mmul(s, e, m2), h, m2, &q, &r);
    ZPoly g1 = madd(g, madd(mmul(t, e, m2), mmul(q, g, m2), m2), m2);
    ZPoly h1 = madd(h, r, m2);
    ZPoly b = msub(madd(mmul(s, g1, m2), mmul(t, h1, m2), m2), ZPoly{Int(1)}, m2);
    ZPoly c, d;
    mdivrem(mmul(s, b, m2), h1, m2, &c, &d);
    ZPoly s1 = msub(s, d, m2);
    ZPoly t1 = msub(t, madd(mmul(t, b, m2), mmul(c, g1, m2), m2), m2);
    g = std::move(g1);
    h = std::move(h1);
    s = std::move(s1);
    t = std::move(t1);
}

// Lifts the monic factorization f = prod(factors) (mod p) to (mod target);
// f monic mod target, target a power of p.
void hensel_lift_tree(const ZPoly& f, std::vector<ZPoly>& factors, std::size_t lo,
                      std::size_t hi, const Int& p, const Int& target) {
    if (hi - lo <= 1) {
        factors[lo] = mreduce(f, target);
        return;
    }
    std::size_t mid = (lo + hi) / 2;
    ZPoly g{Int(1)}, h{Int(1)};
    for (std::size_t i = lo; i < mid; ++i) g = mmul(g, factors[i], p);
    for (std::size_t i = mid; i < hi; ++i) h = mmul(h, factors[i], p);
    BezoutPair bz = ext_gcd_mod_p(g, h, p);
    ZPoly s = bz.s, t = bz.t;
    Int m = p;
    while (m < target) {
        hensel_step(mreduce(f, m * m), g, h, s, t, m);
        m = m * m;
    }
    g = mreduce(g, target);
    h = mreduce(h, target);
    hensel_lift_tree(g, factors, lo, mid, p, target);
    hensel_lift_tree(h, factors, mid, hi, p, target);
}

// ------------------------------------------------------ Zassenhaus assembly

bool is_prime_ui(unsigned long n) {
    Int z(static_cast<long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

// factors a primitive squarefree integer polynomial of degree >= 1
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    long n = zdeg(f);
    if (n == 1) return {f};
    const Int lc = f[static_cast<std::size_t>(n)];

    // prime with invertible lc and squarefree reduction
    unsigned long p_ui = 101;
    Int p;
    for (;; ++p_ui) {
        if (!is_prime_ui(p_ui)) continue;
        p = Int(static_cast<long>(p_ui));
        if (lc % p == 0) continue;
        ZPoly fp = mreduce(f, p);
        if (zdeg(mgcd(fp, mderiv(fp, p), p)) == 0) break;
    }

    std::vector<ZPoly> modular = factor_mod_p(mmonic(mreduce(f, p), p), p);
    if (modular.size() == 1) return {f};

    // coefficient bound: factors of f (times lc) stay below this (Mignotte)
    Int b2 = Int(0);
    for (const auto& c : f) b2 += c * c;
    Int bnd = sqrt(b2) + 1;
    Int two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
    Int B = two_n * bnd * abs(lc);
    Int target = p;
    while (target <= 2 * B) target = target * target;

    // lift f/lc's factorization: work with monic f mod target
    Int lcinv = minv(lc % target, target);
    ZPoly fmonic = mscale(mreduce(f, target), lcinv, target);
    hensel_lift_tree(fmonic, modular, 0, modular.size(), p, target);

    std::vector<ZPoly> result;
    std::vector<ZPoly> active = modular;
    ZPoly rem = f;
    Int lcr = lc;
    std::size_t s = 1;
    while (2 * s <= active.size()) {
        // enumerate index subsets of size s in lexicographic order
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        bool found = false;
        for (;;) {
            ZPoly cand{lcr % target};
            for (std::size_t i : idx) cand = mmul(cand, active[i], target);
            cand = zprimitive(msym(std::move(cand), target));
            auto quot = ztry_divexact(rem, cand);
            if (quot) {
                result.push_back(cand);
                rem = zprimitive(std::move(*quot));
                lcr = rem[static_cast<std::size_t>(zdeg(rem))];
                std::vector<ZPoly> next;
                for (std::size_t i = 0, k = 0; i < active.size(); ++i) {
                    if (k < idx.size() && idx[k] == i) {
                        ++k;
                        continue;
                    }
                    next.push_back(active[i]);
                }
                active = std::move(next);
                found = true;
                break;
            }
            // next subset
            long pos = static_cast<long>(s) - 1;
            while (pos >= 0 &&
                   idx[static_cast<std::size_t>(pos)] ==
                       active.size() - s + static_cast<std::size_t>(pos))
                --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < s; ++i)
                idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++s;
    }
    if (zdeg(rem) >= 1) result.push_back(zprimitive(rem));
    return result;
}

// ----------------------------------------------------------- Q <-> Z bridge

ZPoly to_zpoly(const MultiPoly& f, std::size_t var) {
    for (std::size_t i = 0; i < f.num_vars(); ++i) {
        if (i != var && f.degree_in(i) > 0)
            throw FormatError("factorization input is not univariate");
    }
    long d = f.degree_in(var);
    ZPoly out(static_cast<std::size_t>(d + 1), Int(0));
    Int den(1);
    for (const auto& [e, c] : f.terms()) {
        Int cd = c.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), cd.get_mpz_t());
    }
    for (const auto& [e, c] : f.terms()) {
        Rat scaled = c * Rat(den);
        out[static_cast<std::size_t>(e[var])] = scaled.get_num();
    }
    return zprimitive(out);
}

MultiPoly from_zpoly(const ZPoly& p, const std::vector<std::string>& vars, std::size_t var) {
    MultiPoly out{vars};
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        ExpVec e(vars.size(), 0);
        e[var] = static_cast<int>(i);
        out.add_term(e, Rat(p[i]));
    }
    return out;
}

}  // namespace

std::vector<PolyFactor> factor_rational(const MultiPoly& f, std::size_t var) {
    std::vector<PolyFactor> out;
    if (f.is_zero()) throw FormatError("cannot factor the zero polynomial");
    if (f.degree_in(var) < 1) return out;
    // squarefree decomposition (Yun) over Q
    MultiPoly w = f;
    MultiPoly g = poly_gcd(f, f.partial_derivative(var));
    MultiPoly c = g.is_constant() ? MultiPoly::constant(f.vars(), Rat(1)) : g;
    MultiPoly a = poly_divexact(f, c);        // squarefree part chain start
    MultiPoly y = poly_divexact(f.partial_derivative(var), c);
    MultiPoly z = y - a.partial_derivative(var);
    long mult = 1;
    while (a.degree_in(var) > 0) {
        MultiPoly h = poly_gcd(a, z);
        if (h.degree_in(var) > 0) {
            for (const auto& zf : zassenhaus(to_zpoly(h, var)))
                out.push_back(PolyFactor{from_zpoly(zf, f.vars(), var), mult});
            a = poly_divexact(a, h);
            z = poly_divexact(z, h);
        }
        z = z - a.partial_derivative(var);
        ++mult;
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& x, const PolyFactor& y2) {
        long dx = x.factor.total_degree(), dy = y2.factor.total_degree();
        if (dx != dy) return dx < dy;
        return x.factor.to_string() < y2.factor.to_string();
    });
    return out;
}

// ------------------------------------------------------ tower factorization

std::vector<std::pair<TPoly, long>> tp_squarefree_decomposition(const TPoly& f0) {
    TPoly f = tp_make_monic(f0);
    std::vector<std::pair<TPoly, long>> out;
    if (tp_degree(f) < 1) return out;
    TPoly fp = tp_derivative(f);
    TPoly g = tp_gcd_monic(f, fp);
    TPoly w, y, z;
    {
        TPoly q;
        tp_divmod(f, g, &w, nullptr);
        tp_divmod(fp, g, &y, nullptr);
        z = tp_sub(y, tp_derivative(w));
    }
    long mult = 1;
    while (tp_degree(w) > 0) {
        TPoly h = tp_gcd_monic(w, z);
        if (tp_degree(h) > 0) {
            out.emplace_back(h, mult);
            TPoly q;
            tp_divmod(w, h, &q, nullptr);
            w = std::move(q);
            tp_divmod(z, h, &q, nullptr);
            z = std::move(q);
        }
        z = tp_sub(z, tp_derivative(w));
        ++mult;
    }
    return out;
}

namespace {

// Lagrange interpolation with rational nodes, tower-valued samples.
TPoly tower_interpolate(const std::vector<Rat>& nodes, const std::vector<TowerElem>& values) {
    TowerPtr t = values[0].tower();
    int h = values[0].height();
    TPoly acc;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        TPoly basis{TowerElem::one(t, h)};
        Rat denom(1);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == i) continue;
            basis = tp_mul(basis, TPoly{TowerElem::from_rational(t, -nodes[j], h),
                                        TowerElem::one(t, h)});
            denom *= nodes[i] - nodes[j];
        }
        basis = tp_scale(basis, values[i] * (Rat(1) / denom));
        acc = tp_add(acc, basis);
    }
    return acc;
}

// substitute y -> y + c
TPoly tp_shift(const TPoly& f, const TowerElem& c) {
    TowerPtr t = c.tower();
    int h = c.height();
    TPoly acc;
    TPoly lin{c, TowerElem::one(t, h)};
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = tp_mul(acc, lin);
        acc = tp_add(acc, TPoly{f[i]});
    }
    return acc;
}

// monic irreducible factors of a monic squarefree polynomial over a
// transcendental-free tower
std::vector<TPoly> tp_factor_squarefree(const TPoly& f) {
    long n = tp_degree(f);
    if (n <= 1) return n == 1 ? std::vector<TPoly>{f} : std::vector<TPoly>{};
    TowerPtr tower = f[0].tower();
    int h = f[0].height();
    if (tower->num_transcendentals() != 0)
        throw Error("internal", "tower factorization requires a transcendental-free tower");
    if (h == 0) {
        // base case: factor over Q
        std::vector<std::string> xv{"X"};
        MultiPoly poly{xv};
        for (std::size_t i = 0; i < f.size(); ++i) {
            Rat c;
            f[i].rational_value(&c);
            if (c != 0) poly.add_term(ExpVec{static_cast<int>(i)}, c);
        }
        std::vector<TPoly> out;
        for (const auto& pf : factor_rational(poly, 0)) {
            long d = pf.factor.degree_in(0);
            TPoly g(static_cast<std::size_t>(d + 1), TowerElem::zero(tower, 0));
            for (const auto& [e, c] : pf.factor.terms())
                g[static_cast<std::size_t>(e[0])] = TowerElem::from_rational(tower, c, 0);
            out.push_back(tp_make_monic(g));
        }
        return out;
    }
    // Trager: norm down one level via the resultant with the minimal polynomial
    const auto& ext = tower->ext(static_cast<std::size_t>(h - 1));
    long e = ext.degree();
    TowerElem alpha = TowerElem::from_val(
        tower, h, [&] {
            detail::TVal v = tower->v_zero(h);
            v.coords[1] = tower->v_one(h - 1);
            return v;
        }());
    for (long k = 0;; ++k) {
        TowerElem shift = alpha * Rat(-k);
        TPoly fk = k == 0 ? f : tp_shift(f, shift);  // f(y - k*alpha)
        // coefficients of fk as alpha-polynomials over the level below
        std::vector<std::vector<TowerElem>> coords(fk.size());
        for (std::size_t j = 0; j < fk.size(); ++j) coords[j] = fk[j].decompose();
        // minimal polynomial as a TPoly one level down
        TPoly m;
        for (long j = 0; j <= e; ++j)
            m.push_back(TowerElem::from_val(tower, h - 1,
                                            ext.minpoly[static_cast<std::size_t>(j)]));
        // interpolate N(y) = Res_alpha(m, fk(alpha, y))
        long dn = e * n;
        std::vector<Rat> nodes;
        std::vector<TowerElem> values;
        long node = 0;
        while (static_cast<long>(nodes.size()) <= dn) {
            Rat y0(node++);
            TPoly b(static_cast<std::size_t>(e), TowerElem::zero(tower, h - 1));
            for (std::size_t j = 0; j < fk.size(); ++j) {
                Rat yp = rat_pow(y0, static_cast<long>(j));
                for (long r = 0; r < e; ++r)
                    b[static_cast<std::size_t>(r)] =
                        b[static_cast<std::size_t>(r)] +
                        coords[j][static_cast<std::size_t>(r)] * yp;
            }
            if (tp_degree(b) < 0) continue;  // y0 is a root of the norm; skip node
            nodes.push_back(y0);
            values.push_back(tp_resultant(m, b));
        }
        TPoly norm = tower_interpolate(nodes, values);
        TPoly norm_deriv = tp_derivative(norm);
        if (tp_degree(tp_gcd_monic(norm, norm_deriv)) != 0) continue;  // norm not squarefree
        std::vector<TPoly> sub = tp_factor_squarefree(tp_make_monic(norm));
        std::vector<TPoly> out;
        for (const auto& hfac : sub) {
            // lift factor one level up and undo the shift
            TPoly lifted;
            for (const auto& c : hfac) lifted.push_back(c.lifted(h));
            TPoly shifted = tp_shift(lifted, alpha * Rat(k));  // y -> y + k*alpha
            TPoly g = tp_gcd_monic(f, shifted);
            if (tp_degree(g) > 0) out.push_back(g);
        }
        std::sort(out.begin(), out.end(), [](const TPoly& a, const TPoly& b2) {
            long da = tp_degree(a), db = tp_degree(b2);
            if (da != db) return da < db;
            for (std::size_t i = a.size(); i-- > 0;) {
                std::string sa = a[i].to_string(), sb = b2[i].to_string();
                if (sa != sb) return sa < sb;
            }
            return false;
        });
        return out;
    }
}

}  // namespace

std::vector<std::pair<TPoly, long>> tp_factor(const TPoly& f) {
    std::vector<std::pair<TPoly, long>> out;
    for (const auto& [part, mult] : tp_squarefree_decomposition(f)) {
        for (const auto& irr : tp_factor_squarefree(part)) out.emplace_back(irr, mult);
    }
    return out;
}

MultiPoly resultant_bivariate(const MultiPoly& A, const MultiPoly& B, std::size_t elim_var) {
    if (A.vars() != B.vars())
        throw VariableMismatch("resultant of polynomials over different variable lists");
    std::size_t keep_var = A.num_vars();
    for (std::size_t i = 0; i < A.num_vars(); ++i) {
        if (i == elim_var) continue;
        if (A.degree_in(i) > 0 || B.degree_in(i) > 0) {
            if (keep_var != A.num_vars())
                throw FormatError("resultant_bivariate expects bivariate input");
            keep_var = i;
        }
    }
    if (keep_var == A.num_vars()) keep_var = elim_var == 0 ? 1 : 0;
    long da = A.degree_in(elim_var), db = B.degree_in(elim_var);
    if (da < 0 || db < 0) throw FormatError("resultant of zero polynomial");
    MultiPoly lca = A.coeff_in(elim_var, static_cast<int>(da));
    MultiPoly lcb = B.coeff_in(elim_var, static_cast<int>(db));
    long bound = da * std::max(B.degree_in(keep_var), 0L) +
                 db * std::max(A.degree_in(keep_var), 0L);
    TowerPtr q = FieldTower::rationals();
    auto specialize = [&](const MultiPoly& P, const Rat& x0) {
        long d = P.degree_in(elim_var);
        TPoly out(static_cast<std::size_t>(d + 1), TowerElem::zero(q, 0));
        for (const auto& [e, c] : P.terms()) {
            Rat v = c * rat_pow(x0, e[keep_var]);
            out[static_cast<std::size_t>(e[elim_var])] =
                out[static_cast<std::size_t>(e[elim_var])] +
                TowerElem::from_rational(q, v, 0);
        }
        return out;
    };
    auto eval_at = [&](const MultiPoly& P, const Rat& x0) {
        Rat acc(0);
        for (const auto& [e, c] : P.terms()) acc += c * rat_pow(x0, e[keep_var]);
        return acc;
    };
    std::vector<Rat> nodes;
    std::vector<TowerElem> values;
    long node = 0;
    while (static_cast<long>(nodes.size()) <= bound) {
        Rat x0(node++);
        if (eval_at(lca, x0) == 0 || eval_at(lcb, x0) == 0) continue;  // degree drop
        TPoly a = specialize(A, x0), b = specialize(B, x0);
        nodes.push_back(x0);
        values.push_back(tp_resultant(a, b));
    }
    TPoly interp = tower_interpolate(nodes, values);
    MultiPoly out{A.vars()};
    for (std::size_t i = 0; i < interp.size(); ++i) {
        Rat c;
        interp[i].rational_value(&c);
        if (c == 0) continue;
        ExpVec e(A.num_vars(), 0);
        e[keep_var] = static_cast<int>(i);
        out.add_term(e, c);
    }
    return out;
}

}  // namespace adjoints
