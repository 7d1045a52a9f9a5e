#include "adjoints/puiseux.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "adjoints/errors.hpp"
#include "adjoints/factor.hpp"

namespace adjoints {

namespace {

// ----------------------------------------------------- bivariate over tower

struct BiPoly {
    TowerPtr tower;
    std::map<std::pair<long, long>, TowerElem> terms;  // (x-exp, y-exp) -> coeff

    void add(long i, long j, const TowerElem& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(i, j);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            TowerElem s = it->second + c;
            if (s.is_zero()) terms.erase(it);
            else it->second = s;
        }
    }
    bool zero() const { return terms.empty(); }
    long deg_y() const {
        long d = -1;
        for (const auto& [e, c] : terms) d = std::max(d, e.second);
        return d;
    }
};

// lift a bivariate rational-coefficient polynomial into a tower
BiPoly lift_bipoly(const MultiPoly& p, std::size_t xi, std::size_t yi, const TowerPtr& t) {
    BiPoly out;
    out.tower = t;
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k != xi && k != yi && e[k] != 0)
                throw FormatError("polynomial is not bivariate in the selected pair");
        out.add(e[xi], e[yi], TowerElem::from_rational(t, c));
    }
    return out;
}

// G(u0 + U, v0 + V)
BiPoly translate(const BiPoly& g, const TowerElem& u0, const TowerElem& v0) {
    BiPoly out;
    out.tower = g.tower;
    if (u0.is_zero() && v0.is_zero()) return g;
    long dx = 0, dy = 0;
    for (const auto& [e, c] : g.terms) {
        dx = std::max(dx, e.first);
        dy = std::max(dy, e.second);
    }
    // binomial rows: (u0 + U)^i -> row[i][k] = C(i,k) u0^(i-k)
    auto rows = [](const TowerElem& a, long dmax) {
        std::vector<std::vector<TowerElem>> r(static_cast<std::size_t>(dmax + 1));
        TowerPtr t = a.tower();
        std::vector<TowerElem> apow{TowerElem::one(t)};
        for (long k = 1; k <= dmax; ++k) apow.push_back(apow.back() * a);
        for (long i = 0; i <= dmax; ++i) {
            for (long k = 0; k <= i; ++k) {
                Rat b(binomial(i, k));
                r[static_cast<std::size_t>(i)].push_back(
                    apow[static_cast<std::size_t>(i - k)] * b);
            }
        }
        return r;
    };
    auto rx = rows(u0, dx), ry = rows(v0, dy);
    for (const auto& [e, c] : g.terms) {
        const auto& bx = rx[static_cast<std::size_t>(e.first)];
        const auto& by = ry[static_cast<std::size_t>(e.second)];
        for (long k = 0; k < static_cast<long>(bx.size()); ++k) {
            TowerElem ck = c * bx[static_cast<std::size_t>(k)];
            if (ck.is_zero()) continue;
            for (long l = 0; l < static_cast<long>(by.size()); ++l)
                out.add(k, l, ck * by[static_cast<std::size_t>(l)]);
        }
    }
    return out;
}

// lift every coefficient into a taller tower (same base, extra extensions)
BiPoly lift_tower(const BiPoly& g, const TowerPtr& t) {
    BiPoly out;
    out.tower = t;
    int h = static_cast<int>(t->num_extensions());
    for (const auto& [e, c] : g.terms) {
        detail::TVal v = t->v_lift(c.height(), h, c.val());
        out.add(e.first, e.second, TowerElem::from_val(t, h, std::move(v)));
    }
    return out;
}

// H(x^e, x^q (c + y)) / x^N
BiPoly edge_transform(const BiPoly& g, long e, long q, const TowerElem& c) {
    BiPoly out;
    out.tower = g.tower;
    long dy = g.deg_y();
    // (c + y)^j expansions
    std::vector<std::vector<TowerElem>> pows(static_cast<std::size_t>(dy + 1));
    std::vector<TowerElem> cpow{TowerElem::one(g.tower, c.height())};
    for (long k = 1; k <= dy; ++k) cpow.push_back(cpow.back() * c);
    for (long j = 0; j <= dy; ++j)
        for (long k = 0; k <= j; ++k)
            pows[static_cast<std::size_t>(j)].push_back(
                cpow[static_cast<std::size_t>(j - k)] * Rat(binomial(j, k)));
    long N = 0;
    bool first = true;
    for (const auto& [ee, cc] : g.terms) {
        long o = e * ee.first + q * ee.second;
        if (first || o < N) N = o;
        first = false;
    }
    for (const auto& [ee, cc] : g.terms) {
        long base = e * ee.first + q * ee.second - N;
        const auto& row = pows[static_cast<std::size_t>(ee.second)];
        for (long k = 0; k < static_cast<long>(row.size()); ++k) {
            TowerElem v = cc * row[static_cast<std::size_t>(k)];
            out.add(base, k, v);
        }
    }
    return out;
}

BiPoly bipoly_dy(const BiPoly& g) {
    BiPoly out;
    out.tower = g.tower;
    for (const auto& [e, c] : g.terms) {
        if (e.second == 0) continue;
        out.add(e.first, e.second - 1, c * Rat(e.second));
    }
    return out;
}

TruncLaurent bipoly_eval(const BiPoly& g, const TruncLaurent& xs, const TruncLaurent& ys) {
    TowerPtr t = g.tower;
    std::vector<TruncLaurent> xpow{TruncLaurent::constant(TowerElem::one(t))};
    std::vector<TruncLaurent> ypow{TruncLaurent::constant(TowerElem::one(t))};
    auto at = [](std::vector<TruncLaurent>& v, const TruncLaurent& b, long k) -> const TruncLaurent& {
        while (static_cast<long>(v.size()) <= k) v.push_back(v.back() * b);
        return v[static_cast<std::size_t>(k)];
    };
    TruncLaurent acc = TruncLaurent::zero(t, kExactFrontier);
    for (const auto& [e, c] : g.terms) {
        TruncLaurent term = at(xpow, xs, e.first) * at(ypow, ys, e.second);
        acc = acc + term * c;
    }
    return acc;
}

// ord_V of g(0, V); -1 when g(0, V) == 0
long ord_y_at_zero(const BiPoly& g) {
    long o = -1;
    for (const auto& [e, c] : g.terms) {
        if (e.first != 0) continue;
        if (o < 0 || e.second < o) o = e.second;
    }
    return o;
}

// ---------------------------------------------------------- newton polygon

struct Edge {
    long e = 1, q = 1;       // exponent q/e, gcd(q, e) = 1
    TPoly psi;               // edge polynomial in v = c^e, ascending
};

std::vector<Edge> newton_edges(const BiPoly& g) {
    // minimal y-exponent per x-exponent
    std::map<long, long> minj;
    for (const auto& [e, c] : g.terms) {
        auto it = minj.find(e.first);
        if (it == minj.end() || e.second < it->second) minj[e.first] = e.second;
    }
    std::vector<std::pair<long, long>> pts(minj.begin(), minj.end());
    // lower hull (Andrew), points already sorted by x
    std::vector<std::pair<long, long>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            __int128 cross = static_cast<__int128>(b.first - a.first) * (p.second - a.second) -
                             static_cast<__int128>(b.second - a.second) * (p.first - a.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    std::vector<Edge> edges;
    TowerPtr t = g.tower;
    int h = static_cast<int>(t->num_extensions());
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        auto [i1, j1] = hull[k];
        auto [i2, j2] = hull[k + 1];
        if (j1 <= j2) continue;  // only negative-slope edges carry local roots
        long di = i2 - i1, dj = j1 - j2;
        long gdiv = std::gcd(di, dj);
        Edge edge;
        edge.e = dj / gdiv;
        edge.q = di / gdiv;
        for (long m = 0; m <= gdiv; ++m) {
            auto it = g.terms.find({i2 - m * edge.q, j2 + m * edge.e});
            edge.psi.push_back(it == g.terms.end() ? TowerElem::zero(t, h) : it->second);
        }
        edges.push_back(std::move(edge));
    }
    return edges;
}

// ------------------------------------------------------------ NP recursion

std::string fresh_symbol(const TowerPtr& t, const std::vector<std::string>& avoid) {
    static const char* pool = "abcdefghijklmnopqr";
    for (const char* p = pool; *p; ++p) {
        std::string s(1, *p);
        if (s == "t") continue;
        if (t->symbol_level(s) >= 0) continue;
        if (std::find(avoid.begin(), avoid.end(), s) != avoid.end()) continue;
        return s;
    }
    for (int k = 0;; ++k) {
        std::string s = "a" + std::to_string(k);
        if (t->symbol_level(s) < 0 && std::find(avoid.begin(), avoid.end(), s) == avoid.end())
            return s;
    }
}

struct Step {
    long e = 1, q = 1;
    TowerElem c;  // over the tower after any extension
};

struct RawBranch {
    TowerPtr tower;
    std::vector<Step> steps;
    BiPoly separated;  // simple root y=0 at x=0
    long class_degree = 1;
};

void np_rec(const BiPoly& H, long class_deg, std::vector<Step>& steps,
            const std::vector<std::string>& avoid, std::vector<RawBranch>& out, int depth) {
    if (depth > 256)
        throw FrontierTooSmall("branch separation did not terminate (is the curve squarefree?)");
    TowerPtr K = H.tower;
    for (const Edge& edge : newton_edges(H)) {
        for (const auto& [g, mult] : tp_factor(edge.psi)) {
            long gdeg = tp_degree(g);
            // adjoin the root v of g when it is not rational in K
            TowerPtr K1 = K;
            TowerElem v = TowerElem::zero(K);
            if (gdeg == 1) {
                v = -g[0];
            } else {
                std::string sym = fresh_symbol(K, avoid);
                K1 = K->extended(sym, g, /*check_squarefree=*/false);
                v = TowerElem::symbol(K1, sym);
            }
            // c with c^e = v, preferring the smallest extension
            TowerPtr K2 = K1;
            TowerElem c = v;
            if (edge.e > 1) {
                int h1 = static_cast<int>(K1->num_extensions());
                TPoly root_poly(static_cast<std::size_t>(edge.e + 1), TowerElem::zero(K1, h1));
                root_poly[0] = -v;
                root_poly[static_cast<std::size_t>(edge.e)] = TowerElem::one(K1, h1);
                auto fs = tp_factor(root_poly);
                // minimal-degree factor; prefer a positive rational root so
                // monomial parametrizations come out with positive signs
                const TPoly* best = nullptr;
                auto rank2 = [](const TPoly& f) {
                    Rat r;
                    if (tp_degree(f) == 1 && (-f[0]).rational_value(&r) && r > 0) return 0;
                    return 1;
                };
                for (const auto& [fac, fm] : fs) {
                    if (!best || tp_degree(fac) < tp_degree(*best) ||
                        (tp_degree(fac) == tp_degree(*best) && rank2(fac) < rank2(*best)))
                        best = &fac;
                }
                if (tp_degree(*best) == 1) {
                    c = -(*best)[0];
                } else {
                    std::string sym = fresh_symbol(K1, avoid);
                    K2 = K1->extended(sym, *best, /*check_squarefree=*/false);
                    c = TowerElem::symbol(K2, sym);
                }
            }
            BiPoly H2 = lift_tower(H, K2);
            BiPoly H1 = edge_transform(H2, edge.e, edge.q, c);
            steps.push_back(Step{edge.e, edge.q, c});
            long cd = class_deg * gdeg;
            if (mult == 1) {
                out.push_back(RawBranch{K2, steps, H1, cd});
            } else {
                np_rec(H1, cd, steps, avoid, out, depth + 1);
            }
            steps.pop_back();
        }
    }
}

// extends the unique power-series root y(x), y(0) = 0, of a separated local
// equation to precision x^P by Newton iteration
TruncLaurent newton_extend(const BiPoly& H, std::int64_t P) {
    TowerPtr t = H.tower;
    BiPoly Hy = bipoly_dy(H);
    TruncLaurent x = TruncLaurent::t_power(t, 1);
    TruncLaurent y = TruncLaurent::zero(t, kExactFrontier);  // correct mod tau^1
    std::int64_t correct = 1;
    for (int guard = 0; guard < 64 && correct < P; ++guard) {
        std::int64_t target = std::min<std::int64_t>(2 * correct, P);
        TruncLaurent hv = bipoly_eval(H, x, y);
        if (hv.is_exact_zero()) return y;  // polynomial root, exact
        TruncLaurent hyv = bipoly_eval(Hy, x, y);
        TruncLaurent corr = hv.truncated(target) / hyv.truncated(target);
        // iterates are polynomials; coefficients below `target` are final
        TruncLaurent next = y - corr;
        std::vector<TowerElem> window;
        for (std::int64_t k = std::min<std::int64_t>(next.lead(), target); k < target; ++k)
            window.push_back(next.coeff(k));
        std::int64_t lead = std::min<std::int64_t>(next.lead(), target);
        y = TruncLaurent::make(t, lead, std::move(window), kExactFrontier);
        correct = target;
    }
    if (correct < P)
        throw FrontierTooSmall("newton iteration did not reach the requested precision");
    TruncLaurent hv = bipoly_eval(H, x, y);
    if (hv.is_exact_zero()) return y;
    return y.truncated(P);
}

MultiPoly chart_shear(const MultiPoly& aff, std::size_t xi, std::size_t yi, long lambda) {
    if (lambda == 0) return aff;
    MultiPoly sub = MultiPoly::variable(aff.vars(), aff.vars()[xi]) +
                    MultiPoly::variable(aff.vars(), aff.vars()[yi]) * Rat(lambda);
    return aff.substituted(xi, sub);
}

// local coordinate variable indices per chart, in (u, v) order
std::pair<std::size_t, std::size_t> chart_locals(int chart) {
    switch (chart) {
        case 2: return {0, 1};
        case 1: return {0, 2};
        case 0: return {1, 2};
        default: throw FormatError("chart index must be 0, 1 or 2");
    }
}

TowerPtr point_tower(const SingularPointDesc& pt, std::size_t uvar, TowerElem* u0_out,
                     TowerElem* v0_out) {
    long deg = pt.minpoly_x.degree_in(uvar);
    TowerPtr q = FieldTower::rationals();
    TowerElem u0 = TowerElem::zero(q);
    TowerPtr K = q;
    if (deg == 1) {
        // root of a monic-scaled linear: -c0/c1
        Rat c1 = pt.minpoly_x.coeff_in(uvar, 1).constant_value();
        Rat c0 = pt.minpoly_x.coeff_in(uvar, 0).constant_value();
        u0 = TowerElem::from_rational(q, -c0 / c1);
    } else {
        std::string sym = fresh_symbol(q, pt.minpoly_x.vars());
        std::vector<TowerElem> mp;
        Rat lc = pt.minpoly_x.coeff_in(uvar, static_cast<int>(deg)).constant_value();
        for (long k = 0; k <= deg; ++k)
            mp.push_back(TowerElem::from_rational(
                q, pt.minpoly_x.coeff_in(uvar, static_cast<int>(k)).constant_value() / lc));
        K = q->extended(sym, mp, /*check_squarefree=*/false);
        u0 = TowerElem::symbol(K, sym);
    }
    TowerElem v0 = TowerElem::zero(K);
    TowerElem upow = TowerElem::one(K);
    long ydeg = std::max(pt.y_expr.degree_in(uvar), 0L);
    for (long k = 0; k <= ydeg; ++k) {
        if (!pt.y_expr.is_zero()) {
            Rat ck = pt.y_expr.coeff_in(uvar, static_cast<int>(k)).constant_value();
            if (ck != 0) v0 = v0 + upow * ck;
        }
        upow = upow * u0;
    }
    if (u0_out) *u0_out = u0;
    if (v0_out) *v0_out = v0;
    return K;
}

}  // namespace

MultiPoly dehomogenize_chart(const MultiPoly& F, int chart) {
    MultiPoly one = MultiPoly::constant(F.vars(), Rat(1));
    return F.substituted(static_cast<std::size_t>(chart), one);
}

std::vector<PuiseuxBranch> puiseux_branches(const MultiPoly& F_affine,
                                            const SingularPointDesc& point,
                                            std::int64_t frontier) {
    if (frontier < 1) throw FrontierTooSmall("frontier must be at least 1");
    auto [xi, yi] = chart_locals(point.chart);
    MultiPoly sheared = chart_shear(F_affine, xi, yi, point.shear);
    TowerElem u0, v0;
    TowerPtr K = point_tower(point, 0, &u0, &v0);
    BiPoly G = lift_bipoly(sheared, xi, yi, K);
    BiPoly T = translate(G, u0, v0);
    if (T.zero()) throw DegenerateCurve("local equation vanishes identically");
    long n_loc = ord_y_at_zero(T);
    if (n_loc < 0)
        throw DegenerateCurve("curve contains the line u = u0 through the point");
    bool v_divides = true;
    for (const auto& [e, c] : T.terms)
        if (e.second == 0) {
            v_divides = false;
            break;
        }
    if (v_divides) throw DegenerateCurve("curve contains the line v = v0 through the point");

    std::vector<std::string> avoid = F_affine.vars();
    std::vector<RawBranch> raws;
    std::vector<Step> steps;
    np_rec(T, 1, steps, avoid, raws, 0);

    long accounted = 0;
    std::vector<PuiseuxBranch> branches;
    for (const auto& raw : raws) {
        PuiseuxBranch br;
        br.point = point;
        br.point.multiplicity = n_loc;
        br.tower = raw.tower;
        int h = static_cast<int>(raw.tower->num_extensions());
        br.u0 = TowerElem::from_val(raw.tower, h,
                                    raw.tower->v_lift(u0.height(), h, u0.val()));
        br.v0 = TowerElem::from_val(raw.tower, h,
                                    raw.tower->v_lift(v0.height(), h, v0.val()));
        br.class_degree = raw.class_degree;
        // ramification and exponent shifts along the chain
        long E = 1;
        for (const auto& st : raw.steps) E *= st.e;
        br.e = E;
        std::vector<long> Ei(raw.steps.size());  // product of e below step i
        long acc = 1;
        for (std::size_t i = raw.steps.size(); i-- > 0;) {
            Ei[i] = acc;
            acc *= raw.steps[i].e;
        }
        long shift_total = 0;
        for (std::size_t i = 0; i < raw.steps.size(); ++i)
            shift_total += raw.steps[i].q * Ei[i];
        std::int64_t P = std::max<std::int64_t>(frontier - shift_total, 4);
        TruncLaurent inner = newton_extend(raw.separated, P);
        // compose the substitution chain back to the original local frame
        TruncLaurent cur = inner;
        for (std::size_t i = raw.steps.size(); i-- > 0;) {
            const Step& st = raw.steps[i];
            TowerElem ci = TowerElem::from_val(
                raw.tower, h, raw.tower->v_lift(st.c.height(), h, st.c.val()));
            TruncLaurent shifted = cur + TruncLaurent::constant(ci);
            cur = shifted.shifted(st.q * Ei[i]);
        }
        br.v_series = cur.is_exact() ? cur : cur.truncated(frontier);
        accounted += br.e * br.class_degree;
        branches.push_back(std::move(br));
    }
    if (accounted != n_loc)
        throw Error("internal", "branch bookkeeping mismatch: " + std::to_string(accounted) +
                                    " places for local degree " + std::to_string(n_loc));
    return branches;
}

namespace {

// shear search for one chart: returns the lambda under which all singular
// fibers have a single expressible second coordinate and the local equations
// are regular
struct ChartAnalysis {
    long lambda = 0;
    std::vector<SingularPointDesc> points;
};

ChartAnalysis analyze_chart_affine(const MultiPoly& F, int chart) {
    auto [xi, yi] = chart_locals(chart);
    MultiPoly aff = dehomogenize_chart(F, chart);
    long d = F.total_degree();
    long lambda_max = 8 * d * d + 8;
    for (long lambda = 0;; ++lambda) {
        if (lambda > lambda_max)
            throw DegenerateCurve("no shear separates the singular fibers");
        MultiPoly g = chart_shear(aff, xi, yi, lambda);
        MultiPoly gx = g.partial_derivative(xi);
        MultiPoly gy = g.partial_derivative(yi);
        MultiPoly r1 = gx.is_zero() ? MultiPoly{F.vars()} : resultant_bivariate(g, gx, yi);
        MultiPoly r2;
        if (gy.is_zero()) {
            r2 = MultiPoly{F.vars()};
        } else if (poly_gcd(g, gy).total_degree() > 0) {
            throw DegenerateCurve("curve has a repeated or line component in chart " +
                                  F.vars()[static_cast<std::size_t>(chart)]);
        } else {
            r2 = resultant_bivariate(g, gy, yi);
        }
        MultiPoly cand = poly_gcd(r1, r2);
        ChartAnalysis out;
        out.lambda = lambda;
        if (cand.is_zero())
            throw DegenerateCurve("singular locus is not finite in chart " +
                                  F.vars()[static_cast<std::size_t>(chart)]);
        if (cand.degree_in(xi) < 1) return out;  // no affine singular points
        MultiPoly lc_y = g.coeff_in(yi, static_cast<int>(g.degree_in(yi)));
        bool ok = true;
        for (const auto& pf : factor_rational(squarefree_part(cand, xi), xi)) {
            // fiber over the root class of pf.factor
            TowerElem u0, v0;
            SingularPointDesc probe;
            probe.chart = chart;
            probe.shear = lambda;
            // minpoly over the local variable only
            MultiPoly mp{std::vector<std::string>{F.vars()[xi]}};
            for (const auto& [e, c] : pf.factor.terms())
                mp.add_term(ExpVec{e[xi]}, c);
            probe.minpoly_x = mp;
            probe.y_expr = MultiPoly{std::vector<std::string>{F.vars()[xi]}};
            TowerPtr K = point_tower(probe, 0, &u0, &v0);
            int h = static_cast<int>(K->num_extensions());
            // specialize g, gx, gy at x = u0 as univariate polynomials in y
            auto specialize = [&](const MultiPoly& p) {
                long dy2 = std::max(p.degree_in(yi), 0L);
                TPoly out2(static_cast<std::size_t>(dy2 + 1), TowerElem::zero(K, h));
                std::vector<TowerElem> up{TowerElem::one(K, h)};
                for (const auto& [e, c] : p.terms()) {
                    while (static_cast<long>(up.size()) <= e[xi]) up.push_back(up.back() * u0);
                    out2[static_cast<std::size_t>(e[yi])] =
                        out2[static_cast<std::size_t>(e[yi])] +
                        up[static_cast<std::size_t>(e[xi])] * c;
                }
                return tp_trim(std::move(out2));
            };
            TPoly A = specialize(g), Ax = specialize(gx), Ay = specialize(gy);
            TPoly gy_gcd = tp_gcd_monic(tp_gcd_monic(A, Ax), Ay);
            long dgy = tp_degree(gy_gcd);
            if (dgy <= 0) continue;  // spurious resultant root
            if (dgy > 1) {
                ok = false;  // conjugate second coordinates; shear again
                break;
            }
            // regularity: leading y-coefficient must not vanish at the point
            if (!lc_y.is_constant()) {
                TPoly lspec = specialize(lc_y);
                if (tp_degree(lspec) < 0) {
                    ok = false;
                    break;
                }
            }
            SingularPointDesc pt = probe;
            // v0 = -constant of the monic linear gcd, as a polynomial in u0
            TowerElem v0e = -gy_gcd[0];
            MultiPoly yexpr{std::vector<std::string>{F.vars()[xi]}};
            if (K->num_extensions() == 0) {
                Rat rv;
                v0e.rational_value(&rv);
                yexpr.add_term(ExpVec{0}, rv);
            } else {
                auto coords = v0e.decompose();
                for (std::size_t k = 0; k < coords.size(); ++k) {
                    Rat rv;
                    if (!coords[k].rational_value(&rv))
                        throw Error("internal", "point coordinate escaped the root field");
                    if (rv != 0) yexpr.add_term(ExpVec{static_cast<int>(k)}, rv);
                }
            }
            pt.y_expr = yexpr;
            // diagnostic multiplicity: ord_v of the local equation
            out.points.push_back(std::move(pt));
        }
        if (ok) return out;
    }
}

}  // namespace

std::vector<SingularPointDesc> affine_singular_points(const MultiPoly& F) {
    long d = -1;
    if (!F.is_homogeneous(&d)) throw NonHomogeneous("the curve equation must be homogeneous");
    if (F.num_vars() != 3) throw FormatError("plane curves live in three variables");
    if (d < 1) throw DegenerateCurve("degree must be at least 1");
    MultiPoly g = poly_gcd(F, F.partial_derivative(std::size_t(0)));
    g = poly_gcd(g, F.partial_derivative(std::size_t(1)));
    g = poly_gcd(g, F.partial_derivative(std::size_t(2)));
    if (!g.is_constant()) throw DegenerateCurve("the curve is not squarefree");

    std::vector<SingularPointDesc> out;
    // chart z: all affine singular points
    ChartAnalysis az = analyze_chart_affine(F, 2);
    for (auto& p : az.points) out.push_back(std::move(p));

    // chart y: singular points on z = 0 with y != 0
    {
        auto [xi, yi] = chart_locals(1);  // locals (x, z)
        long lambda_max = 8 * d * d + 8;
        for (long lambda = 0;; ++lambda) {
            if (lambda > lambda_max)
                throw DegenerateCurve("no shear regularizes the chart at infinity");
            // sheared homogeneous curve: x -> x + lambda z
            MultiPoly sub = MultiPoly::variable(F.vars(), F.vars()[0]) +
                            MultiPoly::variable(F.vars(), F.vars()[2]) * Rat(lambda);
            MultiPoly Fs = F.substituted(0, sub);
            MultiPoly aff = dehomogenize_chart(Fs, 1);
            // on z = 0: common roots of F, F_x, F_z as univariate in x
            auto on_line = [&](const MultiPoly& p) {
                MultiPoly q{p.vars()};
                for (const auto& [e, c] : p.terms())
                    if (e[yi] == 0) q.add_term(e, c);
                return q;
            };
            MultiPoly h = poly_gcd(on_line(aff), on_line(aff.partial_derivative(xi)));
            h = poly_gcd(h, on_line(aff.partial_derivative(yi)));
            if (h.degree_in(xi) < 1) break;  // no singular points at infinity in this chart
            MultiPoly lc_v = aff.coeff_in(yi, static_cast<int>(aff.degree_in(yi)));
            bool ok = true;
            std::vector<SingularPointDesc> pts;
            for (const auto& pf : factor_rational(squarefree_part(h, xi), xi)) {
                SingularPointDesc pt;
                pt.chart = 1;
                pt.shear = lambda;
                MultiPoly mp{std::vector<std::string>{F.vars()[xi]}};
                for (const auto& [e, c] : pf.factor.terms()) mp.add_term(ExpVec{e[xi]}, c);
                pt.minpoly_x = mp;
                pt.y_expr = MultiPoly{std::vector<std::string>{F.vars()[xi]}};
                if (!lc_v.is_constant()) {
                    // regularity at the point
                    MultiPoly lcu{std::vector<std::string>{F.vars()[xi]}};
                    for (const auto& [e, c] : lc_v.terms()) lcu.add_term(ExpVec{e[xi]}, c);
                    if (poly_gcd(lcu, mp).total_degree() > 0) {
                        ok = false;
                        break;
                    }
                }
                pts.push_back(std::move(pt));
            }
            if (!ok) continue;
            for (auto& p : pts) out.push_back(std::move(p));
            break;
        }
    }

    // chart x: the single remaining point [1:0:0]
    {
        auto point_val = [&](const MultiPoly& p) {
            ExpVec e(3, 0);
            e[0] = static_cast<int>(p.is_zero() ? 0 : 0);
            // value at (1, 0, 0): the coefficient of x^deg
            Rat acc(0);
            for (const auto& [ee, c] : p.terms())
                if (ee[1] == 0 && ee[2] == 0) acc += c;
            return acc;
        };
        bool on_curve = point_val(F) == 0;
        bool sing = on_curve && point_val(F.partial_derivative(std::size_t(1))) == 0 &&
                    point_val(F.partial_derivative(std::size_t(2))) == 0;
        if (sing) {
            auto [xi, yi] = chart_locals(0);  // locals (y, z)
            MultiPoly aff = dehomogenize_chart(F, 0);
            long lambda_max = 8 * d * d + 8;
            for (long lambda = 0;; ++lambda) {
                if (lambda > lambda_max)
                    throw DegenerateCurve("no shear regularizes the chart at [1:0:0]");
                MultiPoly g2 = chart_shear(aff, xi, yi, lambda);
                MultiPoly lc_v = g2.coeff_in(yi, static_cast<int>(g2.degree_in(yi)));
                Rat at0(0);
                if (!lc_v.is_constant()) {
                    for (const auto& [e, c] : lc_v.terms())
                        if (e[xi] == 0) at0 += c;
                } else {
                    at0 = lc_v.constant_value();
                }
                if (at0 == 0) continue;
                SingularPointDesc pt;
                pt.chart = 0;
                pt.shear = lambda;
                pt.minpoly_x = MultiPoly::variable({F.vars()[xi]}, F.vars()[xi]);
                pt.y_expr = MultiPoly{std::vector<std::string>{F.vars()[xi]}};
                out.push_back(std::move(pt));
                break;
            }
        }
    }
    return out;
}

std::vector<FormalPrimeDivisor> branches_to_divisors(const MultiPoly& F,
                                                     const std::vector<PuiseuxBranch>& branches,
                                                     std::int64_t frontier) {
    std::vector<FormalPrimeDivisor> out;
    int counter = 0;
    for (const auto& br : branches) {
        auto [xi, yi] = chart_locals(br.point.chart);
        TowerPtr t = br.tower;
        TruncLaurent v_img = TruncLaurent::constant(br.v0) + br.v_series;
        TruncLaurent u_sheared =
            TruncLaurent::constant(br.u0) + TruncLaurent::t_power(t, br.e);
        TruncLaurent u_img =
            br.point.shear == 0
                ? u_sheared
                : u_sheared + v_img * TowerElem::from_rational(t, Rat(br.point.shear));
        std::vector<TruncLaurent> images(3, TruncLaurent::constant(TowerElem::one(t)));
        images[xi] = u_img;
        images[yi] = v_img;
        // the chart coordinate keeps its exact 1
        DivisorData data;
        data.name = "phi_" + F.vars()[static_cast<std::size_t>(br.point.chart)] +
                    std::to_string(counter++);
        data.tower = t;
        data.images = std::move(images);
        out.push_back(FormalPrimeDivisor::make(data, std::max<std::int64_t>(frontier, 64)));
    }
    return out;
}

std::vector<FormalPrimeDivisor> curve_divisors(const MultiPoly& F, std::int64_t frontier) {
    long d = F.total_degree();
    if (frontier <= 0) frontier = 2 * d * d + 4;
    std::vector<FormalPrimeDivisor> out;
    for (const auto& pt : affine_singular_points(F)) {
        MultiPoly aff = dehomogenize_chart(F, pt.chart);
        auto branches = puiseux_branches(aff, pt, frontier);
        auto divs = branches_to_divisors(F, branches, frontier);
        for (auto& dv : divs) out.push_back(std::move(dv));
    }
    return out;
}

}  // namespace adjoints
