#include "adjoints/multipoly.hpp"

#include <algorithm>
#include <set>

#include "adjoints/errors.hpp"

namespace adjoints {

long exp_degree(const ExpVec& e) {
    long d = 0;
    for (int x : e) d += x;
    return d;
}

int cmp_monomials(const ExpVec& a, const ExpVec& b, MonomialOrder order) {
    if (a.size() != b.size())
        throw VariableMismatch("cannot compare monomials in different variable counts");
    if (order == MonomialOrder::lex) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        }
        return 0;
    }
    long da = exp_degree(a), db = exp_degree(b);
    if (da != db) return da > db ? 1 : -1;
    // degrevlex: a > b iff the last nonzero entry of a-b is negative
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty()) throw FormatError("empty variable name");
        if (!seen.insert(v).second) throw FormatError("duplicate variable name '" + v + "'");
    }
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Rat& c) {
    MultiPoly p(std::move(vars));
    p.add_term(ExpVec(p.num_vars(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, const std::string& name) {
    MultiPoly p(std::move(vars));
    int i = p.var_index(name);
    if (i < 0) throw UnknownVariable("unknown variable '" + name + "'");
    ExpVec e(p.num_vars(), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(e, Rat(1));
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, ExpVec e, const Rat& c) {
    MultiPoly p(std::move(vars));
    if (e.size() != p.num_vars())
        throw VariableMismatch("exponent vector length does not match variable count");
    p.add_term(e, c);
    return p;
}

int MultiPoly::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    return -1;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && exp_degree(terms_.begin()->first) == 0;
}

Rat MultiPoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw FormatError("polynomial is not constant");
    return terms_.begin()->second;
}

long MultiPoly::total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, exp_degree(e));
    return d;
}

long MultiPoly::degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[var]));
    return d;
}

bool MultiPoly::is_homogeneous(long* degree_out) const {
    if (terms_.empty()) {
        if (degree_out) *degree_out = -1;
        return true;
    }
    long d = exp_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (exp_degree(e) != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

void MultiPoly::add_term(const ExpVec& e, const Rat& c) {
    if (e.size() != vars_.size())
        throw VariableMismatch("exponent vector length does not match variable count");
    for (int x : e)
        if (x < 0) throw FormatError("negative exponent in polynomial term");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_same_vars(const MultiPoly& o) const {
    if (vars_ != o.vars_)
        throw VariableMismatch("polynomials are over different variable lists");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check_same_vars(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    check_same_vars(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_same_vars(o);
    MultiPoly r(vars_);
    ExpVec e(vars_.size());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::operator*(const Rat& c) const {
    MultiPoly r(vars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

MultiPoly MultiPoly::pow(long e) const {
    if (e < 0) throw FormatError("negative polynomial power");
    MultiPoly acc = MultiPoly::constant(vars_, Rat(1));
    MultiPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return vars_ == o.vars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::partial_derivative(std::size_t var) const {
    if (var >= vars_.size()) throw UnknownVariable("variable index out of range");
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        ExpVec d = e;
        d[var] -= 1;
        r.add_term(d, c * Rat(e[var]));
    }
    return r;
}

MultiPoly MultiPoly::partial_derivative(const std::string& name) const {
    int i = var_index(name);
    if (i < 0) throw UnknownVariable("unknown variable '" + name + "'");
    return partial_derivative(static_cast<std::size_t>(i));
}

ExpVec MultiPoly::leading_exponent(MonomialOrder order) const {
    if (terms_.empty()) throw FormatError("zero polynomial has no leading exponent");
    const ExpVec* best = nullptr;
    for (const auto& [e, c] : terms_) {
        if (!best || cmp_monomials(e, *best, order) > 0) best = &e;
    }
    return *best;
}

Rat MultiPoly::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

MultiPoly MultiPoly::substituted(std::size_t var, const MultiPoly& value) const {
    check_same_vars(value);
    if (var >= vars_.size()) throw UnknownVariable("variable index out of range");
    // group terms by the exponent of `var`, then use Horner on the groups
    std::map<int, MultiPoly> groups;
    for (const auto& [e, c] : terms_) {
        ExpVec rest = e;
        int k = rest[var];
        rest[var] = 0;
        auto [it, fresh] = groups.try_emplace(k, vars_);
        it->second.add_term(rest, c);
    }
    MultiPoly r(vars_);
    int prev = -1;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        if (prev >= 0) r = r * value.pow(prev - it->first);
        r = r + it->second;
        prev = it->first;
    }
    if (prev > 0) r = r * value.pow(prev);
    return r;
}

MultiPoly MultiPoly::coeff_in(std::size_t var, int k) const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != k) continue;
        ExpVec rest = e;
        rest[var] = 0;
        r.add_term(rest, c);
    }
    return r;
}

std::string monomial_to_string(const std::vector<std::string>& vars, const ExpVec& e) {
    std::string s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const ExpVec, Rat>*> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](const auto* a, const auto* b) {
        return cmp_monomials(a->first, b->first, MonomialOrder::degrevlex) > 0;
    });
    std::string s;
    for (const auto* t : ts) {
        Rat c = t->second;
        bool neg = c < 0;
        if (neg) c = -c;
        std::string mon = monomial_to_string(vars_, t->first);
        std::string piece;
        if (mon.empty()) {
            piece = rat_to_string(c);
        } else if (c == 1) {
            piece = mon;
        } else {
            piece = rat_to_string(c) + "*" + mon;
        }
        if (s.empty()) {
            s = neg ? "-" + piece : piece;
        } else {
            s += neg ? " - " : " + ";
            s += piece;
        }
    }
    return s;
}

namespace {

// Integer content of a polynomial whose coefficients are integral rationals.
Int int_content(const MultiPoly& p) {
    Int g(0);
    for (const auto& [e, c] : p.terms()) {
        Int num = c.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    return g;
}

// Scale to an integer-primitive polynomial with positive leading (grlex)
// coefficient; value differs from the input by a positive rational factor
// (and possibly sign).
MultiPoly normalize_primitive(const MultiPoly& p) {
    if (p.is_zero()) return p;
    Int den(1);
    for (const auto& [e, c] : p.terms()) {
        Int d = c.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    MultiPoly q = p * Rat(den);
    Int cont = int_content(q);
    Rat inv_cont(Int(1), cont);
    inv_cont.canonicalize();
    q = q * inv_cont;
    ExpVec lead = q.leading_exponent(MonomialOrder::lex);
    // graded-lex leading term
    ExpVec glead = lead;
    for (const auto& [e, c] : q.terms()) {
        long de = exp_degree(e), dg = exp_degree(glead);
        if (de > dg || (de == dg && cmp_monomials(e, glead, MonomialOrder::lex) > 0)) glead = e;
    }
    if (q.coeff(glead) < 0) q = -q;
    return q;
}

std::vector<std::size_t> effective_vars(const MultiPoly& a, const MultiPoly& b) {
    std::vector<std::size_t> vs;
    for (std::size_t i = 0; i < a.num_vars(); ++i) {
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) vs.push_back(i);
    }
    return vs;
}

// Pseudo-remainder of a by b with respect to variable v (b nonzero in v).
MultiPoly prem(MultiPoly a, const MultiPoly& b, std::size_t v) {
    long db = b.degree_in(v);
    MultiPoly lcb = b.coeff_in(v, static_cast<int>(db));
    MultiPoly xv = MultiPoly::variable(a.vars(), a.vars()[v]);
    long da = a.degree_in(v);
    while (!a.is_zero() && (da = a.degree_in(v)) >= db) {
        MultiPoly lca = a.coeff_in(v, static_cast<int>(da));
        a = a * lcb - lca * xv.pow(da - db) * b;
    }
    return a;
}

MultiPoly content_in(const MultiPoly& p, std::size_t v);

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return normalize_primitive(b);
    if (b.is_zero()) return normalize_primitive(a);
    auto vs = effective_vars(a, b);
    if (vs.empty()) return MultiPoly::constant(a.vars(), Rat(1));
    std::size_t v = vs.back();
    if (a.degree_in(v) <= 0 || b.degree_in(v) <= 0) {
        // one side is free of v: gcd divides the v-content of the other
        const MultiPoly& flat = a.degree_in(v) <= 0 ? a : b;
        const MultiPoly& deep = a.degree_in(v) <= 0 ? b : a;
        return gcd_rec(flat, content_in(deep, v));
    }
    MultiPoly ca = content_in(a, v);
    MultiPoly cb = content_in(b, v);
    MultiPoly c = gcd_rec(ca, cb);
    MultiPoly A = poly_divexact(a, ca);
    MultiPoly B = poly_divexact(b, cb);
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
    // primitive PRS
    for (;;) {
        MultiPoly R = prem(A, B, v);
        if (R.is_zero()) break;
        if (R.degree_in(v) == 0) return normalize_primitive(c);
        R = poly_divexact(R, content_in(R, v));
        R = normalize_primitive(R);
        A = B;
        B = R;
    }
    MultiPoly pp = poly_divexact(B, content_in(B, v));
    return normalize_primitive(c * pp);
}

MultiPoly content_in(const MultiPoly& p, std::size_t v) {
    MultiPoly g(p.vars());
    long d = p.degree_in(v);
    for (long k = 0; k <= d; ++k) {
        MultiPoly ck = p.coeff_in(v, static_cast<int>(k));
        if (ck.is_zero()) continue;
        g = gcd_rec(g, ck);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) return MultiPoly::constant(p.vars(), Rat(1));
    return g;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars() != b.vars())
        throw VariableMismatch("gcd of polynomials over different variable lists");
    if (a.is_zero() && b.is_zero()) return a;
    return gcd_rec(a, b);
}

MultiPoly poly_divexact(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars() != b.vars())
        throw VariableMismatch("division of polynomials over different variable lists");
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    MultiPoly r = a;
    MultiPoly q(a.vars());
    ExpVec lb = b.leading_exponent(MonomialOrder::degrevlex);
    Rat cb = b.coeff(lb);
    while (!r.is_zero()) {
        ExpVec lr = r.leading_exponent(MonomialOrder::degrevlex);
        ExpVec t(lr.size());
        for (std::size_t i = 0; i < lr.size(); ++i) {
            t[i] = lr[i] - lb[i];
            if (t[i] < 0) throw FormatError("inexact polynomial division");
        }
        MultiPoly term = MultiPoly::monomial(a.vars(), t, r.coeff(lr) / cb);
        q = q + term;
        r = r - term * b;
    }
    return q;
}

MultiPoly squarefree_part(const MultiPoly& f, std::size_t var) {
    if (f.is_zero()) return f;
    MultiPoly d = f.partial_derivative(var);
    if (d.is_zero()) return MultiPoly::constant(f.vars(), Rat(1));
    MultiPoly g = poly_gcd(f, d);
    if (g.is_constant()) return f;
    return poly_divexact(f, g);
}

namespace {
void gen_monomials(std::size_t nvars, std::size_t pos, long rem, ExpVec& cur,
                   std::vector<ExpVec>& out) {
    if (pos + 1 == nvars) {
        cur[pos] = static_cast<int>(rem);
        out.push_back(cur);
        return;
    }
    for (long k = rem; k >= 0; --k) {
        cur[pos] = static_cast<int>(k);
        gen_monomials(nvars, pos + 1, rem - k, cur, out);
    }
    cur[pos] = 0;
}
}  // namespace

std::vector<ExpVec> monomials_of_degree(std::size_t nvars, long N, MonomialOrder order) {
    std::vector<ExpVec> out;
    if (N < 0) return out;
    if (nvars == 0) {
        if (N == 0) out.push_back(ExpVec{});
        return out;
    }
    ExpVec cur(nvars, 0);
    gen_monomials(nvars, 0, N, cur, out);
    std::sort(out.begin(), out.end(),
              [order](const ExpVec& a, const ExpVec& b) { return cmp_monomials(a, b, order) > 0; });
    return out;
}

std::vector<ExpVec> quotient_monomial_basis(const MultiPoly& F, long N, MonomialOrder order) {
    long d = -1;
    if (!F.is_homogeneous(&d)) throw NonHomogeneous("quotient basis requires homogeneous F");
    if (d < 1) throw NonHomogeneous("quotient basis requires deg F >= 1");
    std::vector<ExpVec> all = monomials_of_degree(F.num_vars(), N, order);
    if (N < d) return all;
    ExpVec mu0 = F.leading_exponent(order);
    std::vector<ExpVec> out;
    out.reserve(all.size());
    for (const auto& e : all) {
        bool divisible = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < mu0[i]) {
                divisible = false;
                break;
            }
        }
        if (!divisible) out.push_back(e);
    }
    return out;
}

}  // namespace adjoints
