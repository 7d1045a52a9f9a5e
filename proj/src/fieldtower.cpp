#include "adjoints/fieldtower.hpp"

#include <algorithm>
#include <set>

#include "adjoints/errors.hpp"

namespace adjoints {

using detail::TVal;

namespace {

Rat grlex_leading_coeff(const MultiPoly& p) {
    const ExpVec* best = nullptr;
    for (const auto& [e, c] : p.terms()) {
        if (!best) {
            best = &e;
            continue;
        }
        long de = exp_degree(e), db = exp_degree(*best);
        if (de > db || (de == db && cmp_monomials(e, *best, MonomialOrder::lex) > 0)) best = &e;
    }
    return best ? p.coeff(*best) : Rat(0);
}

bool is_single_var_power(const MultiPoly& p) {
    if (p.num_terms() != 1) return false;
    const ExpVec& e = p.terms().begin()->first;
    int nonzero = 0;
    for (int x : e) nonzero += (x != 0);
    return nonzero <= 1;
}

}  // namespace

// ---------------------------------------------------------------- FieldTower

TowerPtr FieldTower::rationals() { return make({}); }

TowerPtr FieldTower::make(std::vector<std::string> transcendentals) {
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    std::set<std::string> seen;
    for (const auto& s : transcendentals) {
        if (s.empty()) throw FormatError("empty transcendental name");
        if (!seen.insert(s).second)
            throw FormatError("duplicate symbol '" + s + "' in tower");
    }
    t->trans_ = std::move(transcendentals);
    t->zero_poly_ = MultiPoly(t->trans_);
    return t;
}

TowerPtr FieldTower::extended(const std::string& gen, const std::vector<TowerElem>& minpoly,
                              bool check_squarefree) const {
    if (gen.empty()) throw FormatError("empty generator name");
    if (symbol_level(gen) >= 0) throw FormatError("symbol '" + gen + "' already in tower");
    if (minpoly.size() < 3) throw FormatError("minimal polynomial must have degree >= 2");
    int h = static_cast<int>(exts_.size());
    for (const auto& c : minpoly) {
        if (!c.valid() || !c.tower()->same(*this) || c.height() != h)
            throw TowerMismatch("minimal polynomial coefficients must live at the level below");
    }
    if (!minpoly.back().is_one())
        throw FormatError("minimal polynomial must be monic");
    if (check_squarefree) {
        TPoly m(minpoly.begin(), minpoly.end());
        TPoly g = tp_gcd_monic(m, tp_derivative(m));
        if (tp_degree(g) > 0)
            throw FormatError("minimal polynomial of '" + gen + "' is not squarefree");
    }
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->trans_ = trans_;
    t->exts_ = exts_;
    t->zero_poly_ = zero_poly_;
    Extension e;
    e.gen = gen;
    for (const auto& c : minpoly) e.minpoly.push_back(c.val());
    t->exts_.push_back(std::move(e));
    return t;
}

int FieldTower::symbol_level(const std::string& name) const {
    for (std::size_t i = 0; i < exts_.size(); ++i)
        if (exts_[i].gen == name) return static_cast<int>(i) + 1;
    for (const auto& s : trans_)
        if (s == name) return 0;
    return -1;
}

int FieldTower::transcendental_index(const std::string& name) const {
    for (std::size_t i = 0; i < trans_.size(); ++i)
        if (trans_[i] == name) return static_cast<int>(i);
    return -1;
}

bool FieldTower::same(const FieldTower& o) const {
    if (this == &o) return true;
    if (trans_ != o.trans_ || exts_.size() != o.exts_.size()) return false;
    for (std::size_t i = 0; i < exts_.size(); ++i) {
        if (exts_[i].gen != o.exts_[i].gen) return false;
        if (exts_[i].minpoly.size() != o.exts_[i].minpoly.size()) return false;
        for (std::size_t j = 0; j < exts_[i].minpoly.size(); ++j)
            if (!v_eq(static_cast<int>(i), exts_[i].minpoly[j], o.exts_[i].minpoly[j]))
                return false;
    }
    return true;
}

std::string FieldTower::describe() const {
    std::string s = "Q";
    if (!trans_.empty()) {
        s += "(";
        for (std::size_t i = 0; i < trans_.size(); ++i) {
            if (i) s += ",";
            s += trans_[i];
        }
        s += ")";
    }
    for (std::size_t i = 0; i < exts_.size(); ++i) s += "[" + exts_[i].gen + "]";
    return s;
}

// ------------------------------------------------------------- value algebra

TVal FieldTower::v_zero(int h) const {
    if (h == 0) {
        TVal v;
        v.num = zero_poly_;
        v.den = MultiPoly::constant(trans_, Rat(1));
        return v;
    }
    TVal v;
    v.coords.assign(static_cast<std::size_t>(exts_[h - 1].degree()), v_zero(h - 1));
    return v;
}

TVal FieldTower::v_one(int h) const { return v_rat(h, Rat(1)); }

TVal FieldTower::v_rat(int h, const Rat& r) const {
    if (h == 0) {
        TVal v;
        v.num = MultiPoly::constant(trans_, r);
        v.den = MultiPoly::constant(trans_, Rat(1));
        return v;
    }
    TVal v = v_zero(h);
    v.coords[0] = v_rat(h - 1, r);
    return v;
}

bool FieldTower::v_is_zero(int h, const TVal& a) const {
    if (h == 0) return a.num.is_zero();
    for (const auto& c : a.coords)
        if (!v_is_zero(h - 1, c)) return false;
    return true;
}

bool FieldTower::v_eq(int h, const TVal& a, const TVal& b) const {
    if (h == 0) return a.num == b.num && a.den == b.den;
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        if (!v_eq(h - 1, a.coords[i], b.coords[i])) return false;
    return true;
}

TVal FieldTower::v_frac(const MultiPoly& num, const MultiPoly& den) const {
    if (den.is_zero()) throw DivisionByZero("zero denominator in tower base field");
    TVal v;
    if (num.is_zero()) {
        v.num = num;
        v.den = MultiPoly::constant(trans_, Rat(1));
        return v;
    }
    MultiPoly g = poly_gcd(num, den);
    MultiPoly n = poly_divexact(num, g);
    MultiPoly d = poly_divexact(den, g);
    Rat lc = grlex_leading_coeff(d);
    v.num = n * (Rat(1) / lc);
    v.den = d * (Rat(1) / lc);
    return v;
}

TVal FieldTower::v_add(int h, const TVal& a, const TVal& b) const {
    if (h == 0) return v_frac(a.num * b.den + b.num * a.den, a.den * b.den);
    TVal v;
    v.coords.reserve(a.coords.size());
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        v.coords.push_back(v_add(h - 1, a.coords[i], b.coords[i]));
    return v;
}

TVal FieldTower::v_sub(int h, const TVal& a, const TVal& b) const {
    return v_add(h, a, v_neg(h, b));
}

TVal FieldTower::v_neg(int h, const TVal& a) const {
    if (h == 0) {
        TVal v;
        v.num = -a.num;
        v.den = a.den;
        return v;
    }
    TVal v;
    v.coords.reserve(a.coords.size());
    for (const auto& c : a.coords) v.coords.push_back(v_neg(h - 1, c));
    return v;
}

TVal FieldTower::v_mul(int h, const TVal& a, const TVal& b) const {
    if (h == 0) return v_frac(a.num * b.num, a.den * b.den);
    std::size_t e = a.coords.size();
    std::vector<TVal> prod(2 * e - 1, v_zero(h - 1));
    for (std::size_t i = 0; i < e; ++i) {
        if (v_is_zero(h - 1, a.coords[i])) continue;
        for (std::size_t j = 0; j < e; ++j) {
            if (v_is_zero(h - 1, b.coords[j])) continue;
            prod[i + j] = v_add(h - 1, prod[i + j], v_mul(h - 1, a.coords[i], b.coords[j]));
        }
    }
    // reduce modulo the (monic) minimal polynomial
    const auto& m = exts_[h - 1].minpoly;
    for (std::size_t i = prod.size(); i-- > e;) {
        if (v_is_zero(h - 1, prod[i])) continue;
        TVal lead = prod[i];
        prod[i] = v_zero(h - 1);
        for (std::size_t j = 0; j < e; ++j) {
            prod[i - e + j] =
                v_sub(h - 1, prod[i - e + j], v_mul(h - 1, lead, m[j]));
        }
    }
    TVal v;
    v.coords.assign(prod.begin(), prod.begin() + static_cast<long>(e));
    return v;
}

TVal FieldTower::v_inv(int h, const TVal& a) const {
    if (v_is_zero(h, a)) throw DivisionByZero("inverse of zero in field tower");
    if (h == 0) return v_frac(a.den, a.num);
    // extended Euclid against the minimal polynomial in K_{h-1}[X]
    using VPoly = std::vector<TVal>;
    const int hl = h - 1;
    auto vdeg = [&](const VPoly& p) {
        for (std::size_t i = p.size(); i-- > 0;)
            if (!v_is_zero(hl, p[i])) return static_cast<long>(i);
        return -1L;
    };
    VPoly r0(exts_[h - 1].minpoly.begin(), exts_[h - 1].minpoly.end());
    VPoly r1(a.coords.begin(), a.coords.end());
    VPoly t0{v_zero(hl)}, t1{v_one(hl)};
    while (true) {
        long d1 = vdeg(r1);
        if (d1 < 0)
            throw DivisionByZero("zero divisor in tower (minimal polynomial reducible?)");
        if (d1 == 0) break;
        // r0 = q*r1 + r2
        VPoly rem = r0;
        long d0 = vdeg(rem);
        VPoly q(static_cast<std::size_t>(std::max(d0 - d1 + 1, 1L)), v_zero(hl));
        TVal lc_inv = v_inv(hl, r1[static_cast<std::size_t>(d1)]);
        while ((d0 = vdeg(rem)) >= d1) {
            TVal f = v_mul(hl, rem[static_cast<std::size_t>(d0)], lc_inv);
            q[static_cast<std::size_t>(d0 - d1)] = f;
            for (long j = 0; j <= d1; ++j) {
                rem[static_cast<std::size_t>(d0 - d1 + j)] =
                    v_sub(hl, rem[static_cast<std::size_t>(d0 - d1 + j)],
                          v_mul(hl, f, r1[static_cast<std::size_t>(j)]));
            }
        }
        // (t0, t1) <- (t1, t0 - q*t1)
        VPoly qt(q.size() + t1.size(), v_zero(hl));
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < t1.size(); ++j)
                qt[i + j] = v_add(hl, qt[i + j], v_mul(hl, q[i], t1[j]));
        VPoly nt(std::max(t0.size(), qt.size()), v_zero(hl));
        for (std::size_t i = 0; i < nt.size(); ++i) {
            TVal x = i < t0.size() ? t0[i] : v_zero(hl);
            TVal y = i < qt.size() ? qt[i] : v_zero(hl);
            nt[i] = v_sub(hl, x, y);
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    // r1 is a nonzero constant c: inverse = t1 / c, reduced mod minpoly
    TVal c_inv = v_inv(hl, r1[0]);
    std::size_t e = static_cast<std::size_t>(exts_[h - 1].degree());
    TVal out;
    out.coords.assign(e, v_zero(hl));
    for (std::size_t i = 0; i < t1.size() && i < e; ++i)
        out.coords[i] = v_mul(hl, t1[i], c_inv);
    if (t1.size() > e) {
        // remainder-degree bookkeeping guarantees deg t1 < e; guard anyway
        for (std::size_t i = e; i < t1.size(); ++i)
            if (!v_is_zero(hl, t1[i]))
                throw Error("internal", "Bezout cofactor exceeded extension degree");
    }
    return out;
}

TVal FieldTower::v_lift(int from_h, int to_h, const TVal& a) const {
    TVal v = a;
    for (int h = from_h + 1; h <= to_h; ++h) {
        TVal up;
        up.coords.assign(static_cast<std::size_t>(exts_[h - 1].degree()), v_zero(h - 1));
        up.coords[0] = std::move(v);
        v = std::move(up);
    }
    return v;
}

TVal FieldTower::v_deriv(int h, const TVal& a, std::size_t trans_idx) const {
    if (h == 0) {
        std::size_t i = trans_idx;
        MultiPoly dn = a.num.partial_derivative(i);
        MultiPoly dd = a.den.partial_derivative(i);
        return v_frac(dn * a.den - a.num * dd, a.den * a.den);
    }
    const auto& m = exts_[h - 1].minpoly;
    std::size_t e = a.coords.size();
    std::size_t md = m.size() - 1;
    TVal gen = v_zero(h);
    gen.coords[1] = v_one(h - 1);
    std::vector<TVal> gp;  // gen^0 .. gen^md
    gp.push_back(v_one(h));
    for (std::size_t j = 1; j <= md; ++j) gp.push_back(v_mul(h, gp.back(), gen));
    // implicit differentiation: gen' = -(dm/ds)(gen) / m'(gen)
    TVal mprime = v_zero(h);
    for (std::size_t j = 1; j <= md; ++j) {
        TVal term = v_mul(h, v_lift(h - 1, h, m[j]), gp[j - 1]);
        mprime = v_add(h, mprime, v_mul(h, term, v_rat(h, Rat(static_cast<long>(j)))));
    }
    TVal mds = v_zero(h);
    for (std::size_t j = 0; j <= md; ++j) {
        TVal cjd = v_lift(h - 1, h, v_deriv(h - 1, m[j], trans_idx));
        mds = v_add(h, mds, v_mul(h, cjd, gp[j]));
    }
    TVal gen_prime = v_neg(h, v_mul(h, mds, v_inv(h, mprime)));
    // a' = sum_r a_r' gen^r + a_r * r * gen^(r-1) * gen'
    TVal out = v_zero(h);
    for (std::size_t r = 0; r < e; ++r) {
        TVal ard = v_lift(h - 1, h, v_deriv(h - 1, a.coords[r], trans_idx));
        out = v_add(h, out, v_mul(h, ard, gp[r]));
        if (r >= 1) {
            TVal chain = v_mul(h, v_lift(h - 1, h, a.coords[r]),
                               v_rat(h, Rat(static_cast<long>(r))));
            chain = v_mul(h, chain, gp[r - 1]);
            out = v_add(h, out, v_mul(h, chain, gen_prime));
        }
    }
    return out;
}

std::string FieldTower::v_to_string(int h, const TVal& a) const {
    if (h == 0) {
        if (a.num.is_zero()) return "0";
        std::string num = a.num.to_string();
        if (a.den.is_constant() && a.den.constant_value() == 1) return num;
        if (a.num.num_terms() > 1) num = "(" + num + ")";
        std::string den = a.den.to_string();
        if (!is_single_var_power(a.den)) den = "(" + den + ")";
        return num + "/" + den;
    }
    auto needs_parens_as_factor = [](const std::string& s) {
        int depth = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (c == '(') ++depth;
            else if (c == ')') --depth;
            else if (depth == 0 && i > 0 && (c == '+' || c == '-')) return true;
        }
        return false;
    };
    const std::string& gen = exts_[h - 1].gen;
    std::string out;
    for (std::size_t r = 0; r < a.coords.size(); ++r) {
        if (v_is_zero(h - 1, a.coords[r])) continue;
        std::string cs = v_to_string(h - 1, a.coords[r]);
        std::string piece;
        if (r == 0) {
            piece = cs;
        } else {
            std::string gp = r == 1 ? gen : gen + "^" + std::to_string(r);
            if (cs == "1") piece = gp;
            else if (cs == "-1") piece = "-" + gp;
            else {
                if (needs_parens_as_factor(cs)) cs = "(" + cs + ")";
                piece = cs + "*" + gp;
            }
        }
        if (out.empty()) {
            out = piece;
        } else if (!piece.empty() && piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out.empty() ? "0" : out;
}

// ----------------------------------------------------------------- TowerElem

TowerElem TowerElem::from_val(TowerPtr t, int height, TVal v) {
    TowerElem e;
    e.tower_ = std::move(t);
    e.height_ = height;
    e.val_ = std::move(v);
    return e;
}

TowerElem TowerElem::zero(TowerPtr t, int height) {
    int h = height < 0 ? static_cast<int>(t->num_extensions()) : height;
    TVal v = t->v_zero(h);
    return from_val(std::move(t), h, std::move(v));
}

TowerElem TowerElem::one(TowerPtr t, int height) {
    int h = height < 0 ? static_cast<int>(t->num_extensions()) : height;
    TVal v = t->v_one(h);
    return from_val(std::move(t), h, std::move(v));
}

TowerElem TowerElem::from_rational(TowerPtr t, const Rat& r, int height) {
    int h = height < 0 ? static_cast<int>(t->num_extensions()) : height;
    TVal v = t->v_rat(h, r);
    return from_val(std::move(t), h, std::move(v));
}

TowerElem TowerElem::symbol(TowerPtr t, const std::string& name) {
    int lvl = t->symbol_level(name);
    if (lvl < 0) throw UnknownSymbol("symbol '" + name + "' not in tower " + t->describe());
    int full = static_cast<int>(t->num_extensions());
    if (lvl == 0) {
        MultiPoly num = MultiPoly::variable(t->transcendentals(), name);
        MultiPoly den = MultiPoly::constant(t->transcendentals(), Rat(1));
        TVal v = t->v_lift(0, full, t->v_frac(num, den));
        return from_val(std::move(t), full, std::move(v));
    }
    TVal v = t->v_zero(lvl);
    v.coords[1] = t->v_one(lvl - 1);
    v = t->v_lift(lvl, full, v);
    return from_val(std::move(t), full, std::move(v));
}

bool TowerElem::is_zero() const { return tower_->v_is_zero(height_, val_); }
bool TowerElem::is_one() const { return tower_->v_eq(height_, val_, tower_->v_one(height_)); }

bool TowerElem::rational_value(Rat* out) const {
    const TVal* v = &val_;
    for (int h = height_; h > 0; --h) {
        for (std::size_t i = 1; i < v->coords.size(); ++i)
            if (!tower_->v_is_zero(h - 1, v->coords[i])) return false;
        v = &v->coords[0];
    }
    if (!v->num.is_constant() || !v->den.is_constant()) return false;
    if (out) *out = v->num.constant_value() / v->den.constant_value();
    return true;
}

void TowerElem::check_compatible(const TowerElem& o) const {
    if (!tower_ || !o.tower_) throw TowerMismatch("uninitialized tower element");
    if (height_ != o.height_)
        throw TowerMismatch("tower elements at different levels");
    if (tower_ != o.tower_ && !tower_->same(*o.tower_))
        throw TowerMismatch("elements of different towers: " + tower_->describe() + " vs " +
                            o.tower_->describe());
}

TowerElem TowerElem::operator-() const {
    return from_val(tower_, height_, tower_->v_neg(height_, val_));
}

TowerElem TowerElem::operator+(const TowerElem& o) const {
    check_compatible(o);
    return from_val(tower_, height_, tower_->v_add(height_, val_, o.val_));
}

TowerElem TowerElem::operator-(const TowerElem& o) const {
    check_compatible(o);
    return from_val(tower_, height_, tower_->v_sub(height_, val_, o.val_));
}

TowerElem TowerElem::operator*(const TowerElem& o) const {
    check_compatible(o);
    return from_val(tower_, height_, tower_->v_mul(height_, val_, o.val_));
}

TowerElem TowerElem::operator/(const TowerElem& o) const {
    check_compatible(o);
    return from_val(tower_, height_,
                    tower_->v_mul(height_, val_, tower_->v_inv(height_, o.val_)));
}

TowerElem TowerElem::operator*(const Rat& c) const {
    return from_val(tower_, height_, tower_->v_mul(height_, val_, tower_->v_rat(height_, c)));
}

TowerElem TowerElem::inv() const {
    return from_val(tower_, height_, tower_->v_inv(height_, val_));
}

TowerElem TowerElem::pow(long e) const {
    TowerElem base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    TowerElem acc = one(tower_, height_);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool TowerElem::operator==(const TowerElem& o) const {
    check_compatible(o);
    return tower_->v_eq(height_, val_, o.val_);
}

std::vector<TowerElem> TowerElem::decompose() const {
    if (height_ < 1) throw BadLevel("decompose requires an algebraic level");
    std::vector<TowerElem> out;
    out.reserve(val_.coords.size());
    for (const auto& c : val_.coords) out.push_back(from_val(tower_, height_ - 1, c));
    return out;
}

TowerElem TowerElem::lifted(int new_height) const {
    if (new_height < height_ || new_height > static_cast<int>(tower_->num_extensions()))
        throw BadLevel("bad lift target level");
    return from_val(tower_, new_height, tower_->v_lift(height_, new_height, val_));
}

TowerElem TowerElem::derivative(const std::string& s) const {
    int idx = tower_->transcendental_index(s);
    if (idx < 0) throw UnknownSymbol("'" + s + "' is not a transcendental of the tower");
    return from_val(tower_, height_,
                    tower_->v_deriv(height_, val_, static_cast<std::size_t>(idx)));
}

const MultiPoly& TowerElem::base_num() const {
    if (height_ != 0) throw BadLevel("base access requires height 0");
    return val_.num;
}

const MultiPoly& TowerElem::base_den() const {
    if (height_ != 0) throw BadLevel("base access requires height 0");
    return val_.den;
}

std::string TowerElem::to_string() const { return tower_->v_to_string(height_, val_); }

std::vector<TowerElem> tower_decompose(const TowerElem& a, int level) {
    if (level < 1 || level != a.height())
        throw BadLevel("level " + std::to_string(level) + " does not address the top extension");
    return a.decompose();
}

TowerElem tower_deriv(const TowerElem& a, const std::string& s) { return a.derivative(s); }

TowerElem tower_inv(const TowerElem& a) { return a.inv(); }

TowerElem eval_poly_tower(const MultiPoly& p, const std::vector<TowerElem>& args) {
    if (args.size() != p.num_vars())
        throw VariableMismatch("evaluation needs one argument per variable");
    if (p.is_zero() && args.empty()) throw FormatError("cannot infer tower for evaluation");
    TowerPtr t = args.empty() ? FieldTower::rationals() : args[0].tower();
    int h = args.empty() ? 0 : args[0].height();
    // cache powers of each argument
    std::vector<std::vector<TowerElem>> powers(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) powers[i].push_back(TowerElem::one(t, h));
    auto power = [&](std::size_t i, int k) {
        while (static_cast<int>(powers[i].size()) <= k)
            powers[i].push_back(powers[i].back() * args[i]);
        return powers[i][static_cast<std::size_t>(k)];
    };
    TowerElem acc = TowerElem::zero(t, h);
    for (const auto& [e, c] : p.terms()) {
        TowerElem term = TowerElem::from_rational(t, c, h);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) term = term * power(i, e[i]);
        acc = acc + term;
    }
    return acc;
}

// ------------------------------------------------------- univariate helpers

long tp_degree(const TPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return static_cast<long>(i);
    return -1;
}

TPoly tp_trim(TPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

TPoly tp_add(const TPoly& a, const TPoly& b) {
    TPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size() && i < b.size()) r[i] = a[i] + b[i];
        else if (i < a.size()) r[i] = a[i];
        else r[i] = b[i];
    }
    return tp_trim(std::move(r));
}

TPoly tp_sub(const TPoly& a, const TPoly& b) {
    TPoly nb;
    nb.reserve(b.size());
    for (const auto& c : b) nb.push_back(-c);
    return tp_add(a, nb);
}

TPoly tp_mul(const TPoly& a, const TPoly& b) {
    if (a.empty() || b.empty()) return {};
    if (tp_degree(a) < 0 || tp_degree(b) < 0) return {};
    TPoly r(a.size() + b.size() - 1, TowerElem::zero(a[0].tower(), a[0].height()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    }
    return tp_trim(std::move(r));
}

TPoly tp_scale(const TPoly& a, const TowerElem& c) {
    TPoly r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(x * c);
    return tp_trim(std::move(r));
}

void tp_divmod(const TPoly& a, const TPoly& b, TPoly* q_out, TPoly* r_out) {
    long db = tp_degree(b);
    if (db < 0) throw DivisionByZero("polynomial division by zero");
    TPoly r = tp_trim(a);
    long da = tp_degree(r);
    TowerElem lcinv = b[static_cast<std::size_t>(db)].inv();
    TPoly q;
    if (da >= db) q.assign(static_cast<std::size_t>(da - db + 1),
                           TowerElem::zero(b[0].tower(), b[0].height()));
    while ((da = tp_degree(r)) >= db) {
        TowerElem f = r[static_cast<std::size_t>(da)] * lcinv;
        q[static_cast<std::size_t>(da - db)] = f;
        for (long j = 0; j <= db; ++j) {
            r[static_cast<std::size_t>(da - db + j)] =
                r[static_cast<std::size_t>(da - db + j)] - f * b[static_cast<std::size_t>(j)];
        }
    }
    if (q_out) *q_out = tp_trim(std::move(q));
    if (r_out) *r_out = tp_trim(std::move(r));
}

TPoly tp_make_monic(const TPoly& a) {
    long d = tp_degree(a);
    if (d < 0) return {};
    return tp_scale(a, a[static_cast<std::size_t>(d)].inv());
}

TPoly tp_gcd_monic(const TPoly& a, const TPoly& b) {
    TPoly x = tp_trim(a), y = tp_trim(b);
    while (tp_degree(y) >= 0) {
        TPoly r;
        tp_divmod(x, y, nullptr, &r);
        x = std::move(y);
        y = std::move(r);
    }
    return tp_make_monic(x);
}

TPoly tp_derivative(const TPoly& a) {
    if (a.size() <= 1) return {};
    TPoly r;
    r.reserve(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rat(static_cast<long>(i)));
    return tp_trim(std::move(r));
}

TowerElem tp_eval(const TPoly& a, const TowerElem& x) {
    TowerElem acc = TowerElem::zero(x.tower(), x.height());
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

TowerElem tp_resultant(const TPoly& a0, const TPoly& b0) {
    TPoly a = tp_trim(a0), b = tp_trim(b0);
    long da = tp_degree(a), db = tp_degree(b);
    if (da < 0 || db < 0) throw FormatError("resultant of zero polynomial");
    TowerPtr t = a[0].tower();
    int h = a[0].height();
    TowerElem res = TowerElem::one(t, h);
    // Euclidean resultant with leading-coefficient bookkeeping
    while (true) {
        db = tp_degree(b);
        if (db == 0) {
            da = tp_degree(a);
            return res * b[0].pow(da);
        }
        TPoly r;
        tp_divmod(a, b, nullptr, &r);
        long dr = tp_degree(r);
        da = tp_degree(a);
        if (dr < 0) return TowerElem::zero(t, h);
        TowerElem lcb = b[static_cast<std::size_t>(db)];
        Rat sign = (da % 2 == 1 && db % 2 == 1) ? Rat(-1) : Rat(1);
        res = res * TowerElem::from_rational(t, sign, h) * lcb.pow(da - dr);
        a = std::move(b);
        b = std::move(r);
    }
}

}  // namespace adjoints
