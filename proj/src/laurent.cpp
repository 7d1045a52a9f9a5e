#include "adjoints/laurent.hpp"

#include <algorithm>

#include "adjoints/errors.hpp"

namespace adjoints {

namespace {
constexpr std::int64_t kMaxWindow = 1 << 22;

void check_window(std::int64_t lead, std::int64_t frontier) {
    if (frontier < kExactFrontier && frontier - lead > kMaxWindow)
        throw FormatError("series window too large");
}
}  // namespace

TruncLaurent TruncLaurent::zero(TowerPtr t, std::int64_t frontier) {
    TruncLaurent s;
    s.tower_ = std::move(t);
    s.lead_ = frontier;
    s.frontier_ = frontier;
    return s;
}

TruncLaurent TruncLaurent::make(TowerPtr t, std::int64_t lead, std::vector<TowerElem> coeffs,
                                std::int64_t frontier) {
    TruncLaurent s;
    s.tower_ = std::move(t);
    s.lead_ = lead;
    s.frontier_ = frontier;
    s.coeffs_ = std::move(coeffs);
    for (const auto& c : s.coeffs_) {
        if (!c.valid() || (c.tower() != s.tower_ && !c.tower()->same(*s.tower_)))
            throw TowerMismatch("series coefficient from a different tower");
        if (c.height() != static_cast<int>(s.tower_->num_extensions()))
            throw TowerMismatch("series coefficients must live at the full tower height");
    }
    s.canonicalize();
    return s;
}

TruncLaurent TruncLaurent::constant(const TowerElem& c, std::int64_t frontier) {
    return make(c.tower(), 0, {c}, frontier);
}

TruncLaurent TruncLaurent::monomial(const TowerElem& c, std::int64_t exponent,
                                    std::int64_t frontier) {
    return make(c.tower(), exponent, {c}, frontier);
}

TruncLaurent TruncLaurent::t_power(TowerPtr t, std::int64_t exponent, std::int64_t frontier) {
    TowerElem one = TowerElem::one(t);
    return make(std::move(t), exponent, {one}, frontier);
}

void TruncLaurent::canonicalize() {
    if (!is_exact() && frontier_ <= lead_) {
        // empty window: nothing is known below the frontier
        coeffs_.clear();
        lead_ = frontier_;
        return;
    }
    check_window(lead_, frontier_);
    if (!is_exact() && lead_ + static_cast<std::int64_t>(coeffs_.size()) > frontier_)
        coeffs_.resize(static_cast<std::size_t>(frontier_ - lead_));
    std::size_t drop = 0;
    while (drop < coeffs_.size() && coeffs_[drop].is_zero()) ++drop;
    if (drop) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(drop));
        lead_ += static_cast<std::int64_t>(drop);
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) {
        lead_ = frontier_;
        return;
    }
    if (!is_exact()) {
        // materialize the full known window [lead, frontier)
        coeffs_.resize(static_cast<std::size_t>(frontier_ - lead_), TowerElem::zero(tower_));
    }
}

TowerElem TruncLaurent::coeff_in_window(std::int64_t k) const {
    if (k < lead_ || k >= lead_ + static_cast<std::int64_t>(coeffs_.size()))
        return TowerElem::zero(tower_);
    return coeffs_[static_cast<std::size_t>(k - lead_)];
}

TowerElem TruncLaurent::coeff(std::int64_t k) const {
    if (k >= frontier_)
        throw PrecisionExhausted("coeff", k + 1,
                                 "coefficient of t^" + std::to_string(k) +
                                     " is beyond the precision frontier " +
                                     std::to_string(frontier_));
    return coeff_in_window(k);
}

std::optional<std::int64_t> TruncLaurent::try_ord() const {
    if (coeffs_.empty()) return std::nullopt;
    return lead_;
}

std::int64_t TruncLaurent::ord() const {
    auto o = try_ord();
    if (!o) {
        if (is_exact())
            throw PrecisionExhausted("series_ord", kExactFrontier,
                                     "order of the identically zero series");
        throw PrecisionExhausted(
            "series_ord", frontier_ + 1,
            "series vanishes through its entire window (frontier " +
                std::to_string(frontier_) + "); supply more precision");
    }
    return *o;
}

TruncLaurent TruncLaurent::operator-() const {
    TruncLaurent r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

TruncLaurent TruncLaurent::operator+(const TruncLaurent& o) const {
    if (tower_ != o.tower_ && !tower_->same(*o.tower_))
        throw TowerMismatch("series over different towers");
    std::int64_t f = std::min(frontier_, o.frontier_);
    std::int64_t lo = std::min(lead_, o.lead_);
    if (lo >= f) return zero(tower_, f);
    std::int64_t hi = f;
    if (is_exact() && o.is_exact()) {
        std::int64_t ext_a = coeffs_.empty() ? lo : lead_ + static_cast<std::int64_t>(coeffs_.size());
        std::int64_t ext_b =
            o.coeffs_.empty() ? lo : o.lead_ + static_cast<std::int64_t>(o.coeffs_.size());
        hi = std::max(ext_a, ext_b);
    }
    std::vector<TowerElem> cs;
    cs.reserve(static_cast<std::size_t>(hi - lo));
    for (std::int64_t k = lo; k < hi; ++k) cs.push_back(coeff_in_window(k) + o.coeff_in_window(k));
    return make(tower_, lo, std::move(cs), f);
}

TruncLaurent TruncLaurent::operator-(const TruncLaurent& o) const { return *this + (-o); }

TruncLaurent TruncLaurent::operator*(const TruncLaurent& o) const {
    if (tower_ != o.tower_ && !tower_->same(*o.tower_))
        throw TowerMismatch("series over different towers");
    std::int64_t f = std::min(frontier_add(lead_, o.frontier_), frontier_add(o.lead_, frontier_));
    if (coeffs_.empty() || o.coeffs_.empty()) return zero(tower_, f);
    std::int64_t lo = lead_ + o.lead_;
    std::int64_t hi;
    if (f >= kExactFrontier) {
        hi = lead_ + static_cast<std::int64_t>(coeffs_.size()) + o.lead_ +
             static_cast<std::int64_t>(o.coeffs_.size()) - 1;
    } else {
        hi = f;
    }
    check_window(lo, hi);
    std::vector<TowerElem> cs(static_cast<std::size_t>(hi - lo), TowerElem::zero(tower_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        std::int64_t ei = lead_ + static_cast<std::int64_t>(i);
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            std::int64_t k = ei + o.lead_ + static_cast<std::int64_t>(j);
            if (k >= hi) break;
            if (o.coeffs_[j].is_zero()) continue;
            cs[static_cast<std::size_t>(k - lo)] =
                cs[static_cast<std::size_t>(k - lo)] + coeffs_[i] * o.coeffs_[j];
        }
    }
    return make(tower_, lo, std::move(cs), f);
}

TruncLaurent TruncLaurent::operator*(const TowerElem& c) const {
    if (c.is_zero()) return zero(tower_, kExactFrontier);
    TruncLaurent r = *this;
    for (auto& x : r.coeffs_) x = x * c;
    r.canonicalize();
    return r;
}

TruncLaurent TruncLaurent::operator/(const TruncLaurent& o) const {
    if (tower_ != o.tower_ && !tower_->same(*o.tower_))
        throw TowerMismatch("series over different towers");
    if (o.coeffs_.empty()) {
        if (o.is_exact()) throw DivisionByZero("series division by the zero series");
        throw PrecisionExhausted("series_div", o.frontier_ + 1,
                                 "divisor vanishes through its window (frontier " +
                                     std::to_string(o.frontier_) + ")");
    }
    const std::int64_t ob = o.lead_;
    if (is_exact() && o.is_exact()) {
        // exact Laurent-polynomial division, or a precision error if the true
        // quotient is an infinite series
        const auto& B = o.coeffs_;
        std::vector<TowerElem> r = coeffs_;
        std::vector<TowerElem> q;
        TowerElem b0inv = B[0].inv();
        std::size_t qn = r.size() >= B.size() ? r.size() - B.size() + 1 : 0;
        for (std::size_t k = 0; k < qn; ++k) {
            TowerElem qk = r[k] * b0inv;
            if (!qk.is_zero())
                for (std::size_t j = 0; j < B.size(); ++j) r[k + j] = r[k + j] - qk * B[j];
            q.push_back(std::move(qk));
        }
        for (const auto& c : r) {
            if (!c.is_zero())
                throw PrecisionExhausted(
                    "series_div", kExactFrontier,
                    "quotient of exact series is not a Laurent polynomial; truncate an "
                    "operand to the precision you need");
        }
        return make(tower_, lead_ - ob, std::move(q), kExactFrontier);
    }
    // unit part of the divisor is known below P
    const std::int64_t P = o.is_exact() ? kExactFrontier : o.frontier_ - ob;
    const std::int64_t resf = std::min(frontier_, frontier_add(lead_, P)) - ob;
    const std::int64_t need = resf - (lead_ - ob);  // = min(frontier-lead, P)
    if (coeffs_.empty() || need <= 0) return zero(tower_, resf);
    check_window(0, need);
    // invert the unit part by the standard recurrence
    std::vector<TowerElem> inv(static_cast<std::size_t>(need), TowerElem::zero(tower_));
    TowerElem u0inv = o.coeffs_[0].inv();
    inv[0] = u0inv;
    for (std::int64_t k = 1; k < need; ++k) {
        TowerElem acc = TowerElem::zero(tower_);
        for (std::int64_t i = 1; i <= k; ++i) {
            if (static_cast<std::size_t>(i) >= o.coeffs_.size()) break;
            acc = acc + o.coeffs_[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(k - i)];
        }
        inv[static_cast<std::size_t>(k)] = -(u0inv * acc);
    }
    TruncLaurent inv_series = make(tower_, 0, std::move(inv), need);
    return (*this * inv_series).shifted(-ob);
}

TruncLaurent TruncLaurent::pow(long e) const {
    if (e < 0) throw FormatError("negative series power");
    TruncLaurent acc = constant(TowerElem::one(tower_));
    TruncLaurent base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

TruncLaurent TruncLaurent::shifted(std::int64_t k) const {
    TruncLaurent r = *this;
    if (r.lead_ < kExactFrontier) r.lead_ += k;
    if (r.frontier_ < kExactFrontier) r.frontier_ += k;
    return r;
}

TruncLaurent TruncLaurent::truncated(std::int64_t new_frontier) const {
    if (new_frontier >= frontier_) return *this;
    TruncLaurent r = *this;
    r.frontier_ = new_frontier;
    r.canonicalize();
    return r;
}

TruncLaurent TruncLaurent::derivative(const std::string& var) const {
    if (var == "t") {
        std::vector<TowerElem> cs;
        cs.reserve(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            std::int64_t k = lead_ + static_cast<std::int64_t>(i);
            cs.push_back(coeffs_[i] * Rat(static_cast<long>(k)));
        }
        std::int64_t f = is_exact() ? kExactFrontier : frontier_ - 1;
        std::int64_t lo = coeffs_.empty() ? f : lead_ - 1;
        return make(tower_, lo, std::move(cs), f);
    }
    if (tower_->transcendental_index(var) < 0)
        throw UnknownSymbol("'" + var + "' is neither t nor a tower transcendental");
    std::vector<TowerElem> cs;
    cs.reserve(coeffs_.size());
    for (const auto& c : coeffs_) cs.push_back(c.derivative(var));
    return make(tower_, lead_, std::move(cs), frontier_);
}

TruncLaurent TruncLaurent::composed(const TruncLaurent& g) const {
    if (tower_ != g.tower_ && !tower_->same(*g.tower_))
        throw TowerMismatch("series over different towers");
    if (lead_ < 0 && !coeffs_.empty())
        throw FormatError("composition requires a power series (nonnegative lead)");
    auto og = g.try_ord();
    if (!og || *og < 1) throw FormatError("composition requires ord(g) >= 1");
    // unknown tail of *this contributes from frontier*ord(g); unknown tail of
    // g^k contributes from (k-1)*ord(g) + frontier(g)
    std::int64_t f = is_exact() ? kExactFrontier : frontier_ * *og;
    if (!g.is_exact()) {
        std::int64_t kmin = std::max<std::int64_t>(lead_, 1);
        f = std::min(f, (kmin - 1) * *og + g.frontier_);
    }
    if (coeffs_.empty()) return zero(tower_, f);
    TruncLaurent acc = zero(tower_, f);
    TruncLaurent gp = constant(TowerElem::one(tower_));
    for (std::int64_t k = 0; k < lead_; ++k) gp = gp * g;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) acc = acc + gp * coeffs_[i];
        gp = gp * g;
    }
    return acc.truncated(f);
}

bool TruncLaurent::operator==(const TruncLaurent& o) const {
    if (tower_ != o.tower_ && !tower_->same(*o.tower_)) return false;
    return lead_ == o.lead_ && frontier_ == o.frontier_ && coeffs_ == o.coeffs_;
}

std::string TruncLaurent::to_string() const {
    std::string out;
    auto needs_parens = [](const std::string& s) {
        int depth = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (c == '(') ++depth;
            else if (c == ')') --depth;
            else if (depth == 0 && i > 0 && (c == '+' || c == '-')) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        std::int64_t k = lead_ + static_cast<std::int64_t>(i);
        std::string cs = coeffs_[i].to_string();
        std::string piece;
        if (k == 0) {
            piece = cs;
        } else {
            std::string tp = k == 1 ? "t" : "t^" + std::to_string(k);
            if (cs == "1") piece = tp;
            else if (cs == "-1") piece = "-" + tp;
            else {
                if (needs_parens(cs)) cs = "(" + cs + ")";
                piece = cs + "*" + tp;
            }
        }
        if (out.empty()) out = piece;
        else if (piece[0] == '-') out += " - " + piece.substr(1);
        else out += " + " + piece;
    }
    if (!is_exact()) {
        std::string tail = "O(t^" + std::to_string(frontier_) + ")";
        out = out.empty() ? tail : out + " + " + tail;
    }
    return out.empty() ? "0" : out;
}

TruncLaurent substitute_poly(const MultiPoly& p, const std::vector<TruncLaurent>& images) {
    if (images.size() != p.num_vars())
        throw VariableMismatch("substitute_poly needs one image per variable");
    if (images.empty()) throw FormatError("substitute_poly requires at least one variable");
    TowerPtr t = images[0].tower();
    for (const auto& im : images) {
        if (im.tower() != t && !im.tower()->same(*t))
            throw TowerMismatch("images over different towers");
    }
    // cache powers of each image
    std::vector<std::vector<TruncLaurent>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        powers[i].push_back(TruncLaurent::constant(TowerElem::one(t)));
    auto power = [&](std::size_t i, int k) -> const TruncLaurent& {
        while (static_cast<int>(powers[i].size()) <= k)
            powers[i].push_back(powers[i].back() * images[i]);
        return powers[i][static_cast<std::size_t>(k)];
    };
    TruncLaurent acc = TruncLaurent::zero(t, kExactFrontier);
    for (const auto& [e, c] : p.terms()) {
        TruncLaurent term = TruncLaurent::constant(TowerElem::from_rational(t, c));
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) term = term * power(i, e[i]);
        acc = acc + term;
    }
    return acc;
}

TruncLaurent jacobian_det(const std::vector<TruncLaurent>& u_images, const TowerPtr& tower) {
    std::size_t l = u_images.size();
    if (l == 0) throw FormatError("jacobian of an empty tuple");
    if (tower->num_transcendentals() + 1 != l)
        throw FormatError("jacobian needs one image per transcendental plus t");
    std::vector<std::vector<TruncLaurent>> J(l, std::vector<TruncLaurent>(l));
    for (std::size_t r = 0; r < l; ++r) {
        for (std::size_t c = 0; c < l; ++c) {
            const std::string var =
                c + 1 < l ? tower->transcendentals()[c] : std::string("t");
            J[r][c] = u_images[r].derivative(var);
        }
    }
    // Laplace expansion (l is small)
    std::vector<std::size_t> cols(l);
    for (std::size_t i = 0; i < l; ++i) cols[i] = i;
    auto det = [&](auto&& self, std::vector<std::size_t> rows,
                   std::vector<std::size_t> cs) -> TruncLaurent {
        if (rows.size() == 1) return J[rows[0]][cs[0]];
        TruncLaurent acc = TruncLaurent::zero(tower, kExactFrontier);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::vector<std::size_t> sub_rows;
            for (std::size_t k = 0; k < rows.size(); ++k)
                if (k != i) sub_rows.push_back(rows[k]);
            std::vector<std::size_t> sub_cols(cs.begin() + 1, cs.end());
            TruncLaurent minor = self(self, sub_rows, sub_cols);
            TruncLaurent term = J[rows[i]][cs[0]] * minor;
            acc = (i % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    };
    std::vector<std::size_t> rows(l);
    for (std::size_t i = 0; i < l; ++i) rows[i] = i;
    return det(det, rows, cols);
}

std::int64_t jacobian_order(const std::vector<TruncLaurent>& u_images, const TowerPtr& tower) {
    TruncLaurent d = jacobian_det(u_images, tower);
    auto o = d.try_ord();
    if (!o)
        throw PrecisionExhausted("jacobian_order", d.frontier() + 1,
                                 "jacobian determinant vanishes through its window (frontier " +
                                     std::to_string(d.frontier()) + ")");
    return *o;
}

}  // namespace adjoints
