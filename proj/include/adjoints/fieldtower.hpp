#pragma once

#include <memory>
#include <string>
#include <vector>

#include "adjoints/multipoly.hpp"
#include "adjoints/rational.hpp"

namespace adjoints {

class FieldTower;
class TowerElem;
using TowerPtr = std::shared_ptr<const FieldTower>;

namespace detail {
// Internal canonical value representation. At height 0 it is a reduced
// fraction num/den of polynomials in the transcendentals (den monic under
// graded-lex); at height h > 0 it is a dense coefficient vector of length
// equal to the degree of extension h, with entries one level below.
struct TVal {
    MultiPoly num, den;
    std::vector<TVal> coords;
};
}  // namespace detail

// Immutable tower Q -> Q(s_1,...,s_k) -> simple algebraic extensions.
// Minimal polynomials are monic of degree >= 2 with coefficients from the
// level below; irreducibility is a trusted precondition (an optional
// squarefree sanity check runs on construction).
class FieldTower : public std::enable_shared_from_this<FieldTower> {
public:
    struct Extension {
        std::string gen;
        std::vector<detail::TVal> minpoly;  // c_0..c_e ascending, c_e = 1
        long degree() const { return static_cast<long>(minpoly.size()) - 1; }
    };

    static TowerPtr rationals();
    static TowerPtr make(std::vector<std::string> transcendentals);
    // New tower with one more extension; minpoly coefficients are elements of
    // *this* tower (the level below the new generator).
    TowerPtr extended(const std::string& gen, const std::vector<TowerElem>& minpoly,
                      bool check_squarefree = true) const;

    const std::vector<std::string>& transcendentals() const { return trans_; }
    std::size_t num_transcendentals() const { return trans_.size(); }
    std::size_t num_extensions() const { return exts_.size(); }
    const Extension& ext(std::size_t i) const { return exts_[i]; }
    // Level of a generator, 1-based; 0 if `name` is a transcendental; -1 if
    // the symbol is unknown.
    int symbol_level(const std::string& name) const;
    int transcendental_index(const std::string& name) const;  // -1 if absent

    bool same(const FieldTower& o) const;
    std::string describe() const;

    // --- value operations (height-aware); used by TowerElem and friends ---
    detail::TVal v_zero(int h) const;
    detail::TVal v_one(int h) const;
    detail::TVal v_rat(int h, const Rat& r) const;
    bool v_is_zero(int h, const detail::TVal& a) const;
    bool v_eq(int h, const detail::TVal& a, const detail::TVal& b) const;
    detail::TVal v_add(int h, const detail::TVal& a, const detail::TVal& b) const;
    detail::TVal v_sub(int h, const detail::TVal& a, const detail::TVal& b) const;
    detail::TVal v_neg(int h, const detail::TVal& a) const;
    detail::TVal v_mul(int h, const detail::TVal& a, const detail::TVal& b) const;
    detail::TVal v_inv(int h, const detail::TVal& a) const;
    detail::TVal v_lift(int from_h, int to_h, const detail::TVal& a) const;
    detail::TVal v_deriv(int h, const detail::TVal& a, std::size_t trans_idx) const;
    detail::TVal v_frac(const MultiPoly& num, const MultiPoly& den) const;
    std::string v_to_string(int h, const detail::TVal& a) const;

private:
    FieldTower() = default;
    std::vector<std::string> trans_;
    std::vector<Extension> exts_;
    MultiPoly zero_poly_;  // cached zero polynomial over the transcendentals
};

// Element of a field tower in canonical form. `height` counts how many
// algebraic levels are active (the full tower by default); elements of
// different heights never mix.
class TowerElem {
public:
    TowerElem() = default;  // invalid until assigned

    static TowerElem zero(TowerPtr t, int height = -1);
    static TowerElem one(TowerPtr t, int height = -1);
    static TowerElem from_rational(TowerPtr t, const Rat& r, int height = -1);
    // Named transcendental or extension generator, at full height.
    static TowerElem symbol(TowerPtr t, const std::string& name);
    static TowerElem from_val(TowerPtr t, int height, detail::TVal v);

    bool valid() const { return tower_ != nullptr; }
    const TowerPtr& tower() const { return tower_; }
    int height() const { return height_; }
    const detail::TVal& val() const { return val_; }

    bool is_zero() const;
    bool is_one() const;
    // True when the element lies in Q; `out` receives the value.
    bool rational_value(Rat* out = nullptr) const;

    TowerElem operator-() const;
    TowerElem operator+(const TowerElem& o) const;
    TowerElem operator-(const TowerElem& o) const;
    TowerElem operator*(const TowerElem& o) const;
    TowerElem operator/(const TowerElem& o) const;
    TowerElem operator*(const Rat& c) const;
    TowerElem inv() const;
    TowerElem pow(long e) const;
    bool operator==(const TowerElem& o) const;
    bool operator!=(const TowerElem& o) const { return !(*this == o); }

    // Coefficients [a_0,...,a_{e-1}] with a = sum a_r * gen^r, one level down.
    std::vector<TowerElem> decompose() const;
    TowerElem lifted(int new_height) const;
    // d/ds for a transcendental s; generators are differentiated implicitly
    // through their minimal polynomials.
    TowerElem derivative(const std::string& s) const;

    // Height-0 access: the reduced fraction over the transcendentals.
    const MultiPoly& base_num() const;
    const MultiPoly& base_den() const;

    std::string to_string() const;

private:
    void check_compatible(const TowerElem& o) const;
    TowerPtr tower_;
    int height_ = 0;
    detail::TVal val_;
};

inline TowerElem operator*(const Rat& c, const TowerElem& a) { return a * c; }

// Free-function forms of the member operations.
std::vector<TowerElem> tower_decompose(const TowerElem& a, int level);
TowerElem tower_deriv(const TowerElem& a, const std::string& s);
TowerElem tower_inv(const TowerElem& a);

// Evaluates a polynomial at tower-element arguments (one per variable).
TowerElem eval_poly_tower(const MultiPoly& p, const std::vector<TowerElem>& args);

// --- dense univariate polynomials over a tower (ascending coefficients) ---
using TPoly = std::vector<TowerElem>;

long tp_degree(const TPoly& p);  // -1 for zero
TPoly tp_trim(TPoly p);
TPoly tp_add(const TPoly& a, const TPoly& b);
TPoly tp_sub(const TPoly& a, const TPoly& b);
TPoly tp_mul(const TPoly& a, const TPoly& b);
TPoly tp_scale(const TPoly& a, const TowerElem& c);
// Division with remainder; the divisor's leading coefficient must be
// invertible (always true over a field).
void tp_divmod(const TPoly& a, const TPoly& b, TPoly* q, TPoly* r);
TPoly tp_gcd_monic(const TPoly& a, const TPoly& b);  // monic gcd, empty iff both zero
TPoly tp_derivative(const TPoly& a);
TowerElem tp_eval(const TPoly& a, const TowerElem& x);
TowerElem tp_resultant(const TPoly& a, const TPoly& b);
TPoly tp_make_monic(const TPoly& a);

}  // namespace adjoints
