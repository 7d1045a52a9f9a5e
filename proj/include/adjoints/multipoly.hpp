#pragma once

#include <map>
#include <string>
#include <vector>

#include "adjoints/rational.hpp"

namespace adjoints {

// Exponent vector; length always equals the number of variables of the
// polynomial it belongs to.
using ExpVec = std::vector<int>;

enum class MonomialOrder { degrevlex, lex };

long exp_degree(const ExpVec& e);

// Three-way monomial comparison: -1 if a < b, 0 if equal, +1 if a > b.
int cmp_monomials(const ExpVec& a, const ExpVec& b, MonomialOrder order);

// Sparse multivariate polynomial over Q with an ordered variable list.
// Zero coefficients are never stored.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars);

    static MultiPoly constant(std::vector<std::string> vars, const Rat& c);
    static MultiPoly variable(std::vector<std::string> vars, const std::string& name);
    static MultiPoly monomial(std::vector<std::string> vars, ExpVec e, const Rat& c);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t num_vars() const { return vars_.size(); }
    int var_index(const std::string& name) const;  // -1 if absent
    const std::map<ExpVec, Rat>& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;
    long total_degree() const;              // -1 for the zero polynomial
    long degree_in(std::size_t var) const;  // -1 for the zero polynomial
    bool is_homogeneous(long* degree_out = nullptr) const;

    void add_term(const ExpVec& e, const Rat& c);

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rat& c) const;
    MultiPoly pow(long e) const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly partial_derivative(std::size_t var) const;
    MultiPoly partial_derivative(const std::string& name) const;

    ExpVec leading_exponent(MonomialOrder order) const;  // requires nonzero
    Rat coeff(const ExpVec& e) const;

    // Substitutes `value` (same variable list) for variable `var`.
    MultiPoly substituted(std::size_t var, const MultiPoly& value) const;
    // Coefficient of var^k; the result has degree 0 in `var`.
    MultiPoly coeff_in(std::size_t var, int k) const;

    std::string to_string() const;

private:
    void check_same_vars(const MultiPoly& o) const;

    std::vector<std::string> vars_;
    std::map<ExpVec, Rat> terms_;
};

inline MultiPoly operator*(const Rat& c, const MultiPoly& p) { return p * c; }

// gcd over Q[vars], returned integer-primitive with positive leading
// coefficient (graded-lex). gcd(0, 0) = 0.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Exact division; throws FormatError if b does not divide a.
MultiPoly poly_divexact(const MultiPoly& a, const MultiPoly& b);

// f / gcd(f, f') for univariate f (univariate in `var`).
MultiPoly squarefree_part(const MultiPoly& f, std::size_t var);

// All exponent vectors of total degree N in `nvars` variables, descending.
std::vector<ExpVec> monomials_of_degree(std::size_t nvars, long N, MonomialOrder order);

// Monomial basis of (Q[vars]/<F>)_N for homogeneous F: all degree-N monomials
// not divisible by the leading monomial of F, in descending order.
std::vector<ExpVec> quotient_monomial_basis(const MultiPoly& F, long N, MonomialOrder order);

std::string monomial_to_string(const std::vector<std::string>& vars, const ExpVec& e);

}  // namespace adjoints
