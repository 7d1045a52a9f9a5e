#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adjoints/divisor.hpp"
#include "adjoints/multipoly.hpp"
#include "adjoints/qmatrix.hpp"

namespace adjoints {

struct AdjointOptions {
    MonomialOrder order = MonomialOrder::degrevlex;
    bool normalize_rows = false;
    std::int64_t precision_cap = 1 << 14;
    int threads = 1;
};

// F, twist n, power m and a set of formal prime divisors describing a
// desingularization of {F = 0}.
class AdjointProblem {
public:
    static AdjointProblem make(MultiPoly F, long m, long n,
                               std::vector<FormalPrimeDivisor> divisors,
                               AdjointOptions options = {});

    const MultiPoly& F() const { return F_; }
    long m() const { return m_; }
    long n() const { return n_; }
    long l() const { return static_cast<long>(F_.num_vars()) - 2; }
    long d() const { return d_; }
    const std::vector<FormalPrimeDivisor>& divisors() const { return divisors_; }
    const AdjointOptions& options() const { return options_; }

private:
    MultiPoly F_;
    long m_ = 1, n_ = 0, d_ = 0;
    std::vector<FormalPrimeDivisor> divisors_;
    AdjointOptions options_;
};

// n + m(d - l - 2); negative values short-circuit to the empty basis.
long target_degree(const AdjointProblem& p);

struct ConstraintRow {
    QVec coeffs;
    std::string divisor;
    std::int64_t t_exponent = 0;
    std::vector<long> alpha_path;  // power-basis component indices, top level first
    ExpVec s_monomial;             // over the tower transcendentals
};

struct ConstraintBlock {
    std::string divisor;
    long alpha = 0;
    // coefficient of t^j of sum_b c_b phi#(b/x_i^N), for 0 <= j < m*alpha
    std::vector<std::pair<std::int64_t, std::vector<TowerElem>>> tower_rows;
    std::vector<ConstraintRow> rows;
};

// Recursive AddConstraints translation of one linear form with tower
// coefficients into Q-rows: decompose in the power basis from the top of the
// tower down (components in ascending order), then clear denominators and
// emit one row per s-monomial in ascending graded-lex order. Zero rows are
// dropped; the solution set over Q is exactly preserved. No content removal.
std::vector<ConstraintRow> flatten_constraint(const std::vector<TowerElem>& form);

ConstraintBlock constraint_block(const AdjointProblem& p, const FormalPrimeDivisor& phi,
                                 const std::vector<ExpVec>& basis);

struct AdjointResult {
    std::vector<ExpVec> basis_monomials;
    std::vector<ConstraintBlock> blocks;
    QMatrix matrix;
    std::vector<QVec> kernel;
    std::vector<MultiPoly> basis;
};

AdjointResult adjoint_basis(const AdjointProblem& p);

// Line-oriented exact-rational dump of the stacked matrix with provenance.
std::string dump_matrix(const AdjointProblem& p, const AdjointResult& r);

}  // namespace adjoints
