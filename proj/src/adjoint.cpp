#include "adjoints/adjoint.hpp"

#include <algorithm>
#include <future>

#include "adjoints/errors.hpp"

namespace adjoints {

AdjointProblem AdjointProblem::make(MultiPoly F, long m, long n,
                                    std::vector<FormalPrimeDivisor> divisors,
                                    AdjointOptions options) {
    AdjointProblem p;
    long d = -1;
    if (!F.is_homogeneous(&d) || d < 1)
        throw NonHomogeneous("the hypersurface equation must be homogeneous of degree >= 1");
    if (F.num_vars() < 3) throw FormatError("need at least three variables (l >= 1)");
    if (m < 1) throw FormatError("m must be positive");
    for (const auto& phi : divisors) {
        ValidationReport rep = validate_divisor(phi.data(), F);
        if (!rep.pass)
            throw FormatError("divisor '" + phi.name() + "' does not validate against F:\n" +
                              rep.to_string());
    }
    p.F_ = std::move(F);
    p.m_ = m;
    p.n_ = n;
    p.d_ = d;
    p.divisors_ = std::move(divisors);
    p.options_ = options;
    return p;
}

long target_degree(const AdjointProblem& p) { return p.n() + p.m() * (p.d() - p.l() - 2); }

namespace {

int grlex_cmp(const ExpVec& a, const ExpVec& b) {
    long da = exp_degree(a), db = exp_degree(b);
    if (da != db) return da < db ? -1 : 1;
    return cmp_monomials(a, b, MonomialOrder::lex);
}

void flatten_rec(const std::vector<TowerElem>& form, std::vector<long>& path,
                 std::vector<ConstraintRow>& out) {
    bool all_zero = true;
    for (const auto& c : form)
        if (!c.is_zero()) {
            all_zero = false;
            break;
        }
    if (all_zero) return;
    int h = form[0].height();
    if (h > 0) {
        std::size_t e = 0;
        std::vector<std::vector<TowerElem>> comps;
        for (const auto& c : form) {
            auto d = c.decompose();
            if (comps.empty()) {
                e = d.size();
                comps.assign(e, {});
            }
            for (std::size_t r = 0; r < e; ++r) comps[r].push_back(d[r]);
        }
        for (std::size_t r = 0; r < e; ++r) {
            path.push_back(static_cast<long>(r));
            flatten_rec(comps[r], path, out);
            path.pop_back();
        }
        return;
    }
    // base level: clear denominators with their (monic) least common multiple
    const auto& trans = form[0].tower()->transcendentals();
    MultiPoly lcd = MultiPoly::constant(trans, Rat(1));
    for (const auto& c : form) {
        if (c.is_zero()) continue;
        const MultiPoly& den = c.base_den();
        MultiPoly g = poly_gcd(lcd, den);
        lcd = lcd * poly_divexact(den, g);
    }
    if (lcd.is_constant()) {
        lcd = MultiPoly::constant(trans, Rat(1));
    } else {
        // normalize monic under graded-lex
        ExpVec lead = lcd.leading_exponent(MonomialOrder::lex);
        for (const auto& [e2, c2] : lcd.terms()) {
            if (grlex_cmp(e2, lead) > 0) lead = e2;
        }
        lcd = lcd * (Rat(1) / lcd.coeff(lead));
    }
    std::vector<MultiPoly> scaled;
    scaled.reserve(form.size());
    std::vector<ExpVec> monomials;
    for (const auto& c : form) {
        if (c.is_zero()) {
            scaled.push_back(MultiPoly{trans});
            continue;
        }
        MultiPoly s = c.base_num() * poly_divexact(lcd, c.base_den());
        for (const auto& [e2, c2] : s.terms()) {
            if (std::find(monomials.begin(), monomials.end(), e2) == monomials.end())
                monomials.push_back(e2);
        }
        scaled.push_back(std::move(s));
    }
    std::sort(monomials.begin(), monomials.end(),
              [](const ExpVec& a, const ExpVec& b) { return grlex_cmp(a, b) < 0; });
    for (const auto& mon : monomials) {
        ConstraintRow row;
        row.alpha_path = path;
        row.s_monomial = mon;
        row.coeffs.reserve(form.size());
        bool nonzero = false;
        for (const auto& s : scaled) {
            Rat c = s.num_vars() == mon.size() ? s.coeff(mon) : Rat(0);
            if (c != 0) nonzero = true;
            row.coeffs.push_back(c);
        }
        if (nonzero) out.push_back(std::move(row));
    }
}

}  // namespace

std::vector<ConstraintRow> flatten_constraint(const std::vector<TowerElem>& form) {
    std::vector<ConstraintRow> out;
    if (form.empty()) return out;
    std::vector<long> path;
    flatten_rec(form, path, out);
    return out;
}

ConstraintBlock constraint_block(const AdjointProblem& p, const FormalPrimeDivisor& phi,
                                 const std::vector<ExpVec>& basis) {
    ConstraintBlock block;
    block.divisor = phi.name();
    block.alpha = adjoint_order(phi, p.F());
    const std::int64_t malpha = p.m() * block.alpha;
    if (malpha <= 0) return block;
    std::vector<TruncLaurent> images;
    images.reserve(basis.size());
    for (const auto& e : basis) {
        MultiPoly b = MultiPoly::monomial(p.F().vars(), e, Rat(1));
        TruncLaurent img = substitute_poly(b, phi.images());
        if (img.frontier() < malpha)
            throw PrecisionExhausted(
                "constraint_block", malpha,
                "divisor '" + phi.name() + "': image of " +
                    monomial_to_string(p.F().vars(), e) + " is known only below t^" +
                    std::to_string(img.frontier()) + " but t^" + std::to_string(malpha - 1) +
                    " is required");
        images.push_back(std::move(img));
    }
    for (std::int64_t j = 0; j < malpha; ++j) {
        std::vector<TowerElem> form;
        form.reserve(basis.size());
        for (const auto& img : images) form.push_back(img.coeff(j));
        auto rows = flatten_constraint(form);
        for (auto& r : rows) {
            r.divisor = phi.name();
            r.t_exponent = j;
            block.rows.push_back(std::move(r));
        }
        block.tower_rows.emplace_back(j, std::move(form));
    }
    return block;
}

namespace {

ConstraintBlock block_with_retry(const AdjointProblem& p, const FormalPrimeDivisor& phi,
                                 const std::vector<ExpVec>& basis) {
    FormalPrimeDivisor cur = phi;
    for (;;) {
        try {
            return constraint_block(p, cur, basis);
        } catch (const PrecisionExhausted&) {
            // deepen the normalization window when the raw data allows it
            std::int64_t raw_limit = kExactFrontier;
            for (const auto& im : cur.raw_images())
                raw_limit = std::min(raw_limit, im.frontier());
            std::int64_t next = cur.working_frontier() * 2;
            if (next > p.options().precision_cap || cur.working_frontier() >= raw_limit)
                throw;
            cur = cur.with_working_frontier(next);
        }
    }
}

}  // namespace

AdjointResult adjoint_basis(const AdjointProblem& p) {
    AdjointResult res;
    long N = target_degree(p);
    if (N < 0) return res;
    res.basis_monomials = quotient_monomial_basis(p.F(), N, p.options().order);
    if (res.basis_monomials.empty()) return res;
    res.matrix = QMatrix(res.basis_monomials.size());

    const auto& divisors = p.divisors();
    res.blocks.resize(divisors.size());
    int threads = std::max(1, p.options().threads);
    if (threads > 1 && divisors.size() > 1) {
        std::vector<std::future<ConstraintBlock>> futs;
        futs.reserve(divisors.size());
        std::size_t next = 0;
        while (next < divisors.size()) {
            std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(threads),
                                                      divisors.size() - next);
            for (std::size_t k = 0; k < batch; ++k) {
                const FormalPrimeDivisor* phi = &divisors[next + k];
                futs.push_back(std::async(std::launch::async, [&p, phi, &res] {
                    return block_with_retry(p, *phi, res.basis_monomials);
                }));
            }
            for (std::size_t k = 0; k < batch; ++k)
                res.blocks[next + k] = futs[next + k].get();
            next += batch;
        }
    } else {
        for (std::size_t i = 0; i < divisors.size(); ++i)
            res.blocks[i] = block_with_retry(p, divisors[i], res.basis_monomials);
    }

    for (const auto& block : res.blocks) {
        for (const auto& row : block.rows) {
            res.matrix.append_row(p.options().normalize_rows ? primitive_row(row.coeffs)
                                                             : row.coeffs);
        }
    }
    res.kernel = kernel_basis(res.matrix);
    res.basis.reserve(res.kernel.size());
    for (const auto& v : res.kernel) {
        MultiPoly f{p.F().vars()};
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (v[b] != 0) f.add_term(res.basis_monomials[b], v[b]);
        }
        res.basis.push_back(std::move(f));
    }
    return res;
}

std::string dump_matrix(const AdjointProblem& p, const AdjointResult& r) {
    std::string out;
    out += "# matrix " + std::to_string(r.matrix.rows()) + " x " +
           std::to_string(r.matrix.cols()) + "\n";
    out += "# columns:";
    for (const auto& e : r.basis_monomials) {
        std::string m = monomial_to_string(p.F().vars(), e);
        out += " " + (m.empty() ? std::string("1") : m);
    }
    out += "\n";
    for (std::size_t bi = 0; bi < r.blocks.size(); ++bi) {
        const auto& block = r.blocks[bi];
        const auto& trans = p.divisors()[bi].tower()->transcendentals();
        for (const auto& row : block.rows) {
            out += row.divisor + " t^" + std::to_string(row.t_exponent) + " alpha[";
            for (std::size_t i = 0; i < row.alpha_path.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(row.alpha_path[i]);
            }
            std::string sm = monomial_to_string(trans, row.s_monomial);
            out += "] s[" + (sm.empty() ? std::string("1") : sm) + "] :";
            QVec printable = p.options().normalize_rows ? primitive_row(row.coeffs) : row.coeffs;
            for (const auto& c : printable) out += " " + rat_to_string(c);
            out += "\n";
        }
    }
    return out;
}

}  // namespace adjoints
