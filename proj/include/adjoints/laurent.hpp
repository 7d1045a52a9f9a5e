#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "adjoints/fieldtower.hpp"

namespace adjoints {

// Exclusive precision bound sentinel for exact series (Laurent polynomials).
inline constexpr std::int64_t kExactFrontier = std::numeric_limits<std::int64_t>::max() / 4;

inline std::int64_t frontier_add(std::int64_t a, std::int64_t b) {
    if (a >= kExactFrontier || b >= kExactFrontier) return kExactFrontier;
    return a + b;
}

// Truncated Laurent series in t over a field tower. Coefficients at exponents
// >= frontier are unknown; when the frontier is exact (kExactFrontier) the
// series is a Laurent polynomial and everything beyond the stored window is
// zero. Arithmetic never fabricates coefficients beyond the correctly
// propagated frontier.
class TruncLaurent {
public:
    TruncLaurent() = default;  // invalid until assigned

    static TruncLaurent zero(TowerPtr t, std::int64_t frontier = kExactFrontier);
    static TruncLaurent constant(const TowerElem& c, std::int64_t frontier = kExactFrontier);
    static TruncLaurent monomial(const TowerElem& c, std::int64_t exponent,
                                 std::int64_t frontier = kExactFrontier);
    static TruncLaurent t_power(TowerPtr t, std::int64_t exponent,
                                std::int64_t frontier = kExactFrontier);
    // coeffs[i] is the coefficient of t^(lead+i)
    static TruncLaurent make(TowerPtr t, std::int64_t lead, std::vector<TowerElem> coeffs,
                             std::int64_t frontier = kExactFrontier);

    bool valid() const { return tower_ != nullptr; }
    const TowerPtr& tower() const { return tower_; }
    bool is_exact() const { return frontier_ >= kExactFrontier; }
    std::int64_t frontier() const { return frontier_; }
    // Smallest possibly-nonzero exponent. For a window-zero series this
    // equals the frontier; for the exact zero series it is the sentinel.
    std::int64_t lead() const { return lead_; }
    bool window_is_zero() const { return coeffs_.empty(); }
    bool is_exact_zero() const { return coeffs_.empty() && is_exact(); }

    // Coefficient of t^k for k < frontier (zero off the stored window).
    TowerElem coeff(std::int64_t k) const;

    std::optional<std::int64_t> try_ord() const;
    std::int64_t ord() const;  // PrecisionExhausted when uncertifiable

    TruncLaurent operator-() const;
    TruncLaurent operator+(const TruncLaurent& o) const;
    TruncLaurent operator-(const TruncLaurent& o) const;
    TruncLaurent operator*(const TruncLaurent& o) const;
    TruncLaurent operator*(const TowerElem& c) const;
    TruncLaurent operator/(const TruncLaurent& o) const;
    TruncLaurent pow(long e) const;  // e >= 0
    TruncLaurent shifted(std::int64_t k) const;
    TruncLaurent truncated(std::int64_t new_frontier) const;
    // d/dt or d/ds_i for a tower transcendental
    TruncLaurent derivative(const std::string& var) const;
    // Substitution t -> g(t), ord(g) >= 1; requires lead() >= 0.
    TruncLaurent composed(const TruncLaurent& g) const;

    // Equality of the shared known window and frontiers.
    bool operator==(const TruncLaurent& o) const;

    std::string to_string() const;

private:
    void canonicalize();
    TowerElem coeff_in_window(std::int64_t k) const;  // zero off-window (known region only)
    TowerPtr tower_;
    std::int64_t lead_ = kExactFrontier;
    std::int64_t frontier_ = kExactFrontier;
    std::vector<TowerElem> coeffs_;
};

inline TruncLaurent operator*(const TowerElem& c, const TruncLaurent& a) { return a * c; }

// phi#: evaluates a polynomial on per-variable series images.
TruncLaurent substitute_poly(const MultiPoly& p, const std::vector<TruncLaurent>& images);

// ord_t of det d(u_i)/d(s_1,...,s_{l-1},t) for l = images.size().
std::int64_t jacobian_order(const std::vector<TruncLaurent>& u_images, const TowerPtr& tower);

// The determinant itself (exposed for tests).
TruncLaurent jacobian_det(const std::vector<TruncLaurent>& u_images, const TowerPtr& tower);

}  // namespace adjoints
