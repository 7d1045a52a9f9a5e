#include "adjoints/divisor.hpp"

#include <algorithm>

#include "adjoints/errors.hpp"

namespace adjoints {

namespace {

// true when the series is an exact monomial c*t^k (division by it is lossless)
bool is_exact_monomial(const TruncLaurent& s) {
    if (!s.is_exact()) return false;
    auto o = s.try_ord();
    if (!o) return false;
    TruncLaurent rest = s - TruncLaurent::monomial(s.coeff(*o), *o);
    return rest.is_exact_zero();
}

bool is_exact_one(const TruncLaurent& s) {
    auto o = s.try_ord();
    return s.is_exact() && o && *o == 0 && s.coeff(0).is_one() && is_exact_monomial(s);
}

int pick_chart(const std::vector<TruncLaurent>& images) {
    for (std::size_t i = 0; i < images.size(); ++i) {
        auto o = images[i].try_ord();
        if (o && *o < 0)
            throw FormatError("image " + std::to_string(i) + " has negative order");
        if (!o && !images[i].is_exact() && images[i].frontier() <= 0)
            throw PrecisionExhausted("chart_selection", 1,
                                     "image " + std::to_string(i) +
                                         " cannot be distinguished from a unit coordinate");
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        auto o = images[i].try_ord();
        if (o && *o == 0) return static_cast<int>(i);
    }
    throw FormatError("no unit coordinate: every image has positive order");
}

std::vector<TruncLaurent> normalize(const std::vector<TruncLaurent>& raw, int chart,
                                    std::int64_t working_frontier) {
    const TruncLaurent& u = raw[static_cast<std::size_t>(chart)];
    std::vector<TruncLaurent> out;
    out.reserve(raw.size());
    if (is_exact_one(u)) return raw;
    TruncLaurent unit = u;
    if (u.is_exact() && !is_exact_monomial(u)) unit = u.truncated(working_frontier);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (static_cast<int>(i) == chart) {
            // u/u is exactly 1
            out.push_back(TruncLaurent::constant(TowerElem::one(raw[i].tower())));
        } else {
            out.push_back(raw[i] / unit);
        }
    }
    return out;
}

}  // namespace

std::string ValidationReport::to_string() const {
    std::string s;
    for (const auto& e : entries) {
        s += (e.ok ? "  [ok]   " : "  [FAIL] ") + e.check;
        if (!e.detail.empty()) s += ": " + e.detail;
        s += "\n";
    }
    s += pass ? "  => pass" : "  => fail";
    return s;
}

ValidationReport validate_divisor(const DivisorData& d, const MultiPoly& F) {
    if (!d.tower) throw FormatError("divisor '" + d.name + "' has no coefficient tower");
    if (d.images.size() != F.num_vars())
        throw FormatError("divisor '" + d.name + "' has " + std::to_string(d.images.size()) +
                          " images for " + std::to_string(F.num_vars()) + " variables");
    ValidationReport rep;
    long l = static_cast<long>(d.images.size()) - 2;
    auto add = [&rep](bool ok, std::string check, std::string detail) {
        rep.entries.push_back(ValidationEntry{ok, std::move(check), std::move(detail)});
    };

    bool trans_ok = static_cast<long>(d.tower->num_transcendentals()) == l - 1;
    add(trans_ok, "transcendence degree",
        std::to_string(d.tower->num_transcendentals()) + " transcendentals for l = " +
            std::to_string(l));

    rep.min_frontier = kExactFrontier;
    bool orders_ok = true;
    std::string order_detail;
    for (std::size_t i = 0; i < d.images.size(); ++i) {
        rep.image_orders.push_back(d.images[i].try_ord());
        rep.min_frontier = std::min(rep.min_frontier, d.images[i].frontier());
        if (rep.image_orders.back() && *rep.image_orders.back() < 0) orders_ok = false;
        if (!order_detail.empty()) order_detail += ", ";
        order_detail += rep.image_orders.back()
                            ? std::to_string(*rep.image_orders.back())
                            : std::string("?");
    }
    add(orders_ok, "image orders", "(" + order_detail + ")");

    bool unit_ok = false;
    int chart = -1;
    for (std::size_t i = 0; i < d.images.size() && !unit_ok; ++i) {
        auto o = d.images[i].try_ord();
        if (o && *o == 0) {
            unit_ok = true;
            chart = static_cast<int>(i);
        }
    }
    rep.chart = chart;
    add(unit_ok, "unit coordinate",
        unit_ok ? "chart " + std::to_string(chart) : "no unit coordinate");

    bool residual_ok = false;
    std::string residual_detail;
    try {
        TruncLaurent res = substitute_poly(F, d.images);
        residual_ok = res.window_is_zero();
        residual_detail = residual_ok
                              ? "zero through frontier " + std::to_string(res.frontier())
                              : "nonzero at t^" + std::to_string(res.ord());
    } catch (const Error& e) {
        residual_detail = e.what();
    }
    add(residual_ok, "hypersurface residual", residual_detail);

    rep.pass = trans_ok && orders_ok && unit_ok && residual_ok;
    return rep;
}

FormalPrimeDivisor FormalPrimeDivisor::make(DivisorData d, std::int64_t working_frontier) {
    if (!d.tower) throw FormatError("divisor '" + d.name + "' has no coefficient tower");
    if (d.images.size() < 3)
        throw FormatError("divisor '" + d.name + "' needs at least three images");
    long l = static_cast<long>(d.images.size()) - 2;
    if (static_cast<long>(d.tower->num_transcendentals()) != l - 1)
        throw FormatError("divisor '" + d.name + "': tower has " +
                          std::to_string(d.tower->num_transcendentals()) +
                          " transcendentals, expected " + std::to_string(l - 1));
    for (const auto& im : d.images) {
        if (!im.valid()) throw FormatError("divisor '" + d.name + "' has an empty image");
        if (im.tower() != d.tower && !im.tower()->same(*d.tower))
            throw TowerMismatch("divisor '" + d.name + "': image tower differs");
    }
    FormalPrimeDivisor phi;
    phi.name_ = d.name;
    phi.tower_ = d.tower;
    phi.raw_images_ = d.images;
    phi.hint_ = d.adjoint_order_hint;
    phi.working_frontier_ = working_frontier;
    phi.chart_ = pick_chart(phi.raw_images_);
    phi.norm_images_ = normalize(phi.raw_images_, phi.chart_, working_frontier);
    return phi;
}

FormalPrimeDivisor FormalPrimeDivisor::with_working_frontier(std::int64_t frontier) const {
    FormalPrimeDivisor phi = *this;
    phi.working_frontier_ = frontier;
    phi.norm_images_ = normalize(raw_images_, chart_, frontier);
    return phi;
}

DivisorData FormalPrimeDivisor::data() const {
    return DivisorData{name_, tower_, raw_images_, hint_};
}

std::vector<TruncLaurent> normalized_images_for_chart(const FormalPrimeDivisor& phi, int chart,
                                                      std::int64_t working_frontier) {
    if (chart < 0 || chart >= static_cast<int>(phi.raw_images().size()))
        throw FormatError("chart index out of range");
    auto o = phi.raw_images()[static_cast<std::size_t>(chart)].try_ord();
    if (!o || *o != 0)
        throw FormatError("chart " + std::to_string(chart) + " is not admissible");
    return normalize(phi.raw_images(), chart, working_frontier);
}

std::int64_t kappa_graded(const FormalPrimeDivisor& phi, const MultiPoly& f) {
    if (!f.is_homogeneous()) throw NonHomogeneous("kappa is defined for homogeneous sections");
    TruncLaurent img = substitute_poly(f, phi.images());
    auto o = img.try_ord();
    if (!o) {
        if (img.is_exact()) {
            // f maps to the exact zero series: f is in the ideal of X
            throw PrecisionExhausted("kappa_graded", kExactFrontier,
                                     "image of the section is identically zero");
        }
        throw PrecisionExhausted("kappa_graded", img.frontier() + 1,
                                 "image vanishes through its window (frontier " +
                                     std::to_string(img.frontier()) + ")");
    }
    return *o;
}

bool kappa_at_least(const FormalPrimeDivisor& phi, const MultiPoly& f, std::int64_t bound) {
    if (!f.is_homogeneous()) throw NonHomogeneous("kappa is defined for homogeneous sections");
    TruncLaurent img = substitute_poly(f, phi.images());
    auto o = img.try_ord();
    if (o) return *o >= bound;
    if (img.frontier() >= bound) return true;
    throw PrecisionExhausted("kappa_at_least", bound,
                             "image vanishes through frontier " +
                                 std::to_string(img.frontier()) + ", cannot certify order >= " +
                                 std::to_string(bound));
}

namespace {

long adjoint_order_impl(const FormalPrimeDivisor& phi, const MultiPoly& F, int chart,
                        std::optional<int> forced_j, bool check_hint) {
    long d = -1;
    if (!F.is_homogeneous(&d) || d < 1)
        throw NonHomogeneous("adjoint order needs a homogeneous equation of degree >= 1");
    std::vector<TruncLaurent> norm =
        chart == phi.chart() ? phi.images()
                             : normalized_images_for_chart(phi, chart, phi.working_frontier());
    const std::size_t n = norm.size();

    // usable partial: certifiable order of the image of dF/dx_j, j != chart
    int best_j = -1;
    std::int64_t best_ord = 0;
    bool any_window_vanished = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (static_cast<int>(j) == chart) continue;
        if (forced_j && static_cast<int>(j) != *forced_j) continue;
        MultiPoly pj = F.partial_derivative(j);
        if (pj.is_zero()) continue;
        TruncLaurent img = substitute_poly(pj, norm);
        auto o = img.try_ord();
        if (!o) {
            any_window_vanished = true;
            continue;
        }
        if (best_j < 0 || *o < best_ord) {
            best_j = static_cast<int>(j);
            best_ord = *o;
        }
    }
    if (best_j < 0) {
        if (forced_j)
            throw NoUsablePartial("partial index " + std::to_string(*forced_j) +
                                  " has no certifiable image order");
        throw NoUsablePartial(
            any_window_vanished
                ? "every partial-derivative image vanishes through its window"
                : "every partial derivative is zero");
    }

    // remaining affine coordinates span the transcendence basis
    std::vector<TruncLaurent> u_images;
    for (std::size_t k = 0; k < n; ++k) {
        if (static_cast<int>(k) == chart || static_cast<int>(k) == best_j) continue;
        u_images.push_back(norm[k]);
    }
    std::int64_t jac = jacobian_order(u_images, phi.tower());
    long alpha = static_cast<long>(best_ord - jac);
    if (check_hint && phi.hint() && *phi.hint() != alpha)
        throw HintMismatch("divisor '" + phi.name() + "': computed adjoint order " +
                           std::to_string(alpha) + " but hint says " +
                           std::to_string(*phi.hint()));
    return alpha;
}

}  // namespace

long adjoint_order(const FormalPrimeDivisor& phi, const MultiPoly& F) {
    return adjoint_order_impl(phi, F, phi.chart(), std::nullopt, true);
}

long adjoint_order_with(const FormalPrimeDivisor& phi, const MultiPoly& F, int chart, int j) {
    return adjoint_order_impl(phi, F, chart, j, false);
}

}  // namespace adjoints
