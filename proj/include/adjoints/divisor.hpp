#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adjoints/laurent.hpp"
#include "adjoints/multipoly.hpp"

namespace adjoints {

// Raw divisor data as parsed from a file or produced by curve expansion:
// a coefficient field tower with l-1 transcendentals and the projective
// tuple of series images of the coordinates.
struct DivisorData {
    std::string name;
    TowerPtr tower;
    std::vector<TruncLaurent> images;
    std::optional<long> adjoint_order_hint;
};

struct ValidationEntry {
    bool ok;
    std::string check;
    std::string detail;
};

struct ValidationReport {
    bool pass = false;
    int chart = -1;
    std::vector<std::optional<std::int64_t>> image_orders;
    std::int64_t min_frontier = 0;
    std::vector<ValidationEntry> entries;
    std::string to_string() const;
};

// Never throws for well-formed input; failures become report entries.
// Malformed input (image/variable count mismatch, missing tower) raises
// FormatError.
ValidationReport validate_divisor(const DivisorData& d, const MultiPoly& F);

// A validated, normalized formal prime divisor. The chart is the smallest
// index whose image has certifiable order zero; stored images are divided by
// the chart image, so the chart coordinate is exactly 1. Immutable.
class FormalPrimeDivisor {
public:
    // Structural checks and normalization. `working_frontier` bounds the
    // truncation used when normalization must invert a non-monomial unit.
    static FormalPrimeDivisor make(DivisorData d, std::int64_t working_frontier = 64);

    const std::string& name() const { return name_; }
    const TowerPtr& tower() const { return tower_; }
    int chart() const { return chart_; }
    long l() const { return static_cast<long>(raw_images_.size()) - 2; }
    const std::vector<TruncLaurent>& raw_images() const { return raw_images_; }
    const std::vector<TruncLaurent>& images() const { return norm_images_; }
    const std::optional<long>& hint() const { return hint_; }
    std::int64_t working_frontier() const { return working_frontier_; }

    // Re-normalized copy with a deeper working frontier (no-op when raw
    // images already limit the precision).
    FormalPrimeDivisor with_working_frontier(std::int64_t frontier) const;

    DivisorData data() const;

private:
    FormalPrimeDivisor() = default;
    std::string name_;
    TowerPtr tower_;
    std::vector<TruncLaurent> raw_images_;
    std::vector<TruncLaurent> norm_images_;
    int chart_ = -1;
    std::optional<long> hint_;
    std::int64_t working_frontier_ = 0;
};

// Normalized images for any admissible chart (an image of certified order 0).
std::vector<TruncLaurent> normalized_images_for_chart(const FormalPrimeDivisor& phi, int chart,
                                                      std::int64_t working_frontier);

// ord_t of phi#(f / x_chart^deg f) for homogeneous f.
std::int64_t kappa_graded(const FormalPrimeDivisor& phi, const MultiPoly& f);

// True iff kappa_graded(phi, f) >= bound can be certified (also true for the
// zero image when it is certified to that depth).
bool kappa_at_least(const FormalPrimeDivisor& phi, const MultiPoly& f, std::int64_t bound);

// alpha_phi: order of the partial-derivative image minus the Jacobian order.
long adjoint_order(const FormalPrimeDivisor& phi, const MultiPoly& F);

// Same computation pinned to a specific admissible chart and partial index
// (used by the independence property checks).
long adjoint_order_with(const FormalPrimeDivisor& phi, const MultiPoly& F, int chart, int j);

}  // namespace adjoints
