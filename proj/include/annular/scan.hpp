#pragma once

#include "annular/expr.hpp"
#include "annular/geometry.hpp"

#include <cstddef>

namespace annular {

struct Interval {
    double lo;
    double hi;

    bool operator==(const Interval&) const = default;
};

/// Closed box in (r, u, v, gu, gv).
struct BoxSpec {
    Interval r;
    Interval u;
    Interval v;
    Interval gu;
    Interval gv;

    const Interval& operator[](Var var) const;
    Interval& operator[](Var var);
    bool operator==(const BoxSpec&) const = default;
};

struct ScanConfig {
    int points_per_axis = 17;
    int refine_starts = 8;
    int refine_sweeps = 12;
    /// Margins must exceed relative_tolerance * max(1, |threshold|).
    double relative_tolerance = 1e-9;
};

struct ScanResult {
    double value;
    EvalPoint argpoint;
    std::size_t evaluations;
};

/// Sup or inf of f over the box: tensor-grid sampling over the axes f references
/// (other axes collapse to their lower end), then coordinate descent from the
/// best `refine_starts` grid points. Deterministic. Eval errors propagate.
ScanResult scan_extremum(const Expr& f, const BoxSpec& box, Extremum mode,
                         const ScanConfig& config = {});

struct SampleAudit {
    double min;
    double max;
    std::size_t samples;
};

/// Evaluates f on a full tensor grid (every axis sampled). Any evaluation
/// failure throws EvalError; a NaN is never returned.
SampleAudit audit_samples(const Expr& f, const BoxSpec& box, int points_per_axis = 5);

}  // namespace annular
