#include "annular/scan.hpp"

#include "annular/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace annular {

namespace {

constexpr std::array<Var, 5> kAxes{Var::r, Var::u, Var::v, Var::gu, Var::gv};

void validate(const BoxSpec& box) {
    for (Var var : kAxes) {
        const Interval& iv = box[var];
        if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
            throw std::invalid_argument("scan box has an empty or unbounded axis");
        }
    }
}

double grid_coordinate(const Interval& iv, int i, int count) {
    if (count == 1) return iv.lo;
    if (i + 1 == count) return iv.hi;
    return iv.lo + (iv.hi - iv.lo) * i / (count - 1);
}

struct Candidate {
    double objective;  // minimized
    EvalPoint point;
};

}  // namespace

const Interval& BoxSpec::operator[](Var var) const {
    switch (var) {
        case Var::r: return r;
        case Var::u: return u;
        case Var::v: return v;
        case Var::gu: return gu;
        case Var::gv: break;
    }
    return gv;
}

Interval& BoxSpec::operator[](Var var) {
    return const_cast<Interval&>(static_cast<const BoxSpec&>(*this)[var]);
}

ScanResult scan_extremum(const Expr& f, const BoxSpec& box, Extremum mode,
                         const ScanConfig& config) {
    validate(box);
    const double sign = mode == Extremum::inf ? 1.0 : -1.0;
    std::size_t evaluations = 0;
    auto objective = [&](const EvalPoint& p) {
        ++evaluations;
        return sign * f.eval(p);
    };

    std::vector<Var> active;
    for (Var var : kAxes) {
        if (f.references(var) && box[var].hi > box[var].lo) active.push_back(var);
    }
    const int per_axis = std::max(config.points_per_axis, 2);
    const std::size_t keep = static_cast<std::size_t>(std::max(config.refine_starts, 1));

    EvalPoint base;
    for (Var var : kAxes) base[var] = box[var].lo;

    // Tensor grid over active axes, odometer order.
    std::vector<Candidate> best;
    std::vector<int> index(active.size(), 0);
    for (;;) {
        EvalPoint p = base;
        for (std::size_t k = 0; k < active.size(); ++k) {
            p[active[k]] = grid_coordinate(box[active[k]], index[k], per_axis);
        }
        const Candidate c{objective(p), p};
        const auto pos = std::upper_bound(best.begin(), best.end(), c,
                                          [](const Candidate& a, const Candidate& b) {
                                              return a.objective < b.objective;
                                          });
        if (best.size() < keep || pos != best.end()) {
            best.insert(pos, c);
            if (best.size() > keep) best.pop_back();
        }
        std::size_t k = 0;
        while (k < active.size() && ++index[k] == per_axis) {
            index[k] = 0;
            ++k;
        }
        if (k == active.size()) break;
    }

    // Coordinate descent with shrinking brackets.
    Candidate overall = best.front();
    for (const Candidate& start : best) {
        Candidate cur = start;
        std::vector<double> step(active.size());
        for (std::size_t k = 0; k < active.size(); ++k) {
            const Interval& iv = box[active[k]];
            step[k] = (iv.hi - iv.lo) / (per_axis - 1);
        }
        for (int sweep = 0; sweep < config.refine_sweeps; ++sweep) {
            bool moved = false;
            for (std::size_t k = 0; k < active.size(); ++k) {
                const Var var = active[k];
                const Interval& iv = box[var];
                const double lo = std::max(iv.lo, cur.point[var] - step[k]);
                const double hi = std::min(iv.hi, cur.point[var] + step[k]);
                if (!(hi > lo)) continue;
                EvalPoint p = cur.point;
                auto along = [&](double x) {
                    p[var] = x;
                    return objective(p);
                };
                // coarse pass inside the bracket, then golden section around its best point
                constexpr int sub = 16;
                double best_x = cur.point[var];
                double best_val = cur.objective;
                for (int i = 0; i <= sub; ++i) {
                    const double x = i == sub ? hi : lo + (hi - lo) * i / sub;
                    const double val = along(x);
                    if (val < best_val) {
                        best_val = val;
                        best_x = x;
                    }
                }
                const double width = (hi - lo) / sub;
                const double x = golden_section_argmin(along, std::max(lo, best_x - width),
                                                       std::min(hi, best_x + width));
                const double val = along(x);
                if (val < best_val) {
                    best_val = val;
                    best_x = x;
                }
                if (best_val < cur.objective) {
                    cur.objective = best_val;
                    cur.point[var] = best_x;
                    moved = true;
                }
            }
            for (double& s : step) s *= 0.5;
            if (!moved && sweep > 2) break;
        }
        if (cur.objective < overall.objective) overall = cur;
    }
    return {sign * overall.objective, overall.point, evaluations};
}

SampleAudit audit_samples(const Expr& f, const BoxSpec& box, int points_per_axis) {
    validate(box);
    const int n = std::max(points_per_axis, 2);
    SampleAudit audit{INFINITY, -INFINITY, 0};
    std::array<int, 5> index{};
    for (;;) {
        EvalPoint p;
        for (std::size_t k = 0; k < kAxes.size(); ++k) {
            p[kAxes[k]] = grid_coordinate(box[kAxes[k]], index[k], n);
        }
        const double val = f.eval(p);
        audit.min = std::min(audit.min, val);
        audit.max = std::max(audit.max, val);
        ++audit.samples;
        std::size_t k = 0;
        while (k < kAxes.size() && ++index[k] == n) {
            index[k] = 0;
            ++k;
        }
        if (k == kAxes.size()) break;
    }
    return audit;
}

}  // namespace annular
