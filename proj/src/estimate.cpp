#include "rosetree/estimate.hpp"

#include <algorithm>

namespace rosetree {

namespace {

std::size_t constant_suffix(const std::vector<Rat>& v) {
    std::size_t k = 1;
    while (k < v.size() && v[v.size() - 1 - k] == v.back()) ++k;
    return k;
}

// 1/v[i] in exact arithmetic progression with positive step, values positive:
// the reciprocals run off to infinity, so the limit is exactly zero.
bool reciprocal_affine(const std::vector<Rat>& v, std::size_t from) {
    if (v.size() < from + 4) return false;
    for (std::size_t i = from; i < v.size(); ++i)
        if (v[i] <= 0) return false;
    Rat step = Rat(1) / v[from + 1] - Rat(1) / v[from];
    if (step <= 0) return false;
    for (std::size_t i = from + 1; i + 1 < v.size(); ++i)
        if (Rat(1) / v[i + 1] - Rat(1) / v[i] != step) return false;
    return true;
}

// Split v[from..] into residue classes mod period.  Partial sums of an
// eventually periodic binary expansion land here: each class is constant or
// shrinks geometrically, the shrink factor is one fixed power of two shared
// by all classes, and every class extrapolates to the same limit.  The shared
// factor lets a class with a single difference still be pinned down exactly.
bool block_geometric(const std::vector<Rat>& v, std::size_t from, std::size_t period, Rat* out) {
    std::size_t n = v.size();
    if (n < from + period + 2) return false;
    std::vector<std::vector<Rat>> cls(period);
    for (std::size_t i = from; i < n; ++i) cls[(i - from) % period].push_back(v[i]);
    std::vector<std::vector<Rat>> ds(period);
    for (std::size_t r = 0; r < period; ++r) {
        if (cls[r].size() < 2) return false;
        for (std::size_t i = 0; i + 1 < cls[r].size(); ++i)
            ds[r].push_back(cls[r][i + 1] - cls[r][i]);
    }
    Rat ratio;
    bool have_ratio = false;
    std::size_t src = period;
    for (std::size_t r = 0; r < period && !have_ratio; ++r) {
        for (std::size_t i = 0; i + 1 < ds[r].size(); ++i) {
            if (ds[r][i] != 0) {
                ratio = ds[r][i + 1] / ds[r][i];
                have_ratio = true;
                src = r;
                break;
            }
        }
    }
    // Count equations the data actually had to satisfy beyond fitting the
    // model's free parameters.  The class supplying the ratio spends two
    // differences on it, every other class spends one, and cross-class limit
    // agreement adds one per extra class.  Zero evidence means any three
    // decreasing values would "fit"; refuse to guess.
    std::size_t evidence = period - 1;
    Rat common = 0;
    bool have_common = false;
    for (std::size_t r = 0; r < period; ++r) {
        bool all_zero =
            std::all_of(ds[r].begin(), ds[r].end(), [](const Rat& x) { return x == 0; });
        Rat lim;
        if (all_zero) {
            evidence += ds[r].size();
            lim = cls[r].back();
        } else {
            if (!have_ratio || ratio == 0 || rat_abs(ratio) >= 1) return false;
            for (const Rat& x : ds[r])
                if (x == 0) return false;  // mixed zero/nonzero: not one pattern
            for (std::size_t i = 0; i + 1 < ds[r].size(); ++i)
                if (ds[r][i + 1] != ds[r][i] * ratio) return false;
            evidence += ds[r].size() - (r == src ? 2 : 1);
            lim = cls[r].back() + ds[r].back() * ratio / (Rat(1) - ratio);
        }
        if (!have_common) {
            common = lim;
            have_common = true;
        } else if (common != lim) {
            return false;
        }
    }
    if (!have_ratio) return false;  // fully frozen classes are not this pattern
    if (evidence < 1) return false;
    *out = common;
    return true;
}

} // namespace

TailEstimate estimate_tail(const std::vector<Rat>& v, const Rat& tol) {
    TailEstimate e;
    std::size_t n = v.size();
    if (n < 2) {
        if (n == 1) {
            e.state = TailEstimate::State::Limit;
            e.limit = v[0];
            e.exact = false;
        }
        return e;
    }

    std::size_t k = constant_suffix(v);
    std::size_t dev = 0;
    for (const Rat& x : v)
        if (x != v.back()) ++dev;
    // Settled tail: either a long constant suffix, or a short one with the
    // disagreements confined to a minority of early entries (indicator data
    // spikes once, then dies).
    if (k == n || k >= std::max<std::size_t>(3, (n + 2) / 3) ||
        (k >= 2 && 2 * dev <= n)) {
        e.state = TailEstimate::State::Limit;
        e.limit = v.back();
        e.exact = true;
        return e;
    }

    for (std::size_t from = 0; from + 4 <= n; ++from) {
        if (reciprocal_affine(v, from)) {
            e.state = TailEstimate::State::Limit;
            e.limit = 0;
            e.exact = true;
            return e;
        }
    }

    // Longest suffix first: a model fitted to all the data has survived the
    // most consistency checks, and a shorter suffix can fit spuriously.
    for (std::size_t from = 0; from + 2 <= n; ++from) {
        for (std::size_t period = 1; period <= kMaxResiduePeriod && from + 2 * period <= n;
             ++period) {
            Rat lim;
            if (block_geometric(v, from, period, &lim)) {
                e.state = TailEstimate::State::Limit;
                e.limit = lim;
                e.exact = true;
                return e;
            }
        }
    }

    // No exact pattern: bound the tail by its successive deviations.
    std::size_t w = std::min<std::size_t>(n, 6);
    Rat maxdev = 0;
    std::size_t big = 0, swings = 0;
    int last_sign = 0;
    for (std::size_t i = n - w; i + 1 < n; ++i) {
        Rat d = v[i + 1] - v[i];
        Rat dev = rat_abs(d);
        maxdev = std::max(maxdev, dev);
        if (dev > tol) {
            ++big;
            int sign = d > 0 ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) ++swings;
            last_sign = sign;
        }
    }
    if (maxdev <= tol) {
        e.state = TailEstimate::State::Limit;
        e.limit = v.back();
        e.residual = maxdev;
        e.exact = false;
        return e;
    }
    // genuine back-and-forth, not a slow monotone drift
    if (big >= 3 && swings >= 2) {
        e.state = TailEstimate::State::Oscillates;
        e.limit = v.back();
        for (std::size_t i = n; i-- > 0;) {
            if (v[i] != v.back()) {
                e.alt = v[i];
                break;
            }
        }
        return e;
    }
    return e;
}

} // namespace rosetree
