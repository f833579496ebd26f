#pragma once

#include "swlab/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace swlab {

struct CubatureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    /// Initial uniform split per axis before adaptivity starts.
    int initial_split = 1;
    int max_regions = 200000;
    /// Measure every component's error against rel_tol * max_c |value_c| instead of its own value.
    bool normwise = false;
};

template <int Dim>
struct CubatureResult {
    Eigen::Matrix<double, Dim, 1> value;
    Eigen::Matrix<double, Dim, 1> error;
    int regions = 0;
    bool converged = false;
};

namespace detail {

/// 15-point Kronrod nodes on [-1, 1] with Kronrod and embedded 7-point Gauss weights
/// (Gauss weight zero at the Kronrod-only nodes).
struct KronrodTable {
    std::array<double, 15> node;
    std::array<double, 15> kronrod;
    std::array<double, 15> gauss;
};
const KronrodTable& kronrod15();

}  // namespace detail

/// Adaptive tensor Gauss-Kronrod (7/15 in each axis) over [lo0, hi0] x [lo1, hi1].
///
/// f(x, y) returns Eigen::Matrix<double, Dim, 1>. Per region, the error along an
/// axis is |K x K - G x K| with Gauss in that axis; the worst region is bisected
/// along its worse axis. Stops when every component satisfies
/// err <= max(abs_tol, rel_tol |value|). Deterministic.
template <int Dim, typename F>
CubatureResult<Dim> integrate_rectangle(F&& f, double lo0, double hi0, double lo1, double hi1,
                                        const CubatureOptions& opts = {}) {
    using Vec = Eigen::Matrix<double, Dim, 1>;
    const auto& tab = detail::kronrod15();

    struct Region {
        double a0, b0, a1, b1;
        Vec value, err0, err1;
        double key;
    };
    auto evaluate = [&](double a0, double b0, double a1, double b1) {
        const double c0 = 0.5 * (a0 + b0), h0 = 0.5 * (b0 - a0);
        const double c1 = 0.5 * (a1 + b1), h1 = 0.5 * (b1 - a1);
        Vec kk = Vec::Zero(), gk = Vec::Zero(), kg = Vec::Zero();
        for (int i = 0; i < 15; ++i) {
            const double x = c0 + h0 * tab.node[static_cast<std::size_t>(i)];
            Vec row_k = Vec::Zero(), row_g = Vec::Zero();
            for (int j = 0; j < 15; ++j) {
                const Vec v = f(x, c1 + h1 * tab.node[static_cast<std::size_t>(j)]);
                row_k += tab.kronrod[static_cast<std::size_t>(j)] * v;
                row_g += tab.gauss[static_cast<std::size_t>(j)] * v;
            }
            kk += tab.kronrod[static_cast<std::size_t>(i)] * row_k;
            gk += tab.gauss[static_cast<std::size_t>(i)] * row_k;
            kg += tab.kronrod[static_cast<std::size_t>(i)] * row_g;
        }
        const double jac = h0 * h1;
        Region r{a0, b0, a1, b1, jac * kk, (jac * (kk - gk)).cwiseAbs(), (jac * (kk - kg)).cwiseAbs(), 0.0};
        return r;
    };

    std::vector<Region> initial;
    const int m = std::max(1, opts.initial_split);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            initial.push_back(evaluate(lo0 + (hi0 - lo0) * i / m, lo0 + (hi0 - lo0) * (i + 1) / m,
                                       lo1 + (hi1 - lo1) * j / m, lo1 + (hi1 - lo1) * (j + 1) / m));
        }
    }
    Vec total = Vec::Zero(), total_err = Vec::Zero();
    for (const auto& r : initial) {
        total += r.value;
        total_err += r.err0 + r.err1;
    }
    // Per-component scale fixed from the first estimate so the heap key is dimensionless.
    Vec scale = total.cwiseAbs().cwiseMax(total_err);
    if (opts.normwise) scale.setConstant(scale.maxCoeff());
    for (int c = 0; c < scale.size(); ++c) {
        if (!(scale(c) > 0.0)) scale(c) = 1.0;
    }
    auto key_of = [&scale](const Region& r) { return ((r.err0 + r.err1).array() / scale.array()).maxCoeff(); };
    auto cmp = [](const Region& x, const Region& y) { return x.key < y.key; };
    std::priority_queue<Region, std::vector<Region>, decltype(cmp)> heap(cmp);
    for (auto& r : initial) {
        r.key = key_of(r);
        heap.push(std::move(r));
    }

    CubatureResult<Dim> out;
    int regions = static_cast<int>(heap.size());
    auto done = [&]() {
        const double peak = total.cwiseAbs().maxCoeff();
        for (int c = 0; c < total.size(); ++c) {
            const double ref = opts.normwise ? peak : std::abs(total(c));
            if (total_err(c) > std::max(opts.abs_tol, opts.rel_tol * ref)) return false;
        }
        return true;
    };
    while (!done() && regions < opts.max_regions) {
        Region worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_err -= worst.err0 + worst.err1;
        const bool split0 =
            (worst.err0.array() / scale.array()).maxCoeff() >= (worst.err1.array() / scale.array()).maxCoeff();
        Region left = split0 ? evaluate(worst.a0, 0.5 * (worst.a0 + worst.b0), worst.a1, worst.b1)
                             : evaluate(worst.a0, worst.b0, worst.a1, 0.5 * (worst.a1 + worst.b1));
        Region right = split0 ? evaluate(0.5 * (worst.a0 + worst.b0), worst.b0, worst.a1, worst.b1)
                              : evaluate(worst.a0, worst.b0, 0.5 * (worst.a1 + worst.b1), worst.b1);
        for (Region* r : {&left, &right}) {
            total += r->value;
            total_err += r->err0 + r->err1;
            r->key = key_of(*r);
            heap.push(std::move(*r));
        }
        ++regions;
    }
    // Re-sum from the leaves; the running totals drift by cancellation.
    total.setZero();
    total_err.setZero();
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().err0 + heap.top().err1;
        heap.pop();
    }
    out.value = total;
    out.error = total_err;
    out.regions = regions;
    out.converged = done();
    return out;
}

/// Polar form: integrates g(r, theta) r over [r0, r1] x [0, 2 pi].
template <int Dim, typename G>
CubatureResult<Dim> integrate_annulus(G&& g, double r0, double r1, const CubatureOptions& opts = {}) {
    auto polar = [&g](double r, double theta) -> Eigen::Matrix<double, Dim, 1> { return r * g(r, theta); };
    return integrate_rectangle<Dim>(polar, r0, r1, 0.0, 2.0 * M_PI, opts);
}

}  // namespace swlab
