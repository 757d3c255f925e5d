#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "collectorlab/summation.hpp"

namespace collectorlab::quadrature {

struct Tolerance {
    double absolute = 0.0;
    double relative = 1e-10;
    std::size_t max_subdivisions = 2000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t subdivisions = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

struct LargerError {
    bool operator()(const Panel& x, const Panel& y) const noexcept {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    }
};

template <class F>
Panel gauss_kronrod_15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = f(center);

    double kronrod = f_center * kKronrodWeights[7];
    double gauss = f_center * kGaussWeights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f_left{}, f_right{};
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        f_left[i] = f(center - dx);
        f_right[i] = f(center + dx);
        const double pair = f_left[i] + f_right[i];
        kronrod += kKronrodWeights[i] * pair;
        abs_sum += kKronrodWeights[i] * (std::abs(f_left[i]) + std::abs(f_right[i]));
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }

    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(f_center - mean);
    for (std::size_t i = 0; i < 7; ++i) {
        asc += kKronrodWeights[i] * (std::abs(f_left[i] - mean) + std::abs(f_right[i] - mean));
    }

    const double result = kronrod * half;
    asc *= std::abs(half);
    abs_sum *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) {
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    if (abs_sum > tiny / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * abs_sum);
    }
    return {a, b, result, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]: the panel
/// with the largest error estimate is bisected until the summed error drops
/// below max(absolute, relative * |integral|) or the subdivision budget is
/// used up. The final sum is accumulated in ascending panel order, so the
/// result depends only on f, the interval and the tolerance.
///
/// `initial_panels` splits [a, b] evenly before refinement starts, which
/// keeps the first error estimate honest for integrands with a sharp
/// feature somewhere in a long interval.
template <class F>
Result integrate(const F& f, double a, double b, const Tolerance& tol = {},
                 std::size_t initial_panels = 1) {
    Result out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    initial_panels = std::max<std::size_t>(initial_panels, 1);
    std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::LargerError> heap;
    double value = 0.0;
    double error = 0.0;
    const double width = (b - a) / static_cast<double>(initial_panels);
    for (std::size_t i = 0; i < initial_panels; ++i) {
        const double lo = a + width * static_cast<double>(i);
        const double hi = i + 1 == initial_panels ? b : a + width * static_cast<double>(i + 1);
        const detail::Panel panel = detail::gauss_kronrod_15(f, lo, hi);
        value += panel.value;
        error += panel.error;
        heap.push(panel);
    }
    std::size_t subdivisions = initial_panels;

    auto satisfied = [&] {
        return error <= std::max(tol.absolute, tol.relative * std::abs(value));
    };

    while (!satisfied() && subdivisions < tol.max_subdivisions) {
        const detail::Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
        heap.pop();
        const detail::Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
        const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    std::vector<detail::Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
    CompensatedSum<double> v;
    CompensatedSum<double> e;
    for (const auto& panel : panels) {
        v += panel.value;
        e += panel.error;
    }
    out.value = v.value();
    out.error = e.value();
    out.subdivisions = subdivisions;
    out.converged = out.error <= std::max(tol.absolute, tol.relative * std::abs(out.value));
    return out;
}

}  // namespace collectorlab::quadrature
