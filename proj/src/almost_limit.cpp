#include "ifeq/almost_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifeq/errors.hpp"
#include "ifeq/kernels.hpp"

namespace ifeq {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

double window_mean(const double* seq, std::size_t start, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += seq[start + j];
    return s / static_cast<double>(n);
}

} // namespace

void AlmostLimitParams::validate() const {
    if (n_values.empty())
        raise(ErrorCode::domain_error, "n_values must be non-empty");
    for (std::size_t n : n_values)
        if (n == 0) raise(ErrorCode::domain_error, "window lengths must be >= 1");
    std::size_t max_n = *std::max_element(n_values.begin(), n_values.end());
    if (max_n + shift_max > m_max)
        raise(ErrorCode::domain_error,
              "window layout exceeds the iterate budget: max(n_values) + "
              "shift_max must be <= m_max");
    if (!(tol > 0.0))
        raise(ErrorCode::domain_error, "tol must be positive");
}

AlmostLimitParams AlmostLimitParams::for_length(std::size_t len, double tol) {
    AlmostLimitParams p;
    p.tol = tol;
    std::size_t target = len > 4 ? len / 4 : 1;
    std::size_t n = 1;
    while (n * 2 <= target) n *= 2;
    p.n_values.clear();
    for (std::size_t d = 8; d >= 1; d /= 2)
        if (n / d >= 1) p.n_values.push_back(n / d);
    p.n_values.erase(std::unique(p.n_values.begin(), p.n_values.end()),
                     p.n_values.end());
    std::size_t max_n = p.n_values.back();
    p.shift_max = std::min(max_n, len > max_n ? len - max_n : 0);
    p.m_max = len > 0 ? len - 1 : 0;
    if (max_n + p.shift_max > p.m_max && p.shift_max > 0)
        p.shift_max = p.m_max > max_n ? p.m_max - max_n : 0;
    return p;
}

const char* almost_limit_status_name(AlmostLimitStatus s) {
    switch (s) {
        case AlmostLimitStatus::convergent: return "convergent";
        case AlmostLimitStatus::almost_convergent: return "almost_convergent";
        case AlmostLimitStatus::undecided: return "undecided";
        case AlmostLimitStatus::unbounded: return "unbounded";
    }
    return "unknown";
}

bool certified(AlmostLimitStatus s) {
    return s == AlmostLimitStatus::convergent ||
           s == AlmostLimitStatus::almost_convergent;
}

CesaroTable cesaro_table(std::span<const double> seq,
                         const AlmostLimitParams& params) {
    params.validate();
    std::size_t max_n = *std::max_element(params.n_values.begin(),
                                          params.n_values.end());
    if (seq.size() < max_n + params.shift_max)
        raise(ErrorCode::insufficient_length,
              "sequence shorter than max window plus shift range");
    CesaroTable t;
    t.n_values = params.n_values;
    t.shift_max = params.shift_max;
    std::size_t k_count = params.shift_max + 1;
    for (std::size_t n : params.n_values) {
        std::vector<double> row(k_count);
        if (n == 1) {
            std::copy(seq.begin(), seq.begin() + k_count, row.begin());
        } else {
            kernels::window_sums(row.data(), seq.data(), n, k_count);
            double inv = static_cast<double>(n);
            for (double& v : row) v /= inv;
        }
        t.means.push_back(std::move(row));
    }
    return t;
}

AlmostLimitResult almost_limit(std::span<const double> seq,
                               const AlmostLimitParams& params,
                               double inflation) {
    params.validate();
    const std::size_t len = seq.size();
    std::size_t max_n = *std::max_element(params.n_values.begin(),
                                          params.n_values.end());
    if (len < max_n + params.shift_max)
        raise(ErrorCode::insufficient_length,
              "sequence shorter than max window plus shift range");

    AlmostLimitResult res;
    res.tol_used = params.tol + inflation;
    const double tol = res.tol_used;

    for (double v : seq) {
        if (!std::isfinite(v) || std::fabs(v) > params.bound_cap) {
            res.status = AlmostLimitStatus::unbounded;
            res.value = quiet_nan;
            res.spread = quiet_nan;
            return res;
        }
    }

    // constant sequences certify bit-exactly; window means would round
    bool all_same = true;
    for (double v : seq)
        if (v != seq[0]) {
            all_same = false;
            break;
        }
    if (all_same) {
        res.status = AlmostLimitStatus::convergent;
        res.value = seq[0];
        res.spread = 0.0;
        res.tail_oscillation = 0.0;
        return res;
    }

    // sorted descending for n*, n2
    std::vector<std::size_t> ns = params.n_values;
    std::sort(ns.begin(), ns.end(), std::greater<>());
    const std::size_t n_star = ns.front();

    // tail analysis, windows anchored at the latest shift
    const std::size_t tail_start = len / 2;
    const double tail_mean = window_mean(seq.data(), len - n_star, n_star);
    double tail_osc = 0.0;
    for (std::size_t i = tail_start; i < len; ++i)
        tail_osc = std::max(tail_osc, std::fabs(seq[i] - tail_mean));
    res.tail_oscillation = tail_osc;

    // front-anchored window table
    CesaroTable table = cesaro_table(seq, params);
    auto row_of = [&](std::size_t n) -> const std::vector<double>& {
        for (std::size_t i = 0; i < table.n_values.size(); ++i)
            if (table.n_values[i] == n) return table.means[i];
        raise(ErrorCode::out_of_range, "window length missing from table");
    };
    const std::vector<double>& front = row_of(n_star);
    double front_spread = 0.0;
    for (double c : front)
        front_spread = std::max(front_spread, std::fabs(c - front[0]));

    for (std::size_t i = 0; i < table.n_values.size(); ++i) {
        const std::vector<double>& row = table.means[i];
        WindowDiagnostic d;
        d.n = table.n_values[i];
        d.front_mean = row[0];
        for (double c : row)
            d.front_spread = std::max(d.front_spread, std::fabs(c - row[0]));
        d.tail_mean = window_mean(seq.data(), len - d.n, d.n);
        res.diagnostics.push_back(d);
    }

    if (tail_osc <= tol) {
        res.status = AlmostLimitStatus::convergent;
        res.value = tail_mean;
        // spread across end-anchored shifts that stay inside the tail
        std::size_t k_lim = 0;
        if (len - n_star >= tail_start)
            k_lim = std::min(params.shift_max, len - n_star - tail_start);
        double spread = 0.0;
        for (std::size_t k = 0; k <= k_lim; ++k) {
            double c = window_mean(seq.data(), len - n_star - k, n_star);
            spread = std::max(spread, std::fabs(c - tail_mean));
        }
        res.spread = spread;
        return res;
    }

    bool stable = true;
    if (ns.size() > 1) {
        const std::vector<double>& second = row_of(ns[1]);
        stable = std::fabs(front[0] - second[0]) <= tol;
    }
    if (front_spread <= tol && stable) {
        res.status = AlmostLimitStatus::almost_convergent;
        res.value = front[0];
        res.spread = front_spread;
        return res;
    }

    res.status = AlmostLimitStatus::undecided;
    res.value = quiet_nan;
    res.spread = front_spread;
    return res;
}

AlmostLimitResult almost_limit_of_iterates(const WeightedSystem& sys,
                                           const FunctionRep& h, double x,
                                           const AlmostLimitParams& params,
                                           const IterateOptions& opts) {
    params.validate();
    std::vector<IterateEstimate> est =
        iterate_sequence(sys, h, params.m_max, x, opts);
    std::vector<double> seq(est.size());
    double inflation = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        seq[i] = est[i].value;
        inflation = std::max(inflation, est[i].half_width);
    }
    return almost_limit(seq, params, inflation);
}

} // namespace ifeq
