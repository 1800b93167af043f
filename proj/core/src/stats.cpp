#include "oamncc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace oamncc::stats {

namespace {

// Largest per-sample size the exact two-sample distribution is used for;
// beyond it the asymptotic series is accurate and far cheaper.
constexpr std::size_t kExactLimit = 200;

void require_nonempty_finite(std::span<const double> samples, const char* who)
{
    if (samples.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty sample");
    }
    for (double v : samples) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(who) + ": non-finite value");
        }
    }
}

// Kolmogorov asymptotic survival function Q(lambda).
double kolmogorov_q(double lambda)
{
    if (lambda < 0.2) {
        // Series converges too slowly here and Q is 1 to ~1e-4 anyway.
        return 1.0;
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 1000; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-10) {
            break;
        }
        sign = -sign;
    }
    const double p = 2.0 * sum;
    return std::clamp(p, 0.0, 1.0);
}

// Exact two-sample survival P(D >= d) by lattice path counting: the
// fraction of orderings whose running ECDF gap ever reaches d. Gaps on the
// (na, nb) lattice are integers over na*nb, so the strict bound below d is
// integer-exact. Counts stay well inside double range up to 200 x 200.
double exact_survival(std::size_t na, std::size_t nb, double d)
{
    const auto h_obs = static_cast<long long>(std::llround(d * static_cast<double>(na) *
                                                           static_cast<double>(nb)));
    if (h_obs <= 0) {
        return 1.0;
    }
    std::vector<double> column(nb + 1, 0.0);
    const auto gap = [&](std::size_t i, std::size_t j) {
        return std::llabs(static_cast<long long>(i * nb) - static_cast<long long>(j * na));
    };
    for (std::size_t i = 0; i <= na; ++i) {
        for (std::size_t j = 0; j <= nb; ++j) {
            if (gap(i, j) >= h_obs) {
                column[j] = 0.0;
            } else if (i == 0 && j == 0) {
                column[j] = 1.0;
            } else {
                const double from_a = i > 0 ? column[j] : 0.0;
                const double from_b = j > 0 ? column[j - 1] : 0.0;
                column[j] = from_a + from_b;
            }
        }
    }
    double log_binom = 0.0;
    for (std::size_t k = 1; k <= nb; ++k) {
        log_binom += std::log(static_cast<double>(na + k)) - std::log(static_cast<double>(k));
    }
    const double surviving = column[nb];
    if (surviving <= 0.0) {
        return 1.0;
    }
    const double p = 1.0 - std::exp(std::log(surviving) - log_binom);
    return std::clamp(p, 0.0, 1.0);
}

} // namespace

Ecdf::Ecdf(std::span<const double> samples)
{
    require_nonempty_finite(samples, "ecdf");
    sorted_.assign(samples.begin(), samples.end());
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const
{
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b)
{
    require_nonempty_finite(a, "ks_two_sample");
    require_nonempty_finite(b, "ks_two_sample");

    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());

    // Walk the merged breakpoint set; ties advance both sides before the
    // gap is measured, which is exactly the deduplicated-breakpoint rule.
    std::size_t ia = 0;
    std::size_t ib = 0;
    double d = 0.0;
    while (ia < sa.size() || ib < sb.size()) {
        double v;
        if (ib >= sb.size() || (ia < sa.size() && sa[ia] <= sb[ib])) {
            v = sa[ia];
        } else {
            v = sb[ib];
        }
        while (ia < sa.size() && sa[ia] == v) {
            ++ia;
        }
        while (ib < sb.size() && sb[ib] == v) {
            ++ib;
        }
        const double gap = std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb);
        d = std::max(d, gap);
    }

    KsResult result;
    result.d = d;
    if (d == 0.0) {
        result.p = 1.0;
    } else if (sa.size() <= kExactLimit && sb.size() <= kExactLimit) {
        result.p = exact_survival(sa.size(), sb.size(), d);
    } else {
        const double m = na * nb / (na + nb);
        const double lambda = (std::sqrt(m) + 0.12 + 0.11 / std::sqrt(m)) * d;
        result.p = kolmogorov_q(lambda);
    }
    return result;
}

Summary summarize(std::span<const double> samples)
{
    require_nonempty_finite(samples, "summarize");

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    const auto quantile = [&](double q) {
        const double h = static_cast<double>(n - 1) * q;
        const std::size_t lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, n - 1);
        const double frac = h - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    };

    Summary s;
    s.n = n;
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
    s.median = quantile(0.5);
    s.q25 = quantile(0.25);
    s.q75 = quantile(0.75);
    s.min = sorted.front();
    s.max = sorted.back();
    return s;
}

} // namespace oamncc::stats
