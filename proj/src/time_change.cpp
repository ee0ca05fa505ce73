#include "hypfrac/time_change.hpp"

#include "hypfrac/errors.hpp"

#include <math.h>  // boost 1.74 pchip calls unqualified isnan

#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hypfrac {

struct TimeChange::Table {
    std::vector<double> times;
    std::vector<double> values;
    boost::math::interpolators::pchip<std::vector<double>> spline;

    Table(std::vector<double> t, std::vector<double> v)
        : times(t), values(v), spline(std::move(t), std::move(v)) {}
};

TimeChange TimeChange::identity() { return {TimeChangeKind::identity, 1.0, nullptr}; }

TimeChange TimeChange::power(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        detail::domain_fail("TimeChange::power", "exponent must be positive");
    }
    return {TimeChangeKind::power, gamma, nullptr};
}

TimeChange TimeChange::log1p() { return {TimeChangeKind::log1p, 1.0, nullptr}; }

TimeChange TimeChange::expm1() { return {TimeChangeKind::expm1, 1.0, nullptr}; }

TimeChange TimeChange::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size() || times.size() < 4) {
        detail::domain_fail("TimeChange::tabulated", "need at least 4 (t, f) samples of equal length");
    }
    if (times.front() != 0.0 || values.front() != 0.0) {
        detail::domain_fail("TimeChange::tabulated", "table must start at f(0) = 0");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1]) || !(values[i] > values[i - 1])) {
            detail::domain_fail("TimeChange::tabulated", "times and values must be strictly increasing");
        }
    }
    auto table = std::make_shared<const Table>(std::move(times), std::move(values));
    return {TimeChangeKind::tabulated, 1.0, std::move(table)};
}

TimeChange TimeChange::parse(const std::string& spec) {
    if (spec == "identity") {
        return identity();
    }
    if (spec == "log1p") {
        return log1p();
    }
    if (spec == "expm1") {
        return expm1();
    }
    if (spec.rfind("power:", 0) == 0) {
        std::istringstream in(spec.substr(6));
        double gamma = 0.0;
        if (in >> gamma && in.eof()) {
            return power(gamma);
        }
    }
    detail::domain_fail("TimeChange::parse", "unknown time change '" + spec + "'");
}

double TimeChange::operator()(double t) const {
    switch (kind_) {
        case TimeChangeKind::identity:
            return t;
        case TimeChangeKind::power:
            return std::pow(t, gamma_);
        case TimeChangeKind::log1p:
            return std::log1p(t);
        case TimeChangeKind::expm1:
            return std::expm1(t);
        case TimeChangeKind::tabulated:
            if (t < 0.0 || t > table_->times.back()) {
                detail::domain_fail("TimeChange", "time outside tabulated range");
            }
            return table_->spline(t);
    }
    return t;
}

double TimeChange::derivative(double t) const {
    switch (kind_) {
        case TimeChangeKind::identity:
            return 1.0;
        case TimeChangeKind::power:
            return gamma_ * std::pow(t, gamma_ - 1.0);
        case TimeChangeKind::log1p:
            return 1.0 / (1.0 + t);
        case TimeChangeKind::expm1:
            return std::exp(t);
        case TimeChangeKind::tabulated:
            if (t < 0.0 || t > table_->times.back()) {
                detail::domain_fail("TimeChange", "time outside tabulated range");
            }
            return table_->spline.prime(t);
    }
    return 1.0;
}

double TimeChange::inverse(double s) const {
    if (s < 0.0) {
        detail::domain_fail("TimeChange::inverse", "negative clock value");
    }
    switch (kind_) {
        case TimeChangeKind::identity:
            return s;
        case TimeChangeKind::power:
            return std::pow(s, 1.0 / gamma_);
        case TimeChangeKind::log1p:
            return std::expm1(s);
        case TimeChangeKind::expm1:
            return std::log1p(s);
        case TimeChangeKind::tabulated: {
            const auto& v = table_->values;
            if (s > v.back()) {
                detail::domain_fail("TimeChange::inverse", "value beyond tabulated range");
            }
            const auto it = std::upper_bound(v.begin(), v.end(), s);
            const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - v.begin()), v.size() - 1);
            double lo_t = table_->times[hi - 1];
            double hi_t = table_->times[hi];
            // Bisection on one monotone cubic segment.
            for (int i = 0; i < 200 && hi_t - lo_t > 1e-15 * (1.0 + hi_t); ++i) {
                const double mid = 0.5 * (lo_t + hi_t);
                if (table_->spline(mid) < s) {
                    lo_t = mid;
                } else {
                    hi_t = mid;
                }
            }
            return 0.5 * (lo_t + hi_t);
        }
    }
    return s;
}

std::string TimeChange::name() const {
    switch (kind_) {
        case TimeChangeKind::identity:
            return "identity";
        case TimeChangeKind::power: {
            std::ostringstream out;
            out << "power:" << gamma_;
            return out.str();
        }
        case TimeChangeKind::log1p:
            return "log1p";
        case TimeChangeKind::expm1:
            return "expm1";
        case TimeChangeKind::tabulated:
            return "tabulated";
    }
    return "identity";
}

}  // namespace hypfrac
