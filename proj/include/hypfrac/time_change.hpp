#pragma once

#include <memory>
#include <string>
#include <vector>

namespace hypfrac {

enum class TimeChangeKind { identity, power, log1p, expm1, tabulated };

/// Deterministic clock f: [0, inf) -> [0, inf) with f(0) = 0, f' > 0.
///
/// Closed-form kinds carry exact derivative and inverse. A tabulated clock is
/// a monotone piecewise-cubic (PCHIP) interpolant of user samples, defined on
/// [0, t_last].
class TimeChange {
public:
    static TimeChange identity();
    static TimeChange power(double gamma);
    static TimeChange log1p();
    static TimeChange expm1();
    static TimeChange tabulated(std::vector<double> times, std::vector<double> values);

    /// Parses "identity", "power:<gamma>", "log1p", "expm1".
    static TimeChange parse(const std::string& spec);

    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] double derivative(double t) const;
    [[nodiscard]] double inverse(double s) const;

    [[nodiscard]] TimeChangeKind kind() const { return kind_; }
    [[nodiscard]] double gamma() const { return gamma_; }
    /// Short label used in CSV output, e.g. "power:2".
    [[nodiscard]] std::string name() const;

private:
    struct Table;
    TimeChange(TimeChangeKind kind, double gamma, std::shared_ptr<const Table> table)
        : kind_(kind), gamma_(gamma), table_(std::move(table)) {}

    TimeChangeKind kind_ = TimeChangeKind::identity;
    double gamma_ = 1.0;
    std::shared_ptr<const Table> table_;
};

}  // namespace hypfrac
