#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "vbm/grid.hpp"

namespace vbm {

enum class MetricKind { minkowski, chebyshev, quasi_euclidean };

/// Analytic distance function between cell centers, in pixel units.
/// Minkowski of integer order p >= 1, its p -> infinity limit (Chebyshev),
/// or the octagonal chamfer quasi-Euclidean form.
class Metric {
public:
    static Metric minkowski(int order);
    static Metric chebyshev() { return Metric(MetricKind::chebyshev, 0); }
    static Metric quasi_euclidean() { return Metric(MetricKind::quasi_euclidean, 0); }
    static Metric euclidean() { return minkowski(2); }
    static Metric manhattan() { return minkowski(1); }
    static Metric cubic() { return minkowski(3); }

    MetricKind kind() const { return kind_; }
    int order() const { return order_; }
    std::string name() const;

    double distance(Cell a, Cell b) const {
        const double adx = std::abs(a.x - b.x);
        const double ady = std::abs(a.y - b.y);
        switch (kind_) {
            case MetricKind::minkowski:
                if (order_ == 2) return std::sqrt(adx * adx + ady * ady);
                if (order_ == 1) return adx + ady;
                return minkowski_general(adx, ady);
            case MetricKind::chebyshev:
                return adx > ady ? adx : ady;
            case MetricKind::quasi_euclidean:
                return std::abs(adx - ady) + kSqrt2 * (adx < ady ? adx : ady);
        }
        return 0.0;
    }

    bool operator==(const Metric&) const = default;

private:
    static constexpr double kSqrt2 = 1.4142135623730951;

    Metric(MetricKind kind, int order) : kind_(kind), order_(order) {}

    // (hi^p + lo^p)^(1/p) with the dominant term factored out so large
    // orders do not overflow.
    double minkowski_general(double adx, double ady) const {
        const double hi = adx > ady ? adx : ady;
        const double lo = adx > ady ? ady : adx;
        if (hi == 0.0) return 0.0;
        return hi * std::pow(1.0 + std::pow(lo / hi, order_), 1.0 / order_);
    }

    MetricKind kind_;
    int order_;
};

/// Accepts `euclidean|manhattan|cubic|chebyshev|quasi-euclidean|minkowski:<p>`
/// (p a positive integer, or `inf` for Chebyshev).
Metric parse_metric(const std::string& name);

}  // namespace vbm
