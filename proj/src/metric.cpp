#include "vbm/metric.hpp"

#include <stdexcept>

namespace vbm {

Metric Metric::minkowski(int order) {
    if (order < 1) throw std::invalid_argument("minkowski order must be a positive integer");
    return Metric(MetricKind::minkowski, order);
}

std::string Metric::name() const {
    switch (kind_) {
        case MetricKind::minkowski:
            if (order_ == 1) return "manhattan";
            if (order_ == 2) return "euclidean";
            if (order_ == 3) return "cubic";
            return "minkowski:" + std::to_string(order_);
        case MetricKind::chebyshev:
            return "chebyshev";
        case MetricKind::quasi_euclidean:
            return "quasi-euclidean";
    }
    return "?";
}

Metric parse_metric(const std::string& name) {
    if (name == "euclidean") return Metric::euclidean();
    if (name == "manhattan") return Metric::manhattan();
    if (name == "cubic") return Metric::cubic();
    if (name == "chebyshev") return Metric::chebyshev();
    if (name == "quasi-euclidean" || name == "quasi_euclidean") return Metric::quasi_euclidean();
    if (name.rfind("minkowski:", 0) == 0) {
        const std::string arg = name.substr(10);
        if (arg == "inf" || arg == "infinity") return Metric::chebyshev();
        try {
            std::size_t pos = 0;
            const long p = std::stol(arg, &pos);
            if (pos != arg.size() || p < 1) throw std::invalid_argument(arg);
            return Metric::minkowski(static_cast<int>(p));
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid minkowski order '" + arg + "'");
        }
    }
    throw std::invalid_argument(
        "unknown metric '" + name +
        "' (expected euclidean|manhattan|cubic|chebyshev|quasi-euclidean|minkowski:<p>)");
}

}  // namespace vbm
