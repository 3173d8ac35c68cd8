#include "hypertraffic/rate.hpp"

#include <cmath>

#include "hypertraffic/errors.hpp"

namespace hypertraffic {

RateFunction RateFunction::exponential(double beta) {
    if (!std::isfinite(beta) || !(beta > 1.0))
        throw InvalidRate("exponential rate needs beta > 1, got " + std::to_string(beta));
    return {Kind::Exponential, beta, {}};
}

RateFunction RateFunction::polynomial(double alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0))
        throw InvalidRate("polynomial rate needs alpha > 0, got " + std::to_string(alpha));
    return {Kind::Polynomial, alpha, {}};
}

RateFunction RateFunction::table(std::vector<double> values) {
    for (std::size_t d = 0; d < values.size(); ++d) {
        if (!std::isfinite(values[d]) || values[d] < 0.0)
            throw InvalidRate("rate table entry " + std::to_string(d) + " is negative or not finite");
        if (d > 0 && values[d] > values[d - 1])
            throw InvalidRate("rate table increases at distance " + std::to_string(d));
    }
    return {Kind::Table, 0.0, std::move(values)};
}

double RateFunction::operator()(std::uint32_t d) const {
    switch (kind_) {
        case Kind::Exponential:
            return std::exp(-static_cast<double>(d) * std::log(parameter_));
        case Kind::Polynomial:
            return std::exp(-parameter_ * std::log1p(static_cast<double>(d)));
        case Kind::Table:
            return d < values_.size() ? values_[d] : 0.0;
    }
    return 0.0;
}

std::vector<double> RateFunction::lookup(std::uint32_t max_distance) const {
    std::vector<double> out(std::size_t{max_distance} + 1);
    for (std::uint32_t d = 0; d <= max_distance; ++d) out[d] = (*this)(d);
    return out;
}

std::string RateFunction::kind_name() const {
    switch (kind_) {
        case Kind::Exponential: return "exponential";
        case Kind::Polynomial: return "polynomial";
        case Kind::Table: return "table";
    }
    return "unknown";
}

}  // namespace hypertraffic
