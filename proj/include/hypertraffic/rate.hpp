#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypertraffic {

/// Traffic rate as a function of hop distance: R(x,y) = f(d(x,y)).
/// Every variant is non-negative and non-increasing in d.
class RateFunction {
public:
    enum class Kind { Exponential, Polynomial, Table };

    /// beta^{-d}; throws InvalidRate unless beta > 1.
    static RateFunction exponential(double beta);
    /// (1 + d)^{-alpha}; throws InvalidRate unless alpha > 0.
    static RateFunction polynomial(double alpha);
    /// values[d], 0 beyond the end. Values must be finite, non-negative and
    /// non-increasing.
    static RateFunction table(std::vector<double> values);

    Kind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return parameter_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double operator()(std::uint32_t d) const;

    /// f(0), ..., f(max_distance).
    std::vector<double> lookup(std::uint32_t max_distance) const;

    /// "exponential", "polynomial" or "table".
    std::string kind_name() const;

private:
    RateFunction(Kind kind, double parameter, std::vector<double> values)
        : kind_(kind), parameter_(parameter), values_(std::move(values)) {}

    Kind kind_;
    double parameter_;
    std::vector<double> values_;
};

}  // namespace hypertraffic
