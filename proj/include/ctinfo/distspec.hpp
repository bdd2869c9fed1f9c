#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ctinfo/dist.hpp"

namespace ctinfo {

/// Malformed distribution spec; carries the offending position.
class DistSpecError : public std::invalid_argument {
public:
    DistSpecError(const std::string& msg, std::size_t pos)
        : std::invalid_argument(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Parsed distribution spec. Grammar:
///   <family>[:<k=v>,...]                       baseline families
///   ct:l1=<r>,l2=<r>@<baseline-spec>           cubic transmuted
///   ct1:l=<r>@<baseline-spec>                  one-parameter cubic
///   qt:l=<r>@<baseline-spec>                   quadratic transmuted
///   beta21 | beta31                            Beta(2,1) / Beta(3,1) on (0,1)
///   os13:min|med|max@<baseline-spec>           order statistics of a triple
struct ParsedDist {
    Dist dist;
    std::optional<Baseline> baseline;        // the underlying baseline, when any
    std::optional<CTDistribution> ct;        // set for ct/ct1/qt specs
    std::optional<OrderStatComponent> component;
    std::string canonical;
};

ParsedDist parse_dist(const std::string& spec);

} // namespace ctinfo
