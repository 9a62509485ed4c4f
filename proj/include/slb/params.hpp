#pragma once

#include <span>
#include <string_view>

#include "slb/deal.hpp"

namespace slb {

enum class ParameterKind { Money, Rate, Probability, Count };

/// A scalar field of DealParameters addressable by name, for sweeps,
/// breakevens and tornado charts.
struct ParameterSpec {
    std::string_view name;    // JSON field name
    std::string_view symbol;  // short symbol, e.g. "S" or "P_dss"
    ParameterKind kind;
};

/// Every scalar field, in tornado evaluation order.
std::span<const ParameterSpec> scalar_parameters();

/// Looks up by field name or symbol; throws InvalidInput when unknown.
const ParameterSpec& find_parameter(std::string_view name_or_symbol);

/// Value the model actually uses, so optional fields report their default.
double get_parameter(const DealParameters& p, const ParameterSpec& spec);

/// Counts are rounded to the nearest integer and kept >= 1.
void set_parameter(DealParameters& p, const ParameterSpec& spec, double value);

}  // namespace slb
