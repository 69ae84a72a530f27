#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>

namespace scatdeco {

enum class Dimension {
    energy,
    mass,
    length,
    time,
    velocity,
    area,
    flux,
    energy_density,
    temperature,
    dimensionless,
};

std::string_view to_string(Dimension d);

struct UnitInfo {
    std::string_view name;
    Dimension dimension;
    double to_si; // multiply a value in this unit by to_si to get SI
};

// Every unit the model needs. Names are case-sensitive ("MeV/cm^3", "barn").
std::span<const UnitInfo> unit_table();

// Throws InputError for an unknown unit name.
const UnitInfo& unit_info(std::string_view name);

// The SI unit used as canonical representation for a dimension.
std::string_view si_unit(Dimension d);

// A value tagged with its dimension and the unit it is expressed in.
class Quantity {
public:
    Quantity(double value, std::string_view unit);

    static Quantity si(double value, Dimension d);

    double value() const noexcept { return value_; }
    Dimension dimension() const noexcept { return dimension_; }
    const std::string& unit() const noexcept { return unit_; }

    double in_si() const;

    // Result carries the unit of the left-hand operand.
    Quantity operator+(const Quantity& rhs) const;
    Quantity operator-(const Quantity& rhs) const;
    Quantity operator*(double s) const;

    // Comparison in SI; throws DimensionError across dimensions.
    std::partial_ordering operator<=>(const Quantity& rhs) const;
    bool operator==(const Quantity& rhs) const;

private:
    double value_;
    Dimension dimension_;
    std::string unit_;
};

// Rescale q into target_unit. Throws DimensionError if target_unit belongs to
// another dimension, InputError if it is unknown.
Quantity convert(const Quantity& q, std::string_view target_unit);

// Convenience: SI value of (value, unit).
double to_si(double value, std::string_view unit);

} // namespace scatdeco
