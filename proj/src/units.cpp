#include "scatdeco/units.hpp"

#include <array>

#include "scatdeco/constants.hpp"
#include "scatdeco/errors.hpp"

namespace scatdeco {

namespace {

constexpr double eV = phys.electronvolt;
constexpr double c = phys.speed_of_light;
constexpr double cm3 = 1e-6;

constexpr std::array units{
    UnitInfo{"J", Dimension::energy, 1.0},
    UnitInfo{"eV", Dimension::energy, eV},
    UnitInfo{"keV", Dimension::energy, 1e3 * eV},
    UnitInfo{"MeV", Dimension::energy, 1e6 * eV},
    UnitInfo{"GeV", Dimension::energy, 1e9 * eV},

    UnitInfo{"kg", Dimension::mass, 1.0},
    UnitInfo{"g", Dimension::mass, 1e-3},
    UnitInfo{"u", Dimension::mass, phys.atomic_mass_unit},
    UnitInfo{"eV/c^2", Dimension::mass, eV / (c * c)},
    UnitInfo{"MeV/c^2", Dimension::mass, 1e6 * eV / (c * c)},
    UnitInfo{"GeV/c^2", Dimension::mass, 1e9 * eV / (c * c)},

    UnitInfo{"m", Dimension::length, 1.0},
    UnitInfo{"cm", Dimension::length, 1e-2},
    UnitInfo{"nm", Dimension::length, 1e-9},
    UnitInfo{"fm", Dimension::length, 1e-15},
    UnitInfo{"a0", Dimension::length, phys.bohr_radius},

    UnitInfo{"s", Dimension::time, 1.0},
    UnitInfo{"ms", Dimension::time, 1e-3},
    UnitInfo{"us", Dimension::time, 1e-6},
    UnitInfo{"ns", Dimension::time, 1e-9},
    UnitInfo{"day", Dimension::time, 86400.0},
    UnitInfo{"yr", Dimension::time, 365.25 * 86400.0},

    UnitInfo{"m/s", Dimension::velocity, 1.0},
    UnitInfo{"km/s", Dimension::velocity, 1e3},
    UnitInfo{"c", Dimension::velocity, c},

    UnitInfo{"m^2", Dimension::area, 1.0},
    UnitInfo{"cm^2", Dimension::area, 1e-4},
    UnitInfo{"barn", Dimension::area, phys.barn},

    UnitInfo{"1/(m^2 s)", Dimension::flux, 1.0},
    UnitInfo{"1/(cm^2 s)", Dimension::flux, 1e4},

    UnitInfo{"J/m^3", Dimension::energy_density, 1.0},
    UnitInfo{"eV/cm^3", Dimension::energy_density, eV / cm3},
    UnitInfo{"keV/cm^3", Dimension::energy_density, 1e3 * eV / cm3},
    UnitInfo{"MeV/cm^3", Dimension::energy_density, 1e6 * eV / cm3},

    UnitInfo{"K", Dimension::temperature, 1.0},

    UnitInfo{"1", Dimension::dimensionless, 1.0},
};

void require_same(const Quantity& a, const Quantity& b) {
    if (a.dimension() != b.dimension())
        throw DimensionError(std::string(to_string(a.dimension())),
                             std::string(to_string(b.dimension())));
}

} // namespace

std::string_view to_string(Dimension d) {
    switch (d) {
    case Dimension::energy: return "energy";
    case Dimension::mass: return "mass";
    case Dimension::length: return "length";
    case Dimension::time: return "time";
    case Dimension::velocity: return "velocity";
    case Dimension::area: return "area";
    case Dimension::flux: return "flux";
    case Dimension::energy_density: return "energy-density";
    case Dimension::temperature: return "temperature";
    case Dimension::dimensionless: return "dimensionless";
    }
    return "unknown";
}

std::span<const UnitInfo> unit_table() { return units; }

const UnitInfo& unit_info(std::string_view name) {
    for (const auto& u : units)
        if (u.name == name) return u;
    throw InputError("unknown unit '" + std::string(name) + "'");
}

std::string_view si_unit(Dimension d) {
    for (const auto& u : units)
        if (u.dimension == d && u.to_si == 1.0) return u.name;
    return "1";
}

Quantity::Quantity(double value, std::string_view unit)
    : value_(value), dimension_(unit_info(unit).dimension), unit_(unit) {}

Quantity Quantity::si(double value, Dimension d) { return Quantity(value, si_unit(d)); }

double Quantity::in_si() const { return value_ * unit_info(unit_).to_si; }

Quantity Quantity::operator+(const Quantity& rhs) const {
    require_same(*this, rhs);
    return Quantity(value_ + convert(rhs, unit_).value(), unit_);
}

Quantity Quantity::operator-(const Quantity& rhs) const {
    require_same(*this, rhs);
    return Quantity(value_ - convert(rhs, unit_).value(), unit_);
}

Quantity Quantity::operator*(double s) const { return Quantity(value_ * s, unit_); }

std::partial_ordering Quantity::operator<=>(const Quantity& rhs) const {
    require_same(*this, rhs);
    return in_si() <=> rhs.in_si();
}

bool Quantity::operator==(const Quantity& rhs) const {
    require_same(*this, rhs);
    return in_si() == rhs.in_si();
}

Quantity convert(const Quantity& q, std::string_view target_unit) {
    const auto& from = unit_info(q.unit());
    const auto& to = unit_info(target_unit);
    if (from.dimension != to.dimension)
        throw DimensionError(std::string(to_string(from.dimension)),
                             std::string(to_string(to.dimension)));
    if (from.name == to.name) return q;
    return Quantity(q.value() * (from.to_si / to.to_si), target_unit);
}

double to_si(double value, std::string_view unit) { return value * unit_info(unit).to_si; }

} // namespace scatdeco
