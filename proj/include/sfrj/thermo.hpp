#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace sfrj {

inline constexpr double kUniversalGasConstant = 8.31446261815324;  // J/(mol K)
inline constexpr double kReferencePressure = 101325.0;             // Pa

// One species record: NASA-7 polynomial fit over two temperature bands.
struct SpeciesThermo {
    std::string name;
    double molar_mass = 0.0;                    // kg/mol
    std::map<std::string, double> elements;     // element -> atom count
    std::array<double, 7> low_coeffs{};         // [t_min, t_common]
    std::array<double, 7> high_coeffs{};        // [t_common, t_max]
    double t_min = 0.0;
    double t_common = 0.0;
    double t_max = 0.0;
};

// Molar properties at a single temperature.
struct CpHS {
    double cp;  // J/(mol K)
    double h;   // J/mol, includes formation enthalpy
    double s;   // J/(mol K), at the reference pressure
};

// NASA-7 evaluation. Throws std::out_of_range if T is outside the fit range.
CpHS species_cp_h_s(const SpeciesThermo& species, double temperature);

struct MixtureState {
    double temperature = 0.0;  // K
    double pressure = 0.0;     // Pa
    std::map<std::string, double> mole_fractions;
};

// Mass-basis mixture properties.
struct MixtureProps {
    double h;      // J/kg
    double cp;     // J/(kg K)
    double gamma;
    double R;      // J/(kg K)
};

class ThermoDatabase {
  public:
    // Parses the whitespace-delimited record format documented in
    // data/thermo_nasa7.dat. '#' starts a comment that runs to end of line.
    static ThermoDatabase from_file(const std::string& path);
    static ThermoDatabase from_text(const std::string& text);
    // The data file content compiled into the library, so callers need no
    // runtime path configuration.
    static const ThermoDatabase& builtin();

    const SpeciesThermo& species(const std::string& name) const;
    bool has(const std::string& name) const;
    std::vector<std::string> names() const;
    std::size_t size() const { return species_.size(); }

    double mean_molar_mass(const std::map<std::string, double>& mole_fractions) const;
    MixtureProps mixture_properties(const MixtureState& state) const;
    // Mass-basis enthalpy of an arbitrary mole map (amounts need not sum to 1).
    double mixture_enthalpy(const std::map<std::string, double>& moles,
                            double temperature) const;

  private:
    std::vector<SpeciesThermo> species_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace sfrj
