#include "sfrj/thermo.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sfrj {

namespace {

double poly_cp(const std::array<double, 7>& a, double T) {
    return a[0] + T * (a[1] + T * (a[2] + T * (a[3] + T * a[4])));
}

double poly_h(const std::array<double, 7>& a, double T) {
    return T * (a[0] + T * (a[1] / 2 + T * (a[2] / 3 + T * (a[3] / 4 + T * a[4] / 5)))) +
           a[5];
}

double poly_s(const std::array<double, 7>& a, double T) {
    return a[0] * std::log(T) +
           T * (a[1] + T * (a[2] / 2 + T * (a[3] / 3 + T * a[4] / 4))) + a[6];
}

// Strips '#' comments and returns a single token stream.
std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string tok;
        while (words >> tok) tokens.push_back(tok);
    }
    return tokens;
}

}  // namespace

CpHS species_cp_h_s(const SpeciesThermo& sp, double T) {
    // small slack below t_min so 298.15 K reference-state lookups work for
    // fits that start at 300 K; the polynomials extrapolate smoothly there
    constexpr double kFitSlack = 5.0;
    if (!(T >= sp.t_min - kFitSlack) || T > sp.t_max) {
        throw std::out_of_range("species_cp_h_s: T=" + std::to_string(T) +
                                " K outside fit range of " + sp.name);
    }
    const auto& a = (T < sp.t_common) ? sp.low_coeffs : sp.high_coeffs;
    const double R = kUniversalGasConstant;
    return {R * poly_cp(a, T), R * poly_h(a, T), R * poly_s(a, T)};
}

ThermoDatabase ThermoDatabase::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open thermo data file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

ThermoDatabase ThermoDatabase::from_text(const std::string& text) {
    const auto tokens = tokenize(text);
    ThermoDatabase db;
    std::size_t i = 0;
    auto next = [&]() -> const std::string& {
        if (i >= tokens.size())
            throw std::runtime_error("thermo data: truncated record");
        return tokens[i++];
    };
    auto next_num = [&]() {
        const std::string& tok = next();
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw std::runtime_error("thermo data: bad number '" + tok + "'");
        return v;
    };

    while (i < tokens.size()) {
        SpeciesThermo sp;
        sp.name = next();
        sp.molar_mass = next_num();
        const int n_elem = static_cast<int>(next_num());
        for (int e = 0; e < n_elem; ++e) {
            const std::string elem = next();
            sp.elements[elem] = next_num();
        }
        sp.t_min = next_num();
        sp.t_common = next_num();
        sp.t_max = next_num();
        for (auto* band : {&sp.low_coeffs, &sp.high_coeffs})
            for (double& c : *band) c = next_num();
        if (!(sp.t_min < sp.t_common && sp.t_common < sp.t_max))
            throw std::runtime_error("thermo data: bad T range for " + sp.name);
        const double cp_lo = poly_cp(sp.low_coeffs, sp.t_common);
        const double cp_hi = poly_cp(sp.high_coeffs, sp.t_common);
        if (std::abs(cp_lo - cp_hi) > 5e-3 * std::abs(cp_lo))
            throw std::runtime_error("thermo data: cp discontinuity at T_common for " +
                                     sp.name);
        db.index_[sp.name] = db.species_.size();
        db.species_.push_back(std::move(sp));
    }
    if (db.species_.empty()) throw std::runtime_error("thermo data: no records");
    return db;
}

const SpeciesThermo& ThermoDatabase::species(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end())
        throw std::out_of_range("unknown species: " + name);
    return species_[it->second];
}

bool ThermoDatabase::has(const std::string& name) const {
    return index_.count(name) != 0;
}

std::vector<std::string> ThermoDatabase::names() const {
    std::vector<std::string> out;
    out.reserve(species_.size());
    for (const auto& sp : species_) out.push_back(sp.name);
    return out;
}

double ThermoDatabase::mean_molar_mass(
    const std::map<std::string, double>& mole_fractions) const {
    double total = 0.0;
    for (const auto& [name, x] : mole_fractions)
        total += x * species(name).molar_mass;
    return total;
}

MixtureProps ThermoDatabase::mixture_properties(const MixtureState& state) const {
    double sum_x = 0.0;
    double cp_molar = 0.0;
    double h_molar = 0.0;
    double mbar = 0.0;
    for (const auto& [name, x] : state.mole_fractions) {
        if (x < 0.0)
            throw std::invalid_argument("mixture_properties: negative mole fraction");
        const auto& sp = species(name);
        const CpHS props = species_cp_h_s(sp, state.temperature);
        sum_x += x;
        cp_molar += x * props.cp;
        h_molar += x * props.h;
        mbar += x * sp.molar_mass;
    }
    if (std::abs(sum_x - 1.0) > 1e-9)
        throw std::invalid_argument("mixture_properties: mole fractions sum to " +
                                    std::to_string(sum_x));
    const double R = kUniversalGasConstant / mbar;
    const double cp = cp_molar / mbar;
    return {h_molar / mbar, cp, cp / (cp - R), R};
}

double ThermoDatabase::mixture_enthalpy(const std::map<std::string, double>& moles,
                                        double temperature) const {
    double h_total = 0.0;
    double mass = 0.0;
    for (const auto& [name, n] : moles) {
        const auto& sp = species(name);
        h_total += n * species_cp_h_s(sp, temperature).h;
        mass += n * sp.molar_mass;
    }
    if (mass <= 0.0)
        throw std::invalid_argument("mixture_enthalpy: nonpositive total mass");
    return h_total / mass;
}

}  // namespace sfrj
