#include "sfrj/thermo.hpp"

namespace sfrj {

namespace {

// Verbatim copy of data/thermo_nasa7.dat; regenerate with
// scripts/make_thermo_data.py when the data file changes.
const char kBuiltinThermoData[] = R"THERMO(
# NASA-7 thermodynamic data, reduced species set.
# Record: name  molar_mass[kg/mol]  n_elem  (elem count)...
#         Tmin Tcommon Tmax
#         a1..a7 (low range)
#         a1..a7 (high range)
# Sources: GRI-Mech 3.0 fits; C4H6 fitted to RRHO statistical-
# mechanics properties anchored at NIST WebBook 298.15 K values
# (see scripts/make_thermo_data.py).

O2  3.1998000e-02  1  O 2
  200.0 1000.0 3500.0
   3.782456360e+00 -2.996734160e-03  9.847302010e-06 -9.681295090e-09  3.243728370e-12 -1.063943560e+03  3.657675730e+00
   3.282537840e+00  1.483087540e-03 -7.579666690e-07  2.094705550e-10 -2.167177940e-14 -1.088457720e+03  5.453231290e+00

N2  2.8014000e-02  1  N 2
  300.0 1000.0 5000.0
   3.298677000e+00  1.408240400e-03 -3.963222000e-06  5.641515000e-09 -2.444854000e-12 -1.020899900e+03  3.950372000e+00
   2.926640000e+00  1.487976800e-03 -5.684760000e-07  1.009703800e-10 -6.753351000e-15 -9.227977000e+02  5.980528000e+00

H2  2.0160000e-03  1  H 2
  200.0 1000.0 3500.0
   2.344331120e+00  7.980520750e-03 -1.947815100e-05  2.015720940e-08 -7.376117610e-12 -9.179351730e+02  6.830102380e-01
   3.337279200e+00 -4.940247310e-05  4.994567780e-07 -1.795663940e-10  2.002553760e-14 -9.501589220e+02 -3.205023310e+00

H2O  1.8015000e-02  2  H 2  O 1
  200.0 1000.0 3500.0
   4.198640560e+00 -2.036434100e-03  6.520402110e-06 -5.487970620e-09  1.771978170e-12 -3.029372670e+04 -8.490322080e-01
   3.033992490e+00  2.176918040e-03 -1.640725180e-07 -9.704198700e-11  1.682009920e-14 -3.000429710e+04  4.966770100e+00

CO2  4.4009000e-02  2  C 1  O 2
  200.0 1000.0 3500.0
   2.356773520e+00  8.984596770e-03 -7.123562690e-06  2.459190220e-09 -1.436995480e-13 -4.837196970e+04  9.901052220e+00
   3.857460290e+00  4.414370260e-03 -2.214814040e-06  5.234901880e-10 -4.720841640e-14 -4.875916600e+04  2.271638060e+00

CO  2.8010000e-02  2  C 1  O 1
  200.0 1000.0 3500.0
   3.579533470e+00 -6.103536800e-04  1.016814330e-06  9.070058840e-10 -9.044244990e-13 -1.434408600e+04  3.508409280e+00
   2.715185610e+00  2.062527430e-03 -9.988257710e-07  2.300530080e-10 -2.036477160e-14 -1.415187240e+04  7.818687720e+00

OH  1.7007000e-02  2  H 1  O 1
  200.0 1000.0 3500.0
   3.992015430e+00 -2.401317520e-03  4.617938410e-06 -3.881133330e-09  1.364114700e-12  3.615080560e+03 -1.039254580e-01
   3.092887670e+00  5.484297160e-04  1.265052280e-07 -8.794615560e-11  1.174123760e-14  3.858657000e+03  4.476696100e+00

H  1.0080000e-03  1  H 1
  200.0 1000.0 3500.0
   2.500000000e+00  7.053328190e-13 -1.995919640e-15  2.300816320e-18 -9.277323320e-22  2.547365990e+04 -4.466828530e-01
   2.500000010e+00 -2.308429730e-11  1.615619480e-14 -4.735152350e-18  4.981973570e-22  2.547365990e+04 -4.466829140e-01

O  1.5999000e-02  1  O 1
  200.0 1000.0 3500.0
   3.168267100e+00 -3.279318840e-03  6.643063960e-06 -6.128066240e-09  2.112659710e-12  2.912225920e+04  2.051933460e+00
   2.569420780e+00 -8.597411370e-05  4.194845890e-08 -1.001777990e-11  1.228336910e-15  2.921757910e+04  4.784338640e+00

NO  3.0006000e-02  2  N 1  O 1
  200.0 1000.0 6000.0
   4.218476300e+00 -4.638976000e-03  1.104430490e-05 -9.340613500e-09  2.805774640e-12  9.844623000e+03  2.280846000e+00
   3.260605600e+00  1.191104300e-03 -4.291704800e-07  6.945766900e-11 -4.033609900e-15  9.920974600e+03  6.369302700e+00

C4H6  5.4092000e-02  2  C 4  H 6
  200.0 1000.0 3500.0
   1.674811785e+00  2.255765460e-02  1.929153317e-05 -4.105385498e-08  1.799113406e-11  1.148586692e+04  1.672164293e+01
   4.571464136e+00  2.543966495e-02 -1.202281260e-05  2.709866783e-09 -2.369046411e-13  1.029100195e+04 -5.434576895e-01
)THERMO";

}  // namespace

const ThermoDatabase& ThermoDatabase::builtin() {
    static const ThermoDatabase db = ThermoDatabase::from_text(kBuiltinThermoData);
    return db;
}

}  // namespace sfrj
