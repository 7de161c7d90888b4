#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mfspin/classical.hpp"
#include "mfspin/errors.hpp"
#include "mfspin/weakcoupling.hpp"

#include <cmath>
#include <limits>

using namespace mfspin;

namespace {

LorentzianBath weak_bath(double alpha = 0.1) {
    LorentzianBath b;
    b.omega0 = 2.0;
    b.gamma = 0.6;
    b.alpha = alpha;
    return b;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

TEST_CASE("all integrals vanish with the coupling") {
    const LorentzianBath off = weak_bath(0.0);
    CHECK(integral_i1(off, 1.0) == 0.0);
    CHECK(integral_i2(off, 1.0) == 0.0);
    CHECK(integral_i3(off, 5.0, 1.0) == 0.0);
    CHECK(integral_i3_inf(off, 1.0) == 0.0);
    CHECK(d_dwl(WeakIntegral::I1, off, kInf, 1.0).value == 0.0);
    CHECK(sz_weak_t0(off) == 1.0);
}

TEST_CASE("integrals are linear in alpha") {
    const LorentzianBath one = weak_bath(0.1);
    const LorentzianBath two = weak_bath(0.2);
    CHECK(integral_i1(two, 1.0) == doctest::Approx(2.0 * integral_i1(one, 1.0)).epsilon(1e-8));
    CHECK(integral_i2(two, 1.0) == doctest::Approx(2.0 * integral_i2(one, 1.0)).epsilon(1e-8));
}

TEST_CASE("integrand identity I1 + I2 = Q across larmor frequencies") {
    const LorentzianBath bath = weak_bath();
    const double q = reorganisation_energy(bath);
    for (double wl : {0.5, 1.0, 2.0}) {
        const double sum = integral_i1(bath, wl) + integral_i2(bath, wl);
        CHECK(std::abs(sum - q) / q <= 1e-8);
    }
}

TEST_CASE("I3 reduces to its zero-temperature limit") {
    const LorentzianBath bath = weak_bath();
    const double at_inf = integral_i3(bath, kInf, 1.0);
    const double direct = integral_i3_inf(bath, 1.0);
    CHECK(std::abs(at_inf - direct) <= 1e-10 * std::abs(direct));

    // monotone approach in beta
    const double d10 = std::abs(integral_i3(bath, 10.0, 1.0) - direct);
    const double d50 = std::abs(integral_i3(bath, 50.0, 1.0) - direct);
    const double d200 = std::abs(integral_i3(bath, 200.0, 1.0) - direct);
    CHECK(d50 < d10);
    CHECK(d200 < d50);
    CHECK(d200 < 1e-3);
}

TEST_CASE("derivatives: identity, step robustness, error flags") {
    const LorentzianBath bath = weak_bath();
    const double di1 = d_dwl(WeakIntegral::I1, bath, kInf, 1.0).value;
    const double di2 = d_dwl(WeakIntegral::I2, bath, kInf, 1.0).value;
    CHECK(std::abs(di1 + di2) <= 1e-6); // Q is wl-independent

    PvQuadratureSettings halfstep;
    halfstep.deriv_step = 5e-4;
    const double again = d_dwl(WeakIntegral::I1, bath, kInf, 1.0, halfstep).value;
    CHECK(std::abs(di1 - again) / std::abs(again) <= 1e-4);

    PvQuadratureSettings bad;
    bad.deriv_step = 1.0; // outside [1e-5, 1e-2]
    CHECK_THROWS_AS((void)d_dwl(WeakIntegral::I1, bath, kInf, 1.0, bad), ValidationError);
}

TEST_CASE("pv settings validation") {
    const LorentzianBath bath = weak_bath();
    PvQuadratureSettings s;
    s.pole_halfwidth = 0.2; // above wl/10
    CHECK_THROWS_AS(s.validate(bath, 1.0), ValidationError);
    s.pole_halfwidth = 0.02;
    s.omega_cut = 10.0; // below omega0 + 40 max(gamma, wl)
    CHECK_THROWS_AS(s.validate(bath, 1.0), ValidationError);
    s.omega_cut = 0.0;
    CHECK_NOTHROW(s.validate(bath, 1.0));
}

TEST_CASE("pv excision half-width robustness") {
    const LorentzianBath bath = weak_bath();
    PvQuadratureSettings half;
    half.pole_halfwidth = 0.01;
    const double a = integral_i1(bath, 1.0);
    const double b = integral_i1(bath, 1.0, half);
    CHECK(std::abs(a - b) / std::abs(b) <= 1e-5);
}

TEST_CASE("weak expansion recovers the free spin at vanishing coupling") {
    const LorentzianBath tiny = weak_bath(1e-8);
    for (double t : {0.1, 0.5, 2.0})
        CHECK(std::abs(sz_weak(tiny, t) - std::tanh(0.5 / t)) <= 1e-6);
    CHECK_THROWS_AS((void)sz_weak(tiny, 0.0), ValidationError);
}

TEST_CASE("zero-temperature closed form") {
    const LorentzianBath bath = weak_bath();
    const double v = sz_weak_t0(bath);
    CHECK(v < 1.0);
    // deficit linear in alpha
    const double d1 = 1.0 - v;
    const double d2 = 1.0 - sz_weak_t0(weak_bath(0.2));
    CHECK(d2 == doctest::Approx(2.0 * d1).epsilon(1e-8));
    // limit consistency from the t > 0 branch
    CHECK(std::abs(sz_weak(bath, 0.01) - v) <= 0.005);
}
