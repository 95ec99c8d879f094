#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "mvf/arith/primes.hpp"
#include "mvf/constants/ln_g.hpp"
#include "mvf/constants/pi_expansion.hpp"
#include "mvf/constants/ramanujan.hpp"

using namespace mvf;

namespace {

struct Golden {
    const char* lng1;
    const char* Pi[5];
    const char* K[5];
};

// Independent mpmath evaluation at 30 digits (tests/oracles/constants_oracle.py).
const Golden goldens[5] = {
    {"-0.00572659312312505193065235273226",
     {"0.983353510037486187600234099313", "-0.230750840877831312676959884704", "-0.0708860664238345797398829682012",
      "-0.0807505966489776504367675918351", "-0.110913426479427205087331984022"},
     {"0.367068335946260438330883832868", "-0.0574234503425575412455567372803", "-0.029400561082703321495175002419",
      "-0.0893118763302210419770639979435", "-0.449799559969723505585985390057"}},
    {"-0.010603349394731419707930765081",
     {"0.967471813294888744583948534415", "-0.219366648582261757409678813312", "-0.125941344334021305963625573203",
      "-0.154462171214032885070503377193", "-0.210060381993571811608794597863"},
     {"0.266843879453474251081893508201", "-0.0453785681861685922426144650509", "-0.0455917814168456229916981933316",
      "-0.153770514020651498440331269944", "-0.784199117993931922813201098698"}},
    {"0.0303512551382813504369631342452",
     {"1.09698311911435715092514804937", "-0.0635423888402501368547025066423", "0.355936751625485928260565477586",
      "0.545884892596076871286350909618", "0.838869178621108639866982065112"},
     {"0.618906449132047890464330378398", "-0.0179249769487051606513470171243", "0.150611855751693053622324980568",
      "0.577467319160235523718379765118", "3.10590821977597655183112601079"}},
    {"-0.0303512551382813504369631342493",
     {"0.91159105602950763732182692173", "-0.473381023379154781821995995009", "-0.256824986600451580655000362571",
      "-0.310491718241292576273404499216", "-0.396498654800346034382737311383"},
     {"0.514310178267147281661718526045", "-0.133538321219848009463227857393", "-0.108673486676075149467891853207",
      "-0.328455362267966517563751505812", "-1.46803394672190905464886482521"}},
    {"-0.0104673915789914184888878998433",
     {"0.969276943827491630716953714721", "-0.355674122419125802862754437687", "-0.102817637236240506221360107989",
      "-0.129665012229975396307223243568", "-0.178527469089626974934671722876"},
     {"0.546855955280474466845517100991", "-0.100333817503180137300747322245", "-0.0435064799502591081735268188236",
      "-0.137166842345146021104376230583", "-0.660996908496169718817198680895"}},
};

std::vector<LocalRule> all_rules() {
    std::vector<LocalRule> r;
    for (MultFn fn : all_functions) r.push_back(rule_of(fn));
    r.push_back(inv_tau_rule());
    return r;
}

const std::vector<PiExpansion>& expansions(double radius) {
    static std::map<double, std::vector<PiExpansion>> cache;
    auto it = cache.find(radius);
    if (it == cache.end()) {
        TaylorConfig cfg;
        cfg.radius = radius;
        it = cache.emplace(radius, pi_taylor(all_rules(), 4, cfg)).first;
    }
    return it->second;
}

Wide wabs(const Wide& v) { return abs(v); }

// ln G_p(s) from the closed-form local factor F_p(X), X = p^-s real.
double local_ln_g(MultFn fn, double X) {
    double F = 0.0;
    switch (fn) {
        case MultFn::InvTauSq: {
            const double y = std::sqrt(X);
            F = std::atanh(y) / y;
            break;
        }
        case MultFn::InvTauSquared: {
            double xk = 1.0;
            for (int k = 0; xk > 1e-18; ++k, xk *= X) F += xk / ((k + 1.0) * (k + 1.0));
            break;
        }
        case MultFn::InvTwoOmega: F = 1.0 + 0.5 * X / (1.0 - X); break;
        case MultFn::InvTwoBigOmega: F = 1.0 / (1.0 - 0.5 * X); break;
    }
    const auto form = euler_form(fn, 3);
    return std::log(F) + form.a.get_d() * std::log1p(-X) + form.b.get_d() * std::log1p(-X * X);
}

double product_ln_g(MultFn fn, double s, const std::vector<std::uint64_t>& primes) {
    double total = 0.0;
    for (auto it = primes.rbegin(); it != primes.rend(); ++it)
        total += local_ln_g(fn, std::pow(static_cast<double>(*it), -s));
    return total;
}

}  // namespace

TEST(LnG, WideGoldensAtOne) {
    for (std::size_t f = 0; f < 4; ++f) {
        const auto v = ln_G<Wide>(all_functions[f], Complex<Wide>(Wide(1)));
        EXPECT_LT(wabs(v.value.re - Wide(goldens[f].lng1)), Wide("1e-27")) << f;
        EXPECT_LT(wabs(v.value.im), Wide("1e-50"));
        EXPECT_LT(v.tail_bound, 1e-40);
    }
}

TEST(LnG, MatchesDirectPrimeProduct) {
    const auto primes = primes_up_to(1'000'000);
    for (MultFn fn : all_functions)
        for (double s : {1.0, 1.25, 2.0}) {
            const auto v = ln_G<double>(fn, Complex<double>(s));
            // primes above 1e6 contribute at most sum_{m>P} m^{-3s} / 6
            const double omitted = std::pow(1e6, 1 - 3 * s) / (3 * s - 1);
            EXPECT_NEAR(std::exp(v.value.re), std::exp(product_ln_g(fn, s, primes)),
                        v.tail_bound + omitted + 1e-11)
                << tag(fn) << " " << s;
        }
}

TEST(LnG, OmegaWeightAgainstTenMillionPrimes) {
    const auto primes = primes_up_to(10'000'000);
    const auto v = ln_G<double>(MultFn::InvTwoOmega, Complex<double>(1.0));
    EXPECT_NEAR(std::exp(v.value.re), std::exp(product_ln_g(MultFn::InvTwoOmega, 1.0, primes)), 1e-6);
}

TEST(LnG, BoundedBySixthOfPrimeZetaSum) {
    const auto v = ln_G<double>(MultFn::InvTwoBigOmega, Complex<double>(2.0));
    double bound = 0.0;
    for (int n = 3; n <= 60; ++n) bound += prime_zeta(2.0 * n) / 6.0;
    EXPECT_LE(std::abs(v.value.re), bound);
    EXPECT_GT(std::abs(v.value.re), 0.0);
}

TEST(LnG, VanishesAsSGrows) {
    for (MultFn fn : all_functions) {
        const double a = std::abs(ln_G<Wide>(fn, Complex<Wide>(Wide(5))).value.re.convert_to<double>());
        const double b = std::abs(ln_G<Wide>(fn, Complex<Wide>(Wide(20))).value.re.convert_to<double>());
        const Wide c = abs(ln_G<Wide>(fn, Complex<Wide>(Wide(60))).value.re);
        EXPECT_LT(b, a);
        EXPECT_LT(c, Wide("1e-50"));
    }
}

TEST(LnG, BoundedOnCriticalStrip) {
    for (MultFn fn : all_functions) {
        double C = 0.0;
        for (double s = 0.55; s <= 1.0 + 1e-12; s += 0.05)
            C = std::max(C, std::abs(ln_G<double>(fn, Complex<double>(s)).value.re));
        EXPECT_TRUE(std::isfinite(C));
        EXPECT_LT(C, 1.0) << tag(fn);
        RecordProperty(std::string("C_") + std::string(tag(fn)), std::to_string(C));
    }
}

TEST(LnG, ComplexArgumentsAndConjugates) {
    const Complex<double> s(0.8, 3.0);
    for (MultFn fn : all_functions) {
        const auto a = ln_G<double>(fn, s).value, b = ln_G<double>(fn, conj(s)).value;
        EXPECT_NEAR(a.re, b.re, 1e-13);
        EXPECT_NEAR(a.im, -b.im, 1e-13);
        DirectLnG direct;
        NumericForm<double> form(rule_of(fn), direct.config().order);
        const auto d = direct.evaluate(form, direct.prime_sums(s));
        EXPECT_LT(abs(d.value - a), d.tail_bound + 1e-12);
    }
}

TEST(LnG, DomainErrors) {
    EXPECT_THROW(ln_G<double>(MultFn::InvTauSq, Complex<double>(0.3)), domain_error);
    EXPECT_THROW(pi_function(MultFn::InvTauSq, Complex<Wide>(Wide("0.3"))), domain_error);
    EXPECT_THROW(pi_taylor(MultFn::InvTauSq, 9), std::invalid_argument);
    TaylorConfig tight;
    tight.max_nodes = 64;
    tight.tolerance = 1e-70;
    EXPECT_THROW(pi_taylor(MultFn::InvTwoBigOmega, 2, tight), precision_error);
}

TEST(PiFunction, ValuesAtZeroAndOnRealAxis) {
    const Wide z2 = zeta(Wide(2));
    const Wide g1 = exp(ln_G<Wide>(MultFn::InvTauSq, Complex<Wide>(Wide(1))).value.re);
    const auto p1 = pi_function(MultFn::InvTauSq, Complex<Wide>(Wide(0)));
    EXPECT_LT(wabs(p1.re - g1 * pow(z2, Wide(-1) / 45)), Wide("1e-50"));
    const Wide g3 = exp(ln_G<Wide>(MultFn::InvTwoOmega, Complex<Wide>(Wide(1))).value.re);
    const auto p3 = pi_function(MultFn::InvTwoOmega, Complex<Wide>(Wide(0)));
    EXPECT_LT(wabs(p3.re - g3 * pow(z2, Wide(1) / 8)), Wide("1e-50"));
    const auto p4 = pi_function(MultFn::InvTwoBigOmega, Complex<Wide>(Wide("0.1")));
    EXPECT_GT(p4.re, 0);
    EXPECT_LT(wabs(p4.im), Wide("1e-50"));
}

TEST(PiTaylor, MatchesOracleGoldens) {
    const auto& ex = expansions(0.125);
    ASSERT_EQ(ex.size(), 5u);
    for (std::size_t f = 0; f < 5; ++f) {
        ASSERT_EQ(ex[f].Pi.size(), 5u);
        for (std::size_t n = 0; n <= 4; ++n) {
            EXPECT_LT(wabs(ex[f].Pi[n] - Wide(goldens[f].Pi[n])), Wide("1e-25")) << f << " " << n;
            EXPECT_LT(wabs(ex[f].K[n] - Wide(goldens[f].K[n])), Wide("1e-25")) << f << " " << n;
        }
        EXPECT_LT(ex[f].error_budget, 1e-20);
    }
}

TEST(PiTaylor, RadiusHalvingAgrees) {
    const auto& a = expansions(0.125);
    const auto& b = expansions(0.0625);
    for (std::size_t f = 0; f < 5; ++f)
        for (std::size_t n = 0; n <= 4; ++n) EXPECT_LT(wabs(a[f].Pi[n] - b[f].Pi[n]), Wide("1e-18")) << f << " " << n;
}

TEST(PiTaylor, RealCoefficientsAndReflection) {
    for (const auto& e : expansions(0.125)) {
        EXPECT_LE(e.imag_max, 1e-20);
        for (std::size_t n = 0; n < e.K.size(); ++n) EXPECT_LT(wabs(e.K[n] - e.K_reflection[n]), Wide("1e-20"));
        EXPECT_GT(e.Pi[0], 0);
        EXPECT_GT(e.K[0], 0);
    }
}

TEST(PiTaylor, LeadingConstantsShareGammaHalf) {
    const auto& ex = expansions(0.125);
    const Wide root_pi = sqrt(pi<Wide>());
    EXPECT_LT(wabs(ex[2].K[0] - ex[2].Pi[0] / root_pi), Wide("1e-50"));
    EXPECT_LT(wabs(ex[3].K[0] - ex[3].Pi[0] / root_pi), Wide("1e-50"));
    const Wide g3 = exp(ln_G<Wide>(MultFn::InvTwoOmega, Complex<Wide>(Wide(1))).value.re);
    const Wide g4 = exp(ln_G<Wide>(MultFn::InvTwoBigOmega, Complex<Wide>(Wide(1))).value.re);
    const Wide expected = pow(zeta(Wide(2)), Wide(1) / 4) * g3 / g4;
    EXPECT_LT(wabs(ex[2].K[0] / ex[3].K[0] - expected), Wide("1e-40"));
    EXPECT_LT(wabs(ex[0].K[0] - ex[0].Pi[0] / boost::math::tgamma(Wide(1) / 3)), Wide("1e-50"));
}

TEST(Reflection, IdentityHoldsForAllExponents) {
    for (const auto& a : {make_rational(1, 3), make_rational(1, 4), make_rational(1, 2)})
        for (std::size_t n = 0; n <= 8; ++n) {
            const Wide aw = from_rational<Wide>(a);
            EXPECT_LT(wabs(k_from_pi(Wide(1), aw, n) - k_by_reflection(Wide(1), aw, n)), Wide("1e-25"));
        }
}

TEST(RamanujanA0, TwoRoutesAgree) {
    const auto r = ramanujan_A0();
    EXPECT_LE(r.product_bound, 1e-10);
    EXPECT_LT(wabs(r.product - r.euler_form), Wide("1e-8"));
    EXPECT_LT(wabs(r.euler_form - Wide(goldens[4].K[0])), Wide("1e-25"));
    EXPECT_EQ(r.prime_limit, 1'000'000u);
}

TEST(RamanujanA0, TruncationWithinBound) {
    const auto small = ramanujan_A0_product(1'000), big = ramanujan_A0_product(1'000'000);
    EXPECT_LT(abs(small.value - big.value).convert_to<double>(), small.tail_bound);
    EXPECT_THROW(ramanujan_A0_product(5), std::invalid_argument);
}

TEST(RamanujanA0, LocalFactorsBelowOne) {
    Wide prev = 0;
    for (auto p : primes_up_to(100'000)) {
        const Wide v = ramanujan_local_factor(p);
        ASSERT_LT(v, 1) << p;
        ASSERT_GT(v, prev) << p;
        prev = v;
    }
    EXPECT_GT(prev, Wide("0.999999"));
}
