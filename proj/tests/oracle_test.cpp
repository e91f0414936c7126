#include "chiplink/oracle.hpp"

#include <doctest.h>

#include "chiplink/bigfixed.hpp"
#include "test_support.hpp"

using namespace chiplink;
using namespace chiplink::oracle;
using chiplink::testing::rel_to_ref;

namespace {

// Reference values computed independently with 60-digit decimal arithmetic
// (inputs taken as the exact binary doubles the code receives).
constexpr const char* kPsym1e3 = "0.007972055930055972173370211";
constexpr const char* kBlk1e3K44 = "7.112201963083901804647522e-27";
constexpr const char* kBlk1e4K62 = "4.511777741521061427113504e-26";
constexpr const char* kBlk1e2K72 = "0.3461587568391840956035664";
constexpr const char* kBlk1e5K52 = "2.732815911718888849953623e-56";
constexpr const char* kAct1e4K72 = "0.06648984741254599663099893";
constexpr const char* kPost1e3K44 = "1.138304441665384014548212e-28";
constexpr const char* kPost1e4K62 = "4.263953921267082732296703e-28";
constexpr const char* kPost1e2K44 = "7.117706154284851667314421e-9";
constexpr const char* kPff1e4K72 = "3.172705514633692734715923e-14";

long double hp_as_long_double(const HpReal& v) {
    return static_cast<long double>(v.hi) + static_cast<long double>(v.lo);
}

long double hp_rel_to_ref(const HpReal& v, const char* ref_decimal) {
    const long double ref = std::strtold(ref_decimal, nullptr);
    return std::fabs((hp_as_long_double(v) - ref) / ref);
}

} // namespace

TEST_CASE("BigFixed round-trips and arithmetic basics") {
    CHECK(BigFixed::zero().is_zero());
    CHECK(BigFixed::one().to_double() == 1.0);
    CHECK(BigFixed::from_double(0.375).to_double() == 0.375);
    CHECK(BigFixed::from_double(1e-30).to_double() == doctest::Approx(1e-30).epsilon(1e-15));

    const BigFixed a = BigFixed::from_double(0.625);
    const BigFixed b = BigFixed::from_double(0.5);
    CHECK(a.mul(b).to_double() == 0.3125);
    CHECK((a + b).to_double() == 1.125);
    CHECK((a - b).to_double() == 0.125);
    CHECK(a.mul_integer(3).to_double() == 1.875);
    CHECK(a.div_small(5).to_double() == 0.125);
    CHECK(b.pow(10).to_double() == doctest::Approx(0.0009765625));
    CHECK(a.compare(b) > 0);
    CHECK(b.compare(a) < 0);
    CHECK(a.compare(a) == 0);
    CHECK_THROWS_AS(BigFixed::from_double(-1.0), DomainError);
    CHECK_THROWS_AS(a.div_small(0), DomainError);
    CHECK_THROWS_AS(void(b - a), DomainError);
}

TEST_CASE("BigFixed split yields non-overlapping hi/lo") {
    const BigFixed v = BigFixed::from_double(1.0).div_small(3); // 1/3
    double hi = 0, lo = 0;
    v.split(hi, lo);
    CHECK(hi <= 1.0 / 3.0);
    CHECK(lo >= 0.0);
    CHECK(hi + lo == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    // lo refines hi by ~16 further digits.
    CHECK(std::abs((static_cast<long double>(hi) + lo) - 1.0L / 3.0L) < 1e-30L);
}

TEST_CASE("hp_binom_tail exact and reference points") {
    // Enumerable by hand: Pr[X > 0], X ~ Binomial(2, 1/2) = 3/4 exactly.
    const HpReal h = hp_binom_tail(2, 0.5, 0);
    CHECK(h.hi == 0.75);
    CHECK(h.lo == 0.0);

    CHECK(hp_binom_tail(86, 0.0, 21).value() == 0.0);

    const BigFixed psym = hp_symbol_error_prob(1e-3, 8);
    CHECK(rel_to_ref(psym.to_double(), kPsym1e3) < 1e-15L);

    CHECK(hp_rel_to_ref(hp_binom_tail(86, psym, 21), kBlk1e3K44) < 1e-18L);
    CHECK(hp_rel_to_ref(hp_binom_tail(86, hp_symbol_error_prob(1e-4, 8), 12),
                        kBlk1e4K62) < 1e-18L);
    CHECK(hp_rel_to_ref(hp_binom_tail(86, hp_symbol_error_prob(1e-2, 8), 7),
                        kBlk1e2K72) < 1e-18L);
    CHECK(hp_rel_to_ref(hp_binom_tail(86, hp_symbol_error_prob(1e-5, 8), 17),
                        kBlk1e5K52) < 1e-18L);
    CHECK(hp_rel_to_ref(hp_correctable_activity(86, hp_symbol_error_prob(1e-4, 8), 7),
                        kAct1e4K72) < 1e-18L);
    CHECK(hp_rel_to_ref(hp_post_fec_ber(86, 8, 1e-3, 21), kPost1e3K44) < 1e-18L);
    CHECK(hp_rel_to_ref(hp_post_fec_ber(86, 8, 1e-4, 12), kPost1e4K62) < 1e-18L);
    CHECK(hp_rel_to_ref(hp_post_fec_ber(86, 8, 1e-2, 21), kPost1e2K44) < 1e-18L);
    CHECK(hp_rel_to_ref(hp_frame_fail_prob(1e-4, RsCode{86, 72, 8},
                                           FrameConfig::hybrid(256, 8)),
                        kPff1e4K72) < 1e-15L);
}

TEST_CASE("binomial mass sums to one in high precision") {
    for (double p : {0.5, 1e-2, 7.97e-3, 1e-6}) {
        const HpReal full = hp_binom_tail(86, p, -1); // sum over i = 0..86
        const long double sum = hp_as_long_double(full);
        CHECK(std::fabs(sum - 1.0L) < 1e-30L);
    }
}

TEST_CASE("relative_error resolves differences well below 1e-12") {
    HpReal ref{1e-20, 3e-37};
    CHECK(relative_error(ref, 1e-20) < 1e-15);
    const double shifted = 1e-20 * (1 + 5e-13);
    CHECK(relative_error(ref, shifted) == doctest::Approx(5e-13).epsilon(1e-2));
    CHECK(relative_error(HpReal{}, 0.0) == 0.0);
}

TEST_CASE("frame simulator degenerate channels") {
    const RsCode code{86, 72, 8};
    const FrameConfig frame = FrameConfig::hybrid(256, 8);
    const FrameSimStats clean = simulate_frames(0.0, code, frame, 1000, 7);
    CHECK(clean.failed_codewords == 0);
    CHECK(clean.failed_frames == 0);
    CHECK(clean.codewords_per_frame == 4); // ceil(272/72)

    const FrameSimStats dirty = simulate_frames(1.0, code, frame, 1000, 7);
    CHECK(dirty.failed_codewords == dirty.codewords);
    CHECK(dirty.failed_frames == dirty.trials);
}

TEST_CASE("frame simulator is seed-reproducible") {
    const RsCode code{86, 72, 8};
    const FrameConfig frame = FrameConfig::hybrid(256, 8);
    const FrameSimStats a = simulate_frames(1e-2, code, frame, 20000, 42);
    const FrameSimStats b = simulate_frames(1e-2, code, frame, 20000, 42);
    const FrameSimStats c = simulate_frames(1e-2, code, frame, 20000, 43);
    CHECK(a.failed_codewords == b.failed_codewords);
    CHECK(a.failed_frames == b.failed_frames);
    CHECK(a.failed_codewords != c.failed_codewords); // different stream
}
