#pragma once

#include <cstdint>

#include "chiplink/assignment.hpp"
#include "chiplink/bigfixed.hpp"
#include "chiplink/ecc_model.hpp"

namespace chiplink::oracle {

/// Reference-computation knobs. The fixed-point engine always carries ~154
/// decimal digits; working_digits is recorded for reporting only and must be
/// at least 50 for the 1e-27 regime.
struct PrecisionConfig {
    int working_digits = 60;
    std::uint64_t seed = 0;
};

/// A reference value split into two non-overlapping doubles (hi + lo holds
/// ~32 significant digits), enough to certify 1e-12 relative errors.
struct HpReal {
    double hi = 0;
    double lo = 0;
    double value() const { return hi + lo; }
};

/// |value - ref| / ref, evaluated against the two-double reference so the
/// comparison itself does not drown in double rounding.
double relative_error(const HpReal& ref, double value);

/// 1 - (1 - p_pre)^M in fixed point.
BigFixed hp_symbol_error_prob(double p_pre, int symbol_bits);

/// sum_{i=t+1}^{n} C(n,i) p^i (1-p)^(n-i) with exact integer binomial
/// coefficients and 512-bit fixed-point powers.
HpReal hp_binom_tail(int n, const BigFixed& p, int t);
HpReal hp_binom_tail(int n, double p, int t);

/// sum_{i=1}^{t} C(n,i) p^i (1-p)^(n-i).
HpReal hp_correctable_activity(int n, const BigFixed& p, int t);
HpReal hp_correctable_activity(int n, double p, int t);

/// Reference for the post-FEC BER: sum_{i=t+1}^{n} (i / (2 n M)) Pr[X=i],
/// with the symbol error probability derived from p_pre in fixed point.
HpReal hp_post_fec_ber(int n, int symbol_bits, double p_pre, int t);

/// Reference for the streaming frame-fail probability 1-(1-p_blk)^(D/K).
/// The fractional exponent is evaluated in long double from the fixed-point
/// block-fail value (the exponent itself is exact in double).
HpReal hp_frame_fail_prob(double p_pre, const RsCode& code, const FrameConfig& frame);

/// Monte Carlo frame simulation over i.i.d. bit errors: bits are grouped
/// into M-bit symbols, symbols into N-symbol codewords, ceil(D/K) codewords
/// into a frame. The integer codeword count brackets the analytic model's
/// fractional B_eff; b_eff_model records the fractional value for pro-rating.
struct FrameSimStats {
    std::uint64_t trials = 0;
    int codewords_per_frame = 0;
    double b_eff_model = 0;
    std::uint64_t codewords = 0;
    std::uint64_t failed_codewords = 0;
    std::uint64_t failed_frames = 0;

    double p_blk_hat() const;
    double p_blk_se() const;
    double p_frame_hat() const;
    double p_frame_se() const;
};

FrameSimStats simulate_frames(double p_pre, const RsCode& code,
                              const FrameConfig& frame, std::uint64_t trials,
                              std::uint64_t seed);

/// Exhaustive link-assignment reference: enumerates every link-choice tuple,
/// keeps the feasible one with the least objective under the same canonical
/// net-order summation and tie-breaking as the production solver. Bounded to
/// |nets| <= 10 and |links| <= 6; throws DomainError beyond that.
AssignmentSolution brute_force_assign(const AssignmentProblem& problem);

} // namespace chiplink::oracle
