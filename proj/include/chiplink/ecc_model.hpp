#pragma once

#include <optional>
#include <vector>

#include "chiplink/errors.hpp"

namespace chiplink {

/// A Reed-Solomon code over GF(2^M) with N total and K information symbols.
/// K == N is the rate-1 "no FEC" operating point (t = 0).
struct RsCode {
    int n_symbols   = 86;
    int k_symbols   = 86;
    int symbol_bits = 8;

    /// Correctable symbol errors per codeword: floor((N - K) / 2). Always
    /// derived, never stored.
    int correctable() const { return (n_symbols - k_symbols) / 2; }

    double rate() const { return static_cast<double>(k_symbols) / n_symbols; }
    bool is_rate_one() const { return k_symbols == n_symbols; }

    /// Throws DomainError unless 1 <= K <= N <= 2^M - 1 and M >= 1.
    void validate() const;

    friend bool operator==(const RsCode&, const RsCode&) = default;
};

enum class ProtectionMode { FecOnly, Hybrid };

/// Byte layout of one ARQ frame. The CRC size is fixed by the mode: no CRC in
/// FEC-only operation, an 8-byte CRC-64 in hybrid (FEC+CRC+ARQ) operation.
struct FrameConfig {
    int payload_bytes   = 256;
    int header_bytes    = 8;
    ProtectionMode mode = ProtectionMode::Hybrid;

    int crc_bytes() const { return mode == ProtectionMode::Hybrid ? 8 : 0; }

    /// FEC-protected bytes per frame: payload + header + CRC.
    int data_bytes() const { return payload_bytes + header_bytes + crc_bytes(); }

    void validate() const;

    static FrameConfig fec_only(int payload_bytes, int header_bytes);
    static FrameConfig hybrid(int payload_bytes, int header_bytes);
};

/// Delivered-reliability target plus the CRC/ARQ failure-model parameters.
struct ReliabilityTargets {
    double ber_target = 1e-27;      ///< delivered payload BER target
    double p_undet    = 0x1p-64;    ///< CRC undetected-error probability
    double f_wrong    = 0.5;        ///< payload-bit corruption fraction on an undetected delivery
    std::optional<int> max_retries = 1; ///< nullopt = unbounded retries

    bool unbounded_retries() const { return !max_retries.has_value(); }
    /// Total attempts A = R + 1. Only meaningful for bounded retries.
    int attempts() const { return max_retries.value() + 1; }

    void validate() const;
};

/// Full reliability/goodput breakdown for one operating point.
struct ReliabilityReport {
    double p_sym        = 0; ///< symbol error probability on the wire
    double p_blk_fail   = 0; ///< per-codeword decode failure probability
    double p_frame_fail = 0; ///< per-attempt frame corruption probability
    double p_det        = 0; ///< per-attempt CRC-detected failure probability
    double ber_delivered = 0; ///< delivered payload BER (undetected residuals)
    double p_drop       = 0; ///< frame-drop probability after retry exhaustion
    double ber_drop_eff = 0; ///< 1-bit-equivalent drop rate, p_drop / (8P)
    double expected_attempts = 1;
    double goodput      = 1; ///< payload bits per wire bit transmitted
    double wire_bytes_per_attempt = 0;
};

/// Probability that an M-bit symbol is corrupted by an i.i.d. per-bit error
/// probability p_pre: 1 - (1 - p_pre)^M, evaluated in log1p/expm1 form so
/// values down to ~1e-300 survive (result ~ M * p_pre in that regime).
double symbol_error_prob(double p_pre, int symbol_bits);

/// Pr[X > t] for X ~ Binomial(N, p_sym): per-codeword decode failure.
/// Summed term-by-term in the log domain (log-gamma binomial coefficients,
/// log-sum-exp accumulation); never formed as a 1 - CDF subtraction.
double block_fail_prob(double p_sym, const RsCode& code);

/// Pr[1 <= X <= t]: the decoder actually corrects something. Weights the
/// incremental decode energy beyond syndrome computation.
double correctable_activity_prob(double p_sym, const RsCode& code);

/// Expected delivered bit-error fraction from uncorrectable codewords:
/// sum over i > t of (i / (2 N M)) * Pr[X = i]. Each of the i erroneous
/// symbols contributes half an erroneous bit on average out of the N*M
/// codeword bits (single-bit-flip-per-errored-symbol regime).
double post_fec_ber(double p_pre, const RsCode& code);

/// Per-attempt frame corruption probability under streaming RS coding: a
/// frame spans B_eff = D/K codewords (fractional), so
/// p_frame_fail = 1 - (1 - p_blk_fail)^B_eff, via expm1(B_eff*log1p(-p)).
double frame_fail_prob(double p_pre, const RsCode& code, const FrameConfig& frame);

/// Full FEC+CRC+ARQ analysis. Requires frame.mode == Hybrid; throws
/// DegenerateError when p_det == 1 (goodput undefined).
ReliabilityReport hybrid_failure_analysis(double p_pre, const RsCode& code,
                                          const FrameConfig& frame,
                                          const ReliabilityTargets& targets);

/// FEC-only analysis: no CRC, no retry; delivered BER is the post-FEC BER
/// (the raw channel BER at the K == N no-FEC point, where no decoder runs).
ReliabilityReport fec_only_analysis(double p_pre, const RsCode& code,
                                    const FrameConfig& frame);

/// Frame-fail budget for hybrid code selection: the tighter of
///   - the silent-corruption budget 2 * ber_target / (f_wrong * p_undet),
///     the delivered-BER relation inverted for p_frame_fail with a 2x
///     allowance absorbed by the conservative uniform p_undet model, and
///   - the drop budget ((8P * ber_target)^(1/A)) / (1 - p_undet) from the
///     1-bit-equivalent drop rate p_det^A / (8P); disabled for unbounded
///     retries.
/// Clamped to <= 1. Throws InfeasibleError if the budget vanishes.
double frame_fail_budget(const FrameConfig& frame, const ReliabilityTargets& targets);

/// The default code family: RS(86, K) for K = 86, 84, ..., 44 over GF(2^8).
std::vector<RsCode> default_code_family();

/// Highest-rate (largest K) code in the family meeting the target. FEC-only:
/// post_fec_ber <= ber_target, with K == N admissible when the raw BER
/// already meets the target. Hybrid: frame_fail_prob <= frame_fail_budget.
/// Throws InfeasibleError when even the strongest code fails.
RsCode select_code(double p_pre, const FrameConfig& frame,
                   const ReliabilityTargets& targets,
                   const std::vector<RsCode>& code_family);
RsCode select_code(double p_pre, const FrameConfig& frame,
                   const ReliabilityTargets& targets);

} // namespace chiplink
