#include "chiplink/ecc_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace chiplink {

namespace {

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

// ln(k!) via a one-time table so concurrent callers never touch lgamma's
// signgam global. Entries are independent lgammal evaluations (no error
// accumulation across the table).
long double log_factorial(int k) {
    static const std::vector<long double> table = [] {
        std::vector<long double> t(1 << 16);
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] = std::lgamma(static_cast<long double>(i) + 1);
        return t;
    }();
    return table[static_cast<std::size_t>(k)];
}

long double log_binom(int n, int i) {
    return log_factorial(n) - log_factorial(i) - log_factorial(n - i);
}

// log Pr[X = i] for X ~ Binomial(n, p), p in (0, 1), with the 0*log(0)
// endpoints guarded.
long double log_pmf(int n, long double log_p, long double log_q, int i) {
    long double v = log_binom(n, i);
    if (i > 0) v += i * log_p;
    if (n - i > 0) v += (n - i) * log_q;
    return v;
}

// Accumulates exp(terms) without leaving the log domain until the end.
long double sum_exp(const std::vector<long double>& terms) {
    long double m = kNegInf;
    for (long double t : terms) m = std::max(m, t);
    if (m == kNegInf) return 0.0L;
    long double acc = 0.0L;
    for (long double t : terms) acc += std::exp(t - m);
    return std::exp(m) * acc;
}

// Weighted binomial range sum: sum over i in [lo, hi] of w(i) * Pr[X = i],
// computed per-term in the log domain. w returns the log weight (0 for an
// unweighted sum).
template <typename LogWeight>
long double binomial_range_sum(int n, double p, int lo, int hi, LogWeight log_w) {
    if (lo > hi) return 0.0L;
    if (p <= 0.0) return 0.0L;
    if (p >= 1.0) {
        // All mass at X = n.
        if (lo <= n && n <= hi) return std::exp(log_w(n));
        return 0.0L;
    }
    const long double lp = std::log(static_cast<long double>(p));
    const long double lq = std::log1p(static_cast<long double>(-p));
    std::vector<long double> terms;
    terms.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int i = lo; i <= hi; ++i)
        terms.push_back(log_pmf(n, lp, lq, i) + log_w(i));
    return sum_exp(terms);
}

double clamp_probability(long double v) {
    if (v < 0.0L) return 0.0;
    if (v > 1.0L) return 1.0;
    return static_cast<double>(v);
}

} // namespace

void RsCode::validate() const {
    if (symbol_bits < 1 || symbol_bits > 16)
        throw DomainError("RsCode: symbol_bits must be in [1, 16]");
    const int max_n = (1 << symbol_bits) - 1;
    if (k_symbols < 1 || k_symbols > n_symbols || n_symbols > max_n)
        throw DomainError("RsCode: need 1 <= K <= N <= 2^M - 1, got N=" +
                          std::to_string(n_symbols) + " K=" + std::to_string(k_symbols));
}

void FrameConfig::validate() const {
    if (payload_bytes < 1) throw DomainError("FrameConfig: payload_bytes must be >= 1");
    if (header_bytes < 0) throw DomainError("FrameConfig: header_bytes must be >= 0");
}

FrameConfig FrameConfig::fec_only(int payload_bytes, int header_bytes) {
    FrameConfig f{payload_bytes, header_bytes, ProtectionMode::FecOnly};
    f.validate();
    return f;
}

FrameConfig FrameConfig::hybrid(int payload_bytes, int header_bytes) {
    FrameConfig f{payload_bytes, header_bytes, ProtectionMode::Hybrid};
    f.validate();
    return f;
}

void ReliabilityTargets::validate() const {
    if (!(ber_target > 0.0 && ber_target < 1.0))
        throw DomainError("ReliabilityTargets: ber_target must lie in (0, 1)");
    check_probability(p_undet, "p_undet");
    if (!(f_wrong > 0.0 && f_wrong <= 1.0))
        throw DomainError("ReliabilityTargets: f_wrong must lie in (0, 1]");
    if (max_retries && *max_retries < 0)
        throw DomainError("ReliabilityTargets: max_retries must be >= 0");
}

double symbol_error_prob(double p_pre, int symbol_bits) {
    check_probability(p_pre, "p_pre");
    if (symbol_bits < 1) throw DomainError("symbol_bits must be >= 1");
    if (p_pre == 0.0) return 0.0;
    if (p_pre == 1.0) return 1.0;
    const long double v =
        -std::expm1(static_cast<long double>(symbol_bits) *
                    std::log1p(static_cast<long double>(-p_pre)));
    return clamp_probability(v);
}

double block_fail_prob(double p_sym, const RsCode& code) {
    code.validate();
    check_probability(p_sym, "p_sym");
    const int n = code.n_symbols;
    const int t = code.correctable();
    const long double v =
        binomial_range_sum(n, p_sym, t + 1, n, [](int) { return 0.0L; });
    return clamp_probability(v);
}

double correctable_activity_prob(double p_sym, const RsCode& code) {
    code.validate();
    check_probability(p_sym, "p_sym");
    const int t = code.correctable();
    if (t == 0) return 0.0;
    const long double v =
        binomial_range_sum(code.n_symbols, p_sym, 1, t, [](int) { return 0.0L; });
    return clamp_probability(v);
}

double post_fec_ber(double p_pre, const RsCode& code) {
    code.validate();
    check_probability(p_pre, "p_pre");
    if (p_pre == 0.0) return 0.0;
    const double p_sym = symbol_error_prob(p_pre, code.symbol_bits);
    const int n = code.n_symbols;
    const int t = code.correctable();
    const long double bits = static_cast<long double>(n) * code.symbol_bits;
    const long double v = binomial_range_sum(
        n, p_sym, t + 1, n,
        [bits](int i) { return std::log(static_cast<long double>(i) / (2.0L * bits)); });
    return clamp_probability(v);
}

double frame_fail_prob(double p_pre, const RsCode& code, const FrameConfig& frame) {
    frame.validate();
    const double p_sym = symbol_error_prob(p_pre, code.symbol_bits);
    const double p_blk = block_fail_prob(p_sym, code);
    if (p_blk >= 1.0) return 1.0;
    const long double b_eff =
        static_cast<long double>(frame.data_bytes()) / code.k_symbols;
    const long double v =
        -std::expm1(b_eff * std::log1p(static_cast<long double>(-p_blk)));
    return clamp_probability(v);
}

ReliabilityReport hybrid_failure_analysis(double p_pre, const RsCode& code,
                                          const FrameConfig& frame,
                                          const ReliabilityTargets& targets) {
    if (frame.mode != ProtectionMode::Hybrid)
        throw DomainError("hybrid_failure_analysis requires a Hybrid frame");
    frame.validate();
    targets.validate();

    ReliabilityReport r;
    r.p_sym = symbol_error_prob(p_pre, code.symbol_bits);
    r.p_blk_fail = block_fail_prob(r.p_sym, code);
    r.p_frame_fail = frame_fail_prob(p_pre, code, frame);
    r.p_det = r.p_frame_fail * (1.0 - targets.p_undet);
    if (r.p_det >= 1.0)
        throw DegenerateError("hybrid_failure_analysis: p_det = 1, goodput undefined");

    // Undetected residual delivered as correct data; the 1/(1 - p_det) factor
    // accounts for conditioning on eventual delivery.
    r.ber_delivered =
        targets.f_wrong * r.p_frame_fail * targets.p_undet / (1.0 - r.p_det);

    if (targets.unbounded_retries()) {
        r.p_drop = 0.0;
        r.ber_drop_eff = 0.0;
    } else {
        r.p_drop = std::pow(r.p_det, targets.attempts());
        r.ber_drop_eff = r.p_drop / (8.0 * frame.payload_bytes);
    }

    r.expected_attempts =
        static_cast<double>(std::exp(-std::log1p(static_cast<long double>(-r.p_det))));
    r.wire_bytes_per_attempt =
        static_cast<double>(frame.data_bytes()) * code.n_symbols / code.k_symbols;
    r.goodput = frame.payload_bytes / (r.wire_bytes_per_attempt * r.expected_attempts);
    return r;
}

ReliabilityReport fec_only_analysis(double p_pre, const RsCode& code,
                                    const FrameConfig& frame) {
    if (frame.mode != ProtectionMode::FecOnly)
        throw DomainError("fec_only_analysis requires a FecOnly frame");
    frame.validate();

    ReliabilityReport r;
    r.p_sym = symbol_error_prob(p_pre, code.symbol_bits);
    r.p_blk_fail = block_fail_prob(r.p_sym, code);
    r.p_frame_fail = frame_fail_prob(p_pre, code, frame);
    // At K == N no decoder runs, so the channel passes through unmodified.
    r.ber_delivered = code.is_rate_one() ? p_pre : post_fec_ber(p_pre, code);
    r.p_det = 0.0;
    r.p_drop = 0.0;
    r.ber_drop_eff = 0.0;
    r.expected_attempts = 1.0;
    r.wire_bytes_per_attempt =
        static_cast<double>(frame.data_bytes()) * code.n_symbols / code.k_symbols;
    r.goodput = frame.payload_bytes / r.wire_bytes_per_attempt;
    return r;
}

double frame_fail_budget(const FrameConfig& frame, const ReliabilityTargets& targets) {
    if (frame.mode != ProtectionMode::Hybrid)
        throw DomainError("frame_fail_budget requires a Hybrid frame");
    frame.validate();
    targets.validate();

    const double inf = std::numeric_limits<double>::infinity();

    // Silent-corruption branch: with p_undet = 0 the CRC never misses and the
    // constraint is vacuous.
    double budget_sdc = inf;
    if (targets.p_undet > 0.0)
        budget_sdc = 2.0 * targets.ber_target / (targets.f_wrong * targets.p_undet);

    // Drop branch: p_det^A / (8P) <= ber_target, solved for the per-attempt
    // frame-fail probability. Unbounded retries never drop.
    double budget_drop = inf;
    if (!targets.unbounded_retries()) {
        const double p_det_max =
            std::pow(8.0 * frame.payload_bytes * targets.ber_target,
                     1.0 / targets.attempts());
        budget_drop = p_det_max / (1.0 - targets.p_undet);
    }

    const double budget = std::min({1.0, budget_sdc, budget_drop});
    if (!(budget > 0.0))
        throw InfeasibleError("frame_fail_budget: no frame-fail probability in (0, 1] "
                              "satisfies the delivered-BER target");
    return budget;
}

std::vector<RsCode> default_code_family() {
    std::vector<RsCode> family;
    for (int k = 86; k >= 44; k -= 2) family.push_back(RsCode{86, k, 8});
    return family;
}

RsCode select_code(double p_pre, const FrameConfig& frame,
                   const ReliabilityTargets& targets,
                   const std::vector<RsCode>& code_family) {
    if (code_family.empty())
        throw DomainError("select_code: empty code family");
    frame.validate();
    targets.validate();
    check_probability(p_pre, "p_pre");

    std::vector<RsCode> family = code_family;
    std::sort(family.begin(), family.end(),
              [](const RsCode& a, const RsCode& b) { return a.k_symbols > b.k_symbols; });

    if (frame.mode == ProtectionMode::FecOnly) {
        for (const RsCode& code : family) {
            code.validate();
            const bool ok = code.is_rate_one()
                                ? p_pre <= targets.ber_target
                                : post_fec_ber(p_pre, code) <= targets.ber_target;
            if (ok) return code;
        }
    } else {
        const double budget = frame_fail_budget(frame, targets);
        for (const RsCode& code : family) {
            code.validate();
            if (frame_fail_prob(p_pre, code, frame) <= budget) return code;
        }
    }
    throw InfeasibleError(
        "select_code: no code in the family meets the target at p_pre = " +
        std::to_string(p_pre));
}

RsCode select_code(double p_pre, const FrameConfig& frame,
                   const ReliabilityTargets& targets) {
    return select_code(p_pre, frame, targets, default_code_family());
}

} // namespace chiplink
