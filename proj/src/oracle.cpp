#include "chiplink/oracle.hpp"

#include <cmath>
#include <random>

namespace chiplink::oracle {

double relative_error(const HpReal& ref, double value) {
    if (ref.hi == 0.0) return value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    // (value - hi) is exact for nearby doubles; folding lo in afterwards keeps
    // ~1e-16 resolution on the ratio.
    const double diff = (value - ref.hi) - ref.lo;
    return std::abs(diff) / ref.value();
}

BigFixed hp_symbol_error_prob(double p_pre, int symbol_bits) {
    if (!(p_pre >= 0.0 && p_pre <= 1.0))
        throw DomainError("hp_symbol_error_prob: p_pre outside [0, 1]");
    const BigFixed q = BigFixed::one() - BigFixed::from_double(p_pre);
    return BigFixed::one() - q.pow(symbol_bits);
}

namespace {

HpReal to_hp(const BigFixed& v) {
    HpReal r;
    v.split(r.hi, r.lo);
    return r;
}

// sum over i in [lo, hi] of weight(i) * C(n,i) p^i q^(n-i), with the binomial
// coefficient kept as an exact integer-valued BigFixed (the multiplicative
// update C(n,i+1) = C(n,i)*(n-i)/(i+1) divides exactly at every step).
template <typename Weight>
BigFixed weighted_binomial_sum(int n, const BigFixed& p, int lo, int hi, Weight weight) {
    if (n < 0 || lo < 0 || hi > n)
        throw DomainError("weighted_binomial_sum: bad range");
    const BigFixed q = BigFixed::one() - p;
    std::vector<BigFixed> p_pow(static_cast<std::size_t>(n) + 1);
    std::vector<BigFixed> q_pow(static_cast<std::size_t>(n) + 1);
    p_pow[0] = BigFixed::one();
    q_pow[0] = BigFixed::one();
    for (int i = 1; i <= n; ++i) {
        p_pow[static_cast<std::size_t>(i)] = p_pow[static_cast<std::size_t>(i - 1)].mul(p);
        q_pow[static_cast<std::size_t>(i)] = q_pow[static_cast<std::size_t>(i - 1)].mul(q);
    }
    BigFixed binom = BigFixed::one(); // C(n, 0)
    BigFixed total;
    for (int i = 0; i <= hi; ++i) {
        if (i >= lo) {
            BigFixed term = binom.mul(p_pow[static_cast<std::size_t>(i)])
                                .mul(q_pow[static_cast<std::size_t>(n - i)]);
            total += weight(i, std::move(term));
        }
        if (i < n)
            binom = binom.mul_integer(static_cast<std::uint64_t>(n - i))
                        .div_small(static_cast<std::uint64_t>(i + 1));
    }
    return total;
}

BigFixed plain(int, BigFixed term) { return term; }

} // namespace

HpReal hp_binom_tail(int n, const BigFixed& p, int t) {
    return to_hp(weighted_binomial_sum(n, p, t + 1, n, plain));
}

HpReal hp_binom_tail(int n, double p, int t) {
    return hp_binom_tail(n, BigFixed::from_double(p), t);
}

HpReal hp_correctable_activity(int n, const BigFixed& p, int t) {
    if (t == 0) return HpReal{};
    return to_hp(weighted_binomial_sum(n, p, 1, t, plain));
}

HpReal hp_correctable_activity(int n, double p, int t) {
    return hp_correctable_activity(n, BigFixed::from_double(p), t);
}

HpReal hp_post_fec_ber(int n, int symbol_bits, double p_pre, int t) {
    const BigFixed p_sym = hp_symbol_error_prob(p_pre, symbol_bits);
    const auto bit_positions =
        static_cast<std::uint64_t>(2) * static_cast<std::uint64_t>(n) *
        static_cast<std::uint64_t>(symbol_bits);
    const BigFixed sum = weighted_binomial_sum(
        n, p_sym, t + 1, n, [bit_positions](int i, BigFixed term) {
            return term.mul_integer(static_cast<std::uint64_t>(i)).div_small(bit_positions);
        });
    return to_hp(sum);
}

HpReal hp_frame_fail_prob(double p_pre, const RsCode& code, const FrameConfig& frame) {
    const BigFixed p_sym = hp_symbol_error_prob(p_pre, code.symbol_bits);
    const BigFixed p_blk =
        weighted_binomial_sum(code.n_symbols, p_sym, code.correctable() + 1,
                              code.n_symbols, plain);
    double blk_hi = 0, blk_lo = 0;
    p_blk.split(blk_hi, blk_lo);
    // The fractional exponent leaves fixed-point territory; long double on the
    // hi+lo pair keeps ~1e-18 accuracy, ample for a reference at 1e-12.
    const long double blk = static_cast<long double>(blk_hi) + blk_lo;
    const long double b_eff =
        static_cast<long double>(frame.data_bytes()) / code.k_symbols;
    const long double ff = -std::expm1(b_eff * std::log1p(-blk));
    HpReal out;
    out.hi = static_cast<double>(ff);
    out.lo = static_cast<double>(ff - static_cast<long double>(out.hi));
    return out;
}

double FrameSimStats::p_blk_hat() const {
    return codewords == 0 ? 0.0 : static_cast<double>(failed_codewords) / codewords;
}

double FrameSimStats::p_blk_se() const {
    if (codewords == 0) return 0.0;
    const double p = p_blk_hat();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(codewords));
}

double FrameSimStats::p_frame_hat() const {
    return trials == 0 ? 0.0 : static_cast<double>(failed_frames) / trials;
}

double FrameSimStats::p_frame_se() const {
    if (trials == 0) return 0.0;
    const double p = p_frame_hat();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

FrameSimStats simulate_frames(double p_pre, const RsCode& code,
                              const FrameConfig& frame, std::uint64_t trials,
                              std::uint64_t seed) {
    code.validate();
    frame.validate();
    if (!(p_pre >= 0.0 && p_pre <= 1.0))
        throw DomainError("simulate_frames: p_pre outside [0, 1]");

    FrameSimStats stats;
    stats.trials = trials;
    stats.b_eff_model = static_cast<double>(frame.data_bytes()) / code.k_symbols;
    stats.codewords_per_frame = static_cast<int>(std::ceil(stats.b_eff_model));
    const int cw_bits = code.n_symbols * code.symbol_bits;
    const int t = code.correctable();

    std::mt19937_64 rng(seed);
    const double log_q = std::log1p(-p_pre);

    // Positions of bit errors arrive as i.i.d. geometric gaps (inverse-CDF
    // sampling, portable across standard libraries).
    auto next_gap = [&]() -> double {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::floor(std::log1p(-u) / log_q);
    };

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        bool frame_failed = false;
        for (int cw = 0; cw < stats.codewords_per_frame; ++cw) {
            ++stats.codewords;
            int bad_symbols = 0;
            if (p_pre >= 1.0) {
                bad_symbols = code.n_symbols;
            } else if (p_pre > 0.0) {
                double pos = next_gap();
                int last_symbol = -1;
                while (pos < cw_bits) {
                    const int symbol = static_cast<int>(pos) / code.symbol_bits;
                    if (symbol != last_symbol) {
                        ++bad_symbols;
                        last_symbol = symbol;
                    }
                    pos += 1.0 + next_gap();
                }
            }
            if (bad_symbols > t) {
                ++stats.failed_codewords;
                frame_failed = true;
            }
        }
        if (frame_failed) ++stats.failed_frames;
    }
    return stats;
}

AssignmentSolution brute_force_assign(const AssignmentProblem& problem) {
    const std::size_t n_nets = problem.nets.size();
    if (n_nets > 10 || problem.links.size() > 6)
        throw DomainError("brute_force_assign: instance exceeds the enumeration bound "
                          "(10 nets, 6 links)");

    AssignmentSolution best;
    best.status = SolveStatus::Infeasible;
    if (n_nets == 0) {
        best.status = SolveStatus::Optimal;
        best.objective = 0;
        return best;
    }
    for (std::size_t n = 0; n < n_nets; ++n) {
        if (problem.feasible[n].empty()) {
            best.witness = "net " + problem.nets[n].id + " has no feasible link";
            return best;
        }
    }

    std::vector<std::size_t> odo(n_nets, 0); // index into each feasible list
    std::vector<int> choice(n_nets, 0);
    std::vector<int> best_choice;
    std::vector<double> residual;
    double best_obj = std::numeric_limits<double>::infinity();
    bool found = false;

    while (true) {
        bool feasible = true;
        residual = problem.edge_capacity_mm;
        double obj = 0;
        for (std::size_t n = 0; n < n_nets && feasible; ++n) {
            const int l = problem.feasible[n][odo[n]];
            choice[n] = l;
            const double w = problem.w_min[n][static_cast<std::size_t>(l)];
            residual[static_cast<std::size_t>(problem.net_edge_a[n])] -= w;
            residual[static_cast<std::size_t>(problem.net_edge_b[n])] -= w;
            obj += problem.cost[n][static_cast<std::size_t>(l)];
        }
        for (double r : residual)
            if (r < 0) feasible = false;
        if (feasible && (!found || obj < best_obj)) {
            best_obj = obj;
            best_choice = choice;
            found = true;
        }
        // Advance the odometer (last net fastest, so ties resolve toward the
        // per-net (cost, name) order -- the same tie-break the solver uses).
        std::size_t k = n_nets;
        while (k > 0) {
            --k;
            if (++odo[k] < problem.feasible[k].size()) break;
            odo[k] = 0;
            if (k == 0) {
                k = n_nets + 1; // done
                break;
            }
        }
        if (k == n_nets + 1) break;
    }

    if (!found) {
        best.witness = "no link-choice tuple satisfies the edge capacities";
        return best;
    }

    best.status = SolveStatus::Optimal;
    best.per_net.reserve(n_nets);
    double obj = 0, power = 0, area = 0;
    for (std::size_t n = 0; n < n_nets; ++n) {
        const auto l = static_cast<std::size_t>(best_choice[n]);
        best.per_net.push_back(NetAssignment{best_choice[n], problem.links[l].name,
                                             problem.w_min[n][l]});
        obj += problem.cost[n][l];
        power += problem.links[l].energy_pj_per_bit * problem.nets[n].bw_req_gbps * 1e-3;
        area += 0.5 * problem.nets[n].bw_req_gbps / problem.links[l].areal_gbps_per_mm2;
    }
    best.objective = obj;
    best.total_power_w = power;
    best.total_area_mm2 = area;
    return best;
}

} // namespace chiplink::oracle
