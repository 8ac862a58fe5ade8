#ifndef DIGITFN_ANALYSIS_HPP
#define DIGITFN_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "digitfn/maps.hpp"
#include "digitfn/rational.hpp"

namespace digitfn {

struct JumpReport {
    Rational point;
    Rational left_limit;
    Rational right_limit;
    Rational value;
    Rational jump;  // right_limit - left_limit
};

struct DimensionEstimate {
    std::vector<std::pair<int, BigInt>> counts;  // (rank, count)
    double slope = 0.0;                          // log N(m) fitted against m log s
    std::string exact_law;                       // set when a closed form held exactly
    bool empty_set = false;                      // level sets only
};

enum class ProbeVerdict { OscillatingDivergent, SignAlternating, Inconclusive };

struct QuotientProbe {
    Rational point;
    std::size_t depth = 0;
    std::vector<Rational> quotients;
    std::size_t positive_count = 0;
    std::size_t negative_count = 0;
    std::size_t sign_flips = 0;
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
};

struct IdentityReport {
    struct Item {
        std::string name;
        std::size_t checked = 0;
        std::size_t failures = 0;
    };
    std::vector<Item> items;
    std::size_t samples = 0;
    bool all_ok = false;
};

// Lebesgue integral over the map's domain, from the exact expected digit
// contributions under the uniform digit measure.
Rational exact_integral(const DigitMap& map);

// Formal one-sided limits of a digitwise map at a terminating s-adic
// rational: the two representations of x0 are mapped and resummed exactly.
JumpReport one_sided_limits(const DigitMap& map, const Rational& x0);

// Counts rank-m squares (input cylinder x output cylinder) meeting the
// graph, by exact image-prefix bookkeeping. Ranks 1..max_rank.
DimensionEstimate graph_box_count(const DigitMap& map, int max_rank, int guard = 12);

// Counts rank-m input cylinders whose image prefix matches y0, per rank.
// A y0 digit with no preimage marks the level set empty.
DimensionEstimate level_set_count(const TableMap& map, const Rational& y0, int max_rank,
                                  int guard = 12);

// Counts rank-m cylinders whose interval meets the interval of their image
// cylinder with positive length. Ranks step by the block length (or by 2 for
// the sign-reinterpretation maps, whose fixed sets live on even ranks).
DimensionEstimate invariant_prefix_count(const LambdaSFunction& chain, int max_rank, int guard = 12);

// Exact verification of the digit-map identities (the linear relations among
// the ternary maps and the reflection equations for the sign maps) on seeded
// random rationals, using the digit-complement convention for 1 - x.
IdentityReport identity_suite(std::size_t samples, std::uint64_t seed);

// Exact difference quotients (f(x') - f(x)) / (x' - x) where x' bumps the
// digit at position n by +-1; scales whose bump leaves the alphabet are
// skipped. The verdict reports recurring quotients of both signs.
QuotientProbe derivative_probe(const DigitMap& map, const Rational& x, std::size_t depth);
QuotientProbe derivative_probe_string(const std::function<Rational(const DigitString&)>& evaluate,
                                      const NumberSystem& system, const Rational& x,
                                      std::size_t depth);

// Deterministic mixture of terminating (k/s^j) and periodic (k/(s^j - 1))
// rationals in [0,1].
std::vector<Rational> sample_rationals(int radix, std::size_t count, std::uint64_t seed);

// Least-squares slope of log(count) against rank * log(radix).
double fit_log_slope(const std::vector<std::pair<int, BigInt>>& counts, int radix);

}  // namespace digitfn

#endif
