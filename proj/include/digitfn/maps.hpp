#ifndef DIGITFN_MAPS_HPP
#define DIGITFN_MAPS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "digitfn/digit_string.hpp"
#include "digitfn/numbers.hpp"
#include "digitfn/rational.hpp"

namespace digitfn {

// Digitwise substitution on the alphabet {0..s-1}. Not necessarily a
// bijection: the level-set family collapses two digits onto one.
class TableMap {
public:
    TableMap(int s, std::vector<int> table);

    int radix() const { return s_; }
    int image(int digit) const;
    const std::vector<int>& table() const { return table_; }
    bool bijective() const;
    bool operator==(const TableMap& other) const = default;

private:
    int s_;
    std::vector<int> table_;
};

TableMap ternary_swap_table();          // 0->0, 1->2, 2->1
TableMap ternary_permutation(int m);    // the six digit permutations, m = 1..6
TableMap ternary_collapse(int i, int j);  // i,j -> 0, remaining digit -> 1
TableMap identity_table(int s);
TableMap complement_table(int s);       // d -> s-1-d

// Bijection on length-k digit blocks, stored as a table over block indices.
// Blocks are encoded big-endian: (g1,...,gk) -> sum gi * s^(k-i).
class BlockPermutation {
public:
    BlockPermutation(int s, int k, std::vector<std::size_t> table);

    int radix() const { return s_; }
    int block_length() const { return k_; }
    std::size_t block_count() const { return table_.size(); }
    std::size_t image_index(std::size_t block) const;
    const std::vector<std::size_t>& table() const { return table_; }

    std::vector<int> decode_block(std::size_t index) const;
    std::size_t encode_block(const std::vector<int>& digits) const;

    bool is_identity() const;
    bool operator==(const BlockPermutation& other) const = default;

private:
    int s_;
    int k_;
    std::vector<std::size_t> table_;
};

// The ternary digit swap as a block map; the table is rebuilt from its
// closed-form digit polynomial and cross-checked on construction.
BlockPermutation ternary_swap();
BlockPermutation block_identity(int s, int k);
BlockPermutation block_from_table_map(const TableMap& map);  // requires bijective

BlockPermutation compose(const BlockPermutation& outer, const BlockPermutation& inner);
BlockPermutation inverse(const BlockPermutation& perm);

// The composite shapes a digit-block function can take: a block substitution
// on s-adic strings, the sign reinterpretation (s-adic digits reread as
// nega-s-adic), its inverse, and their compositions.
enum class ChainShape {
    Block,             // theta
    Plus,              // reinterpret s-adic -> nega-s-adic
    PlusInv,           // reinterpret nega-s-adic -> s-adic
    PlusBlock,         // plus o theta
    BlockPlusInv,      // theta o plus^-1
    PlusBlockPlusInv,  // plus o theta o plus^-1
};

class LambdaSFunction {
public:
    static LambdaSFunction block(BlockPermutation theta);
    static LambdaSFunction plus(int s);
    static LambdaSFunction plus_inverse(int s);
    static LambdaSFunction plus_after_block(BlockPermutation theta);
    static LambdaSFunction block_after_plus_inverse(BlockPermutation theta);
    static LambdaSFunction conjugated_block(BlockPermutation theta);

    ChainShape shape() const { return shape_; }
    int radix() const { return s_; }
    const std::optional<BlockPermutation>& theta() const { return theta_; }

    NumberSystem input_system() const;
    NumberSystem output_system() const;

private:
    LambdaSFunction(int s, ChainShape shape, std::optional<BlockPermutation> theta);

    int s_;
    ChainShape shape_;
    std::optional<BlockPermutation> theta_;
};

// Either kind of digit-defined map, for the operations that accept both.
using DigitMap = std::variant<TableMap, LambdaSFunction>;

NumberSystem map_input_system(const DigitMap& map);
NumberSystem map_output_system(const DigitMap& map);

// Digit-sequence action. The input string is transformed as written; callers
// that care about single-valuedness at shared-endpoint numbers must pass the
// canonical representative.
DigitString apply_map(const TableMap& map, const DigitString& digits);
DigitString apply_map(const BlockPermutation& perm, const DigitString& digits);
DigitString apply_map(const LambdaSFunction& fn, const DigitString& digits);
DigitString apply_map(const DigitMap& map, const DigitString& digits);

Rational eval(const TableMap& map, const Rational& x);
Rational eval(const LambdaSFunction& fn, const Rational& x);
Rational eval(const DigitMap& map, const Rational& x);

struct GroupReport {
    long long order = 0;
    bool closure_ok = false;
};

// Enumerates every block bijection for the given (s, k), verifying closure
// under composition and inverses pair by pair. Guarded at s^k <= 8.
GroupReport group_enumerate(int s, int k, std::size_t guard_block_count = 8);

std::vector<std::vector<int>> fixed_blocks(const BlockPermutation& perm);

enum class InvariantKind { Empty, Finite, Continuum };

struct InvariantSetDimension {
    InvariantKind kind = InvariantKind::Empty;
    std::size_t fixed_count = 0;  // j
    int s = 0;
    int k = 0;
    double dimension = 0.0;  // (1/k) log_s j when continuum, else 0
};

InvariantSetDimension invariant_set_dimension(const BlockPermutation& perm);

// Digit-run parity function: the first digit decides the starting bit and
// every change of s-adic digit flips it; the bit string is read in binary.
Rational bush_wunderlich(int s, const Rational& x);

// Named map lookup used by the CLI and bindings: f, f1..f6, f01, f02, f12,
// fplus, fplusinv (plus/plusinv honor `s`).
DigitMap builtin_map(const std::string& name, int s = 3);

}  // namespace digitfn

#endif
