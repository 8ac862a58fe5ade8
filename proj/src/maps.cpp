#include "digitfn/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "digitfn/error.hpp"

namespace digitfn {

TableMap::TableMap(int s, std::vector<int> table) : s_(s), table_(std::move(table)) {
    if (s_ < 2) throw ValidationError("radix must be >= 2");
    if (table_.size() != static_cast<std::size_t>(s_)) {
        throw ValidationError("digit table must cover the whole alphabet");
    }
    for (int v : table_) {
        if (v < 0 || v >= s_) throw ValidationError("digit table image out of alphabet");
    }
}

int TableMap::image(int digit) const {
    if (digit < 0 || digit >= s_) throw ValidationError("digit out of alphabet");
    return table_[static_cast<std::size_t>(digit)];
}

bool TableMap::bijective() const {
    std::vector<bool> hit(table_.size(), false);
    for (int v : table_) {
        if (hit[static_cast<std::size_t>(v)]) return false;
        hit[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

TableMap ternary_swap_table() {
    return TableMap(3, {0, 2, 1});
}

TableMap ternary_permutation(int m) {
    switch (m) {
        case 1: return TableMap(3, {0, 1, 2});
        case 2: return TableMap(3, {0, 2, 1});
        case 3: return TableMap(3, {1, 0, 2});
        case 4: return TableMap(3, {1, 2, 0});
        case 5: return TableMap(3, {2, 0, 1});
        case 6: return TableMap(3, {2, 1, 0});
        default: throw ValidationError("permutation index must be 1..6");
    }
}

TableMap ternary_collapse(int i, int j) {
    if (i < 0 || i > 2 || j < 0 || j > 2 || i == j) {
        throw ValidationError("collapse needs two distinct ternary digits");
    }
    std::vector<int> table(3, 1);  // the leftover digit maps to 1
    table[static_cast<std::size_t>(i)] = 0;
    table[static_cast<std::size_t>(j)] = 0;
    return TableMap(3, std::move(table));
}

TableMap identity_table(int s) {
    std::vector<int> table(static_cast<std::size_t>(s));
    std::iota(table.begin(), table.end(), 0);
    return TableMap(s, std::move(table));
}

TableMap complement_table(int s) {
    std::vector<int> table(static_cast<std::size_t>(s));
    for (int d = 0; d < s; ++d) table[static_cast<std::size_t>(d)] = s - 1 - d;
    return TableMap(s, std::move(table));
}

BlockPermutation::BlockPermutation(int s, int k, std::vector<std::size_t> table)
    : s_(s), k_(k), table_(std::move(table)) {
    if (s_ < 2) throw ValidationError("radix must be >= 2");
    if (k_ < 1) throw ValidationError("block length must be >= 1");
    std::size_t count = 1;
    for (int i = 0; i < k_; ++i) count *= static_cast<std::size_t>(s_);
    if (table_.size() != count) throw ValidationError("block table size must be s^k");
    std::vector<bool> hit(count, false);
    for (std::size_t image : table_) {
        if (image >= count || hit[image]) throw ValidationError("block table is not a bijection");
        hit[image] = true;
    }
}

std::size_t BlockPermutation::image_index(std::size_t block) const {
    if (block >= table_.size()) throw ValidationError("block index out of range");
    return table_[block];
}

std::vector<int> BlockPermutation::decode_block(std::size_t index) const {
    std::vector<int> digits(static_cast<std::size_t>(k_));
    for (int j = k_; j-- > 0;) {
        digits[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::size_t>(s_));
        index /= static_cast<std::size_t>(s_);
    }
    return digits;
}

std::size_t BlockPermutation::encode_block(const std::vector<int>& digits) const {
    if (digits.size() != static_cast<std::size_t>(k_)) throw ValidationError("bad block length");
    std::size_t index = 0;
    for (int d : digits) {
        if (d < 0 || d >= s_) throw ValidationError("block digit out of alphabet");
        index = index * static_cast<std::size_t>(s_) + static_cast<std::size_t>(d);
    }
    return index;
}

bool BlockPermutation::is_identity() const {
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i] != i) return false;
    }
    return true;
}

BlockPermutation ternary_swap() {
    // Digit image from the closed form (-3i^2 + 7i)/2, checked against the
    // substitution table it must reproduce.
    std::vector<std::size_t> table(3);
    const std::vector<int> expected = {0, 2, 1};
    for (int i = 0; i < 3; ++i) {
        const int phi = (-3 * i * i + 7 * i) / 2;
        if (phi != expected[static_cast<std::size_t>(i)]) {
            throw Error("digit polynomial disagrees with the substitution table");
        }
        table[static_cast<std::size_t>(i)] = static_cast<std::size_t>(phi);
    }
    return BlockPermutation(3, 1, std::move(table));
}

BlockPermutation block_identity(int s, int k) {
    std::size_t count = 1;
    for (int i = 0; i < k; ++i) count *= static_cast<std::size_t>(s);
    std::vector<std::size_t> table(count);
    std::iota(table.begin(), table.end(), std::size_t{0});
    return BlockPermutation(s, k, std::move(table));
}

BlockPermutation block_from_table_map(const TableMap& map) {
    if (!map.bijective()) throw ValidationError("table map is not a bijection");
    std::vector<std::size_t> table(static_cast<std::size_t>(map.radix()));
    for (int d = 0; d < map.radix(); ++d) {
        table[static_cast<std::size_t>(d)] = static_cast<std::size_t>(map.image(d));
    }
    return BlockPermutation(map.radix(), 1, std::move(table));
}

BlockPermutation compose(const BlockPermutation& outer, const BlockPermutation& inner) {
    if (outer.radix() != inner.radix() || outer.block_length() != inner.block_length()) {
        throw ValidationError("composition needs matching (s, k)");
    }
    std::vector<std::size_t> table(outer.block_count());
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[i] = outer.image_index(inner.image_index(i));
    }
    return BlockPermutation(outer.radix(), outer.block_length(), std::move(table));
}

BlockPermutation inverse(const BlockPermutation& perm) {
    std::vector<std::size_t> table(perm.block_count());
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[perm.image_index(i)] = i;
    }
    return BlockPermutation(perm.radix(), perm.block_length(), std::move(table));
}

LambdaSFunction::LambdaSFunction(int s, ChainShape shape, std::optional<BlockPermutation> theta)
    : s_(s), shape_(shape), theta_(std::move(theta)) {}

LambdaSFunction LambdaSFunction::block(BlockPermutation theta) {
    const int s = theta.radix();
    return LambdaSFunction(s, ChainShape::Block, std::move(theta));
}

LambdaSFunction LambdaSFunction::plus(int s) {
    if (s < 2) throw ValidationError("radix must be >= 2");
    return LambdaSFunction(s, ChainShape::Plus, std::nullopt);
}

LambdaSFunction LambdaSFunction::plus_inverse(int s) {
    if (s < 2) throw ValidationError("radix must be >= 2");
    return LambdaSFunction(s, ChainShape::PlusInv, std::nullopt);
}

LambdaSFunction LambdaSFunction::plus_after_block(BlockPermutation theta) {
    const int s = theta.radix();
    return LambdaSFunction(s, ChainShape::PlusBlock, std::move(theta));
}

LambdaSFunction LambdaSFunction::block_after_plus_inverse(BlockPermutation theta) {
    const int s = theta.radix();
    return LambdaSFunction(s, ChainShape::BlockPlusInv, std::move(theta));
}

LambdaSFunction LambdaSFunction::conjugated_block(BlockPermutation theta) {
    const int s = theta.radix();
    return LambdaSFunction(s, ChainShape::PlusBlockPlusInv, std::move(theta));
}

NumberSystem LambdaSFunction::input_system() const {
    switch (shape_) {
        case ChainShape::Block:
        case ChainShape::Plus:
        case ChainShape::PlusBlock:
            return NumberSystem::s_adic(s_);
        case ChainShape::PlusInv:
        case ChainShape::BlockPlusInv:
        case ChainShape::PlusBlockPlusInv:
            return NumberSystem::nega_s_adic(s_);
    }
    throw Error("unreachable");
}

NumberSystem LambdaSFunction::output_system() const {
    switch (shape_) {
        case ChainShape::Plus:
        case ChainShape::PlusBlock:
        case ChainShape::PlusBlockPlusInv:
            return NumberSystem::nega_s_adic(s_);
        case ChainShape::Block:
        case ChainShape::PlusInv:
        case ChainShape::BlockPlusInv:
            return NumberSystem::s_adic(s_);
    }
    throw Error("unreachable");
}

NumberSystem map_input_system(const DigitMap& map) {
    if (const TableMap* table = std::get_if<TableMap>(&map)) {
        return NumberSystem::s_adic(table->radix());
    }
    return std::get<LambdaSFunction>(map).input_system();
}

NumberSystem map_output_system(const DigitMap& map) {
    if (const TableMap* table = std::get_if<TableMap>(&map)) {
        return NumberSystem::s_adic(table->radix());
    }
    return std::get<LambdaSFunction>(map).output_system();
}

namespace {

void require_radix_system(const DigitString& digits, int s) {
    const SystemKind kind = digits.system().kind();
    if (kind != SystemKind::SAdic && kind != SystemKind::NegaSAdic) {
        throw ValidationError("digit maps act on s-adic or nega-s-adic strings");
    }
    if (digits.system().radix() != s) throw ValidationError("radix mismatch");
}

DigitString reinterpret(const DigitString& digits, const NumberSystem& system) {
    return DigitString(system, digits.prefix(), digits.period());
}

}  // namespace

DigitString apply_map(const TableMap& map, const DigitString& digits) {
    require_radix_system(digits, map.radix());
    std::vector<int> prefix(digits.prefix().size());
    for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = map.image(digits.prefix()[i]);
    std::vector<int> period(digits.period().size());
    for (std::size_t i = 0; i < period.size(); ++i) period[i] = map.image(digits.period()[i]);
    if (period.empty() && map.image(0) != 0) period.assign(1, map.image(0));
    return normalize_encoding(digits.system(), std::move(prefix), std::move(period));
}

DigitString apply_map(const BlockPermutation& perm, const DigitString& digits) {
    require_radix_system(digits, perm.radix());
    const std::size_t k = static_cast<std::size_t>(perm.block_length());

    // Re-chunk so the prefix is block-aligned and the tail spans whole blocks.
    std::vector<int> head = digits.prefix();
    std::vector<int> tail = digits.period();
    if (tail.empty()) tail.assign(k, 0);
    std::size_t rotation = 0;
    while (head.size() % k != 0) {
        head.push_back(tail[rotation]);
        rotation = (rotation + 1) % tail.size();
    }
    if (rotation != 0) {
        std::rotate(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(rotation), tail.end());
    }
    {
        const std::size_t aligned = std::lcm(tail.size(), k);
        std::vector<int> replicated;
        replicated.reserve(aligned);
        while (replicated.size() < aligned) replicated.insert(replicated.end(), tail.begin(), tail.end());
        tail = std::move(replicated);
    }

    const auto map_blocks = [&](std::vector<int>& digits_io) {
        std::vector<int> block(k);
        for (std::size_t start = 0; start + k <= digits_io.size(); start += k) {
            std::copy_n(digits_io.begin() + static_cast<std::ptrdiff_t>(start), k, block.begin());
            const std::vector<int> image = perm.decode_block(perm.image_index(perm.encode_block(block)));
            std::copy(image.begin(), image.end(), digits_io.begin() + static_cast<std::ptrdiff_t>(start));
        }
    };
    map_blocks(head);
    map_blocks(tail);
    return normalize_encoding(digits.system(), std::move(head), std::move(tail));
}

DigitString apply_map(const LambdaSFunction& fn, const DigitString& digits) {
    if (!(digits.system() == fn.input_system())) {
        throw ValidationError("digit string is not in the map's input system");
    }
    DigitString current = digits;
    const ChainShape shape = fn.shape();
    if (shape == ChainShape::PlusInv || shape == ChainShape::BlockPlusInv ||
        shape == ChainShape::PlusBlockPlusInv) {
        current = reinterpret(current, NumberSystem::s_adic(fn.radix()));
    }
    if (fn.theta().has_value()) {
        current = apply_map(*fn.theta(), current);
    }
    if (shape == ChainShape::Plus || shape == ChainShape::PlusBlock ||
        shape == ChainShape::PlusBlockPlusInv) {
        current = reinterpret(current, NumberSystem::nega_s_adic(fn.radix()));
    }
    return current;
}

DigitString apply_map(const DigitMap& map, const DigitString& digits) {
    return std::visit([&](const auto& m) { return apply_map(m, digits); }, map);
}

Rational eval(const TableMap& map, const Rational& x) {
    const DigitString digits = to_digits(x, NumberSystem::s_adic(map.radix()));
    return from_digits(apply_map(map, digits));
}

Rational eval(const LambdaSFunction& fn, const Rational& x) {
    const DigitString digits = to_digits(x, fn.input_system());
    return from_digits(apply_map(fn, digits));
}

Rational eval(const DigitMap& map, const Rational& x) {
    return std::visit([&](const auto& m) { return eval(m, x); }, map);
}

GroupReport group_enumerate(int s, int k, std::size_t guard_block_count) {
    if (s < 2 || k < 1) throw ValidationError("group enumeration needs s >= 2, k >= 1");
    std::size_t count = 1;
    for (int i = 0; i < k; ++i) {
        count *= static_cast<std::size_t>(s);
        if (count > guard_block_count) {
            throw GuardError("s^k exceeds the enumeration guard (" +
                             std::to_string(guard_block_count) + ")");
        }
    }

    std::vector<std::vector<std::size_t>> members;
    std::vector<std::size_t> perm(count);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        members.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // The member list holds every bijection of the block set, so membership
    // of a composite is exactly "is a bijection". The guard keeps count <= 8,
    // so a bitmask tracks the hits.
    const auto is_member = [count](const std::vector<std::size_t>& candidate) {
        unsigned mask = 0;
        for (std::size_t v : candidate) {
            if (v >= count) return false;
            const unsigned bit = 1u << v;
            if ((mask & bit) != 0) return false;
            mask |= bit;
        }
        return mask == (1u << count) - 1u;
    };

    bool closure_ok = true;
    std::vector<std::size_t> scratch(count);
    for (const auto& a : members) {
        for (const auto& b : members) {
            for (std::size_t i = 0; i < count; ++i) scratch[i] = a[b[i]];
            if (!is_member(scratch)) {
                closure_ok = false;
                break;
            }
        }
        if (!closure_ok) break;
    }
    if (closure_ok) {
        std::vector<std::size_t> identity(count);
        std::iota(identity.begin(), identity.end(), std::size_t{0});
        for (const auto& a : members) {
            std::vector<std::size_t> inv(count);
            for (std::size_t i = 0; i < count; ++i) inv[a[i]] = i;
            for (std::size_t i = 0; i < count; ++i) scratch[i] = a[inv[i]];
            if (!is_member(inv) || scratch != identity) {
                closure_ok = false;
                break;
            }
        }
    }
    return {static_cast<long long>(members.size()), closure_ok};
}

std::vector<std::vector<int>> fixed_blocks(const BlockPermutation& perm) {
    std::vector<std::vector<int>> fixed;
    for (std::size_t i = 0; i < perm.block_count(); ++i) {
        if (perm.image_index(i) == i) fixed.push_back(perm.decode_block(i));
    }
    return fixed;
}

InvariantSetDimension invariant_set_dimension(const BlockPermutation& perm) {
    InvariantSetDimension out;
    out.s = perm.radix();
    out.k = perm.block_length();
    out.fixed_count = fixed_blocks(perm).size();
    if (out.fixed_count == 0) {
        out.kind = InvariantKind::Empty;
    } else if (out.fixed_count == 1) {
        out.kind = InvariantKind::Finite;
    } else {
        out.kind = InvariantKind::Continuum;
        out.dimension = std::log(static_cast<double>(out.fixed_count)) /
                        (static_cast<double>(out.k) * std::log(static_cast<double>(out.s)));
    }
    return out;
}

Rational bush_wunderlich(int s, const Rational& x) {
    if (s < 3) throw ValidationError("digit-run parity maps need radix >= 3");
    if (x < 0 || x > 1) throw DomainError("argument outside [0,1]");
    const DigitString digits = to_digits(x, NumberSystem::s_adic(s));

    std::vector<int> head = digits.prefix();
    std::vector<int> block = digits.period();
    if (block.empty()) block.assign(1, 0);
    // Unroll one tail block into the head so every remaining pass over the
    // block starts from the same previous digit (the block's last).
    head.insert(head.end(), block.begin(), block.end());

    std::vector<int> bits_head(head.size());
    bits_head[0] = head[0] == 0 ? 0 : 1;
    for (std::size_t j = 1; j < head.size(); ++j) {
        bits_head[j] = head[j] == head[j - 1] ? bits_head[j - 1] : 1 - bits_head[j - 1];
    }

    // Each pass over the tail block either preserves the running bit or flips
    // it, so the output period is the block's bit image once or twice.
    int last_digit = head.back();
    int last_bit = bits_head.back();
    std::vector<int> bits_period;
    const int entering_bit = last_bit;
    for (int pass = 0; pass < 2; ++pass) {
        for (int digit : block) {
            last_bit = digit == last_digit ? last_bit : 1 - last_bit;
            last_digit = digit;
            bits_period.push_back(last_bit);
        }
        if (last_bit == entering_bit) break;
    }
    return from_digits(
        normalize_encoding(NumberSystem::s_adic(2), std::move(bits_head), std::move(bits_period)));
}

DigitMap builtin_map(const std::string& name, int s) {
    if (name == "f") return DigitMap(ternary_swap_table());
    if (name == "f01") return DigitMap(ternary_collapse(0, 1));
    if (name == "f02") return DigitMap(ternary_collapse(0, 2));
    if (name == "f12") return DigitMap(ternary_collapse(1, 2));
    if (name.size() == 2 && name[0] == 'f' && name[1] >= '1' && name[1] <= '6') {
        return DigitMap(ternary_permutation(name[1] - '0'));
    }
    if (name == "identity") return DigitMap(LambdaSFunction::block(block_identity(s, 1)));
    if (name == "complement") return DigitMap(complement_table(s));
    if (name == "fplus") return DigitMap(LambdaSFunction::plus(s));
    if (name == "fplusinv") return DigitMap(LambdaSFunction::plus_inverse(s));
    throw ValidationError("unknown map name '" + name + "'");
}

}  // namespace digitfn
