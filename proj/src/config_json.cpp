#include "digitfn/config_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "digitfn/error.hpp"

namespace digitfn {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) throw ValidationError("malformed JSON config");
    return parsed;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<int> int_list(const json& node, const std::string& what) {
    if (!node.is_array()) throw ValidationError(what + " must be an array");
    std::vector<int> out;
    for (const json& item : node) {
        if (!item.is_number_integer()) throw ValidationError(what + " entries must be integers");
        out.push_back(item.get<int>());
    }
    return out;
}

std::vector<Rational> rational_list(const json& node, const std::string& what) {
    if (!node.is_array()) throw ValidationError(what + " must be an array");
    std::vector<Rational> out;
    for (const json& item : node) {
        if (item.is_number_integer()) {
            out.emplace_back(item.get<long long>());
        } else if (item.is_string()) {
            out.push_back(parse_rational(item.get<std::string>()));
        } else {
            throw ValidationError(what + " entries must be integers or 'p/q' strings");
        }
    }
    return out;
}

std::size_t period_start_field(const json& node) {
    if (!node.contains("period_start")) return 0;
    if (!node["period_start"].is_number_unsigned() && !node["period_start"].is_number_integer()) {
        throw ValidationError("period_start must be a nonnegative integer");
    }
    const long long value = node["period_start"].get<long long>();
    if (value < 0) throw ValidationError("period_start must be a nonnegative integer");
    return static_cast<std::size_t>(value);
}

}  // namespace

CantorBase parse_cantor_base(const std::string& json_text) {
    const json node = parse_json(json_text);
    if (!node.is_object() || !node.contains("period")) {
        throw ValidationError("base config needs a 'period' array");
    }
    std::vector<int> prefix;
    if (node.contains("prefix")) prefix = int_list(node["prefix"], "prefix");
    return CantorBase(std::move(prefix), int_list(node["period"], "period"));
}

QMatrix parse_q_matrix(const std::string& json_text) {
    const json node = parse_json(json_text);
    if (!node.is_object() || !node.contains("columns") || !node["columns"].is_array()) {
        throw ValidationError("matrix config needs a 'columns' array");
    }
    std::vector<QMatrix::Column> columns;
    for (const json& col : node["columns"]) {
        if (!col.is_object() || !col.contains("q")) {
            throw ValidationError("matrix column needs a 'q' array");
        }
        QMatrix::Column column{rational_list(col["q"], "q")};
        if (col.contains("m")) {
            const long long m = col["m"].get<long long>();
            if (m + 1 != static_cast<long long>(column.q.size())) {
                throw ValidationError("column 'm' disagrees with the number of weights");
            }
        }
        columns.push_back(std::move(column));
    }
    return QMatrix(std::move(columns), period_start_field(node));
}

PMatrix parse_p_matrix(const std::string& json_text) {
    const json node = parse_json(json_text);
    if (!node.is_object() || !node.contains("columns") || !node["columns"].is_array()) {
        throw ValidationError("matrix config needs a 'columns' array");
    }
    std::vector<PMatrix::Column> columns;
    for (const json& col : node["columns"]) {
        if (!col.is_object() || !col.contains("p")) {
            throw ValidationError("weight column needs a 'p' array");
        }
        PMatrix::Column column{rational_list(col["p"], "p")};
        if (col.contains("m")) {
            const long long m = col["m"].get<long long>();
            if (m + 1 != static_cast<long long>(column.p.size())) {
                throw ValidationError("column 'm' disagrees with the number of weights");
            }
        }
        columns.push_back(std::move(column));
    }
    return PMatrix(std::move(columns), period_start_field(node));
}

BlockPermutation parse_block_permutation(const std::string& json_text) {
    const json node = parse_json(json_text);
    if (!node.is_object() || !node.contains("s") || !node.contains("k") || !node.contains("theta")) {
        throw ValidationError("map config needs 's', 'k' and a 'theta' pair list");
    }
    const int s = node["s"].get<int>();
    const int k = node["k"].get<int>();
    if (s < 2 || k < 1) throw ValidationError("map config needs s >= 2, k >= 1");
    std::size_t count = 1;
    for (int i = 0; i < k; ++i) count *= static_cast<std::size_t>(s);

    const auto decode = [&](const std::string& word) {
        if (word.size() != static_cast<std::size_t>(k)) {
            throw ValidationError("block '" + word + "' must have k digits");
        }
        std::size_t index = 0;
        for (char c : word) {
            const int digit = c - '0';
            if (digit < 0 || digit >= s) throw ValidationError("block digit out of alphabet");
            index = index * static_cast<std::size_t>(s) + static_cast<std::size_t>(digit);
        }
        return index;
    };

    if (!node["theta"].is_array() || node["theta"].size() != count) {
        throw ValidationError("theta must list every block exactly once");
    }
    std::vector<std::size_t> table(count, count);
    for (const json& pair : node["theta"]) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
            throw ValidationError("theta entries must be [from, to] digit strings");
        }
        const std::size_t from = decode(pair[0].get<std::string>());
        const std::size_t to = decode(pair[1].get<std::string>());
        if (table[from] != count) throw ValidationError("theta lists a block twice");
        table[from] = to;
    }
    return BlockPermutation(s, k, std::move(table));
}

CantorBase load_cantor_base(const std::string& path) {
    return parse_cantor_base(read_file(path));
}

QMatrix load_q_matrix(const std::string& path) {
    return parse_q_matrix(read_file(path));
}

PMatrix load_p_matrix(const std::string& path) {
    return parse_p_matrix(read_file(path));
}

BlockPermutation load_block_permutation(const std::string& path) {
    return parse_block_permutation(read_file(path));
}

}  // namespace digitfn
