#ifndef DIGITFN_CONFIG_JSON_HPP
#define DIGITFN_CONFIG_JSON_HPP

#include <string>

#include "digitfn/maps.hpp"
#include "digitfn/number_system.hpp"
#include "digitfn/salem.hpp"

namespace digitfn {

// Config schemas (all parse errors surface as ValidationError):
//   CantorBase  {"prefix":[2,3], "period":[2]}
//   QMatrix     {"columns":[{"m":2,"q":["1/3","1/3","1/3"]}], "period_start":0}
//   PMatrix     {"columns":[{"m":2,"p":["1/2","-1/4","3/4"]}], "period_start":0}
//   BlockPermutation {"s":2,"k":2,"theta":[["00","10"],["01","11"],["10","00"],["11","01"]]}

CantorBase parse_cantor_base(const std::string& json_text);
QMatrix parse_q_matrix(const std::string& json_text);
PMatrix parse_p_matrix(const std::string& json_text);
BlockPermutation parse_block_permutation(const std::string& json_text);

CantorBase load_cantor_base(const std::string& path);
QMatrix load_q_matrix(const std::string& path);
PMatrix load_p_matrix(const std::string& path);
BlockPermutation load_block_permutation(const std::string& path);

}  // namespace digitfn

#endif
