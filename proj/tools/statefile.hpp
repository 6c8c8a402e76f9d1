// statefile.hpp — JSON state-file schema, the partition-string grammar, and
// the fixed numeric formats shared by every command.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entprod/operators.hpp"
#include "entprod/space.hpp"

namespace entprod::cli {

// On-disk operator: factor dimensions, real/imaginary parts as nested
// arrays, and an optional canonical partition.
struct StateFile {
    std::vector<std::size_t> dims;
    Matrix matrix;
    std::optional<std::vector<std::vector<std::size_t>>> partition;
};

nlohmann::json state_file_json(const StateFile& file);
StateFile state_file_from_json(const nlohmann::json& j);
StateFile load_state_file(const std::string& path);
void save_state_file(const std::string& path, const StateFile& file);

// Grammar: blocks separated by '|', indices by ','; no whitespace.
Partition parse_partition(const std::string& text, std::size_t factor_count);

// 12 significant digits, fixed across platforms and runs.
std::string csv_number(double v);

// Half-integers print without trailing zeros ("2", "-0.5").
std::string quantum_number(double v);

}  // namespace entprod::cli
