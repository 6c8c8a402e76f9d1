#include "statefile.hpp"

#include <cstdio>
#include <fstream>

namespace entprod::cli {

namespace {

nlohmann::json matrix_part(const Matrix& m, bool imaginary) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(imaginary ? m(r, c).imag() : m(r, c).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

nlohmann::json state_file_json(const StateFile& file) {
    nlohmann::json j;
    j["dims"] = file.dims;
    j["re"] = matrix_part(file.matrix, false);
    j["im"] = matrix_part(file.matrix, true);
    if (file.partition) j["partition"] = *file.partition;
    return j;
}

StateFile state_file_from_json(const nlohmann::json& j) {
    StateFile file;
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
        throw ValidationError("state file: missing dims");
    for (const auto& d : j["dims"]) {
        if (!d.is_number_unsigned() || d.get<std::size_t>() < 1)
            throw ValidationError("state file: dims must be positive integers");
        file.dims.push_back(d.get<std::size_t>());
    }
    const SpaceLayout layout(file.dims);
    const auto d = static_cast<Eigen::Index>(layout.total_dim());

    const auto read_part = [&](const char* key) {
        if (!j.contains(key))
            throw ValidationError(std::string("state file: missing ") + key);
        const auto& rows = j[key];
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d)
            throw ValidationError(std::string("state file: ") + key +
                                  " must be a " + std::to_string(d) + "x" +
                                  std::to_string(d) + " matrix");
        Eigen::MatrixXd m(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            const auto& row = rows[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
                throw ValidationError(std::string("state file: ragged ") + key);
            for (Eigen::Index c = 0; c < d; ++c)
                m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
        return m;
    };

    const Eigen::MatrixXd re = read_part("re");
    const Eigen::MatrixXd im = read_part("im");
    file.matrix = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();

    if (j.contains("partition")) {
        std::vector<std::vector<std::size_t>> blocks;
        for (const auto& blk : j["partition"]) {
            std::vector<std::size_t> b;
            for (const auto& f : blk) b.push_back(f.get<std::size_t>());
            blocks.push_back(std::move(b));
        }
        const Partition check(blocks, file.dims.size());  // validates
        (void)check;
        file.partition = std::move(blocks);
    }
    return file;
}

StateFile load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open state file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("state file is not valid JSON: " +
                              std::string(e.what()));
    }
    return state_file_from_json(j);
}

void save_state_file(const std::string& path, const StateFile& file) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write state file: " + path);
    out << state_file_json(file).dump(2) << '\n';
}

Partition parse_partition(const std::string& text, std::size_t factor_count) {
    if (text.empty())
        throw ValidationError("partition string is empty");
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> current;
    std::size_t value = 0;
    bool in_number = false;
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            value = value * 10 + static_cast<std::size_t>(c - '0');
            in_number = true;
        } else if (c == ',' || c == '|') {
            if (!in_number)
                throw ValidationError("partition syntax: expected an index "
                                      "before '" + std::string(1, c) + "'");
            current.push_back(value);
            value = 0;
            in_number = false;
            if (c == '|') {
                blocks.push_back(std::move(current));
                current.clear();
            }
        } else {
            throw ValidationError(
                "partition syntax: use \"0,1|2,3\" (no whitespace)");
        }
    }
    if (!in_number)
        throw ValidationError("partition syntax: trailing separator");
    current.push_back(value);
    blocks.push_back(std::move(current));
    return Partition(std::move(blocks), factor_count);
}

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string quantum_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace entprod::cli
