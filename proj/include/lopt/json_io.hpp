#pragma once

#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <string>

#include "lopt/conjecture.hpp"
#include "lopt/interferometer.hpp"

namespace lopt {

/// {"n": N, "re": [[...]], "im": [[...]]}, row-major.
inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row_re = nlohmann::json::array();
        nlohmann::json row_im = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row_re.push_back(m(i, j).real());
            row_im.push_back(m(i, j).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return {{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n)
        throw std::invalid_argument("matrix_from_json: row count mismatch");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(re[i].size()) != n || static_cast<int>(im[i].size()) != n)
            throw std::invalid_argument("matrix_from_json: column count mismatch");
        for (int jj = 0; jj < n; ++jj)
            m(i, jj) = Complex(re[i][jj].get<double>(), im[i][jj].get<double>());
    }
    return m;
}

inline Interferometer interferometer_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    nlohmann::json j;
    in >> j;
    return Interferometer::validate(matrix_from_json(j));
}

/// One JSONL scan record; `with_timing` is off by default so reruns are
/// byte-identical.
inline nlohmann::json report_to_json(const ConjectureReport& rep, bool with_timing = false) {
    nlohmann::json j{{"schema", 1},
                     {"n", rep.n},
                     {"d", rep.total_detected},
                     {"trial", rep.trial},
                     {"seed", rep.seed},
                     {"dim", rep.dim},
                     {"min_eig", rep.min_eig},
                     {"norm", rep.matrix_norm},
                     {"null_dim", rep.null_dim},
                     {"violation", rep.violation}};
    if (rep.null_min_eig)
        j["null_min_eig"] = *rep.null_min_eig;
    else
        j["null_min_eig"] = nullptr;
    if (with_timing) j["ms"] = rep.ms;
    return j;
}

}  // namespace lopt
