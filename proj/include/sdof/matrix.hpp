#pragma once

#include <Eigen/Dense>
#include <complex>
#include <nlohmann/json.hpp>

#include "sdof/errors.hpp"

namespace sdof {

using Complex = std::complex<double>;

/// Dense complex matrix, the carrier for all channel and factor matrices.
/// Zero-row and zero-column matrices are valid values.
using ComplexMatrix = Eigen::MatrixXcd;

using json = nlohmann::ordered_json;

/// Numerical rank: number of singular values above tol times the largest one.
inline long rank(const ComplexMatrix& m, double tol) {
    if (tol <= 0.0) throw InvalidDims("rank: tol must be positive");
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    const double cutoff = tol * sv(0);
    long r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

inline ComplexMatrix matrix_from_json(const json& j) {
    const long rows = j.at("rows").get<long>();
    const long cols = j.at("cols").get<long>();
    if (rows < 0 || cols < 0) throw DimensionMismatch("matrix: negative dimension");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<long>(re.size()) != rows * cols || static_cast<long>(im.size()) != rows * cols)
        throw DimensionMismatch("matrix: entry count does not match rows*cols");
    ComplexMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c) {
            const long k = r * cols + c;
            m(r, c) = Complex(re[k].get<double>(), im[k].get<double>());
        }
    return m;
}

}  // namespace sdof
