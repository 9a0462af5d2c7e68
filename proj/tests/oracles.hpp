#pragma once

// Independent reference computations for the tests: plain index loops over
// std::complex arrays, no Eigen expressions and no library helpers.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "parlives/qcore.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat zeros(std::size_t n) { return Mat(n, std::vector<C>(n, C{})); }

inline std::vector<C> amps(const parlives::qcore::PureState& s) {
    std::vector<C> v(s.dimension());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = s[i];
    return v;
}

/// sum_k p_k |v_k><v_k|
inline Mat outer_mix(const std::vector<std::vector<C>>& vs, const std::vector<double>& ps) {
    Mat m = zeros(vs.front().size());
    for (std::size_t k = 0; k < vs.size(); ++k)
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) m[i][j] += ps[k] * vs[k][i] * std::conj(vs[k][j]);
    return m;
}

inline Mat from(const parlives::qcore::DensityMatrix& rho) {
    Mat m = zeros(rho.dimension());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            m[i][j] = rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return m;
}

inline double max_dev(const Mat& a, const Mat& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
    return d;
}

/// Trace out the second factor of a (da * db)-dimensional matrix.
inline Mat trace_second(const Mat& m, std::size_t da, std::size_t db) {
    Mat r = zeros(da);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k) r[i][j] += m[i * db + k][j * db + k];
    return r;
}

/// Trace out the first factor.
inline Mat trace_first(const Mat& m, std::size_t da, std::size_t db) {
    Mat r = zeros(db);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k) r[i][j] += m[k * db + i][k * db + j];
    return r;
}

/// Singlet correlator for real angle bases under the 0 -> +1 convention.
inline double singlet_e(double a, double b) { return -std::cos(2.0 * (a - b)); }

}  // namespace oracle
