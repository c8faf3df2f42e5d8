#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tdmdc {

/// Scales a mode shape to unit Euclidean norm and rotates its phase so the
/// largest-magnitude entry is real and positive. Zero vectors are returned unchanged.
inline Eigen::VectorXcd normalize_shape(const Eigen::VectorXcd& shape) {
    const double norm = shape.norm();
    if (norm == 0.0 || shape.size() == 0) {
        return shape;
    }
    Eigen::Index peak = 0;
    shape.cwiseAbs().maxCoeff(&peak);
    const std::complex<double> rotation = std::conj(shape(peak)) / std::abs(shape(peak));
    Eigen::VectorXcd out = shape * (rotation / norm);
    out(peak) = std::complex<double>(std::abs(out(peak)), 0.0);
    return out;
}

}  // namespace tdmdc
